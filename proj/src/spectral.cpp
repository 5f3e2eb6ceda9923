#include "km/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace km {

namespace {
constexpr double pi = std::numbers::pi;
}

double delta(std::size_t j, double kappa) {
    if (j < 1) throw std::invalid_argument("delta: j >= 1 required");
    const double dj = static_cast<double>(j);
    return std::sin(2.0 * pi * dj * kappa) / (pi * dj);
}

double eigenvalue(std::size_t ell, const SpectralParams& params) {
    return 4.0 * params.K * params.kappa - params.p -
           2.0 * params.K * delta(ell, params.kappa);
}

double critical_coupling(std::size_t ell, double kappa, double p) {
    if (ell < 1) throw std::invalid_argument("critical_coupling: ell >= 1 required");
    const double z = 2.0 * pi * static_cast<double>(ell) * kappa;
    return pi * static_cast<double>(ell) * p / (2.0 * (z - std::sin(z)));
}

MinCritical min_critical(double kappa, double p, std::size_t ell_max) {
    if (ell_max < 2) throw std::invalid_argument("min_critical: ell_max >= 2 required");
    MinCritical best;
    best.ell = 1;
    best.K = critical_coupling(1, kappa, p);
    for (std::size_t j = 2; j <= ell_max; ++j) {
        const double Kj = critical_coupling(j, kappa, p);
        if (Kj < best.K - 1e-12) {
            best.ell = j;
            best.K = Kj;
            best.unique = true;
        } else if (std::fabs(Kj - best.K) <= 1e-12) {
            best.unique = false;
            best.K = std::min(best.K, Kj);
        }
    }
    return best;
}

Zeta0Phi0 zeta0_phi0() {
    // root of g(z) = z cos z - sin z (stationarity of sin z / z) in (pi, 3pi/2)
    auto g = [](double z) { return z * std::cos(z) - std::sin(z); };
    double lo = pi, hi = 1.5 * pi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(lo) * g(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-15) break;
    }
    const double z0 = 0.5 * (lo + hi);
    return {z0, -std::sin(z0) / z0};
}

double mu(double K, double kappa, std::size_t ell, double p) {
    return 2.0 * (2.0 * kappa - delta(ell, kappa)) * (K - critical_coupling(ell, kappa, p));
}

double beta_coeff(double kappa, std::size_t ell, double p) {
    const double Kl = critical_coupling(ell, kappa, p);
    return 13.0 / 8.0 * p - Kl * (kappa - delta(2 * ell, kappa));
}

double beta_transverse(std::size_t j, double kappa, std::size_t ell, double p) {
    if (j == ell) throw std::invalid_argument("beta_transverse: j != ell required");
    const double Kl = critical_coupling(ell, kappa, p);
    const double route1 = p - 2.0 * Kl * (2.0 * kappa - delta(j, kappa));
    const double route2 = 2.0 * Kl * (delta(j, kappa) - delta(ell, kappa));
    if (std::fabs(route1 - route2) > 1e-12)
        throw std::logic_error("beta_transverse: route disagreement");
    return route2;
}

BifurcationPrediction predict(const SpectralParams& params, std::size_t ell) {
    BifurcationPrediction b;
    b.ell = ell;
    b.K_crit = critical_coupling(ell, params.kappa, params.p);
    b.mu = mu(params.K, params.kappa, ell, params.p);
    b.beta = beta_coeff(params.kappa, ell, params.p);
    for (std::size_t j = 1; j <= 2 * ell + 8; ++j)
        if (j != ell)
            b.beta_transverse[j] = beta_transverse(j, params.kappa, ell, params.p);
    b.r_pred = b.mu > 0.0 ? std::sqrt(b.mu / b.beta) : 0.0;
    const auto mc = min_critical(params.kappa, params.p);
    b.is_minimal = mc.unique && mc.ell == ell;
    return b;
}

namespace {

double band_kernel(double x, double y, double kappa) {
    const double d = std::fabs(x - y);
    return (d <= kappa || d >= 1.0 - kappa) ? 1.0 : 0.0;
}

double mode_integral_impl(std::size_t ell, double kappa, double x,
                          std::size_t m, bool cosine) {
    if (static_cast<double>(m) < 4.0 / kappa)
        throw std::invalid_argument("kernel_mode_integral: quadrature too coarse");
    const double dm = static_cast<double>(m);
    const double a = 2.0 * pi * static_cast<double>(ell);
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double y = (2.0 * static_cast<double>(j) + 1.0) / (2.0 * dm);
        acc += band_kernel(x, y, kappa) * (cosine ? std::cos(a * y) : std::sin(a * y));
    }
    return acc / dm;
}

} // namespace

double kernel_mode_integral(std::size_t ell, double kappa, double x,
                            std::size_t quadrature_m) {
    return mode_integral_impl(ell, kappa, x, quadrature_m, false);
}

double kernel_mode_integral_cos(std::size_t ell, double kappa, double x,
                                std::size_t quadrature_m) {
    return mode_integral_impl(ell, kappa, x, quadrature_m, true);
}

std::vector<double> apply_discretized_operator(const std::vector<double>& phi,
                                               const SpectralParams& params) {
    const std::size_t m = phi.size();
    const double dm = static_cast<double>(m);
    std::vector<double> out(m, 0.0);
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < m; ++i) {
        const double xi = (2.0 * static_cast<double>(i) + 1.0) / (2.0 * dm);
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double xj = (2.0 * static_cast<double>(j) + 1.0) / (2.0 * dm);
            const double w = params.p - 2.0 * params.K * band_kernel(xi, xj, params.kappa);
            acc += w * (phi[j] - phi[i]);
        }
        out[i] = acc / dm;
    }
    return out;
}

} // namespace km
