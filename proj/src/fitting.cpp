#include "km/fitting.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace km {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_pi(double x) {
    x = std::fmod(x + pi, 2.0 * pi);
    if (x < 0) x += 2.0 * pi;
    return x - pi;
}

// 3x3 linear solve by Gaussian elimination with partial pivoting
void solve3(double A[3][3], double b[3], double out[3]) {
    int idx[3] = {0, 1, 2};
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::fabs(A[idx[r]][c]) > std::fabs(A[idx[piv]][c])) piv = r;
        std::swap(idx[c], idx[piv]);
        if (std::fabs(A[idx[c]][c]) < 1e-14)
            throw std::runtime_error("fit_sinusoid: degenerate design matrix");
        for (int r = c + 1; r < 3; ++r) {
            const double f = A[idx[r]][c] / A[idx[c]][c];
            for (int k = c; k < 3; ++k) A[idx[r]][k] -= f * A[idx[c]][k];
            b[idx[r]] -= f * b[idx[c]];
        }
    }
    for (int c = 2; c >= 0; --c) {
        double acc = b[idx[c]];
        for (int k = c + 1; k < 3; ++k) acc -= A[idx[c]][k] * out[k];
        out[c] = acc / A[idx[c]][c];
    }
}

} // namespace

SinusoidFit fit_sinusoid(const std::vector<double>& u, std::size_t ell) {
    const std::size_t n = u.size();
    if (n < 5) throw std::invalid_argument("fit_sinusoid: n >= 5 required");
    if (ell < 1 || 2 * ell >= n)
        throw std::invalid_argument("fit_sinusoid: require 1 <= ell and 2*ell < n");

    const double dn = static_cast<double>(n);
    const double a = 2.0 * pi * static_cast<double>(ell);
    // normal equations for the basis {cos, sin, 1}; on the midpoint grid the
    // off-diagonal sums vanish exactly, but the general solve is kept as a guard
    double A[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double rhs[3] = {0, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (2.0 * static_cast<double>(i) + 1.0) / (2.0 * dn);
        const double c = std::cos(a * x), s = std::sin(a * x);
        A[0][0] += c * c;
        A[0][1] += c * s;
        A[0][2] += c;
        A[1][1] += s * s;
        A[1][2] += s;
        rhs[0] += c * u[i];
        rhs[1] += s * u[i];
        rhs[2] += u[i];
    }
    A[1][0] = A[0][1];
    A[2][0] = A[0][2];
    A[2][1] = A[1][2];
    A[2][2] = dn;

    double coef[3];
    solve3(A, rhs, coef);
    double C = coef[0], S = coef[1];
    const double theta = coef[2];
    // amplitudes at rounding level are noise: snap to zero so psi is
    // well-defined and equal-residual ties resolve to the smallest ell
    double scale = 0.0;
    for (double v : u) scale = std::max(scale, std::fabs(v));
    if (std::hypot(C, S) <= 1e-13 * std::max(1.0, scale)) C = S = 0.0;

    SinusoidFit fit;
    fit.ell = ell;
    fit.r = std::hypot(C, S);
    fit.psi = fit.r > 0.0 ? std::atan2(C, S) : 0.0;
    fit.theta = wrap_pi(theta);

    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (2.0 * static_cast<double>(i) + 1.0) / (2.0 * dn);
        const double e = u[i] - (C * std::cos(a * x) + S * std::sin(a * x) + theta);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / dn);
    return fit;
}

SinusoidFit select_mode(const std::vector<double>& u, std::size_t ell_max) {
    if (ell_max < 1) throw std::invalid_argument("select_mode: ell_max >= 1 required");
    SinusoidFit best;
    bool have = false;
    for (std::size_t ell = 1; ell <= ell_max && 2 * ell < u.size(); ++ell) {
        SinusoidFit f = fit_sinusoid(u, ell);
        if (!have || f.residual < best.residual) {
            best = f;
            have = true;
        }
    }
    if (!have) throw std::invalid_argument("select_mode: no admissible mode");
    return best;
}

} // namespace km
