#include "km/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace km {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - bhat (embedded 4th order)
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double initial_step(const RhsFn& rhs, double t0, const std::vector<double>& u0,
                    const std::vector<double>& f0, double rtol, double atol,
                    double t_end) {
    const std::size_t n = u0.size();
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sc = atol + rtol * std::fabs(u0[i]);
        dnf += (f0[i] / sc) * (f0[i] / sc);
        dny += (u0[i] / sc) * (u0[i] / sc);
    }
    double h0 = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6
                                               : 0.01 * std::sqrt(dny / dnf);
    h0 = std::min(h0, t_end - t0);
    // one explicit Euler probe to estimate the second derivative scale
    std::vector<double> u1(n), f1(n);
    for (std::size_t i = 0; i < n; ++i) u1[i] = u0[i] + h0 * f0[i];
    rhs(t0 + h0, u1, f1);
    double der2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sc = atol + rtol * std::fabs(u0[i]);
        const double d = (f1[i] - f0[i]) / sc;
        der2 += d * d;
    }
    der2 = std::sqrt(der2) / h0;
    const double der = std::max(std::sqrt(dnf), der2);
    double h1 = (der <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                               : std::pow(0.01 / der, 0.2);
    return std::min({100.0 * h0, h1, t_end - t0});
}

} // namespace

IntegrationResult integrate(const RhsFn& rhs, double t0, std::vector<double> u0,
                            const IntegratorConfig& cfg) {
    const std::size_t n = u0.size();
    IntegrationResult res;
    res.t = t0;
    res.u = u0;
    res.sample_times.push_back(t0);
    res.samples.push_back(u0);

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    std::vector<double> y(n), u(std::move(u0)), unew(n);

    double t = t0;
    rhs(t, u, k1);
    double h = initial_step(rhs, t, u, k1, cfg.rtol, cfg.atol, t0 + cfg.t_end);
    const double t_final = t0 + cfg.t_end;
    double next_sample = cfg.sample_every > 0.0 ? t0 + cfg.sample_every
                                                : std::numeric_limits<double>::infinity();

    while (t < t_final) {
        if (res.steps_accepted + res.steps_rejected >= cfg.max_steps) {
            res.status = IntegrationStatus::StepBudgetExhausted;
            return res;
        }
        h = std::min(h, t_final - t);
        if (h < 1e-14 * std::max(1.0, std::fabs(t))) {
            res.status = IntegrationStatus::StepUnderflow;
            return res;
        }

        for (std::size_t i = 0; i < n; ++i) y[i] = u[i] + h * a21 * k1[i];
        rhs(t + c2 * h, y, k2);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = u[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, y, k3);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = u[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, y, k4);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = u[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, y, k5);
        for (std::size_t i = 0; i < n; ++i)
            y[i] = u[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                               a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, y, k6);
        for (std::size_t i = 0; i < n; ++i)
            unew[i] = u[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                  b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, unew, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                  e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = cfg.atol +
                              cfg.rtol * std::max(std::fabs(u[i]), std::fabs(unew[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0) {
            t += h;
            std::swap(u, unew);
            std::swap(k1, k7); // FSAL
            ++res.steps_accepted;

            while (t >= next_sample - 1e-12 && next_sample <= t_final) {
                // stride output uses the step endpoint state; strides are
                // coarse relative to accepted steps in all presets
                res.sample_times.push_back(t);
                res.samples.push_back(u);
                next_sample += cfg.sample_every;
            }

            if (cfg.steady_rhs_tol > 0.0 && max_abs(k1) < cfg.steady_rhs_tol) {
                res.status = IntegrationStatus::SteadyState;
                res.t = t;
                res.u = u;
                return res;
            }
        } else {
            ++res.steps_rejected;
        }

        const double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 10.0);
        h *= fac;
    }

    res.status = IntegrationStatus::Done;
    res.t = t;
    res.u = u;
    if (res.sample_times.back() != t) {
        res.sample_times.push_back(t);
        res.samples.push_back(u);
    }
    return res;
}

} // namespace km
