#include "km/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace km {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_pi(double x) {
    x = std::fmod(x + std::numbers::pi, two_pi);
    if (x < 0) x += two_pi;
    return x - std::numbers::pi;
}

double circular_mean(const std::vector<double>& u) {
    double s = 0.0, c = 0.0;
    for (double x : u) {
        s += std::sin(x);
        c += std::cos(x);
    }
    return std::atan2(s, c);
}

// v_i = sum_j w_ij sin(a(u_j - u_i)) for one graph, structure-aware.
// Uses sin a(u_j - u_i) = sin(a u_j)cos(a u_i) - cos(a u_j)sin(a u_i).
void coupling_sum(const std::vector<double>& u, const WeightedGraph& g, int a,
                  std::vector<double>& sin_au, std::vector<double>& cos_au,
                  std::vector<double>& v) {
    const std::size_t n = u.size();
    const double da = static_cast<double>(a);

#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        sin_au[i] = std::sin(da * u[i]);
        cos_au[i] = std::cos(da * u[i]);
    }

    switch (g.structure()) {
    case WeightedGraph::Structure::UniformConstant: {
        double S = 0.0, C = 0.0;
#pragma omp parallel for reduction(+ : S, C) schedule(static)
        for (std::size_t j = 0; j < n; ++j) {
            S += sin_au[j];
            C += cos_au[j];
        }
        const double p = g.uniform_level();
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < n; ++i)
            v[i] = p * (cos_au[i] * S - sin_au[i] * C);
        break;
    }
    case WeightedGraph::Structure::CirculantBand: {
        // circular window sums over j in [i-b, i+b] via prefix sums
        const std::size_t b = g.band_half_width();
        static thread_local std::vector<double> ps, pc;
        ps.assign(n + 1, 0.0);
        pc.assign(n + 1, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            ps[j + 1] = ps[j] + sin_au[j];
            pc[j + 1] = pc[j] + cos_au[j];
        }
        const double St = ps[n], Ct = pc[n];
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < n; ++i) {
            double S, C;
            if (2 * b + 1 >= n) {
                S = St;
                C = Ct;
            } else {
                const std::size_t lo = (i + n - b) % n;
                const std::size_t hi = (i + b) % n;
                if (lo <= hi) {
                    S = ps[hi + 1] - ps[lo];
                    C = pc[hi + 1] - pc[lo];
                } else { // wraps: [lo, n) plus [0, hi]
                    S = (St - ps[lo]) + ps[hi + 1];
                    C = (Ct - pc[lo]) + pc[hi + 1];
                }
            }
            v[i] = cos_au[i] * S - sin_au[i] * C;
        }
        break;
    }
    case WeightedGraph::Structure::RandomDense: {
        const std::vector<double>& w = g.dense();
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = &w[i * n];
            double S = 0.0, C = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                S += row[j] * sin_au[j];
                C += row[j] * cos_au[j];
            }
            v[i] = cos_au[i] * S - sin_au[i] * C;
        }
        break;
    }
    case WeightedGraph::Structure::RandomSparse: {
        const auto& rp = g.row_ptr();
        const auto& ci = g.col_idx();
#pragma omp parallel for schedule(dynamic, 64)
        for (std::size_t i = 0; i < n; ++i) {
            double S = 0.0, C = 0.0;
            for (std::uint32_t k = rp[i]; k < rp[i + 1]; ++k) {
                S += sin_au[ci[k]];
                C += cos_au[ci[k]];
            }
            v[i] = cos_au[i] * S - sin_au[i] * C;
        }
        break;
    }
    }
}

} // namespace

void rhs_naive(const std::vector<double>& u, const std::vector<double>& w1_dense,
               double alpha1, const std::vector<double>& w2_dense, double alpha2,
               const KmParams& params, std::vector<double>& du) {
    const std::size_t n = u.size();
    if (n != params.n || w1_dense.size() != n * n || w2_dense.size() != n * n)
        throw std::invalid_argument("rhs_naive: dimension mismatch");
    du.resize(n);
    const double c1 = 1.0 / (static_cast<double>(n) * alpha1);
    const double c2 = params.K / (static_cast<double>(n) * alpha2);
    for (std::size_t i = 0; i < n; ++i) {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = u[j] - u[i];
            s1 += w1_dense[i * n + j] * std::sin(d);
            s2 += w2_dense[i * n + j] * std::sin(2.0 * d);
        }
        du[i] = params.omega + c1 * s1 - c2 * s2;
    }
}

void rhs_fast(const std::vector<double>& u, const WeightedGraph& g1,
              const WeightedGraph& g2, const KmParams& params,
              std::vector<double>& du) {
    const std::size_t n = u.size();
    if (g1.n() != n || g2.n() != n || params.n != n)
        throw std::invalid_argument("rhs_fast: dimension mismatch");
    du.resize(n);
    static thread_local std::vector<double> sa, ca, v1, v2;
    sa.resize(n);
    ca.resize(n);
    v1.resize(n);
    v2.resize(n);
    coupling_sum(u, g1, 1, sa, ca, v1);
    coupling_sum(u, g2, 2, sa, ca, v2);
    const double c1 = 1.0 / (static_cast<double>(n) * g1.alpha());
    const double c2 = params.K / (static_cast<double>(n) * g2.alpha());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i)
        du[i] = params.omega + c1 * v1[i] - c2 * v2[i];
}

PhaseState initial_condition(IcMode mode, std::size_t n, Rng& rng) {
    PhaseState st;
    st.u.resize(n);
    const double a = mode == IcMode::Wide ? std::numbers::pi : 1e-3;
    for (std::size_t i = 0; i < n; ++i) st.u[i] = rng.uniform(-a, a);
    return st;
}

double distance_to_sync(const std::vector<double>& u) {
    const double theta = circular_mean(u);
    double acc = 0.0;
    for (double x : u) {
        const double d = wrap_pi(x - theta);
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(u.size()));
}

double distance_to_family(const std::vector<double>& u, const std::vector<double>& ref) {
    const std::size_t n = u.size();
    if (ref.size() != n)
        throw std::invalid_argument("distance_to_family: dimension mismatch");
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> d(n);
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < n; ++i) d[i] = u[i] - ref[(i + l) % n];
        const double theta = circular_mean(d);
        double acc = 0.0;
        for (double x : d) {
            const double w = wrap_pi(x - theta);
            acc += w * w;
        }
        best = std::min(best, acc);
    }
    return std::sqrt(best / static_cast<double>(n));
}

IntegrationResult integrate_km(const PhaseState& state0, const WeightedGraph& g1,
                               const WeightedGraph& g2, const KmParams& params,
                               const IntegratorConfig& cfg) {
    auto rhs = [&](double, const std::vector<double>& u, std::vector<double>& du) {
        rhs_fast(u, g1, g2, params, du);
    };
    return integrate(rhs, state0.t, state0.u, cfg);
}

IntegrationResult cl_simulate(const std::vector<double>& g0, const KmParams& params,
                              const IntegratorConfig& cfg) {
    const std::size_t m = g0.size();
    if (static_cast<double>(m) < 2.0 / params.kappa)
        throw std::invalid_argument("cl_simulate: grid too coarse for kappa band");
    KmParams p = params;
    p.n = m;
    const auto g1 = sample_deterministic_dense(Graphon::uniform(params.p), m);
    const auto g2 = sample_deterministic_dense(Graphon::nearest_neighbor(params.kappa), m);
    PhaseState st;
    st.u = g0;
    return integrate_km(st, g1, g2, p, cfg);
}

double amplitude_ode_solve(double mu, double beta, double r0, double t_end) {
    if (r0 < 0.0) throw std::invalid_argument("amplitude_ode_solve: r0 >= 0 required");
    if (r0 == 0.0) return 0.0;
    if (mu == 0.0) return r0 / std::sqrt(1.0 + 2.0 * beta * r0 * r0 * t_end);
    const double e = std::exp(2.0 * mu * t_end);
    return std::sqrt(mu * r0 * r0 * e / (mu + beta * r0 * r0 * (e - 1.0)));
}

} // namespace km
