// Compares the serial reference RHS against the structure-aware kernels
// across the three sampling regimes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "km/dynamics.hpp"
#include "km/graphs.hpp"
#include "km/rng.hpp"

using namespace km;

namespace {

double now_ms() {
    using clk = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clk::now().time_since_epoch())
        .count();
}

void bench_case(const char* name, const WeightedGraph& g1, const WeightedGraph& g2,
                const KmParams& params, const std::vector<double>& u, int reps) {
    const std::size_t n = u.size();
    std::vector<double> du_naive(n), du_fast(n);
    const auto w1 = g1.densify();
    const auto w2 = g2.densify();

    double t0 = now_ms();
    rhs_naive(u, w1, g1.alpha(), w2, g2.alpha(), params, du_naive);
    double t_naive = now_ms() - t0;

    rhs_fast(u, g1, g2, params, du_fast); // warm up buffers
    t0 = now_ms();
    for (int r = 0; r < reps; ++r) rhs_fast(u, g1, g2, params, du_fast);
    double t_fast = (now_ms() - t0) / reps;

    double max_diff = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        max_diff = std::max(max_diff, std::fabs(du_naive[i] - du_fast[i]));

    std::printf("%-28s n=%5zu  naive %9.3f ms  fast %9.4f ms  speedup %7.1fx  "
                "max|diff| %.2e\n",
                name, n, t_naive, t_fast, t_naive / t_fast, max_diff);
}

} // namespace

int main() {
    Rng rng(42);
    for (std::size_t n : {500, 2000}) {
        std::vector<double> u(n);
        for (auto& x : u) x = rng.uniform(-std::numbers::pi, std::numbers::pi);
        KmParams params{.omega = 0.0, .K = 0.65, .p = 1.0, .kappa = 1.0 / 3.0, .n = n};
        const auto g2 =
            sample_deterministic_dense(Graphon::nearest_neighbor(1.0 / 3.0), n);

        bench_case("deterministic uniform", sample_deterministic_dense(Graphon::uniform(1.0), n),
                   g2, params, u, 50);
        Rng r1(7);
        bench_case("random dense p=0.5",
                   sample_random_dense(Graphon::uniform(0.5), n, r1), g2, params, u, 20);
        Rng r2(7);
        bench_case("random sparse gamma=0.3",
                   sample_random_sparse(Graphon::uniform(1.0), n, 0.3, r2), g2, params,
                   u, 20);
    }
    return 0;
}
