#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "km/spectral.hpp"

using namespace km;
namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("delta") {
    CHECK(delta(3, 1.0 / 3.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(delta(2, 1.0 / 3.0) == doctest::Approx(-0.137832223855).epsilon(1e-9));
    for (std::size_t j : {10ul, 100ul, 1000ul})
        CHECK(std::fabs(delta(j, 0.21)) <= 1.0 / (pi * double(j)));
}

TEST_CASE("eigenvalue") {
    SUBCASE("vanishes at the critical coupling") {
        for (std::size_t ell : {1ul, 2ul, 5ul, 9ul}) {
            const double kappa = 0.27;
            SpectralParams sp{1.0, kappa, critical_coupling(ell, kappa, 1.0)};
            CHECK(std::fabs(eigenvalue(ell, sp)) <= 1e-12);
        }
    }
    SUBCASE("K=0 gives -p") {
        SpectralParams sp{0.8, 0.3, 0.0};
        CHECK(eigenvalue(4, sp) == doctest::Approx(-0.8));
    }
    SUBCASE("kappa=1/3, ell=3: lambda = 4K/3 - 1") {
        SpectralParams sp{1.0, 1.0 / 3.0, 0.9};
        CHECK(eigenvalue(3, sp) == doctest::Approx(4.0 * 0.9 / 3.0 - 1.0).epsilon(1e-13));
    }
    SUBCASE("K <= 0: every mode stable") {
        for (double K : {0.0, -0.5, -2.0})
            for (std::size_t ell = 1; ell <= 50; ++ell) {
                SpectralParams sp{1.0, 0.29, K};
                CHECK(eigenvalue(ell, sp) <= -sp.p + 1e-15);
            }
    }
}

TEST_CASE("critical coupling") {
    SUBCASE("kappa=1/2 boundary value p/2") {
        for (std::size_t ell : {1ul, 2ul, 7ul})
            CHECK(critical_coupling(ell, 0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(critical_coupling(3, 0.5, 0.6) == doctest::Approx(0.3).epsilon(1e-13));
    }
    SUBCASE("frozen values") {
        CHECK(critical_coupling(2, 1.0 / 3.0, 1.0) ==
              doctest::Approx(0.621504896887).epsilon(1e-10));
        CHECK(critical_coupling(6, 1.0 / 8.0, 1.0) ==
              doctest::Approx(6.0 * pi / (3.0 * pi + 2.0)).epsilon(1e-13));
    }
}

TEST_CASE("minimal critical coupling") {
    SUBCASE("kappa=1/3 -> ell*=2") {
        const auto mc = min_critical(1.0 / 3.0, 1.0);
        CHECK(mc.ell == 2);
        CHECK(mc.K == doctest::Approx(0.621504896887).epsilon(1e-10));
        CHECK(mc.unique);
    }
    SUBCASE("kappa=1/8 -> ell*=6") {
        const auto mc = min_critical(1.0 / 8.0, 1.0);
        CHECK(mc.ell == 6);
        CHECK(mc.K == doctest::Approx(1.649883786474).epsilon(1e-10));
        CHECK(mc.unique);
    }
    SUBCASE("ell*=1 never minimizes") {
        for (int i = 1; i <= 40; ++i) {
            const double kappa = 0.012 * i;
            CHECK(min_critical(kappa, 1.0).ell != 1);
        }
    }
}

TEST_CASE("zeta0 and phi0") {
    const auto z = zeta0_phi0();
    CHECK(z.zeta0 == doctest::Approx(4.4934).epsilon(1e-5));
    CHECK(z.phi0 == doctest::Approx(0.21723).epsilon(1e-5));
    // stationarity of sin(z)/z at zeta0
    const double h = 1e-6;
    const double d = (std::sin(z.zeta0 + h) / (z.zeta0 + h) -
                      std::sin(z.zeta0 - h) / (z.zeta0 - h)) /
                     (2.0 * h);
    CHECK(std::fabs(d) <= 1e-10);
}

TEST_CASE("unfolding parameter mu") {
    const double kappa = 1.0 / 3.0;
    CHECK(mu(critical_coupling(2, kappa, 1.0), kappa, 2, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(mu(0.65, kappa, 2, 1.0) == doctest::Approx(0.045848557679).epsilon(1e-9));
    // sign of mu follows sign of K - K_ell
    for (double K : {0.5, 0.6, 0.7, 0.9}) {
        const double Kl = critical_coupling(2, kappa, 1.0);
        const double m = mu(K, kappa, 2, 1.0);
        CHECK(((K > Kl) == (m > 0.0)));
    }
}

TEST_CASE("cubic coefficient beta") {
    CHECK(beta_coeff(1.0 / 3.0, 2, 1.0) == doctest::Approx(1.460663402075).epsilon(1e-9));
    CHECK(beta_coeff(1.0 / 8.0, 6, 1.0) == doctest::Approx(1.418764526691).epsilon(1e-9));
    SUBCASE("positivity at the minimal mode over a kappa grid") {
        for (int i = 1; i <= 100; ++i) {
            const double kappa = 0.01 + 0.0047 * i;
            const auto mc = min_critical(kappa, 1.0);
            CHECK(beta_coeff(kappa, mc.ell, 1.0) > 0.0);
        }
    }
}

TEST_CASE("transverse rates") {
    SUBCASE("route agreement is internal; spot values") {
        CHECK_NOTHROW(beta_transverse(1, 1.0 / 3.0, 2, 1.0));
        CHECK_THROWS_AS(beta_transverse(2, 1.0 / 3.0, 2, 1.0), std::invalid_argument);
    }
    SUBCASE("positivity below ell_max at the minimal mode") {
        for (std::size_t j = 1; j <= 64; ++j) {
            if (j == 2) continue;
            CHECK(beta_transverse(j, 1.0 / 3.0, 2, 1.0) > 0.0);
        }
    }
    SUBCASE("sign equals sign of K_j - K_ell") {
        const double kappa = 0.21;
        const auto mc = min_critical(kappa, 1.0);
        for (std::size_t j = 1; j <= 32; ++j) {
            if (j == mc.ell) continue;
            const double bj = beta_transverse(j, kappa, mc.ell, 1.0);
            const double dK = critical_coupling(j, kappa, 1.0) - mc.K;
            CHECK(((bj > 0.0) == (dK > 0.0)));
        }
    }
}

TEST_CASE("prediction assembly") {
    SUBCASE("supercritical kappa=1/3") {
        const auto b = predict({1.0, 1.0 / 3.0, 0.65}, 2);
        CHECK(b.r_pred == doctest::Approx(0.177169012730).epsilon(1e-8));
        CHECK(b.is_minimal);
    }
    SUBCASE("supercritical kappa=1/8") {
        const auto b = predict({1.0, 1.0 / 8.0, 1.7}, 6);
        CHECK(b.r_pred == doctest::Approx(0.146321211210).epsilon(1e-8));
    }
    SUBCASE("subcritical gives zero amplitude") {
        const auto b = predict({1.0, 1.0 / 3.0, 0.6}, 2);
        CHECK(b.mu < 0.0);
        CHECK(b.r_pred == 0.0);
    }
}

TEST_CASE("identity p = 2 K_ell (2 kappa - delta_ell)") {
    for (std::size_t ell = 1; ell <= 20; ++ell)
        for (int i = 1; i <= 30; ++i) {
            const double kappa = 0.015 * i;
            const double Kl = critical_coupling(ell, kappa, 1.0);
            CHECK(std::fabs(2.0 * Kl * (2.0 * kappa - delta(ell, kappa)) - 1.0) <= 1e-12);
        }
}

TEST_CASE("kernel mode integrals against closed form") {
    SUBCASE("delta_3 vanishes at kappa=1/3") {
        for (double x : {0.1, 0.37, 0.9})
            CHECK(std::fabs(kernel_mode_integral(3, 1.0 / 3.0, x, 4000)) <= 2.0 / 4000.0);
    }
    SUBCASE("sine kernel column") {
        const double v = kernel_mode_integral(2, 1.0 / 3.0, 0.125, 4000);
        const double closed = delta(2, 1.0 / 3.0) * std::sin(4.0 * pi * 0.125);
        CHECK(std::fabs(v - closed) <= 1e-3);
    }
    SUBCASE("cosine companion") {
        for (double x : {0.05, 0.4, 0.77}) {
            const double v = kernel_mode_integral_cos(2, 0.21, x, 4000);
            const double closed = delta(2, 0.21) * std::cos(4.0 * pi * x);
            CHECK(std::fabs(v - closed) <= 1e-3);
        }
    }
}

TEST_CASE("discretized operator eigenvectors") {
    const std::size_t m = 2000;
    const SpectralParams sp{1.0, 1.0 / 3.0, 0.5};
    SUBCASE("constant annihilated") {
        const auto out = apply_discretized_operator(std::vector<double>(m, 1.0), sp);
        for (double v : out) CHECK(std::fabs(v) <= 1e-10);
    }
    SUBCASE("cos and sin modes") {
        for (std::size_t ell = 1; ell <= 10; ++ell) {
            const double lam = eigenvalue(ell, sp);
            for (bool cosine : {true, false}) {
                std::vector<double> phi(m);
                for (std::size_t i = 0; i < m; ++i) {
                    const double x = (2.0 * i + 1.0) / (2.0 * m);
                    phi[i] = cosine ? std::cos(2.0 * pi * ell * x)
                                    : std::sin(2.0 * pi * ell * x);
                }
                const auto out = apply_discretized_operator(phi, sp);
                double num = 0.0, den = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    num += (out[i] - lam * phi[i]) * (out[i] - lam * phi[i]);
                    den += (lam * phi[i]) * (lam * phi[i]);
                }
                CHECK(std::sqrt(num / den) <= 5e-3);
            }
        }
    }
}

TEST_CASE("proposition-style bounds on K_ell") {
    const auto z = zeta0_phi0();
    SUBCASE("min below p/(4 kappa); floor for ell > 1") {
        for (int i = 0; i < 100; ++i) {
            const double kappa = 0.01 + (0.49 - 0.01) * i / 99.0;
            const auto mc = min_critical(kappa, 1.0);
            CHECK(mc.K < 1.0 / (4.0 * kappa));
            const double floor = 1.0 / (4.0 * kappa * (1.0 + z.phi0));
            for (std::size_t ell = 2; ell <= 64; ++ell)
                CHECK(critical_coupling(ell, kappa, 1.0) >= floor - 1e-12);
        }
    }
    SUBCASE("equality at kappa = zeta0/(2 pi ell)") {
        for (std::size_t ell = 2; ell <= 8; ++ell) {
            const double kappa = z.zeta0 / (2.0 * pi * ell);
            const double lhs = critical_coupling(ell, kappa, 1.0);
            const double rhs = 1.0 / (4.0 * kappa * (1.0 + z.phi0));
            CHECK(std::fabs(lhs - rhs) <= 1e-9);
        }
    }
}
