#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace km {

struct SpectralParams {
    double p = 1.0;
    double kappa = 0.0;
    double K = 0.0;
};

struct BifurcationPrediction {
    std::size_t ell = 0;
    double K_crit = 0.0;
    double mu = 0.0;
    double beta = 0.0;
    std::map<std::size_t, double> beta_transverse; // j -> beta_j, j != ell
    double r_pred = 0.0; // sqrt(mu/beta) when mu > 0, else 0
    bool is_minimal = false;
};

/// delta_j = sin(2 pi j kappa) / (pi j)
double delta(std::size_t j, double kappa);

/// lambda_ell = 4 K kappa - p - 2 K delta_ell(kappa)
double eigenvalue(std::size_t ell, const SpectralParams& params);

/// K_ell = pi ell p / (2 (2 pi ell kappa - sin 2 pi ell kappa))
double critical_coupling(std::size_t ell, double kappa, double p);

struct MinCritical {
    std::size_t ell = 0;
    double K = 0.0;
    bool unique = true; // ties decided at tolerance 1e-12
};

MinCritical min_critical(double kappa, double p, std::size_t ell_max = 64);

/// zeta0: root of tan z = z in (pi, 3pi/2); phi0 = -sin(zeta0)/zeta0
struct Zeta0Phi0 {
    double zeta0;
    double phi0;
};
Zeta0Phi0 zeta0_phi0();

/// mu = 2 (2 kappa - delta_ell) (K - K_ell)
double mu(double K, double kappa, std::size_t ell, double p);

/// beta = (13/8) p - K_ell (kappa - delta_{2 ell})
double beta_coeff(double kappa, std::size_t ell, double p);

/// beta_j = p - 2 K_ell (2 kappa - delta_j) = 2 K_ell (delta_j - delta_ell);
/// the two routes must agree to 1e-12
double beta_transverse(std::size_t j, double kappa, std::size_t ell, double p);

BifurcationPrediction predict(const SpectralParams& params, std::size_t ell);

/// midpoint-rule quadrature of int W2(x,y) sin(2 pi ell y) dy;
/// verification oracle against delta_ell * sin(2 pi ell x)
double kernel_mode_integral(std::size_t ell, double kappa, double x,
                            std::size_t quadrature_m);
/// cosine companion
double kernel_mode_integral_cos(std::size_t ell, double kappa, double x,
                                std::size_t quadrature_m);

/// m x m midpoint discretization of the linearized operator applied to phi,
/// difference form: (L phi)_i = (1/m) sum_j (p - 2K W2(x_i,x_j)) (phi_j - phi_i)
std::vector<double> apply_discretized_operator(const std::vector<double>& phi,
                                               const SpectralParams& params);

} // namespace km
