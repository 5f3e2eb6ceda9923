#pragma once

#include <cstddef>
#include <vector>

#include "km/graphs.hpp"
#include "km/integrator.hpp"
#include "km/rng.hpp"

namespace km {

struct KmParams {
    double omega = 0.0; // natural frequency
    double K = 0.0;     // second-mode coupling
    double p = 1.0;
    double kappa = 0.0;
    std::size_t n = 0;
};

/// Phases stored as unwrapped reals; interpreted mod 2pi only at reporting.
struct PhaseState {
    double t = 0.0;
    std::vector<double> u;
};

/// du_i/dt = omega + (1/(n a1)) sum_j w1_ij sin(u_j - u_i)
///                 - (K/(n a2)) sum_j w2_ij sin 2(u_j - u_i)
/// Reference implementation: plain double loop over dense matrices.
void rhs_naive(const std::vector<double>& u, const std::vector<double>& w1_dense,
               double alpha1, const std::vector<double>& w2_dense, double alpha2,
               const KmParams& params, std::vector<double>& du);

/// Mathematically identical to rhs_naive; structure-aware kernels:
/// uniform constant graph O(n), circulant band O(n) via sliding window
/// prefix sums, random graphs via matrix products against
/// (sin au, cos au). OpenMP-parallel inner loops.
void rhs_fast(const std::vector<double>& u, const WeightedGraph& g1,
              const WeightedGraph& g2, const KmParams& params,
              std::vector<double>& du);

enum class IcMode { Wide, Narrow };

/// Wide: i.i.d. uniform on [-pi,pi]. Narrow: i.i.d. uniform on [-1e-3,1e-3].
PhaseState initial_condition(IcMode mode, std::size_t n, Rng& rng);

/// min over theta of the discrete L2 distance to the constant state u=theta;
/// theta taken as the circular mean of the phases.
double distance_to_sync(const std::vector<double>& u);

/// min over cyclic shifts l and offsets theta of ||u - T^l ref - theta||
/// (discrete L2, theta by circular mean per shift). O(n^2) direct scan.
double distance_to_family(const std::vector<double>& u, const std::vector<double>& ref);

/// Continuum limit on an m-point midpoint grid: coincides with the KM on the
/// deterministic-dense sampled graphs at n = m.
IntegrationResult cl_simulate(const std::vector<double>& g0, const KmParams& params,
                              const IntegratorConfig& cfg);

/// Closed-form solution of dr/dt = mu r - beta r^3 at t_end.
double amplitude_ode_solve(double mu, double beta, double r0, double t_end);

IntegrationResult integrate_km(const PhaseState& state0, const WeightedGraph& g1,
                               const WeightedGraph& g2, const KmParams& params,
                               const IntegratorConfig& cfg);

} // namespace km
