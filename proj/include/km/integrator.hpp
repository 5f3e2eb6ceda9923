#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace km {

struct IntegratorConfig {
    double rtol = 1e-8;
    double atol = 1e-10;
    double t_end = 100.0;
    double sample_every = 0.0;   // 0: keep only initial and final state
    std::size_t max_steps = 100'000'000;
    // optional early stop: max-norm of the derivative below this threshold
    double steady_rhs_tol = 0.0; // 0: disabled
};

enum class IntegrationStatus { Done, SteadyState, StepUnderflow, StepBudgetExhausted };

struct IntegrationResult {
    IntegrationStatus status = IntegrationStatus::Done;
    double t = 0.0;
    std::vector<double> u;                    // state at t (last good state on failure)
    std::vector<double> sample_times;         // sampling stride outputs
    std::vector<std::vector<double>> samples;
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
    bool failed() const {
        return status == IntegrationStatus::StepUnderflow ||
               status == IntegrationStatus::StepBudgetExhausted;
    }
};

using RhsFn = std::function<void(double t, const std::vector<double>& u,
                                 std::vector<double>& du)>;

// Adaptive explicit Runge-Kutta, Dormand-Prince 5(4) with FSAL and
// PI-like step control (safety 0.9, step ratio clamped to [0.2, 10]).
// Per-step error is measured against atol + rtol*max(|u_i|,|u_new_i|).
IntegrationResult integrate(const RhsFn& rhs, double t0, std::vector<double> u0,
                            const IntegratorConfig& cfg);

} // namespace km
