#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "km/dynamics.hpp"
#include "km/fitting.hpp"
#include "km/graphs.hpp"
#include "km/spectral.hpp"

namespace km {

enum class Sampling { Deterministic, RandomDense, RandomSparse };

struct ExperimentConfig {
    // graph1: uniform graphon, one of the three sampling regimes
    double p = 1.0;
    Sampling sampling = Sampling::Deterministic;
    double gamma = 0.3; // sparse only
    // graph2: deterministic nearest neighbor
    double kappa = 1.0 / 3.0;

    std::size_t n = 500;
    double K = 0.65;
    double omega = 0.0;

    IcMode ic_mode = IcMode::Narrow;
    std::uint64_t seed = 1;

    IntegratorConfig integrator{.rtol = 1e-8,
                                .atol = 1e-10,
                                .t_end = 5000.0,
                                .sample_every = 10.0,
                                .max_steps = 100'000'000,
                                .steady_rhs_tol = 1e-9};
    std::size_t ell_max = 32;
    std::size_t node_stride = 50; // trajectory CSV node subsampling

    std::string out_dir = ".";

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json_text() const;
};

struct SimulationOutput {
    PhaseState final_state;
    SinusoidFit fit;
    BifurcationPrediction prediction;
    IntegrationStatus status = IntegrationStatus::Done;
    double t_final = 0.0;
    double dist_sync = 0.0;
};

/// Samples graphs, draws the IC, integrates, fits, predicts; writes
/// trajectory.csv, final_state.csv, fit.csv, prediction.csv, metadata.json
/// under cfg.out_dir (skipped when write_outputs is false).
SimulationOutput run_simulation(const ExperimentConfig& cfg, bool write_outputs = true);

struct SweepPoint {
    double K = 0.0;
    std::size_t ell = 0;
    double r_fit = 0.0;
    double psi = 0.0;
    double theta = 0.0;
    double residual = 0.0;
    double r_pred = 0.0;
    bool failed = false;
};

/// One run_simulation per K; fixed seed unless reseed_per_point.
/// Output ordered by K. Per-point failures recorded, sweep continues.
std::vector<SweepPoint> run_bifurcation_sweep(const ExperimentConfig& cfg,
                                              const std::vector<double>& K_grid,
                                              bool reseed_per_point = false);
void write_sweep_csv(const std::vector<SweepPoint>& points, const std::string& path);

/// K_ell(kappa) table; flags the minimizing ell per kappa.
void run_kcrit_table(const std::vector<double>& kappa_grid, double p,
                     std::size_t ell_lo, std::size_t ell_hi, const std::string& path);

/// Sampled weight structure in the graphs dump format plus metadata sidecar.
void dump_graph_pixels(const ExperimentConfig& cfg);

void write_final_state_csv(const std::vector<double>& u, const std::string& path);
void write_fit_csv(const SinusoidFit& fit, const std::string& path);
void write_prediction_csv(const BifurcationPrediction& b, const SpectralParams& sp,
                          const std::string& path);
std::vector<double> read_final_state_csv(const std::string& path);

} // namespace km
