#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "km/harness.hpp"

namespace {

// exit codes: 0 ok, 1 usage/config, 2 numerical failure, 3 I/O failure
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

km::ExperimentConfig load_config(const std::string& config_path,
                                 std::uint64_t seed_override, bool have_seed,
                                 const std::string& out_override) {
    km::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = km::ExperimentConfig::from_json_file(config_path);
    if (have_seed) cfg.seed = seed_override;
    if (!out_override.empty()) cfg.out_dir = out_override;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-mode Kuramoto simulation and bifurcation analysis"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    bool have_seed = false;
    app.add_option("--config", config_path, "experiment config (JSON)");
    app.add_option("--seed", seed, "RNG seed override")->each([&](const std::string&) {
        have_seed = true;
    });
    app.add_option("--out", out_dir, "output directory override");

    auto* sc_sample = app.add_subcommand("sample-graph", "sample graphs, dump pixel CSVs");
    auto* sc_sim = app.add_subcommand("simulate", "run one simulation");
    auto* sc_sweep = app.add_subcommand("sweep", "bifurcation sweep over K");
    double k_min = 0.6, k_max = 0.7, k_step = 0.01;
    bool reseed = false;
    sc_sweep->add_option("--k-min", k_min, "first K value");
    sc_sweep->add_option("--k-max", k_max, "last K value (inclusive)");
    sc_sweep->add_option("--k-step", k_step, "K increment");
    sc_sweep->add_flag("--reseed-per-point", reseed, "independent seed per sweep point");

    auto* sc_kcrit = app.add_subcommand("kcrit", "tabulate K_ell(kappa) curves");
    double kappa_min = 0.01, kappa_max = 0.49;
    std::size_t kappa_count = 100, ell_lo = 1, ell_hi = 10;
    double kcrit_p = 1.0;
    sc_kcrit->add_option("--kappa-min", kappa_min);
    sc_kcrit->add_option("--kappa-max", kappa_max);
    sc_kcrit->add_option("--kappa-count", kappa_count);
    sc_kcrit->add_option("--ell-min", ell_lo);
    sc_kcrit->add_option("--ell-max", ell_hi);
    sc_kcrit->add_option("--p", kcrit_p);

    auto* sc_predict = app.add_subcommand("predict", "spectral bifurcation prediction");
    double pr_p = 1.0, pr_kappa = 1.0 / 3.0, pr_K = 0.65;
    std::size_t pr_ell = 0;
    sc_predict->add_option("--p", pr_p);
    sc_predict->add_option("--kappa", pr_kappa)->required();
    sc_predict->add_option("--K", pr_K)->required();
    sc_predict->add_option("--ell", pr_ell, "mode (default: minimizer of K_j)");

    auto* sc_fit = app.add_subcommand("fit", "fit an existing final-state CSV");
    std::string fit_input;
    std::size_t fit_ell_max = 32;
    sc_fit->add_option("--input", fit_input, "final-state CSV")->required();
    sc_fit->add_option("--ell-max", fit_ell_max);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc_sample->parsed()) {
            auto cfg = load_config(config_path, seed, have_seed, out_dir);
            km::dump_graph_pixels(cfg);
        } else if (sc_sim->parsed()) {
            auto cfg = load_config(config_path, seed, have_seed, out_dir);
            auto out = km::run_simulation(cfg);
            std::printf("t_final=%.6g ell=%zu r=%.6g psi=%.6g theta=%.6g "
                        "residual=%.3g r_pred=%.6g dist_sync=%.3g\n",
                        out.t_final, out.fit.ell, out.fit.r, out.fit.psi,
                        out.fit.theta, out.fit.residual, out.prediction.r_pred,
                        out.dist_sync);
        } else if (sc_sweep->parsed()) {
            auto cfg = load_config(config_path, seed, have_seed, out_dir);
            std::vector<double> grid;
            for (double K = k_min; K <= k_max + 1e-12; K += k_step) grid.push_back(K);
            auto pts = km::run_bifurcation_sweep(cfg, grid, reseed);
            std::filesystem::create_directories(cfg.out_dir);
            km::write_sweep_csv(pts, cfg.out_dir + "/bifurcation.csv");
            for (const auto& pt : pts)
                if (pt.failed) return kExitNumerical;
        } else if (sc_kcrit->parsed()) {
            std::vector<double> grid;
            for (std::size_t i = 0; i < kappa_count; ++i)
                grid.push_back(kappa_min + (kappa_max - kappa_min) *
                                               static_cast<double>(i) /
                                               static_cast<double>(kappa_count - 1));
            const std::string dir = out_dir.empty() ? "." : out_dir;
            std::filesystem::create_directories(dir);
            km::run_kcrit_table(grid, kcrit_p, ell_lo, ell_hi, dir + "/kcrit.csv");
        } else if (sc_predict->parsed()) {
            const km::SpectralParams sp{pr_p, pr_kappa, pr_K};
            const std::size_t ell =
                pr_ell > 0 ? pr_ell : km::min_critical(pr_kappa, pr_p).ell;
            const auto b = km::predict(sp, ell);
            std::printf("kappa,p,K,ell,K_crit,mu,beta,r_pred\n");
            std::printf("%.15g,%.15g,%.15g,%zu,%.15g,%.15g,%.15g,%.15g\n", sp.kappa,
                        sp.p, sp.K, b.ell, b.K_crit, b.mu, b.beta, b.r_pred);
        } else if (sc_fit->parsed()) {
            const auto u = km::read_final_state_csv(fit_input);
            const auto fit = km::select_mode(u, fit_ell_max);
            std::printf("ell,r,psi,theta,residual\n");
            std::printf("%zu,%.15g,%.15g,%.15g,%.15g\n", fit.ell, fit.r, fit.psi,
                        fit.theta, fit.residual);
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kExitIo;
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        if (what.find("cannot") != std::string::npos ||
            what.find("read") != std::string::npos) {
            std::fprintf(stderr, "I/O error: %s\n", e.what());
            return kExitIo;
        }
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return 0;
}
