#include "km/harness.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace km {

namespace {

using nlohmann::json;

std::string sampling_name(Sampling s) {
    switch (s) {
    case Sampling::Deterministic: return "deterministic";
    case Sampling::RandomDense: return "random_dense";
    case Sampling::RandomSparse: return "random_sparse";
    }
    return "";
}

Sampling sampling_from(const std::string& s) {
    if (s == "deterministic") return Sampling::Deterministic;
    if (s == "random_dense") return Sampling::RandomDense;
    if (s == "random_sparse") return Sampling::RandomSparse;
    throw std::invalid_argument("unknown sampling: " + s);
}

WeightedGraph sample_graph1(const ExperimentConfig& cfg, Rng& rng) {
    const auto g = Graphon::uniform(cfg.p);
    switch (cfg.sampling) {
    case Sampling::Deterministic: return sample_deterministic_dense(g, cfg.n);
    case Sampling::RandomDense: return sample_random_dense(g, cfg.n, rng);
    case Sampling::RandomSparse: return sample_random_sparse(g, cfg.n, cfg.gamma, rng);
    }
    throw std::logic_error("unreachable");
}

std::FILE* open_or_throw(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + path);
    return f;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    const json j = json::parse(text);
    ExperimentConfig cfg;
    const auto& g1 = j.at("graph1");
    cfg.p = g1.at("p").get<double>();
    cfg.sampling = sampling_from(g1.at("sampling").get<std::string>());
    if (g1.contains("gamma")) cfg.gamma = g1.at("gamma").get<double>();
    cfg.kappa = j.at("graph2").at("kappa").get<double>();
    cfg.n = j.at("n").get<std::size_t>();
    cfg.K = j.at("K").get<double>();
    if (j.contains("omega")) cfg.omega = j.at("omega").get<double>();
    const auto& ic = j.at("ic");
    const std::string mode = ic.at("mode").get<std::string>();
    if (mode == "wide")
        cfg.ic_mode = IcMode::Wide;
    else if (mode == "narrow")
        cfg.ic_mode = IcMode::Narrow;
    else
        throw std::invalid_argument("unknown ic mode: " + mode);
    cfg.seed = ic.at("seed").get<std::uint64_t>();
    if (j.contains("integrator")) {
        const auto& it = j.at("integrator");
        if (it.contains("rtol")) cfg.integrator.rtol = it.at("rtol").get<double>();
        if (it.contains("atol")) cfg.integrator.atol = it.at("atol").get<double>();
        if (it.contains("t_end")) cfg.integrator.t_end = it.at("t_end").get<double>();
        if (it.contains("sample_every"))
            cfg.integrator.sample_every = it.at("sample_every").get<double>();
        if (it.contains("max_steps"))
            cfg.integrator.max_steps = it.at("max_steps").get<std::size_t>();
        if (it.contains("steady_rhs_tol"))
            cfg.integrator.steady_rhs_tol = it.at("steady_rhs_tol").get<double>();
    }
    if (j.contains("fit") && j.at("fit").contains("ell_max"))
        cfg.ell_max = j.at("fit").at("ell_max").get<std::size_t>();
    if (j.contains("node_stride")) cfg.node_stride = j.at("node_stride").get<std::size_t>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    return cfg;
}

std::string ExperimentConfig::to_json_text() const {
    json j;
    j["graph1"] = {{"kind", "uniform"}, {"p", p}, {"sampling", sampling_name(sampling)}};
    if (sampling == Sampling::RandomSparse) j["graph1"]["gamma"] = gamma;
    j["graph2"] = {{"kind", "nearest_neighbor"}, {"kappa", kappa},
                   {"sampling", "deterministic"}};
    j["n"] = n;
    j["K"] = K;
    j["omega"] = omega;
    j["ic"] = {{"mode", ic_mode == IcMode::Wide ? "wide" : "narrow"}, {"seed", seed}};
    j["integrator"] = {{"rtol", integrator.rtol},
                       {"atol", integrator.atol},
                       {"t_end", integrator.t_end},
                       {"sample_every", integrator.sample_every},
                       {"max_steps", integrator.max_steps},
                       {"steady_rhs_tol", integrator.steady_rhs_tol}};
    j["fit"] = {{"ell_max", ell_max}};
    j["node_stride"] = node_stride;
    j["out"] = out_dir;
    return j.dump(2);
}

void write_final_state_csv(const std::vector<double>& u, const std::string& path) {
    std::FILE* f = open_or_throw(path);
    std::fprintf(f, "i,x,phase\n");
    const double dn = static_cast<double>(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        std::fprintf(f, "%zu,%.15g,%.15g\n", i + 1,
                     (2.0 * static_cast<double>(i) + 1.0) / (2.0 * dn), u[i]);
    std::fclose(f);
}

std::vector<double> read_final_state_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    std::getline(in, line); // header
    std::vector<double> u;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("malformed final-state CSV line: " + line);
        u.push_back(std::stod(line.substr(c2 + 1)));
    }
    return u;
}

void write_fit_csv(const SinusoidFit& fit, const std::string& path) {
    std::FILE* f = open_or_throw(path);
    std::fprintf(f, "ell,r,psi,theta,residual\n");
    std::fprintf(f, "%zu,%.15g,%.15g,%.15g,%.15g\n", fit.ell, fit.r, fit.psi,
                 fit.theta, fit.residual);
    std::fclose(f);
}

void write_prediction_csv(const BifurcationPrediction& b, const SpectralParams& sp,
                          const std::string& path) {
    std::FILE* f = open_or_throw(path);
    std::fprintf(f, "kappa,p,K,ell,K_crit,mu,beta,r_pred\n");
    std::fprintf(f, "%.15g,%.15g,%.15g,%zu,%.15g,%.15g,%.15g,%.15g\n", sp.kappa,
                 sp.p, sp.K, b.ell, b.K_crit, b.mu, b.beta, b.r_pred);
    std::fclose(f);
}

SimulationOutput run_simulation(const ExperimentConfig& cfg, bool write_outputs) {
    namespace fs = std::filesystem;
    Rng rng(cfg.seed);
    const WeightedGraph g1 = sample_graph1(cfg, rng);
    const WeightedGraph g2 =
        sample_deterministic_dense(Graphon::nearest_neighbor(cfg.kappa), cfg.n);

    KmParams params{.omega = cfg.omega, .K = cfg.K, .p = cfg.p,
                    .kappa = cfg.kappa, .n = cfg.n};
    PhaseState ic = initial_condition(cfg.ic_mode, cfg.n, rng);

    IntegratorConfig icfg = cfg.integrator;
    if (cfg.omega != 0.0) icfg.steady_rhs_tol = 0.0; // rhs never vanishes
    IntegrationResult res = integrate_km(ic, g1, g2, params, icfg);

    SimulationOutput out;
    out.status = res.status;
    out.t_final = res.t;
    out.final_state.t = res.t;
    out.final_state.u = res.u;
    out.fit = select_mode(res.u, cfg.ell_max);
    out.dist_sync = distance_to_sync(res.u);

    const SpectralParams sp{cfg.p, cfg.kappa, cfg.K};
    const auto mc = min_critical(cfg.kappa, cfg.p);
    out.prediction = predict(sp, mc.ell);

    if (write_outputs) {
        fs::create_directories(cfg.out_dir);
        const fs::path dir(cfg.out_dir);

        std::FILE* f = open_or_throw((dir / "trajectory.csv").string());
        std::fprintf(f, "t,node,phase\n");
        const std::size_t stride = std::max<std::size_t>(1, cfg.node_stride);
        for (std::size_t s = 0; s < res.sample_times.size(); ++s)
            for (std::size_t i = stride / 2; i < cfg.n; i += stride)
                std::fprintf(f, "%.15g,%zu,%.15g\n", res.sample_times[s], i + 1,
                             res.samples[s][i]);
        std::fclose(f);

        write_final_state_csv(res.u, (dir / "final_state.csv").string());
        write_fit_csv(out.fit, (dir / "fit.csv").string());
        write_prediction_csv(out.prediction, sp, (dir / "prediction.csv").string());

        json meta = json::parse(cfg.to_json_text());
        meta["alpha"] = g1.alpha();
        meta["status"] = res.failed() ? "numerical_failure"
                         : res.status == IntegrationStatus::SteadyState ? "steady_state"
                                                                        : "done";
        meta["t_final"] = res.t;
        meta["steps_accepted"] = res.steps_accepted;
        meta["steps_rejected"] = res.steps_rejected;
        meta["timestamp"] = static_cast<std::uint64_t>(std::time(nullptr));
        std::ofstream mf(dir / "metadata.json");
        mf << meta.dump(2) << "\n";
    }

    if (res.failed())
        throw std::runtime_error("run_simulation: numerical failure (partial outputs written)");
    return out;
}

std::vector<SweepPoint> run_bifurcation_sweep(const ExperimentConfig& cfg,
                                              const std::vector<double>& K_grid,
                                              bool reseed_per_point) {
    if (K_grid.empty())
        throw std::invalid_argument("run_bifurcation_sweep: empty K grid");
    std::vector<SweepPoint> points(K_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < K_grid.size(); ++k) {
        ExperimentConfig c = cfg;
        c.K = K_grid[k];
        if (reseed_per_point) c.seed = cfg.seed + k;
        SweepPoint& pt = points[k];
        pt.K = c.K;
        try {
            SimulationOutput out = run_simulation(c, /*write_outputs=*/false);
            pt.ell = out.fit.ell;
            pt.r_fit = out.fit.r;
            pt.psi = out.fit.psi;
            pt.theta = out.fit.theta;
            pt.residual = out.fit.residual;
            pt.r_pred = out.prediction.r_pred;
        } catch (const std::exception&) {
            pt.failed = true;
        }
    }
    return points;
}

void write_sweep_csv(const std::vector<SweepPoint>& points, const std::string& path) {
    std::FILE* f = open_or_throw(path);
    std::fprintf(f, "K,ell,r_fit,psi,theta,residual,r_pred,failed\n");
    for (const auto& pt : points)
        std::fprintf(f, "%.15g,%zu,%.15g,%.15g,%.15g,%.15g,%.15g,%d\n", pt.K, pt.ell,
                     pt.r_fit, pt.psi, pt.theta, pt.residual, pt.r_pred,
                     pt.failed ? 1 : 0);
    std::fclose(f);
}

void run_kcrit_table(const std::vector<double>& kappa_grid, double p,
                     std::size_t ell_lo, std::size_t ell_hi, const std::string& path) {
    std::FILE* f = open_or_throw(path);
    std::fprintf(f, "kappa,ell,K_ell,is_min\n");
    for (double kappa : kappa_grid) {
        const auto mc = min_critical(kappa, p);
        for (std::size_t ell = ell_lo; ell <= ell_hi; ++ell)
            std::fprintf(f, "%.15g,%zu,%.15g,%d\n", kappa, ell,
                         critical_coupling(ell, kappa, p), ell == mc.ell ? 1 : 0);
    }
    std::fclose(f);
}

void dump_graph_pixels(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);
    Rng rng(cfg.seed);
    const WeightedGraph g1 = sample_graph1(cfg, rng);
    dump_graph_csv(g1, (dir / "graph1.csv").string());
    const WeightedGraph g2 =
        sample_deterministic_dense(Graphon::nearest_neighbor(cfg.kappa), cfg.n);
    dump_graph_csv(g2, (dir / "graph2.csv").string());

    json meta;
    meta["graph1"] = {{"kind", "uniform"},      {"n", cfg.n},
                      {"p", cfg.p},             {"kappa", nullptr},
                      {"gamma", cfg.sampling == Sampling::RandomSparse
                                    ? json(cfg.gamma) : json(nullptr)},
                      {"seed", cfg.seed},       {"alpha", g1.alpha()},
                      {"sampling", sampling_name(cfg.sampling)}};
    meta["graph2"] = {{"kind", "nearest_neighbor"}, {"n", cfg.n},
                      {"p", nullptr},               {"kappa", cfg.kappa},
                      {"gamma", nullptr},           {"seed", nullptr},
                      {"alpha", 1.0},               {"sampling", "deterministic"}};
    std::ofstream mf(dir / "graphs_metadata.json");
    mf << meta.dump(2) << "\n";
}

} // namespace km
