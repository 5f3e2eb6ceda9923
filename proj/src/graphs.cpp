#include "km/graphs.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace km {

Graphon Graphon::uniform(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("uniform graphon requires p in [0,1]");
    Graphon g;
    g.kind = Kind::Uniform;
    g.p = p;
    return g;
}

Graphon Graphon::nearest_neighbor(double kappa) {
    if (!(kappa > 0.0 && kappa < 0.5))
        throw std::invalid_argument("nearest-neighbor graphon requires kappa in (0,1/2)");
    Graphon g;
    g.kind = Kind::NearestNeighbor;
    g.kappa = kappa;
    return g;
}

double Graphon::operator()(double x, double y) const {
    if (kind == Kind::Uniform) return p;
    const double d = std::fabs(x - y);
    return (d <= kappa || d >= 1.0 - kappa) ? 1.0 : 0.0;
}

double cell_average(const Graphon& g, std::size_t n, std::size_t i, std::size_t j) {
    if (i < 1 || i > n || j < 1 || j > n)
        throw std::out_of_range("cell_average: index out of range");
    if (g.kind == Graphon::Kind::Uniform) return g.p;
    // W2^n is constant on each cell, so the average is the cell value.
    const double d = std::fabs(static_cast<double>(i) - static_cast<double>(j));
    const double nk = static_cast<double>(n) * g.kappa;
    return (d <= nk || d >= static_cast<double>(n) - nk) ? 1.0 : 0.0;
}

double WeightedGraph::weight(std::size_t i, std::size_t j) const {
    switch (structure_) {
    case Structure::UniformConstant:
        return p_;
    case Structure::CirculantBand: {
        const std::size_t d = i > j ? i - j : j - i;
        return (d <= band_ || d >= n_ - band_) ? 1.0 : 0.0;
    }
    case Structure::RandomDense:
        return dense_[i * n_ + j];
    case Structure::RandomSparse: {
        for (std::uint32_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            if (col_idx_[k] == j) return 1.0;
        return 0.0;
    }
    }
    return 0.0;
}

std::vector<double> WeightedGraph::densify() const {
    if (structure_ == Structure::RandomDense) return dense_;
    std::vector<double> m(n_ * n_, 0.0);
    if (structure_ == Structure::RandomSparse) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::uint32_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
                m[i * n_ + col_idx_[k]] = 1.0;
    } else {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                m[i * n_ + j] = weight(i, j);
    }
    return m;
}

std::size_t WeightedGraph::edge_count_upper() const {
    std::size_t c = 0;
    if (structure_ == Structure::RandomSparse) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::uint32_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
                if (col_idx_[k] >= i) ++c;
        return c;
    }
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j)
            if (weight(i, j) != 0.0) ++c;
    return c;
}

WeightedGraph WeightedGraph::make_uniform_constant(std::size_t n, double p) {
    WeightedGraph g;
    g.n_ = n;
    g.structure_ = Structure::UniformConstant;
    g.p_ = p;
    return g;
}

WeightedGraph WeightedGraph::make_circulant_band(std::size_t n, std::size_t band) {
    WeightedGraph g;
    g.n_ = n;
    g.structure_ = Structure::CirculantBand;
    g.band_ = band;
    return g;
}

WeightedGraph WeightedGraph::make_random_dense(std::size_t n, std::vector<double> w01) {
    if (w01.size() != n * n)
        throw std::invalid_argument("make_random_dense: size mismatch");
    WeightedGraph g;
    g.n_ = n;
    g.structure_ = Structure::RandomDense;
    g.dense_ = std::move(w01);
    return g;
}

WeightedGraph WeightedGraph::make_random_sparse(std::size_t n, double alpha,
                                                std::vector<std::uint32_t> row_ptr,
                                                std::vector<std::uint32_t> col_idx) {
    WeightedGraph g;
    g.n_ = n;
    g.alpha_ = alpha;
    g.structure_ = Structure::RandomSparse;
    g.row_ptr_ = std::move(row_ptr);
    g.col_idx_ = std::move(col_idx);
    return g;
}

WeightedGraph sample_deterministic_dense(const Graphon& g, std::size_t n) {
    if (n < 2) throw std::invalid_argument("sample_deterministic_dense: n >= 2 required");
    if (g.kind == Graphon::Kind::Uniform)
        return WeightedGraph::make_uniform_constant(n, g.p);
    // cell rule |i-j| <= n*kappa with exact real comparison; the integer
    // distances satisfying it are 0..floor(n*kappa) (equality included when
    // n*kappa is an integer)
    const std::size_t band = static_cast<std::size_t>(std::floor(
        static_cast<double>(n) * g.kappa));
    return WeightedGraph::make_circulant_band(n, band);
}

WeightedGraph sample_random_dense(const Graphon& g, std::size_t n, Rng& rng) {
    std::vector<double> w(n * n, 0.0);
    // draw the upper triangle incl. diagonal, mirror for the undirected graph
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double pij = cell_average(g, n, i + 1, j + 1);
            const double v = rng.bernoulli(pij) ? 1.0 : 0.0;
            w[i * n + j] = v;
            w[j * n + i] = v;
        }
    return WeightedGraph::make_random_dense(n, std::move(w));
}

WeightedGraph sample_random_sparse(const Graphon& g, std::size_t n, double gamma, Rng& rng) {
    if (!(gamma > 0.0 && gamma < 0.5))
        throw std::invalid_argument("sample_random_sparse: gamma in (0,1/2) required");
    const double alpha = std::pow(static_cast<double>(n), -gamma);
    const double inv_alpha = 1.0 / alpha;
    // adjacency sets per row, built from the upper triangle and mirrored
    std::vector<std::vector<std::uint32_t>> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double w = std::min(inv_alpha, cell_average(g, n, i + 1, j + 1));
            if (rng.bernoulli(alpha * w)) {
                rows[i].push_back(static_cast<std::uint32_t>(j));
                if (j != i) rows[j].push_back(static_cast<std::uint32_t>(i));
            }
        }
    std::vector<std::uint32_t> row_ptr(n + 1, 0), col_idx;
    for (std::size_t i = 0; i < n; ++i)
        row_ptr[i + 1] = row_ptr[i] + static_cast<std::uint32_t>(rows[i].size());
    col_idx.reserve(row_ptr[n]);
    for (auto& r : rows) col_idx.insert(col_idx.end(), r.begin(), r.end());
    return WeightedGraph::make_random_sparse(n, alpha, std::move(row_ptr), std::move(col_idx));
}

void dump_graph_csv(const WeightedGraph& g, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("dump_graph_csv: cannot open " + path);
    std::fprintf(f, "i,j,w\n");
    const std::size_t n = g.n();
    if (g.is_sparse()) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint32_t k = g.row_ptr()[i]; k < g.row_ptr()[i + 1]; ++k) {
                const std::uint32_t j = g.col_idx()[k];
                if (j >= i) std::fprintf(f, "%zu,%u,1\n", i + 1, j + 1);
            }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double w = g.weight(i, j);
                if (w != 0.0) std::fprintf(f, "%zu,%zu,%.12g\n", i + 1, j + 1, w);
            }
    }
    std::fclose(f);
}

} // namespace km
