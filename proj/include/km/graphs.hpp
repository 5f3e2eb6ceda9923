#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "km/rng.hpp"

namespace km {

/// Analytic kernel W(x,y) on the unit square.
struct Graphon {
    enum class Kind { Uniform, NearestNeighbor };

    Kind kind;
    double p = 1.0;     // Uniform level, in (0,1]
    double kappa = 0.0; // NearestNeighbor half-width, in (0,1/2)

    static Graphon uniform(double p);
    static Graphon nearest_neighbor(double kappa);

    // pointwise kernel value
    double operator()(double x, double y) const;
};

/// Sampled n-node weight structure. Dense regimes keep the full matrix;
/// the random sparse regime keeps a row-compressed 0/1 adjacency.
/// Immutable after construction.
class WeightedGraph {
public:
    enum class Structure {
        UniformConstant, // dense, every entry equals p
        CirculantBand,   // dense 0/1 band with wraparound, half-width band
        RandomDense,     // dense 0/1
        RandomSparse     // CSR 0/1
    };

    std::size_t n() const { return n_; }
    double alpha() const { return alpha_; }
    Structure structure() const { return structure_; }
    bool is_sparse() const { return structure_ == Structure::RandomSparse; }

    double uniform_level() const { return p_; }        // UniformConstant only
    std::size_t band_half_width() const { return band_; } // CirculantBand only

    // entry access, any structure
    double weight(std::size_t i, std::size_t j) const;

    // dense row-major matrix; materializes sparse/implicit structures
    std::vector<double> densify() const;

    const std::vector<double>& dense() const { return dense_; }
    const std::vector<std::uint32_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::uint32_t>& col_idx() const { return col_idx_; }

    std::size_t edge_count_upper() const; // nonzero unordered pairs incl. diagonal

    static WeightedGraph make_uniform_constant(std::size_t n, double p);
    static WeightedGraph make_circulant_band(std::size_t n, std::size_t band);
    static WeightedGraph make_random_dense(std::size_t n, std::vector<double> w01);
    static WeightedGraph make_random_sparse(std::size_t n, double alpha,
                                            std::vector<std::uint32_t> row_ptr,
                                            std::vector<std::uint32_t> col_idx);

private:
    std::size_t n_ = 0;
    double alpha_ = 1.0;
    Structure structure_ = Structure::UniformConstant;
    double p_ = 0.0;
    std::size_t band_ = 0;
    std::vector<double> dense_;              // RandomDense (and materialized views)
    std::vector<std::uint32_t> row_ptr_, col_idx_; // RandomSparse
};

/// n^2 * integral of W over the cell I_i x I_j, 1-based indices.
/// Uniform: p. NearestNeighbor: the cell rule, 1 iff |i-j| <= n*kappa
/// or |i-j| >= n*(1-kappa), exact real comparison.
double cell_average(const Graphon& g, std::size_t n, std::size_t i, std::size_t j);

WeightedGraph sample_deterministic_dense(const Graphon& g, std::size_t n);
WeightedGraph sample_random_dense(const Graphon& g, std::size_t n, Rng& rng);
WeightedGraph sample_random_sparse(const Graphon& g, std::size_t n, double gamma, Rng& rng);

/// CSV triplets `i,j,w` (1-based, upper triangle only, zero entries skipped).
void dump_graph_csv(const WeightedGraph& g, const std::string& path);

} // namespace km
