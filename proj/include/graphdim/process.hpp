#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphdim/rng.hpp"
#include "graphdim/variance.hpp"

namespace graphdim {

// Strictly increasing time points in [0, S] including both endpoints.
struct TimeGrid {
    std::vector<double> points;

    static TimeGrid uniform(std::size_t n_points, double domain_end = 1.0);
    static TimeGrid from_points(std::vector<double> points);

    std::size_t size() const { return points.size(); }
    double domain_end() const { return points.back(); }
};

// One realization of X_t = B^H_{V(t)} at the grid points.
struct SamplePath {
    TimeGrid grid;
    std::vector<double> values;
    double hurst = 0.5;
    std::string v_name;
    std::uint64_t seed = 0;          // root seed
    std::uint64_t stream_index = 0;
};

// Time-changed Brownian motion: values are partial sums of independent
// N(0, V(t_{i+1}) - V(t_i)) increments, so the finite-dimensional
// distribution at the grid points is exact. Increment variances in
// [-1e-12, 0) clamp to zero; anything more negative is a catalog bug.
SamplePath sample_additive_bm(const VarianceFunction& v, const TimeGrid& grid, RngStream rng);

// Time-changed fractional Brownian motion with Hurst index H in (0,1),
// sampled exactly via dense Cholesky of the covariance
//   C(i,j) = (V_i^{2H} + V_j^{2H} - |V_i - V_j|^{2H}) / 2
// on the deduplicated V values (grid size capped at 4096). Duplicate V
// values share one Gaussian coordinate, so plateaus stay exactly flat.
SamplePath sample_additive_fbm(const VarianceFunction& v, double hurst, const TimeGrid& grid,
                               RngStream rng);

inline constexpr std::size_t kMaxFbmGridSize = 4096;

} // namespace graphdim
