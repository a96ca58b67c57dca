#pragma once

#include <vector>

#include "graphdim/variance.hpp"

namespace graphdim {

struct HolderIndexEstimate {
    double point = 0.0;
    double alpha_upper = 0.0;
    double alpha_lower = 0.0;
    std::vector<double> deltas_used;
    std::vector<double> alpha_grid;
    // supremum_table[a][d]: sup of the tested ratio at alpha_grid[a] over
    // the pair sample in the window of radius deltas_used[d]
    std::vector<std::vector<double>> supremum_table;
    bool plateau_pairs_skipped = false;  // zero V-differences seen (lower only)
};

// Knobs for the grid search over (alpha, delta). The defaults are
// calibrated so the power-law test points recover their known indices;
// the true definitions involve limits that a finite sample cannot take.
struct HolderParams {
    std::vector<double> deltas;      // strictly decreasing window radii
    std::vector<double> alpha_grid;  // strictly increasing candidates
    int pairs_per_window = 17;       // uniform grid points per window
    int geometric_depth = 40;        // extra points/gaps t +- delta 2^-j
    double decay_factor = 0.5;       // accept: last sup < factor * first sup
    double absolute_cap = 1.0;       //     and last sup < cap
};

HolderParams default_upper_params();
HolderParams default_lower_params();

// Largest alpha on the grid for which sup |V(u1)-V(u2)| / |u1-u2|^alpha
// over the stratified pair sample decays as the window shrinks.
HolderIndexEstimate estimate_upper_index(const VarianceFunction& v, double t,
                                         const HolderParams& params = default_upper_params());

// Smallest alpha on the grid for which sup |u1-u2|^alpha / |V(u1)-V(u2)|
// decays. Requires a strictly increasing catalog entry.
HolderIndexEstimate estimate_lower_index(const VarianceFunction& v, double t,
                                         const HolderParams& params = default_lower_params());

// Signature-compatible overloads taking the grids directly.
HolderIndexEstimate estimate_upper_index(const VarianceFunction& v, double t,
                                         const std::vector<double>& deltas,
                                         const std::vector<double>& alpha_grid,
                                         int pairs_per_window);
HolderIndexEstimate estimate_lower_index(const VarianceFunction& v, double t,
                                         const std::vector<double>& deltas,
                                         const std::vector<double>& alpha_grid,
                                         int pairs_per_window);

} // namespace graphdim
