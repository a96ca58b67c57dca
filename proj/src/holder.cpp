#include "graphdim/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphdim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> dyadic_deltas(int k_min, int k_max) {
    std::vector<double> out;
    for (int k = k_min; k <= k_max; ++k) out.push_back(std::ldexp(1.0, -k));
    return out;
}

std::vector<double> linspace_grid(double lo, double hi, double step) {
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double a = lo + step * static_cast<double>(i);
        if (a > hi + 1e-12) break;
        out.push_back(a);
    }
    return out;
}

// One pair's contribution, cached in the log domain so the per-alpha sweep
// is a fused multiply-add instead of a pow.
struct PairLog {
    double log_gap;
    double log_dv;
};

void gather_window_pairs(const VarianceFunction& v, double t, double delta,
                         const HolderParams& params, std::vector<PairLog>& pairs,
                         bool& saw_plateau_pair) {
    pairs.clear();
    const double S = v.domain_end();
    const double lo = std::max(0.0, t - delta);
    const double hi = std::min(S, t + delta);
    if (!(hi > lo)) return;

    std::vector<double> uniform_pts;
    const int P = std::max(params.pairs_per_window, 2);
    for (int i = 0; i < P; ++i)
        uniform_pts.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(P - 1));
    std::vector<double> pts = uniform_pts;
    pts.push_back(t);
    for (int j = 0; j <= params.geometric_depth; ++j) {
        const double g = delta * std::ldexp(1.0, -j);
        if (t + g <= hi) pts.push_back(t + g);
        if (t - g >= lo) pts.push_back(t - g);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = v.eval(pts[i]);

    auto push_pair = [&](double u1, double v1, double u2, double v2) {
        const double gap = std::abs(u1 - u2);
        if (gap == 0.0) return;
        const double dv = std::abs(v1 - v2);
        if (dv == 0.0) {
            saw_plateau_pair = true;
            return;
        }
        pairs.push_back({std::log(gap), std::log(dv)});
    };

    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            push_pair(pts[i], vals[i], pts[j], vals[j]);

    // geometric gaps attached to every uniform point, so blow-ups away
    // from t are certified as well
    for (const double u : uniform_pts) {
        const double vu = v.eval(u);
        for (int j = 1; j <= params.geometric_depth; ++j) {
            const double g = delta * std::ldexp(1.0, -j);
            const double w = u + g <= hi ? u + g : u - g;
            if (w < lo || w > hi || w == u) continue;
            push_pair(u, vu, w, v.eval(w));
        }
    }
}

enum class Direction { Upper, Lower };

HolderIndexEstimate run_grid_search(const VarianceFunction& v, double t,
                                    const HolderParams& params, Direction dir) {
    if (!(t >= 0.0 && t <= v.domain_end()))
        throw std::domain_error("holder index: t outside the domain");
    if (params.deltas.size() < 2 || params.alpha_grid.empty())
        throw std::invalid_argument("holder index: need at least two deltas and one alpha");
    for (std::size_t i = 0; i + 1 < params.deltas.size(); ++i)
        if (!(params.deltas[i] > params.deltas[i + 1]))
            throw std::invalid_argument("holder index: deltas must be strictly decreasing");
    for (std::size_t i = 0; i + 1 < params.alpha_grid.size(); ++i)
        if (!(params.alpha_grid[i] < params.alpha_grid[i + 1]))
            throw std::invalid_argument("holder index: alpha grid must be strictly increasing");

    HolderIndexEstimate est;
    est.point = t;
    est.deltas_used = params.deltas;
    est.alpha_grid = params.alpha_grid;
    est.supremum_table.assign(params.alpha_grid.size(),
                              std::vector<double>(params.deltas.size(), 0.0));

    std::vector<PairLog> pairs;
    for (std::size_t d = 0; d < params.deltas.size(); ++d) {
        gather_window_pairs(v, t, params.deltas[d], params, pairs, est.plateau_pairs_skipped);
        for (std::size_t a = 0; a < params.alpha_grid.size(); ++a) {
            const double alpha = params.alpha_grid[a];
            double log_sup = -kInf;
            for (const PairLog& p : pairs) {
                const double e = dir == Direction::Upper ? p.log_dv - alpha * p.log_gap
                                                         : alpha * p.log_gap - p.log_dv;
                log_sup = std::max(log_sup, e);
            }
            est.supremum_table[a][d] = log_sup > 700.0 ? kInf : std::exp(log_sup);
        }
    }

    auto accepted = [&](std::size_t a) {
        const auto& row = est.supremum_table[a];
        const double first = row.front();
        const double last = row.back();
        return last < params.decay_factor * first && last < params.absolute_cap;
    };

    if (dir == Direction::Upper) {
        est.alpha_upper = 0.0;
        for (std::size_t a = params.alpha_grid.size(); a-- > 0;)
            if (accepted(a)) {
                est.alpha_upper = params.alpha_grid[a];
                break;
            }
        est.alpha_lower = kInf;  // not examined
    } else {
        est.alpha_lower = kInf;
        for (std::size_t a = 0; a < params.alpha_grid.size(); ++a)
            if (accepted(a)) {
                est.alpha_lower = params.alpha_grid[a];
                break;
            }
        est.alpha_upper = 0.0;  // not examined
    }
    return est;
}

} // namespace

HolderParams default_upper_params() {
    HolderParams p;
    p.deltas = dyadic_deltas(2, 26);
    p.alpha_grid = linspace_grid(0.05, 2.0, 0.05);
    p.pairs_per_window = 17;
    p.geometric_depth = 40;
    return p;
}

HolderParams default_lower_params() {
    HolderParams p;
    p.deltas = dyadic_deltas(2, 13);
    p.alpha_grid = linspace_grid(0.10, 8.0, 0.05);
    p.pairs_per_window = 17;
    p.geometric_depth = 44;
    return p;
}

HolderIndexEstimate estimate_upper_index(const VarianceFunction& v, double t,
                                         const HolderParams& params) {
    return run_grid_search(v, t, params, Direction::Upper);
}

HolderIndexEstimate estimate_lower_index(const VarianceFunction& v, double t,
                                         const HolderParams& params) {
    if (!v.strictly_increasing())
        throw std::invalid_argument(
            "estimate_lower_index: catalog entry must be strictly increasing");
    return run_grid_search(v, t, params, Direction::Lower);
}

HolderIndexEstimate estimate_upper_index(const VarianceFunction& v, double t,
                                         const std::vector<double>& deltas,
                                         const std::vector<double>& alpha_grid,
                                         int pairs_per_window) {
    HolderParams p = default_upper_params();
    p.deltas = deltas;
    p.alpha_grid = alpha_grid;
    p.pairs_per_window = pairs_per_window;
    return estimate_upper_index(v, t, p);
}

HolderIndexEstimate estimate_lower_index(const VarianceFunction& v, double t,
                                         const std::vector<double>& deltas,
                                         const std::vector<double>& alpha_grid,
                                         int pairs_per_window) {
    HolderParams p = default_lower_params();
    p.deltas = deltas;
    p.alpha_grid = alpha_grid;
    p.pairs_per_window = pairs_per_window;
    return estimate_lower_index(v, t, p);
}

} // namespace graphdim
