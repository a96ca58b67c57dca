#include "graphdim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace graphdim {

namespace {

// Dyadic box boundaries as grid indices: box k spans [idx_k, idx_{k+1}]
// inclusive, so boundary samples are shared with the next box.
std::vector<std::size_t> box_boundaries(std::size_t n_points, int level) {
    if (level < 1 || level > 40) throw std::invalid_argument("oscillation: bad level");
    const auto boxes = static_cast<std::size_t>(1) << level;
    if ((n_points - 1) / boxes < 4)
        throw std::invalid_argument("oscillation: fewer than 4 samples per box at this level");
    std::vector<std::size_t> idx(boxes + 1);
    for (std::size_t k = 0; k <= boxes; ++k)
        idx[k] = static_cast<std::size_t>(
            std::llround(static_cast<double>(k) * static_cast<double>(n_points - 1) /
                         static_cast<double>(boxes)));
    return idx;
}

struct OlsFit {
    double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};

OlsFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

} // namespace

std::vector<double> oscillation(const SamplePath& path, int level) {
    const std::vector<std::size_t> idx = box_boundaries(path.grid.size(), level);
    std::vector<double> osc(idx.size() - 1);
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = idx[k]; i <= idx[k + 1]; ++i) {
            lo = std::min(lo, path.values[i]);
            hi = std::max(hi, path.values[i]);
        }
        osc[k] = hi - lo;
    }
    return osc;
}

long long box_count_graph(const SamplePath& path, int level) {
    const std::vector<double> osc = oscillation(path, level);
    const double box = std::ldexp(path.grid.domain_end(), -level);
    long long count = 0;
    for (double o : osc) count += static_cast<long long>(std::floor(o / box)) + 1;
    return count;
}

DimensionEstimate box_dim_fit(const SamplePath& path, int n_min, int n_max) {
    if (n_max - n_min < 2) throw std::invalid_argument("box_dim_fit: need at least 3 levels");
    std::vector<double> xs, ys;
    DimensionEstimate est;
    for (int n = n_min; n <= n_max; ++n) {
        const auto count = static_cast<double>(box_count_graph(path, n));
        est.scales_used.push_back(n);
        est.per_scale_counts.push_back(count);
        xs.push_back(static_cast<double>(n));
        ys.push_back(std::log2(count));
    }
    const OlsFit fit = ols(xs, ys);
    est.slope = fit.slope;
    est.intercept = fit.intercept;
    est.r_squared = fit.r_squared;
    est.value = std::clamp(fit.slope, 1.0, 2.0);
    return est;
}

std::vector<std::pair<int, double>> empirical_lq(const SamplePath& path, double q,
                                                 const std::vector<int>& levels) {
    if (!(q > 0.0)) throw std::invalid_argument("empirical_lq: q must be positive");
    std::vector<std::pair<int, double>> out;
    for (int n : levels) {
        const std::vector<double> osc = oscillation(path, n);
        double sum = 0.0;
        for (double o : osc)
            if (o > 0.0) sum += std::pow(o, q);
        if (sum == 0.0) throw std::runtime_error("empirical_lq: all oscillations are zero");
        out.emplace_back(n, std::log(sum) / (-static_cast<double>(n) * std::numbers::ln2));
    }
    return out;
}

BaseMeasure BaseMeasure::quadrature(std::vector<double> points, std::vector<double> weights) {
    if (points.size() != weights.size() || points.empty())
        throw std::invalid_argument("base measure: points/weights size mismatch");
    for (double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("base measure: weights must be positive");
    BaseMeasure b;
    b.kind = Kind::Quadrature;
    b.points = std::move(points);
    b.weights = std::move(weights);
    return b;
}

namespace {

// (t_i, X_i, w_i) triples the transforms and energies run over.
struct WeightedGraph {
    std::vector<double> t, x, w;
};

double interp_path(const SamplePath& path, double t) {
    const auto& pts = path.grid.points;
    const auto it = std::upper_bound(pts.begin(), pts.end(), t);
    if (it == pts.begin()) return path.values.front();
    if (it == pts.end()) return path.values.back();
    const auto j = static_cast<std::size_t>(it - pts.begin());
    const double w = (t - pts[j - 1]) / (pts[j] - pts[j - 1]);
    return path.values[j - 1] * (1.0 - w) + path.values[j] * w;
}

WeightedGraph align_base(const SamplePath& path, const BaseMeasure& base) {
    WeightedGraph g;
    if (base.kind == BaseMeasure::Kind::LebesgueOnGrid) {
        const std::size_t n = path.grid.size();
        g.t = path.grid.points;
        g.x = path.values;
        g.w.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double left = i == 0 ? 0.0 : 0.5 * (g.t[i] - g.t[i - 1]);
            const double right = i + 1 == n ? 0.0 : 0.5 * (g.t[i + 1] - g.t[i]);
            g.w[i] = left + right;  // trapezoid weights, summing to the interval length
        }
    } else {
        g.t = base.points;
        g.w = base.weights;
        g.x.resize(base.points.size());
        for (std::size_t i = 0; i < base.points.size(); ++i)
            g.x[i] = interp_path(path, base.points[i]);
    }
    return g;
}

} // namespace

EnergyResult energy_integral(const SamplePath& path, const BaseMeasure& base, double s) {
    if (!(s > 1.0 && s < 2.0)) throw std::invalid_argument("energy_integral: s must lie in (1,2)");
    const WeightedGraph g = align_base(path, base);
    const std::size_t n = g.t.size();
    double floor_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < n; ++i)
        floor_dist = std::min(floor_dist, g.t[i + 1] - g.t[i]);

    EnergyResult res;
    const double expo = -0.5 * s;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dt = g.t[i] - g.t[j];
            const double dx = g.x[i] - g.x[j];
            double d2 = dt * dt + dx * dx;
            if (d2 == 0.0) {
                d2 = floor_dist * floor_dist;  // coincident graph points
                res.coincident_pairs = true;
            }
            total += g.w[i] * g.w[j] * std::pow(d2, expo);
        }
    }
    res.value = 2.0 * total;  // both orderings of each pair
    return res;
}

std::complex<double> empirical_ft(const SamplePath& path, const BaseMeasure& base, double xi1,
                                  double xi2) {
    const WeightedGraph g = align_base(path, base);
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < g.t.size(); ++i) {
        const double phase = -2.0 * std::numbers::pi * (xi1 * g.t[i] + xi2 * g.x[i]);
        re += g.w[i] * std::cos(phase);
        im += g.w[i] * std::sin(phase);
    }
    return {re, im};
}

Cone cone_classify(double xi1, double xi2, double rho) {
    const double u = std::hypot(xi1, xi2);
    if (!(u > 1.0)) throw std::domain_error("cone_classify: decomposition covers only |xi| > 1");
    if (!(rho >= 0.5 && rho < 1.0)) throw std::invalid_argument("cone_classify: rho outside [1/2, 1)");
    const double theta_u = std::min(std::pow(u, -rho), std::numbers::pi / 4.0);
    double theta = std::atan2(xi2, xi1);
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    const double pi = std::numbers::pi;
    const bool horizontal = theta <= theta_u ||
                            (theta >= pi - theta_u && theta <= pi + theta_u) ||
                            theta >= 2.0 * pi - theta_u;
    return horizontal ? Cone::Horizontal : Cone::Vertical;
}

FourierDecayFit fourier_decay_fit(const SamplePath& path, const BaseMeasure& base,
                                  const std::vector<double>& u_levels, int angles_per_level,
                                  double rho) {
    if (u_levels.size() < 3) throw std::invalid_argument("fourier fit: need at least 3 levels");
    if (angles_per_level < 64)
        throw std::invalid_argument("fourier fit: need at least 64 angles per level");
    const WeightedGraph g = align_base(path, base);
    const double pi = std::numbers::pi;

    FourierDecayFit fit;
    const std::size_t levels = u_levels.size();
    const auto angles = static_cast<std::size_t>(angles_per_level);
    std::vector<double> log_u(levels), env(levels, 0.0);
    std::vector<std::vector<double>> by_dir(angles, std::vector<double>(levels, 0.0));
    std::vector<double> h_lu, h_lm, v_lu, v_lm;

    for (std::size_t li = 0; li < levels; ++li) {
        const double u = u_levels[li];
        if (!(u > 1.0)) throw std::invalid_argument("fourier fit: levels must exceed 1");
        log_u[li] = std::log(u);
        for (std::size_t a = 0; a < angles; ++a) {
            // directions over [0, pi): the transform of a real measure is
            // conjugate-symmetric, the other half adds nothing
            const double theta = pi * static_cast<double>(a) / static_cast<double>(angles);
            const double xi1 = u * std::cos(theta);
            const double xi2 = u * std::sin(theta);
            double re = 0.0, im = 0.0;
            for (std::size_t i = 0; i < g.t.size(); ++i) {
                const double phase = -2.0 * pi * (xi1 * g.t[i] + xi2 * g.x[i]);
                re += g.w[i] * std::cos(phase);
                im += g.w[i] * std::sin(phase);
            }
            const double mag = std::hypot(re, im);
            FourierScanSample sample;
            sample.xi1 = xi1;
            sample.xi2 = xi2;
            sample.magnitude_u = u;
            sample.rho = rho;
            sample.cone = cone_classify(xi1, xi2, rho);
            sample.ft_abs = mag;
            fit.samples.push_back(sample);

            env[li] = std::max(env[li], mag);
            by_dir[a][li] = mag;
            if (mag > 1e-300) {
                (sample.cone == Cone::Horizontal ? h_lu : v_lu).push_back(log_u[li]);
                (sample.cone == Cone::Horizontal ? h_lm : v_lm).push_back(std::log(mag));
            }
        }
        if (env[li] <= 0.0) throw std::runtime_error("fourier fit: all magnitudes vanished at a level");
    }

    std::vector<double> log_env(levels);
    for (std::size_t li = 0; li < levels; ++li) log_env[li] = std::log(env[li]);
    const double slope_env = ols(log_u, log_env).slope;
    fit.alpha_hat = -2.0 * slope_env;
    if (fit.alpha_hat < 0.0) {
        fit.alpha_hat = 0.0;
        fit.clamped = true;
    }

    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < angles; ++a) {
        std::vector<double> lm;
        std::vector<double> lu;
        for (std::size_t li = 0; li < levels; ++li) {
            if (by_dir[a][li] > 1e-300) {
                lu.push_back(log_u[li]);
                lm.push_back(std::log(by_dir[a][li]));
            }
        }
        if (lu.size() < 3) continue;  // direction lost in the noise floor
        const double alpha = std::max(0.0, -2.0 * ols(lu, lm).slope);
        worst = std::min(worst, alpha);
    }
    fit.worst_direction_alpha = std::isfinite(worst) ? worst : 0.0;

    if (h_lu.size() >= 2) fit.horizontal_slope = ols(h_lu, h_lm).slope;
    if (v_lu.size() >= 2) fit.vertical_slope = ols(v_lu, v_lm).slope;
    return fit;
}

void write_fourier_scan_csv(const std::vector<FourierScanSample>& samples,
                            const std::string& file) {
    std::FILE* out = std::fopen(file.c_str(), "wb");
    if (!out) throw std::runtime_error("cannot write " + file);
    std::fputs("xi1,xi2,u,cone,ft_abs\n", out);
    for (const auto& s : samples)
        std::fprintf(out, "%.17g,%.17g,%.17g,%s,%.17g\n", s.xi1, s.xi2, s.magnitude_u,
                     s.cone == Cone::Horizontal ? "horizontal" : "vertical", s.ft_abs);
    std::fclose(out);
}

} // namespace graphdim
