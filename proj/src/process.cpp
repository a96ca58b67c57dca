#include "graphdim/process.hpp"

#include <cmath>
#include <stdexcept>

namespace graphdim {

TimeGrid TimeGrid::uniform(std::size_t n_points, double domain_end) {
    if (n_points < 2) throw std::invalid_argument("time grid: need at least two points");
    if (!(domain_end > 0.0)) throw std::invalid_argument("time grid: domain end must be positive");
    TimeGrid g;
    g.points.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        g.points[i] = domain_end * static_cast<double>(i) / static_cast<double>(n_points - 1);
    g.points.front() = 0.0;
    g.points.back() = domain_end;
    return g;
}

TimeGrid TimeGrid::from_points(std::vector<double> points) {
    if (points.size() < 2) throw std::invalid_argument("time grid: need at least two points");
    if (points.front() != 0.0) throw std::invalid_argument("time grid: first point must be 0");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (!(points[i] < points[i + 1]))
            throw std::invalid_argument("time grid: points must be strictly increasing");
    TimeGrid g;
    g.points = std::move(points);
    return g;
}

namespace {

constexpr double kVarianceSlack = 1e-12;

std::vector<double> eval_on_grid(const VarianceFunction& v, const TimeGrid& grid) {
    if (grid.domain_end() > v.domain_end() + 1e-15)
        throw std::domain_error("sample path: grid exceeds the variance function's domain");
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = v.eval(grid.points[i]);
    return vals;
}

// Left-looking Cholesky with escalating diagonal jitter. Returns the
// lower factor in row-major packed form.
std::vector<double> cholesky_with_jitter(std::vector<double> a, std::size_t n) {
    static constexpr double kJitters[] = {0.0, 1e-14, 1e-12, 1e-10};
    for (double jitter : kJitters) {
        std::vector<double> l = a;
        for (std::size_t i = 0; i < n; ++i) l[i * n + i] += jitter;
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            double d = l[j * n + j];
            for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
            if (!(d > 0.0)) {
                ok = false;
                break;
            }
            const double root = std::sqrt(d);
            l[j * n + j] = root;
            for (std::size_t i = j + 1; i < n; ++i) {
                double s = l[i * n + j];
                for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
                l[i * n + j] = s / root;
            }
        }
        if (ok) {
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < j; ++i) l[i * n + j] = 0.0;
            return l;
        }
    }
    throw std::runtime_error("fbm sampler: covariance not positive definite even with jitter");
}

} // namespace

SamplePath sample_additive_bm(const VarianceFunction& v, const TimeGrid& grid, RngStream rng) {
    const std::vector<double> vv = eval_on_grid(v, grid);
    SamplePath path;
    path.grid = grid;
    path.hurst = 0.5;
    path.v_name = v.name();
    path.seed = rng.root_seed();
    path.stream_index = rng.stream_index();
    path.values.resize(grid.size());
    path.values[0] = 0.0;
    double x = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double dv = vv[i + 1] - vv[i];
        if (dv < 0.0) {
            if (dv < -kVarianceSlack)
                throw std::runtime_error("bm sampler: negative increment variance from catalog");
            dv = 0.0;
        }
        x += std::sqrt(dv) * rng.next_gaussian();
        path.values[i + 1] = x;
    }
    return path;
}

SamplePath sample_additive_fbm(const VarianceFunction& v, double hurst, const TimeGrid& grid,
                               RngStream rng) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("fbm sampler: hurst must lie in (0,1)");
    if (grid.size() > kMaxFbmGridSize)
        throw std::length_error("fbm sampler: grid too large for dense Cholesky");

    const std::vector<double> vv = eval_on_grid(v, grid);

    // Deduplicate the time-changed clock: indices with equal V share one
    // Gaussian coordinate, and V = 0 is pinned to X = 0.
    std::vector<double> unique_v;
    std::vector<std::size_t> slot(grid.size());
    constexpr std::size_t kZero = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (vv[i] == 0.0) {
            slot[i] = kZero;
        } else if (!unique_v.empty() && vv[i] == unique_v.back()) {
            slot[i] = unique_v.size() - 1;
        } else {
            unique_v.push_back(vv[i]);
            slot[i] = unique_v.size() - 1;
        }
    }

    const std::size_t n = unique_v.size();
    SamplePath path;
    path.grid = grid;
    path.hurst = hurst;
    path.v_name = v.name();
    path.seed = rng.root_seed();
    path.stream_index = rng.stream_index();
    path.values.assign(grid.size(), 0.0);
    if (n == 0) return path;  // V constant at zero: the path is identically 0

    const double h2 = 2.0 * hurst;
    std::vector<double> var(n);
    for (std::size_t i = 0; i < n; ++i) var[i] = std::pow(unique_v[i], h2);
    std::vector<double> cov(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double c = 0.5 * (var[i] + var[j] - std::pow(std::abs(unique_v[i] - unique_v[j]), h2));
            cov[i * n + j] = c;
            cov[j * n + i] = c;
        }
    }
    const std::vector<double> l = cholesky_with_jitter(std::move(cov), n);

    std::vector<double> z(n), y(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = rng.next_gaussian();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k <= i; ++k) s += l[i * n + k] * z[k];
        y[i] = s;
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        path.values[i] = slot[i] == kZero ? 0.0 : y[slot[i]];
    return path;
}

} // namespace graphdim
