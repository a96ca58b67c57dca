#include "graphdim/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphdim {

namespace {

constexpr double kWeightTol = 1e-12;

double pow_int(double x, int n) {
    // iterated multiplication, so thresholds compare consistently with
    // incrementally accumulated cylinder products
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

} // namespace

bool Ifs::equicontractive() const {
    for (double r : ratios)
        if (r != ratios.front()) return false;
    return true;
}

Ifs make_ifs(std::vector<double> ratios, std::vector<double> translations,
             std::vector<double> weights, std::string name) {
    const std::size_t m = ratios.size();
    if (m < 2 || translations.size() != m || weights.size() != m)
        throw std::invalid_argument("ifs: need equal-length r, d, p with at least 2 maps");
    for (double r : ratios)
        if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("ifs: ratios must lie in (0,1)");
    if (translations.front() != 0.0)
        throw std::invalid_argument("ifs: d_0 must be 0");
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (!(translations[i] <= translations[i + 1]))
            throw std::invalid_argument("ifs: translations must be sorted");
    if (std::abs(translations.back() - (1.0 - ratios.back())) > kWeightTol)
        throw std::invalid_argument("ifs: last map must end at 1");
    double psum = 0.0;
    for (double p : weights) {
        if (!(p > 0.0)) throw std::invalid_argument("ifs: weights must be positive");
        psum += p;
    }
    if (std::abs(psum - 1.0) > kWeightTol)
        throw std::invalid_argument("ifs: weights must sum to 1");

    Ifs f;
    f.ratios = std::move(ratios);
    f.translations = std::move(translations);
    f.weights = std::move(weights);
    f.name = std::move(name);
    f.convex_osc = true;
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (f.translations[i + 1] < f.translations[i] + f.ratios[i]) f.convex_osc = false;
    return f;
}

Ifs ifs_preset(std::string_view name) {
    if (name == "cantor3")
        return make_ifs({1.0 / 3.0, 1.0 / 3.0}, {0.0, 2.0 / 3.0}, {0.5, 0.5}, "cantor3");
    if (name == "uneven-2-4")
        return make_ifs({0.5, 0.25}, {0.0, 0.75}, {0.5, 0.5}, "uneven-2-4");
    if (name == "golden-bernoulli") {
        const double rho = (std::sqrt(5.0) - 1.0) / 2.0;
        return make_ifs({rho, rho}, {0.0, 1.0 - rho}, {0.5, 0.5}, "golden-bernoulli");
    }
    throw std::invalid_argument("unknown ifs preset: " + std::string(name));
}

std::vector<std::string> ifs_preset_names() {
    return {"cantor3", "uneven-2-4", "golden-bernoulli"};
}

double lq_spectrum(const Ifs& ifs, double q, double tol) {
    if (!ifs.convex_osc)
        throw std::invalid_argument("lq_spectrum: requires the convex open set condition");
    if (!(tol > 0.0)) throw std::invalid_argument("lq_spectrum: tol must be positive");

    const std::size_t m = ifs.size();
    std::vector<double> log_p(m), log_r(m);
    for (std::size_t i = 0; i < m; ++i) {
        log_p[i] = std::log(ifs.weights[i]);
        log_r[i] = std::log(ifs.ratios[i]);
    }
    // f(tau) = sum p^q r^(-tau), strictly increasing in tau
    auto f = [&](double tau, double* deriv = nullptr) {
        double s = 0.0, ds = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double term = std::exp(q * log_p[i] - tau * log_r[i]);
            s += term;
            ds += term * (-log_r[i]);
        }
        if (deriv) *deriv = ds;
        return s;
    };

    double lo = -64.0, hi = 64.0;
    if (!(f(lo) < 1.0 && f(hi) > 1.0))
        throw std::runtime_error("lq_spectrum: root not bracketed in [-64, 64]");
    for (int i = 0; i < 48; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 1.0 ? lo : hi) = mid;
    }
    double tau = 0.5 * (lo + hi);
    for (int i = 0; i < 64; ++i) {
        double deriv;
        const double val = f(tau, &deriv) - 1.0;
        const double step = val / deriv;
        tau -= step;
        tau = std::clamp(tau, lo, hi);
        if (std::abs(step) < 0.25 * tol) break;
    }

    if (ifs.equicontractive()) {
        double psum = 0.0;
        for (double p : ifs.weights) psum += std::pow(p, q);
        const double closed = std::log(psum) / std::log(ifs.ratios.front());
        if (std::abs(closed - tau) > std::max(tol, 1e-12))
            throw std::runtime_error("lq_spectrum: bisection disagrees with closed form");
    }
    return tau;
}

LegendreResult legendre_transform(const std::vector<double>& q_grid,
                                  const std::vector<double>& tau_values,
                                  double alpha) {
    if (q_grid.size() != tau_values.size() || q_grid.size() < 2)
        throw std::invalid_argument("legendre_transform: grid size mismatch");
    if (!(alpha > 0.0)) throw std::invalid_argument("legendre_transform: alpha must be positive");
    if (q_grid.front() > -10.0 || q_grid.back() < 10.0)
        throw std::invalid_argument("legendre_transform: q grid must span [-10, 10]");
    for (std::size_t i = 0; i + 1 < q_grid.size(); ++i)
        if (!(q_grid[i + 1] > q_grid[i]) || q_grid[i + 1] - q_grid[i] > 0.01 + 1e-9)
            throw std::invalid_argument("legendre_transform: q grid step must be <= 0.01");

    std::size_t arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        const double v = q_grid[i] * alpha - tau_values[i];
        if (v < best) {
            best = v;
            arg = i;
        }
    }
    // interior attainment within tolerance suppresses the boundary warning
    bool boundary = (arg == 0 || arg + 1 == q_grid.size());
    if (boundary) {
        const double tol = 1e-12 * (1.0 + std::abs(best));
        for (std::size_t i = 1; i + 1 < q_grid.size(); ++i) {
            if (q_grid[i] * alpha - tau_values[i] <= best + tol) {
                boundary = false;
                break;
            }
        }
    }
    return {best, q_grid[arg], boundary};
}

WordSet enumerate_lambda_n(const Ifs& ifs, double t, int n) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("enumerate_lambda_n: t must lie in (0,1)");
    if (n < 1) throw std::invalid_argument("enumerate_lambda_n: n must be >= 1");
    const double r_max = *std::max_element(ifs.ratios.begin(), ifs.ratios.end());
    if (n * std::log(t) / std::log(r_max) > 64.0)
        throw std::length_error("enumerate_lambda_n: recursion depth bound exceeded");

    const double threshold = pow_int(t, n);
    WordSet out;
    out.base_scale = t;
    out.level = n;

    struct Node {
        std::vector<std::uint8_t> digits;
        double ratio, weight, left;
    };
    // explicit DFS, children visited left to right so words come out
    // ordered by left endpoint
    std::vector<Node> stack;
    stack.push_back({{}, 1.0, 1.0, 0.0});
    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        if (node.ratio <= threshold && !node.digits.empty()) {
            out.words.push_back({std::move(node.digits), node.ratio, node.weight, node.left});
            continue;
        }
        if (node.digits.size() > 80)
            throw std::length_error("enumerate_lambda_n: runaway recursion");
        for (std::size_t i = ifs.size(); i-- > 0;) {
            Node child;
            child.digits = node.digits;
            child.digits.push_back(static_cast<std::uint8_t>(i));
            child.ratio = node.ratio * ifs.ratios[i];
            child.weight = node.weight * ifs.weights[i];
            child.left = node.left + node.ratio * ifs.translations[i];
            stack.push_back(std::move(child));
        }
    }
    return out;
}

std::vector<std::size_t> lambda_children_counts(const Ifs& ifs, double t, int n) {
    const WordSet cur = enumerate_lambda_n(ifs, t, n);
    const WordSet next = enumerate_lambda_n(ifs, t, n + 1);
    auto is_prefix = [](const std::vector<std::uint8_t>& p, const std::vector<std::uint8_t>& w) {
        return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
    };
    // both sets are in DFS order, so the children of each word are consecutive
    std::vector<std::size_t> counts(cur.words.size(), 0);
    std::size_t j = 0;
    for (std::size_t i = 0; i < cur.words.size(); ++i) {
        while (j < next.words.size() && is_prefix(cur.words[i].digits, next.words[j].digits)) {
            ++counts[i];
            ++j;
        }
    }
    if (j != next.words.size())
        throw std::runtime_error("lambda_children_counts: level n+1 words not nested in level n");
    return counts;
}

std::vector<QuadratureNode> measure_quadrature(const Ifs& ifs, int n, double t) {
    if (!ifs.convex_osc)
        throw std::invalid_argument("measure_quadrature: requires the convex open set condition");
    const WordSet ws = enumerate_lambda_n(ifs, t, n);
    std::vector<QuadratureNode> nodes;
    nodes.reserve(ws.words.size());
    for (const Word& w : ws.words)
        nodes.push_back({w.left + 0.5 * w.ratio, w.weight});
    return nodes;
}

double predicted_graph_dim(const Ifs& ifs, double hurst, double tol) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("predicted_graph_dim: hurst must lie in (0,1)");
    return 1.0 - lq_spectrum(ifs, hurst, tol);
}

} // namespace graphdim
