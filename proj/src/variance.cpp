#include "graphdim/variance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace graphdim {

double eval_cantor(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("eval_cantor: t outside [0,1]");
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;

    // exact 128-bit fixed-point fraction f = t * 2^128
    int e;
    const double m = std::frexp(t, &e);                                  // t = m 2^e
    const auto mant = static_cast<std::uint64_t>(std::ldexp(m, 53));     // 53-bit integer
    unsigned __int128 f = 0;
    const int sh = e + 75;
    if (sh >= 0)
        f = static_cast<unsigned __int128>(mant) << sh;
    else if (sh > -53)
        f = static_cast<unsigned __int128>(mant >> -sh);  // t < 2^-75: leading digits all 0 anyway

    // Map ternary digits before the first 1 to halved binary digits; a
    // first digit 1 terminates with value digit 1. Floor extraction
    // yields the terminating expansion at triadic rationals.
    std::uint64_t bits = 0;
    for (int k = 1; k <= 64; ++k) {
        const auto hi = static_cast<std::uint64_t>(f >> 64);
        const auto lo = static_cast<std::uint64_t>(f);
        const unsigned __int128 l3 = static_cast<unsigned __int128>(lo) * 3u;
        const unsigned __int128 h3 =
            static_cast<unsigned __int128>(hi) * 3u + static_cast<std::uint64_t>(l3 >> 64);
        const int digit = static_cast<int>(h3 >> 64);
        f = (static_cast<unsigned __int128>(static_cast<std::uint64_t>(h3)) << 64) |
            static_cast<std::uint64_t>(l3);
        if (digit == 1) {
            bits |= 1ULL << (64 - k);
            break;
        }
        if (digit == 2) bits |= 1ULL << (64 - k);
    }
    return std::ldexp(static_cast<double>(bits), -64);  // one rounding
}

namespace {

constexpr double kWeightTol = 1e-12;

double lerp_grid(const std::vector<double>& values, double y) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double u = y * static_cast<double>(values.size() - 1);
    const auto j = static_cast<std::size_t>(u);
    if (j + 1 >= values.size()) return values.back();
    const double frac = u - static_cast<double>(j);
    return values[j] * (1.0 - frac) + values[j + 1] * frac;
}

// Lower sum of cylinder weights strictly left of t, descending the
// containing cylinder. Accumulation follows DFS order so that evaluation
// is exactly monotone in t at double precision.
double eval_self_similar(const Ifs& ifs, int depth, double t) {
    double acc = 0.0;
    double offset = 0.0, scale = 1.0, weight = 1.0;
    for (int level = 0; level < depth; ++level) {
        bool descended = false;
        for (std::size_t i = 0; i < ifs.size(); ++i) {
            const double left = offset + scale * ifs.translations[i];
            const double right = left + scale * ifs.ratios[i];
            const double w = weight * ifs.weights[i];
            if (right <= t) {
                acc += w;
            } else if (left < t) {
                offset = left;
                scale = scale * ifs.ratios[i];
                weight = w;
                descended = true;
                break;
            } else {
                break;  // remaining cylinders are right of t
            }
        }
        if (!descended) break;
    }
    return acc;
}

} // namespace

VarianceFunction VarianceFunction::identity(double domain_end) {
    if (!(domain_end > 0.0)) throw std::invalid_argument("variance: domain end must be positive");
    VarianceFunction v;
    v.kind_ = VarianceKind::Identity;
    v.built_ = true;
    v.domain_end_ = domain_end;
    v.total_ = domain_end;
    v.strictly_increasing_ = true;
    v.inverse_holder_gamma_ = 1.0;
    v.name_ = "identity";
    return v;
}

VarianceFunction VarianceFunction::power_law(double beta, double domain_end) {
    if (!(beta > 0.0)) throw std::invalid_argument("variance: power-law exponent must be positive");
    if (!(domain_end > 0.0)) throw std::invalid_argument("variance: domain end must be positive");
    VarianceFunction v;
    v.kind_ = VarianceKind::PowerLaw;
    v.built_ = true;
    v.beta_ = beta;
    v.domain_end_ = domain_end;
    v.total_ = std::pow(domain_end, beta);
    v.strictly_increasing_ = true;
    // T(s) = s^(1/beta) is Holder with exponent min(1, 1/beta)
    v.inverse_holder_gamma_ = std::min(1.0, 1.0 / beta);
    v.name_ = "power-law(" + std::to_string(beta) + ")";
    return v;
}

VarianceFunction VarianceFunction::piecewise_linear(
    std::vector<std::pair<double, double>> breakpoints) {
    if (breakpoints.size() < 2)
        throw std::invalid_argument("variance: need at least two breakpoints");
    if (breakpoints.front() != std::pair<double, double>{0.0, 0.0})
        throw std::invalid_argument("variance: first breakpoint must be (0,0)");
    VarianceFunction v;
    v.kind_ = VarianceKind::PiecewiseLinear;
    v.built_ = true;
    v.strictly_increasing_ = true;
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (i > 0) {
            if (!(breakpoints[i].first > breakpoints[i - 1].first))
                throw std::invalid_argument("variance: breakpoints must be strictly increasing in t");
            if (breakpoints[i].second < breakpoints[i - 1].second)
                throw std::invalid_argument("variance: breakpoint values must be non-decreasing");
            if (breakpoints[i].second == breakpoints[i - 1].second) v.strictly_increasing_ = false;
        }
        v.bp_t_.push_back(breakpoints[i].first);
        v.bp_v_.push_back(breakpoints[i].second);
    }
    v.domain_end_ = v.bp_t_.back();
    v.total_ = v.bp_v_.back();
    if (v.strictly_increasing_) v.inverse_holder_gamma_ = 1.0;
    v.name_ = "piecewise-linear";
    return v;
}

VarianceFunction VarianceFunction::cantor_staircase() {
    VarianceFunction v;
    v.kind_ = VarianceKind::CantorStaircase;
    v.built_ = true;
    v.domain_end_ = 1.0;
    v.total_ = 1.0;
    v.strictly_increasing_ = false;  // constant off the Cantor set
    v.name_ = "cantor-staircase";
    return v;
}

VarianceFunction VarianceFunction::self_similar_cdf(Ifs ifs, int depth) {
    if (!ifs.convex_osc)
        throw std::invalid_argument("variance: self-similar CDF needs the convex open set condition");
    if (depth < 1) throw std::invalid_argument("variance: depth must be >= 1");
    VarianceFunction v;
    v.kind_ = VarianceKind::SelfSimilarCdf;
    v.built_ = true;
    v.depth_ = depth;
    v.domain_end_ = 1.0;
    // full support iff the images tile [0,1] with no gaps
    double rsum = 0.0;
    for (double r : ifs.ratios) rsum += r;
    v.strictly_increasing_ = rsum >= 1.0 - kWeightTol;
    v.name_ = "self-similar-cdf(" + (ifs.name.empty() ? std::string("custom") : ifs.name) + ")";
    v.ifs_ = std::move(ifs);
    v.total_ = eval_self_similar(v.ifs_, v.depth_, 1.0);
    return v;
}

VarianceFunction VarianceFunction::iterated_cdf(Ifs ifs, int grid_size, int iterations) {
    if (grid_size < 2) throw std::invalid_argument("variance: grid size must be >= 2");
    if (iterations < 1) throw std::invalid_argument("variance: iterations must be >= 1");
    double psum = 0.0;
    for (double p : ifs.weights) psum += p;
    if (std::abs(psum - 1.0) > kWeightTol)
        throw std::invalid_argument("variance: IFS weights must sum to 1");

    const auto n = static_cast<std::size_t>(grid_size);
    std::vector<double> cur(n), next(n);
    const double h = 1.0 / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) cur[j] = std::clamp(static_cast<double>(j) * h, 0.0, 1.0);

    std::vector<double> residuals;
    residuals.reserve(static_cast<std::size_t>(iterations));
    for (int it = 0; it < iterations; ++it) {
        double res = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double x = static_cast<double>(j) * h;
            double acc = 0.0;
            for (std::size_t i = 0; i < ifs.size(); ++i) {
                const double y = (x - ifs.translations[i]) / ifs.ratios[i];
                acc += ifs.weights[i] * std::clamp(lerp_grid(cur, y), 0.0, 1.0);
            }
            next[j] = acc;
            res = std::max(res, std::abs(acc - cur[j]));
        }
        cur.swap(next);
        residuals.push_back(res);
    }

    VarianceFunction v;
    v.kind_ = VarianceKind::IteratedCdf;
    v.built_ = true;
    v.domain_end_ = 1.0;
    v.grid_values_ = std::move(cur);
    v.residuals_ = std::move(residuals);
    v.total_ = v.grid_values_.back();
    v.strictly_increasing_ = true;
    for (std::size_t j = 0; j + 1 < v.grid_values_.size(); ++j)
        if (!(v.grid_values_[j + 1] > v.grid_values_[j])) v.strictly_increasing_ = false;
    if (ifs.name == "golden-bernoulli") {
        // Holder exponent of T from the known local dimension bound of the
        // Bernoulli convolution: gamma = 1/s1 with s1 = log 2 / log((1+sqrt5)/2)
        v.inverse_holder_gamma_ = std::log((1.0 + std::sqrt(5.0)) / 2.0) / std::log(2.0);
    }
    v.name_ = "iterated-cdf(" + (ifs.name.empty() ? std::string("custom") : ifs.name) + ")";
    v.ifs_ = std::move(ifs);
    return v;
}

double VarianceFunction::eval(double t) const {
    if (!built_) throw std::logic_error("variance: evaluated before construction");
    if (!(t >= 0.0 && t <= domain_end_))
        throw std::domain_error("variance: t outside [0, S]");
    switch (kind_) {
        case VarianceKind::Identity:
            return t;
        case VarianceKind::PowerLaw:
            return std::pow(t, beta_);
        case VarianceKind::PiecewiseLinear: {
            const auto it = std::upper_bound(bp_t_.begin(), bp_t_.end(), t);
            if (it == bp_t_.begin()) return bp_v_.front();
            if (it == bp_t_.end()) return bp_v_.back();
            const auto j = static_cast<std::size_t>(it - bp_t_.begin());
            const double w = (t - bp_t_[j - 1]) / (bp_t_[j] - bp_t_[j - 1]);
            return bp_v_[j - 1] * (1.0 - w) + bp_v_[j] * w;
        }
        case VarianceKind::CantorStaircase:
            return eval_cantor(t);
        case VarianceKind::SelfSimilarCdf:
            return eval_self_similar(ifs_, depth_, t);
        case VarianceKind::IteratedCdf:
            return lerp_grid(grid_values_, t);
    }
    throw std::logic_error("variance: unknown kind");
}

double generalized_inverse(const VarianceFunction& v, double s, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("generalized_inverse: tol must be positive");
    const double top = v.total();
    if (s < 0.0 || s > top + std::max(kWeightTol, kWeightTol * std::abs(top)))
        throw std::out_of_range("generalized_inverse: s outside [0, V(S)]");
    const double S = v.domain_end();
    if (!(v.eval(S) > s)) return S;

    double lo = 0.0, hi = S;
    for (int i = 0; i < 120; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (v.eval(mid) > s ? hi : lo) = mid;
        if (hi - lo <= tol * 0x1p-20) break;
    }
    return hi;  // smallest sampled point of the strict-exceedance set
}

VarianceFunction make_variance(const VarianceConfig& config) {
    if (config.kind == "identity") return VarianceFunction::identity(config.domain_end);
    if (config.kind == "power-law") return VarianceFunction::power_law(config.beta, config.domain_end);
    if (config.kind == "piecewise-linear") return VarianceFunction::piecewise_linear(config.breakpoints);
    if (config.kind == "cantor") return VarianceFunction::cantor_staircase();
    if (config.kind == "self-similar-cdf")
        return VarianceFunction::self_similar_cdf(ifs_preset(config.ifs), config.depth);
    if (config.kind == "iterated-cdf")
        return VarianceFunction::iterated_cdf(ifs_preset(config.ifs), config.grid_size,
                                              config.iterations);
    throw std::invalid_argument("unknown variance kind: " + config.kind);
}

} // namespace graphdim
