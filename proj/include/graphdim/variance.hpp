#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphdim/ifs.hpp"

namespace graphdim {

enum class VarianceKind {
    Identity,
    PowerLaw,
    PiecewiseLinear,
    CantorStaircase,
    SelfSimilarCdf,
    IteratedCdf,
};

// Exact middle-third Cantor function ("devil staircase") on [0,1].
// Ternary digits are extracted from the exact binary value of t in
// 128-bit fixed point; evaluation stops at 64 digits or at the first
// digit 1, whichever comes first.
double eval_cantor(double t);

// An increasing continuous variance function V on [0, S] with V(0) = 0.
// Immutable after construction and safe to share across threads.
class VarianceFunction {
public:
    VarianceFunction() = default;  // unbuilt; eval throws

    static VarianceFunction identity(double domain_end = 1.0);
    static VarianceFunction power_law(double beta, double domain_end = 1.0);
    // breakpoints: sorted (t, v) pairs starting at (0, 0)
    static VarianceFunction piecewise_linear(std::vector<std::pair<double, double>> breakpoints);
    static VarianceFunction cantor_staircase();
    // CDF of the self-similar measure, evaluated by descending the
    // cylinder interval tree to `depth` (error <= (max p)^depth).
    static VarianceFunction self_similar_cdf(Ifs ifs, int depth = 48);
    // Fixed-point iteration of the CDF functional equation on a uniform
    // grid; handles overlapping systems such as the Bernoulli convolution.
    static VarianceFunction iterated_cdf(Ifs ifs, int grid_size, int iterations);

    double operator()(double t) const { return eval(t); }
    double eval(double t) const;

    VarianceKind kind() const { return kind_; }
    double domain_end() const { return domain_end_; }
    double total() const { return total_; }  // V(S)
    bool strictly_increasing() const { return strictly_increasing_; }
    std::optional<double> inverse_holder_gamma() const { return inverse_holder_gamma_; }
    const std::string& name() const { return name_; }

    // sup-norm distance between successive iterates (IteratedCdf only)
    const std::vector<double>& iteration_residuals() const { return residuals_; }

private:
    VarianceKind kind_ = VarianceKind::Identity;
    bool built_ = false;
    double domain_end_ = 1.0;
    double total_ = 0.0;
    bool strictly_increasing_ = true;
    std::optional<double> inverse_holder_gamma_;
    std::string name_ = "unbuilt";

    double beta_ = 1.0;                      // PowerLaw
    std::vector<double> bp_t_, bp_v_;        // PiecewiseLinear
    Ifs ifs_;                                // SelfSimilarCdf / IteratedCdf
    int depth_ = 0;                          // SelfSimilarCdf
    std::vector<double> grid_values_;        // IteratedCdf
    std::vector<double> residuals_;
};

// T(s) = inf{ t : V(t) > s }, located by bisection down to floating
// resolution (tol is an upper bound on the returned precision). On a
// plateau of V at level s this is the plateau's right endpoint. For
// s = V(S) returns S. Throws std::out_of_range if s > V(S).
double generalized_inverse(const VarianceFunction& v, double s, double tol);

// Structured catalog record; the CLI layer maps its file encoding onto this.
struct VarianceConfig {
    std::string kind = "identity";  // identity | power-law | piecewise-linear |
                                    // cantor | self-similar-cdf | iterated-cdf
    double domain_end = 1.0;
    double beta = 1.0;
    std::vector<std::pair<double, double>> breakpoints;
    std::string ifs = "cantor3";
    int depth = 48;
    int grid_size = 65537;
    int iterations = 64;
};

VarianceFunction make_variance(const VarianceConfig& config);

} // namespace graphdim
