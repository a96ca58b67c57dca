#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace graphdim {

// Iterated function system S_i(x) = r_i x + d_i on [0,1] with probability
// weights p_i. Source of self-similar measures and their CDFs.
struct Ifs {
    std::vector<double> ratios;        // r_i in (0,1)
    std::vector<double> translations;  // 0 = d_0 <= d_1 < ..., d_{m-1} = 1 - r_{m-1}
    std::vector<double> weights;       // p_i > 0, sum to 1
    bool convex_osc = false;           // images of (0,1) pairwise disjoint
    std::string name;

    std::size_t size() const { return ratios.size(); }
    bool equicontractive() const;
};

// Validates the invariants above and computes the convex_osc flag.
// Throws std::invalid_argument on violation.
Ifs make_ifs(std::vector<double> ratios, std::vector<double> translations,
             std::vector<double> weights, std::string name = {});

// Named presets: "cantor3", "uneven-2-4", "golden-bernoulli".
Ifs ifs_preset(std::string_view name);
std::vector<std::string> ifs_preset_names();

// A word sigma over the IFS alphabet with its cached cylinder data.
struct Word {
    std::vector<std::uint8_t> digits;
    double ratio;   // r_sigma
    double weight;  // p_sigma
    double left;    // S_sigma(0)
};

// The cut-set Lambda_n = { sigma : r_sigma <= t^n < r_(sigma-) }.
struct WordSet {
    double base_scale = 0.0;  // t
    int level = 0;            // n
    std::vector<Word> words;  // ordered by left endpoint
};

// Solves sum_i p_i^q r_i^(-tau) = 1 for tau by bisection plus Newton
// refinement; |tau - tau_exact| <= tol. For equicontractive systems the
// result is cross-checked against the closed form log(sum p^q)/log r.
// Requires convex_osc.
double lq_spectrum(const Ifs& ifs, double q, double tol);

struct LegendreResult {
    double value;        // inf_q { q*alpha - tau(q) } over the grid
    double minimizer_q;
    bool boundary;       // minimum only attained at a grid endpoint
};

// Legendre transform of a sampled spectrum q -> tau(q). The grid must span
// at least [-10, 10] with step <= 0.01.
LegendreResult legendre_transform(const std::vector<double>& q_grid,
                                  const std::vector<double>& tau_values,
                                  double alpha);

WordSet enumerate_lambda_n(const Ifs& ifs, double t, int n);

// Cardinalities #Lambda_{sigma,n} for each sigma in Lambda_n, in word order.
std::vector<std::size_t> lambda_children_counts(const Ifs& ifs, double t, int n);

struct QuadratureNode {
    double point;   // midpoint of S_sigma[0,1]
    double weight;  // p_sigma
};

// Cylinder midpoint rule for integration against the self-similar measure.
std::vector<QuadratureNode> measure_quadrature(const Ifs& ifs, int n, double t);

// 1 - tau_mu(H): the predicted almost-sure Hausdorff dimension of the graph
// of B^H composed with the measure's CDF.
double predicted_graph_dim(const Ifs& ifs, double hurst, double tol);

} // namespace graphdim
