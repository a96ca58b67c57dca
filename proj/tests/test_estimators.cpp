#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "graphdim/estimators.hpp"
#include "graphdim/ifs.hpp"

using namespace graphdim;

namespace {

SamplePath line_path(std::size_t n_points) {
    SamplePath p;
    p.grid = TimeGrid::uniform(n_points, 1.0);
    p.values = p.grid.points;
    p.v_name = "line";
    return p;
}

SamplePath constant_path(std::size_t n_points, double level = 0.0) {
    SamplePath p;
    p.grid = TimeGrid::uniform(n_points, 1.0);
    p.values.assign(n_points, level);
    p.v_name = "constant";
    return p;
}

SamplePath brownian(std::size_t n_points, std::uint64_t seed, std::uint64_t stream = 0) {
    return sample_additive_bm(VarianceFunction::identity(), TimeGrid::uniform(n_points, 1.0),
                              RngStream(seed, stream));
}

SamplePath subsample(const SamplePath& p, std::size_t stride) {
    SamplePath out;
    std::vector<double> pts, vals;
    for (std::size_t i = 0; i < p.grid.size(); i += stride) {
        pts.push_back(p.grid.points[i]);
        vals.push_back(p.values[i]);
    }
    out.grid = TimeGrid::from_points(std::move(pts));
    out.values = std::move(vals);
    return out;
}

} // namespace

TEST_CASE("oscillation: a linear path oscillates by exactly the box width") {
    const auto osc = oscillation(line_path(1025), 3);
    REQUIRE(osc.size() == 8);
    for (double o : osc) CHECK(o == 0.125);
}

TEST_CASE("oscillation: constant path and resolution guard") {
    const auto osc = oscillation(constant_path(1025, 3.0), 4);
    for (double o : osc) CHECK(o == 0.0);
    CHECK_THROWS_AS(oscillation(line_path(16), 4), std::invalid_argument);
}

TEST_CASE("oscillation: refining the grid can only reveal more range") {
    const SamplePath fine = brownian((1 << 12) + 1, 99);
    const SamplePath coarse = subsample(fine, 4);
    const auto osc_f = oscillation(fine, 6);
    const auto osc_c = oscillation(coarse, 6);
    REQUIRE(osc_f.size() == osc_c.size());
    for (std::size_t k = 0; k < osc_f.size(); ++k) CHECK(osc_f[k] >= osc_c[k]);
}

TEST_CASE("box count: hand-derived values") {
    CHECK(box_count_graph(line_path(1025), 4) == 32);   // osc = 2^-n: two boxes per column
    CHECK(box_count_graph(constant_path(1025), 4) == 16);
}

TEST_CASE("box count: monotone in scale and range-bounded") {
    const SamplePath p = brownian((1 << 13) + 1, 7);
    double max_abs = 0.0;
    for (double x : p.values) max_abs = std::max(max_abs, std::abs(x));
    long long prev = 0;
    for (int n = 3; n <= 9; ++n) {
        const long long c = box_count_graph(p, n);
        CHECK(c >= prev);
        const double bound = std::ldexp(1.0, n) * (std::ldexp(1.0, n) * max_abs * 2.0 + 2.0);
        CHECK(static_cast<double>(c) <= bound);
        prev = c;
    }
}

TEST_CASE("box dimension fit: smooth graph has dimension 1") {
    const auto est = box_dim_fit(line_path((1 << 11) + 1), 3, 8);
    CHECK(est.value == doctest::Approx(1.0).epsilon(0.05));
    CHECK(est.r_squared > 0.999);
    CHECK(est.scales_used.size() == 6);
    CHECK_THROWS_AS(box_dim_fit(line_path(1025), 3, 4), std::invalid_argument);
}

TEST_CASE("box dimension fit: Brownian ensemble recovers 3/2 at modest size") {
    double mean = 0.0;
    const int paths = 6;
    for (int i = 0; i < paths; ++i)
        mean += box_dim_fit(brownian((1 << 15) + 1, 1234, i), 4, 10).value;
    mean /= paths;
    CHECK(mean == doctest::Approx(1.5).epsilon(0.09));
}

TEST_CASE("empirical lq: analytic sum for the linear path") {
    const auto est = empirical_lq(line_path((1 << 12) + 1), 2.0, {3, 4, 5, 6, 7, 8});
    for (const auto& [n, tau] : est) CHECK(tau == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empirical lq: Brownian path at q = 2 matches the identity-clock spectrum") {
    // oscillation of B over a dyadic box scales like its square root, so
    // the level sums stay flat: tau_X(2) = tau_V(1) = 0 for V = identity
    double mean = 0.0;
    const int paths = 10;
    for (int i = 0; i < paths; ++i) {
        const auto est = empirical_lq(brownian((1 << 15) + 1, 88, i), 2.0, {12});
        mean += est.front().second;
    }
    mean /= paths;
    CHECK(std::abs(mean) <= 0.15);
}

TEST_CASE("empirical lq: Brownian staircase at q = 1 against the exact spectrum") {
    const double target = lq_spectrum(ifs_preset("cantor3"), 0.5, 1e-12);  // tau_V(Hq)
    double mean = 0.0;
    const int paths = 10;
    for (int i = 0; i < paths; ++i) {
        const SamplePath p =
            sample_additive_bm(VarianceFunction::cantor_staircase(),
                               TimeGrid::uniform((1 << 17) + 1, 1.0), RngStream(4321, i));
        mean += empirical_lq(p, 1.0, {12}).front().second;
    }
    mean /= paths;
    CHECK(std::abs(mean - target) <= 0.1);
}

TEST_CASE("empirical lq: degenerate path") {
    CHECK_THROWS_AS(empirical_lq(constant_path(1025), 2.0, {3}), std::runtime_error);
}

TEST_CASE("q = 1 oscillation sums reproduce box counts up to the per-column rounding") {
    const SamplePath p = brownian((1 << 13) + 1, 21);
    for (int n = 3; n <= 8; ++n) {
        const auto osc = oscillation(p, n);
        double sum = 0.0;
        for (double o : osc) {
            REQUIRE(o > 0.0);  // Brownian boxes all oscillate
            sum += o;
        }
        const double boxes = std::ldexp(1.0, n);
        const double approx = sum * boxes + boxes;  // sum osc/2^-n plus one box per column
        const auto count = static_cast<double>(box_count_graph(p, n));
        CHECK(std::abs(approx - count) <= boxes);
    }
}

TEST_CASE("energy integral: two-point hand computation") {
    SamplePath p;
    p.grid = TimeGrid::from_points({0.0, 1.0});
    p.values = {0.0, 0.0};
    const auto base = BaseMeasure::quadrature({0.0, 1.0}, {0.5, 0.5});
    for (double s : {1.1, 1.5, 1.9})
        CHECK(energy_integral(p, base, s).value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("energy integral: closed-form reduction for the uniform-weight line") {
    const std::size_t n = 1 << 10;
    const SamplePath p = line_path(n + 1);
    std::vector<double> pts = p.grid.points;
    const auto base = BaseMeasure::quadrature(pts, std::vector<double>(n + 1, 1.0 / (n + 1)));
    const double s = 1.5;
    const double got = energy_integral(p, base, s).value;
    // Toeplitz reduction: pairs at lag k all share the distance sqrt(2) k h
    const double h = 1.0 / static_cast<double>(n);
    double expect = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
        expect += 2.0 * static_cast<double>(n + 1 - k) *
                  std::pow(2.0 * (h * k) * (h * k), -0.75);
    expect /= static_cast<double>((n + 1) * (n + 1));
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("energy integral: symmetric under path reversal") {
    const SamplePath p = brownian((1 << 10) + 1, 5);
    SamplePath r = p;
    std::reverse(r.values.begin(), r.values.end());
    const auto base = BaseMeasure::lebesgue();
    for (double s : {1.2, 1.5, 1.8}) {
        const double a = energy_integral(p, base, s).value;
        const double b = energy_integral(r, base, s).value;
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("energy integral: coincident points use the grid-spacing floor") {
    SamplePath p;
    p.grid = TimeGrid::from_points({0.0, 0.5, 1.0});
    p.values = {0.0, 0.0, 0.0};
    const auto base = BaseMeasure::quadrature({0.5, 0.5}, {0.5, 0.5});
    const auto res = energy_integral(p, base, 1.5);
    CHECK(res.coincident_pairs);
    CHECK(res.value > 0.0);
    CHECK_THROWS_AS(energy_integral(p, base, 2.5), std::invalid_argument);
}

TEST_CASE("empirical ft: total mass, orthogonality, conjugate symmetry") {
    const SamplePath line = line_path(4097);
    const auto leb = BaseMeasure::lebesgue();
    const auto mass = empirical_ft(line, leb, 0.0, 0.0);
    CHECK(mass.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mass.imag() == doctest::Approx(0.0).epsilon(1e-12));

    const SamplePath flat = constant_path(4097);
    for (int k : {1, 5, 32})
        CHECK(std::abs(empirical_ft(flat, leb, k, 0.0)) <= 2.0 / 4096.0);

    const SamplePath p = brownian(1025, 3);
    for (double u : {3.7, 19.0, 120.5}) {
        const auto plus = empirical_ft(p, leb, u, 0.5 * u);
        const auto minus = empirical_ft(p, leb, -u, -0.5 * u);
        CHECK(plus.real() == minus.real());
        CHECK(plus.imag() == -minus.imag());
    }
}

TEST_CASE("empirical ft: Cantor quadrature locks onto the infinite product at xi = 3^n") {
    const auto nodes = measure_quadrature(ifs_preset("cantor3"), 12, 1.0 / 3.0);
    std::vector<double> pts, wts;
    for (const auto& nd : nodes) {
        pts.push_back(nd.point);
        wts.push_back(nd.weight);
    }
    const auto base = BaseMeasure::quadrature(pts, wts);
    const SamplePath p =
        sample_additive_bm(VarianceFunction::cantor_staircase(),
                           TimeGrid::uniform(4097, 1.0), RngStream(2020, 0));
    double oracle = 1.0;
    for (int j = 1; j <= 60; ++j)
        oracle *= std::abs(std::cos(2.0 * std::numbers::pi / std::pow(3.0, j)));
    for (int n = 1; n <= 7; ++n) {
        const double got = std::abs(empirical_ft(p, base, std::pow(3.0, n), 0.0));
        CHECK(std::abs(got - oracle) <= 1e-3);
        CHECK(got >= 0.3);
    }
}

TEST_CASE("cone classification") {
    CHECK(cone_classify(16.0, 0.0, 0.5) == Cone::Horizontal);
    CHECK(cone_classify(0.0, 16.0, 0.5) == Cone::Vertical);
    // u = 16, rho = 1/2: theta_u = min(1/4, pi/4) = 0.25
    CHECK(cone_classify(16.0 * std::cos(0.2), 16.0 * std::sin(0.2), 0.5) == Cone::Horizontal);
    CHECK(cone_classify(16.0 * std::cos(0.3), 16.0 * std::sin(0.3), 0.5) == Cone::Vertical);
    CHECK(cone_classify(16.0 * std::cos(0.25), 16.0 * std::sin(0.25), 0.5) == Cone::Horizontal);
    CHECK_THROWS_AS(cone_classify(0.5, 0.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(cone_classify(16.0, 0.0, 0.2), std::invalid_argument);
}

TEST_CASE("cone classification: partition matches interval arithmetic on random points") {
    RngStream rng(808, 0);
    const double pi = std::numbers::pi;
    for (int i = 0; i < 10000; ++i) {
        const double u = 1.0 + 1000.0 * rng.next_uniform();
        const double theta = 2.0 * pi * rng.next_uniform() * (1.0 - 1e-12);
        const double rho = 0.5 + 0.5 * rng.next_uniform() * (1.0 - 1e-9);
        const double theta_u = std::min(std::pow(u, -rho), pi / 4.0);
        const bool horizontal = (theta >= 0.0 && theta <= theta_u) ||
                                (theta >= pi - theta_u && theta <= pi + theta_u) ||
                                (theta >= 2.0 * pi - theta_u && theta < 2.0 * pi);
        const Cone got = cone_classify(u * std::cos(theta), u * std::sin(theta), rho);
        // atan2 reconstruction wobbles by an ulp; skip knife-edge draws
        const double dist_to_edge =
            std::min({std::abs(theta - theta_u), std::abs(theta - (pi - theta_u)),
                      std::abs(theta - (pi + theta_u)), std::abs(theta - (2.0 * pi - theta_u))});
        if (dist_to_edge < 1e-12) continue;
        CHECK((got == Cone::Horizontal) == horizontal);
    }
}

TEST_CASE("fourier decay fit: constant path horizontal samples match the sinc envelope") {
    const std::size_t n = 1 << 12;
    const SamplePath flat = constant_path(n + 1);
    const std::vector<double> levels{16.5, 33.25, 67.5, 130.25, 260.5};
    const auto fit = fourier_decay_fit(flat, BaseMeasure::lebesgue(), levels, 64, 0.5);
    for (const auto& s : fit.samples) {
        if (s.xi2 != 0.0) continue;  // theta = 0 row
        const double expect = std::abs(std::sin(std::numbers::pi * s.xi1) /
                                       (std::numbers::pi * s.xi1));
        CHECK(std::abs(s.ft_abs - expect) <= 2.0 / static_cast<double>(n));
    }
}

TEST_CASE("fourier decay fit: Brownian graph decays, staircase horizontal direction does not") {
    const SamplePath bm = brownian((1 << 14) + 1, 11);
    std::vector<double> levels;
    for (int e = 4; e <= 9; ++e) levels.push_back(std::ldexp(1.0, e));
    const auto fit = fourier_decay_fit(bm, BaseMeasure::lebesgue(), levels, 64, 2.0 / 3.0);
    CHECK(fit.alpha_hat > 0.3);
    CHECK(fit.samples.size() == levels.size() * 64);

    const auto nodes = measure_quadrature(ifs_preset("cantor3"), 10, 1.0 / 3.0);
    std::vector<double> pts, wts;
    for (const auto& nd : nodes) {
        pts.push_back(nd.point);
        wts.push_back(nd.weight);
    }
    const SamplePath stair =
        sample_additive_bm(VarianceFunction::cantor_staircase(),
                           TimeGrid::uniform(4097, 1.0), RngStream(5150, 0));
    std::vector<double> tri_levels;
    for (int e = 1; e <= 5; ++e) tri_levels.push_back(std::pow(3.0, e));
    const auto sfit = fourier_decay_fit(stair, BaseMeasure::quadrature(pts, wts), tri_levels, 64,
                                        0.6);
    CHECK(sfit.worst_direction_alpha <= 0.1);
}

TEST_CASE("fourier decay fit: argument validation") {
    const SamplePath p = brownian(257, 0);
    CHECK_THROWS_AS(fourier_decay_fit(p, BaseMeasure::lebesgue(), {16.0, 32.0}, 64, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(fourier_decay_fit(p, BaseMeasure::lebesgue(), {0.5, 16.0, 32.0}, 64, 0.5),
                    std::invalid_argument);
}
