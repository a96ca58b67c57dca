#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "graphdim/holder.hpp"

using namespace graphdim;

TEST_CASE("upper index: sqrt clock has index 1/2 at the origin") {
    const auto v = VarianceFunction::power_law(0.5);
    const auto est = estimate_upper_index(v, 0.0);
    CHECK(est.alpha_upper >= 0.45);
    CHECK(est.alpha_upper <= 0.55);
    CHECK(est.supremum_table.size() == est.alpha_grid.size());
    CHECK(est.supremum_table.front().size() == est.deltas_used.size());
}

TEST_CASE("upper index: Lipschitz point of the identity") {
    const auto est = estimate_upper_index(VarianceFunction::identity(), 0.5);
    CHECK(est.alpha_upper == doctest::Approx(1.0).epsilon(0.11));
}

TEST_CASE("upper index: Cantor staircase at 0 sees log2/log3") {
    const auto est = estimate_upper_index(VarianceFunction::cantor_staircase(), 0.0);
    CHECK(std::abs(est.alpha_upper - std::log(2.0) / std::log(3.0)) <= 0.1);
}

TEST_CASE("lower index: t^6 at the origin") {
    const auto est = estimate_lower_index(VarianceFunction::power_law(6.0), 0.0);
    CHECK(est.alpha_lower >= 5.5);
    CHECK(est.alpha_lower <= 6.5);
}

TEST_CASE("lower index: sqrt clock at the origin") {
    const auto est = estimate_lower_index(VarianceFunction::power_law(0.5), 0.0);
    CHECK(est.alpha_lower >= 0.9);
    CHECK(est.alpha_lower <= 1.1);
}

TEST_CASE("lower index: bi-Lipschitz point of the identity") {
    const auto est = estimate_lower_index(VarianceFunction::identity(), 0.5);
    CHECK(est.alpha_lower == doctest::Approx(1.0).epsilon(0.16));
}

TEST_CASE("index ordering: upper <= lower + one grid step at interior points") {
    const double step = 0.05;
    for (const auto& v : {VarianceFunction::identity(), VarianceFunction::power_law(2.0),
                          VarianceFunction::power_law(6.0)}) {
        CAPTURE(v.name());
        const double up = estimate_upper_index(v, 0.5).alpha_upper;
        const double low = estimate_lower_index(v, 0.5).alpha_lower;
        CHECK(up <= low + step + 1e-12);
        CHECK(up <= 1.0 + step + 1e-12);  // strictly increasing clocks
        CHECK(low >= 1.0 - step - 1e-12);
    }
}

TEST_CASE("lower index rejects plateau clocks") {
    CHECK_THROWS_AS(estimate_lower_index(VarianceFunction::cantor_staircase(), 0.0),
                    std::invalid_argument);
}

TEST_CASE("parameter validation") {
    const auto v = VarianceFunction::identity();
    CHECK_THROWS_AS(estimate_upper_index(v, 2.0), std::domain_error);
    HolderParams p = default_upper_params();
    p.deltas = {0.1, 0.2};  // not decreasing
    CHECK_THROWS_AS(estimate_upper_index(v, 0.5, p), std::invalid_argument);
    p = default_upper_params();
    p.alpha_grid = {0.5, 0.4};
    CHECK_THROWS_AS(estimate_upper_index(v, 0.5, p), std::invalid_argument);
}

TEST_CASE("explicit-grid overload matches the params route") {
    const auto v = VarianceFunction::power_law(0.5);
    const HolderParams defaults = default_upper_params();
    const auto a = estimate_upper_index(v, 0.0, defaults.deltas, defaults.alpha_grid,
                                        defaults.pairs_per_window);
    const auto b = estimate_upper_index(v, 0.0);
    CHECK(a.alpha_upper == b.alpha_upper);
}
