#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "graphdim/rng.hpp"

using graphdim::RngStream;

TEST_CASE("identical (root_seed, stream_index) reproduces identical output") {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
    RngStream c(42, 7), d(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(c.next_gaussian() == d.next_gaussian());
}

TEST_CASE("distinct stream indices decorrelate") {
    RngStream a(42, 0), b(42, 1);
    const int n = 20000;
    double dot = 0.0;
    for (int i = 0; i < n; ++i) dot += a.next_gaussian() * b.next_gaussian();
    CHECK(std::abs(dot / n) < 0.03);  // ~4 sigma at n = 20000
}

TEST_CASE("uniforms stay inside (0, 1] and fill the interval") {
    RngStream r(1, 0);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = r.next_uniform();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo < 1e-4);
    CHECK(hi > 1.0 - 1e-4);
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("gaussian moments") {
    RngStream r(3, 11);
    const int n = 200000;
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = r.next_gaussian();
        m1 += z;
        m2 += z * z;
        m3 += z * z * z;
        m4 += z * z * z * z;
    }
    m1 /= n;
    m2 /= n;
    m3 /= n;
    m4 /= n;
    CHECK(std::abs(m1) < 0.01);
    CHECK(m2 == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(m3) < 0.05);
    CHECK(m4 == doctest::Approx(3.0).epsilon(0.05));
}
