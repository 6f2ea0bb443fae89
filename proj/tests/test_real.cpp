#include "modeq/real.hpp"

#include <doctest.h>

#include <random>

using modeq::Real;

TEST_CASE("construction and precision") {
    Real x = Real::of(3L, 100);
    CHECK(x.prec() == 100);
    CHECK(x.to_double() == 3.0);

    Real y = Real::of_ratio(1, 3, 200);
    CHECK(y.prec() == 200);
    CHECK(y > 0);
    CHECK(3 * y != 1);  // 1/3 is not exactly representable
    CHECK(abs(3 * y - 1) < Real::exp2i(-195, 64));

    Real z = x.rounded_to(64);
    CHECK(z.prec() == 64);
    CHECK(z == x);
}

TEST_CASE("arithmetic carries the wider precision") {
    Real a = Real::of(2L, 80);
    Real b = Real::of(5L, 160);
    CHECK((a + b).prec() == 160);
    CHECK((a * b).prec() == 160);
    CHECK((a / b).to_double() == doctest::Approx(0.4));
    CHECK((7 - a) == Real::of(5L, 80));
    CHECK((1 / a) == Real::of_ratio(1, 2, 80));
    CHECK(-a < a);
    CHECK(pow_i(a, 10) == Real::of(1024L, 80));
    CHECK(ldexp2(a, 5) == Real::of(64L, 80));
}

TEST_CASE("constants") {
    Real pi = Real::pi(128);
    CHECK(pi.str(20).substr(0, 12) == "3.1415926535");
    Real g = Real::euler_gamma(128);
    CHECK(g.str(20).substr(0, 12) == "5.7721566490");
    CHECK(sin(pi / 2) == 1);
}

TEST_CASE("decimal string round trip") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        Real x = Real::of(dist(rng), 113);
        x *= Real::pi(113);
        Real back = Real::parse(x.str(), 113);
        CHECK(back == x);
    }
    CHECK(Real::parse("1e-30", 64) > 0);
    CHECK(Real::of(0L, 64).str() == "0");
    CHECK_THROWS_AS(Real::parse("not-a-number", 64), std::invalid_argument);
}

TEST_CASE("special values") {
    Real nan(64);
    CHECK(nan.is_nan());
    CHECK_FALSE(nan == nan);
    CHECK(Real::exp2i(-10, 64) == Real::of_ratio(1, 1024, 64));
    CHECK(Real::of(0L, 64).is_zero());
}
