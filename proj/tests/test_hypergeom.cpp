#include "modeq/hypergeom.hpp"

#include "modeq/errors.hpp"
#include "modeq/real.hpp"
#include "oracles.hpp"

#include <doctest.h>

using modeq::Rational;
using modeq::Real;
using modeq::SignatureParams;

namespace {

// Plain high-precision partial summation of the defining series, written
// independently of the library path.
Real brute_force_series(const Rational& t, const Real& z, long terms, long prec) {
    Real term = Real::of(1L, prec);
    Real sum = Real::of(1L, prec);
    Real zz = z.rounded_to(prec);
    for (long n = 0; n < terms; ++n) {
        Real up = Real::of_ratio(t.num + n * t.den, t.den, prec) *
                  Real::of_ratio(t.den - t.num + n * t.den, t.den, prec);
        term *= up;
        term /= (n + 1) * (n + 1);
        term *= zz;
        sum += term;
    }
    return sum;
}

} // namespace

TEST_CASE("signature parameters") {
    auto p2 = SignatureParams::from_signature(2, 64);
    auto p3 = SignatureParams::from_t(Rational(1, 3), 64);
    auto p4 = SignatureParams::from_signature(4, 64);
    CHECK(p2.lambda_sq().value() == 4);
    CHECK(p3.lambda_sq().value() == 3);
    CHECK(p4.lambda_sq().value() == 2);
    CHECK_FALSE(SignatureParams::from_t(Rational(2, 5), 64).lambda_sq().has_value());
    CHECK(p3.signature() == Rational(3, 1));

    // lambda = 2 cos((1-2t) pi / 2) squares to lambda_sq
    for (const auto& params : {p2, p3, p4}) {
        Real lam = params.lambda(128);
        Real err = abs(lam * lam - Real::of(*params.lambda_sq(), 128));
        CHECK(err < Real::exp2i(-120, 64));
    }

    CHECK_THROWS_AS(SignatureParams::from_t(Rational(2, 3), 64), std::domain_error);
    CHECK_THROWS_AS(SignatureParams::from_t(Rational(-1, 3), 64), std::domain_error);
    CHECK_THROWS_AS(SignatureParams::from_t(Rational(1, 3), 52), std::domain_error);
}

TEST_CASE("gauss_2f1_unit at z = 0 is exactly 1") {
    auto params = SignatureParams::from_signature(3, 128);
    CHECK(gauss_2f1_unit(params, Real::of(0L, 128)) == 1);
}

TEST_CASE("gauss_2f1_unit against the AGM oracle at t = 1/2") {
    auto params = SignatureParams::from_signature(2, 128);
    Real z = Real::of_ratio(1, 2, 128);
    Real f = gauss_2f1_unit(params, z);
    // frozen leading digits of (2/pi) K(1/sqrt 2)
    CHECK(f.str(12).substr(0, 13) == "1.18034059901");
    Real ref = oracles::f_half_agm(z, 160);
    CHECK(abs(f - ref) < ldexp2(abs(ref), -124));
}

TEST_CASE("gauss_2f1_unit against brute-force summation") {
    auto params = SignatureParams::from_signature(3, 128);
    Real z = Real::parse("0.1", 128);
    Real f = gauss_2f1_unit(params, z);
    Real ref = brute_force_series(Rational(1, 3), z.rounded_to(512), 500, 512);
    CHECK(abs(f - ref) < Real::exp2i(-126, 64));
}

TEST_CASE("gauss_2f1_unit domain errors") {
    auto params = SignatureParams::from_signature(3, 64);
    CHECK_THROWS_AS(gauss_2f1_unit(params, Real::of(-1L, 64)), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1_unit(params, Real::of(1L, 64)), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1_unit(params, Real::of(2L, 64)), std::domain_error);
}

TEST_CASE("series term cap raises ConvergenceError") {
    auto params = SignatureParams::from_signature(3, 64).with_term_cap(3);
    CHECK_THROWS_AS(gauss_2f1_unit(params, Real::parse("0.4", 64)), modeq::ConvergenceError);
}

TEST_CASE("both branches agree near the crossover") {
    for (int sig : {2, 3, 4}) {
        auto params = SignatureParams::from_signature(sig, 128);
        const long wp = 128 + 32;
        oracles::UniformSampler alphas(41 + sig, 0.4, 0.6);
        for (int i = 0; i < 10; ++i) {
            Real z = alphas.next(wp);
            Real direct = modeq::detail::series_2f1(params, z, wp);
            Real connect = modeq::detail::log_connection_2f1(params, 1 - z, wp);
            CHECK(abs(direct - connect) < ldexp2(abs(direct), -125));
        }
    }
}

TEST_CASE("ratio_R at z = 1/2 is exactly 1") {
    for (int sig : {2, 3, 4}) {
        auto params = SignatureParams::from_signature(sig, 96);
        Real r = ratio_R(params, Real::of_ratio(1, 2, 96));
        CHECK(abs(r - 1) < Real::exp2i(-90, 64));
    }
}

TEST_CASE("ratio_R hits the order-2 singular value") {
    auto params = SignatureParams::from_signature(2, 128);
    Real z = oracles::singular_modulus_sq(128);
    Real r = ratio_R(params, z);
    CHECK(abs(r - 2) < Real::parse("1e-30", 64));
    // cross-checked against the AGM route
    Real ref = oracles::ratio_half_agm(z, 128);
    CHECK(abs(r - ref) < Real::exp2i(-120, 64));
}

TEST_CASE("reciprocal symmetry R(z) R(1-z) = 1") {
    for (int sig : {2, 3, 4}) {
        auto params = SignatureParams::from_signature(sig, 128);
        oracles::UniformSampler zs(97 + sig, 0.001, 0.999);
        for (int i = 0; i < 20; ++i) {
            Real z = zs.next(128);
            Real prod = ratio_R(params, z) * ratio_R(params, 1 - z);
            CHECK(abs(prod - 1) < Real::exp2i(-(128 - 8), 64));
        }
    }
    // explicit instance: R(0.99) = 1 / R(0.01)
    auto params = SignatureParams::from_signature(3, 128);
    Real a = ratio_R(params, Real::parse("0.99", 128));
    Real b = ratio_R(params, Real::parse("0.01", 128));
    CHECK(abs(a * b - 1) < Real::exp2i(-120, 64));
}

TEST_CASE("ratio_R is strictly decreasing") {
    auto params = SignatureParams::from_signature(3, 96);
    oracles::UniformSampler zs(1234, 0.01, 0.99);
    for (int i = 0; i < 15; ++i) {
        Real z1 = zs.next(96);
        Real z2 = zs.next(96);
        if (z1 == z2) continue;
        if (z2 < z1) std::swap(z1, z2);
        CHECK(ratio_R(params, z1) > ratio_R(params, z2));
    }
    CHECK_THROWS_AS(ratio_R(params, Real::of(0L, 96)), std::domain_error);
    CHECK_THROWS_AS(ratio_R(params, Real::of(1L, 96)), std::domain_error);
}

TEST_CASE("AGM oracle equivalence at 53 bits, t = 1/2") {
    auto params = SignatureParams::from_signature(2, 53);
    oracles::UniformSampler zs(5150, 0.001, 0.999);
    Real tol = Real::parse("1e-14", 64);
    for (int i = 0; i < 100; ++i) {
        Real z = zs.next(53);
        Real f = gauss_2f1_unit(params, z);
        Real ref = oracles::f_half_agm(z, 80);
        CHECK(abs(f - ref) < tol * abs(ref));
    }
}

TEST_CASE("doubling precision preserves returned digits") {
    auto lo = SignatureParams::from_signature(3, 80);
    auto hi = SignatureParams::from_signature(3, 160);
    oracles::UniformSampler zs(77, 0.05, 0.95);
    for (int i = 0; i < 10; ++i) {
        Real z = zs.next(160);
        Real f_lo = gauss_2f1_unit(lo, z.rounded_to(80));
        Real f_hi = gauss_2f1_unit(hi, z);
        CHECK(abs(f_lo - f_hi) < ldexp2(abs(f_hi), -(80 - 4)));
    }
}

TEST_CASE("schwarz_map is i R on the interval") {
    auto params = SignatureParams::from_signature(3, 96);
    auto v = schwarz_map(params, Real::of_ratio(1, 2, 96));
    CHECK(v.re.is_zero());
    CHECK(abs(v.im - 1) < Real::exp2i(-90, 64));

    auto p2 = SignatureParams::from_signature(2, 128);
    auto w = schwarz_map(p2, oracles::singular_modulus_sq(128));
    CHECK(abs(w.im - 2) < Real::parse("1e-30", 64));

    CHECK_THROWS_AS(schwarz_map(params, Real::of(0L, 96)), std::domain_error);
}

TEST_CASE("schwarz_map imaginary part decays monotonically toward z = 1") {
    auto params = SignatureParams::from_signature(4, 96);
    Real prev(96);
    bool first = true;
    for (double z : {0.9, 0.99, 0.999, 0.9999}) {
        auto v = schwarz_map(params, Real::of(z, 96));
        CHECK(v.im > 0);
        if (!first) CHECK(v.im < prev);
        prev = v.im;
        first = false;
    }
}

TEST_CASE("triangle vertex metadata") {
    auto params = SignatureParams::from_signature(3, 96);
    auto tv = triangle_vertices(params);
    CHECK(tv.value_at_one.is_zero());
    CHECK(tv.infinite_at_zero);
    // theta/2 = (1 - 2/3) pi / 2 = pi/6
    Real expect = Real::pi(128) / 6;
    CHECK(abs(tv.half_theta - expect) < Real::exp2i(-90, 64));
}

TEST_CASE("multiplier basics") {
    auto params = SignatureParams::from_signature(3, 128);
    Real x = Real::parse("0.3", 128);
    CHECK(multiplier(params, x, x) == 1);

    auto p2 = SignatureParams::from_signature(2, 128);
    Real alpha = Real::of_ratio(1, 2, 128);
    Real beta = oracles::singular_modulus_sq(128);
    Real m = multiplier(p2, alpha, beta);
    Real ref = oracles::f_half_agm(alpha, 160) / oracles::f_half_agm(beta, 160);
    CHECK(abs(m - ref) < Real::exp2i(-120, 64));

    CHECK_THROWS_AS(multiplier(params, Real::of(0L, 128), x), std::domain_error);
    CHECK_THROWS_AS(multiplier(params, x, Real::of(1L, 128)), std::domain_error);
}
