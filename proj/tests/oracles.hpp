// Test-only reference computations, kept independent of the library's
// evaluation paths: AGM-based complete elliptic integrals for t = 1/2,
// and the closed-form signature-3 order-2 solution at alpha = 1/2.
#ifndef MODEQ_TESTS_ORACLES_HPP
#define MODEQ_TESTS_ORACLES_HPP

#include "modeq/real.hpp"

#include <random>

namespace oracles {

using modeq::Real;

// Arithmetic-geometric mean of (1, x).
inline Real agm_one(const Real& x, long prec) {
    Real a = Real::of(1L, prec);
    Real g = x.rounded_to(prec);
    Real stop = Real::exp2i(-(prec - 4), prec);
    for (int i = 0; i < 4 * 64; ++i) {
        Real an = (a + g) / 2;
        Real gn = sqrt(a * g);
        a = an;
        g = gn;
        if (abs(a - g) <= stop * a) break;
    }
    return (a + g) / 2;
}

// 2F1(1/2, 1/2; 1; z) = (2/pi) K(sqrt z) = 1 / agm(1, sqrt(1 - z)).
inline Real f_half_agm(const Real& z, long prec) {
    long wp = prec + 16;
    Real w = 1 - z.rounded_to(wp);
    return (1 / agm_one(sqrt(w), wp)).rounded_to(prec);
}

// R_{1/2}(z) = K'(k)/K(k) at k^2 = z, via two AGMs.
inline Real ratio_half_agm(const Real& z, long prec) {
    long wp = prec + 16;
    Real zz = z.rounded_to(wp);
    Real num = agm_one(sqrt(1 - zz), wp);
    Real den = agm_one(sqrt(zz), wp);
    return (num / den).rounded_to(prec);
}

// 17 - 12 sqrt 2, the order-2 singular modulus squared: K'/K = 2.
inline Real singular_modulus_sq(long prec) {
    long wp = prec + 16;
    Real s = sqrt(Real::of(2L, wp));
    return (17 - 12 * s).rounded_to(prec);
}

// Signature 3, p = 2, alpha = 1/2: with u = beta^{1/3}, v = (1-beta)^{1/3},
// u + v = 2^{1/3} and u^3 + v^3 = 1 reduce to a quadratic in u; beta = u^3
// for the root with beta < alpha.
inline Real sig3_p2_beta_at_half(long prec) {
    long wp = prec + 16;
    Real two = Real::of(2L, wp);
    Real c1 = cbrt(two);                       // u + v
    Real uv = (two - 1) / (3 * c1);            // from 1 = c1^3 - 3 uv c1
    // u^2 - c1 u + uv = 0
    Real disc = sqrt(c1 * c1 - 4 * uv);
    Real u = (c1 - disc) / 2;
    return pow_i(u, 3).rounded_to(prec);
}

// Deterministic alpha samples in (lo, hi).
class UniformSampler {
  public:
    UniformSampler(unsigned long seed, double lo, double hi) : rng_(seed), dist_(lo, hi) {}

    Real next(long prec) { return Real::of(dist_(rng_), prec); }

  private:
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> dist_;
};

} // namespace oracles

#endif
