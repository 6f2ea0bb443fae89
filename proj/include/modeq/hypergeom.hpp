#ifndef MODEQ_HYPERGEOM_HPP
#define MODEQ_HYPERGEOM_HPP

#include "modeq/real.hpp"

#include <optional>
#include <string>

namespace modeq {

// Reduced fraction with positive denominator.
struct Rational {
    long num = 0;
    long den = 1;

    Rational() = default;
    Rational(long n, long d);

    Rational reciprocal() const { return Rational(den, num); }
    std::string str() const;
    static Rational parse(const std::string& text);

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
};

// Theory parameter t in (0, 1/2] together with the working precision.
// For t in {1/2, 1/3, 1/4} the associated Hecke lambda satisfies
// lambda^2 = 4, 3, 2 respectively; other t have no arithmetic lambda.
class SignatureParams {
  public:
    static SignatureParams from_t(Rational t, long precision_bits);
    static SignatureParams from_signature(int signature, long precision_bits);

    Rational t() const { return t_; }
    Rational signature() const { return t_.reciprocal(); }
    std::optional<int> lambda_sq() const;
    long precision_bits() const { return precision_bits_; }

    // Term cap for series summation; 0 means the default 100*precision_bits.
    long term_cap() const { return term_cap_ > 0 ? term_cap_ : 100 * precision_bits_; }
    SignatureParams with_term_cap(long cap) const;
    SignatureParams with_precision(long precision_bits) const;

    // theta = (1 - 2t) * pi
    Real theta(long prec_bits) const;
    // lambda = 2 cos(theta / 2)
    Real lambda(long prec_bits) const;

  private:
    SignatureParams(Rational t, long precision_bits, long term_cap)
        : t_(t), precision_bits_(precision_bits), term_cap_(term_cap) {}

    Rational t_;
    long precision_bits_;
    long term_cap_;
};

// 2F1(t, 1-t; 1; z) for 0 <= z < 1, to within a few ulp at
// params.precision_bits. Direct series up to z = 1/2, logarithmic
// z <-> 1-z connection formula beyond.
Real gauss_2f1_unit(const SignatureParams& params, const Real& z);

// R_t(z) = F(1-z) / F(z), strictly decreasing on (0,1),
// with R -> +inf as z -> 0+ and R -> 0+ as z -> 1-.
Real ratio_R(const SignatureParams& params, const Real& z);

// Value of the Schwarz triangle map on (0,1): purely imaginary i*R_t(z).
struct SchwarzValue {
    Real re;
    Real im;
};

SchwarzValue schwarz_map(const SignatureParams& params, const Real& z);

// Boundary data of the triangle map, recorded rather than computed:
// f_t(1) = 0, f_t(0) = i*infinity, and f_t(infinity) = e^{i*theta/2}.
struct TriangleVertices {
    Real value_at_one;       // 0
    bool infinite_at_zero;   // true: i*infinity
    Real half_theta;         // argument of the third vertex on the unit circle
};

TriangleVertices triangle_vertices(const SignatureParams& params);

// Multiplier m = F(alpha) / F(beta) for alpha, beta in (0,1).
Real multiplier(const SignatureParams& params, const Real& alpha, const Real& beta);

namespace detail {

// Direct series branch, valid for 0 <= z <= 1/2 + margin. Result at wp bits.
Real series_2f1(const SignatureParams& params, const Real& z, long wp);

// Connection-formula branch: F(z) expressed through series in w = 1-z and
// log(1/w); pass w (not z). Valid for 0 < w <= 1/2 + margin. Result at wp bits.
Real log_connection_2f1(const SignatureParams& params, const Real& w, long wp);

// R_t(z) evaluated at an explicit working precision; used by the solver.
Real ratio_R_wp(const SignatureParams& params, const Real& z, long wp);

} // namespace detail

} // namespace modeq

#endif
