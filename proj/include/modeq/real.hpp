#ifndef MODEQ_REAL_HPP
#define MODEQ_REAL_HPP

#include <mpfr.h>

#include <string>
#include <utility>

namespace modeq {

// Extended-precision real backed by MPFR. Precision is explicit: every
// value carries its significand width in bits, set at construction and
// never inherited from ambient state. Binary operations round to the
// wider of the two operand precisions.
class Real {
  public:
    static constexpr long min_precision = 2;

    explicit Real(long prec_bits) { mpfr_init2(v_, clamp_prec(prec_bits)); }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    Real(Real&& o) noexcept {
        mpfr_init2(v_, min_precision);
        mpfr_swap(v_, o.v_);
    }

    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~Real() { mpfr_clear(v_); }

    static Real of(long value, long prec_bits) {
        Real r(prec_bits);
        mpfr_set_si(r.v_, value, MPFR_RNDN);
        return r;
    }

    static Real of(double value, long prec_bits) {
        Real r(prec_bits);
        mpfr_set_d(r.v_, value, MPFR_RNDN);
        return r;
    }

    // num/den rounded once at the target precision.
    static Real of_ratio(long num, long den, long prec_bits) {
        Real r(prec_bits);
        mpfr_set_si(r.v_, num, MPFR_RNDN);
        mpfr_div_si(r.v_, r.v_, den, MPFR_RNDN);
        return r;
    }

    // 2^k, exact.
    static Real exp2i(long k, long prec_bits) {
        Real r(prec_bits);
        mpfr_set_ui_2exp(r.v_, 1, k, MPFR_RNDN);
        return r;
    }

    static Real pi(long prec_bits) {
        Real r(prec_bits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    static Real euler_gamma(long prec_bits) {
        Real r(prec_bits);
        mpfr_const_euler(r.v_, MPFR_RNDN);
        return r;
    }

    // Accepts plain and scientific decimal notation. Throws on garbage.
    static Real parse(const std::string& text, long prec_bits);

    long prec() const { return mpfr_get_prec(v_); }

    Real rounded_to(long prec_bits) const {
        Real r(prec_bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    // Round-trip decimal string: enough digits that parsing at the same
    // precision recovers the value exactly.
    std::string str() const;
    std::string str(size_t digits) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator+=(long k) { mpfr_add_si(v_, v_, k, MPFR_RNDN); return *this; }
    Real& operator-=(long k) { mpfr_sub_si(v_, v_, k, MPFR_RNDN); return *this; }
    Real& operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
    Real& operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }

    friend Real operator+(const Real& x, const Real& y) { return binop(x, y, mpfr_add); }
    friend Real operator-(const Real& x, const Real& y) { return binop(x, y, mpfr_sub); }
    friend Real operator*(const Real& x, const Real& y) { return binop(x, y, mpfr_mul); }
    friend Real operator/(const Real& x, const Real& y) { return binop(x, y, mpfr_div); }

    friend Real operator+(const Real& x, long k) { Real r(x); r += k; return r; }
    friend Real operator-(const Real& x, long k) { Real r(x); r -= k; return r; }
    friend Real operator*(const Real& x, long k) { Real r(x); r *= k; return r; }
    friend Real operator/(const Real& x, long k) { Real r(x); r /= k; return r; }
    friend Real operator+(long k, const Real& x) { Real r(x); r += k; return r; }
    friend Real operator*(long k, const Real& x) { Real r(x); r *= k; return r; }
    friend Real operator-(long k, const Real& x) {
        Real r(x.prec());
        mpfr_si_sub(r.v_, k, x.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(long k, const Real& x) {
        Real r(x.prec());
        mpfr_si_div(r.v_, k, x.v_, MPFR_RNDN);
        return r;
    }

    friend Real operator-(const Real& x) {
        Real r(x.prec());
        mpfr_neg(r.v_, x.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const Real& x, const Real& y) { return mpfr_equal_p(x.v_, y.v_) != 0; }
    friend bool operator!=(const Real& x, const Real& y) { return !(x == y); }
    friend bool operator<(const Real& x, const Real& y) { return mpfr_less_p(x.v_, y.v_) != 0; }
    friend bool operator<=(const Real& x, const Real& y) { return mpfr_lessequal_p(x.v_, y.v_) != 0; }
    friend bool operator>(const Real& x, const Real& y) { return mpfr_greater_p(x.v_, y.v_) != 0; }
    friend bool operator>=(const Real& x, const Real& y) { return mpfr_greaterequal_p(x.v_, y.v_) != 0; }

    friend bool operator<(const Real& x, long k) { return mpfr_cmp_si(x.v_, k) < 0; }
    friend bool operator<=(const Real& x, long k) { return mpfr_cmp_si(x.v_, k) <= 0; }
    friend bool operator>(const Real& x, long k) { return mpfr_cmp_si(x.v_, k) > 0; }
    friend bool operator>=(const Real& x, long k) { return mpfr_cmp_si(x.v_, k) >= 0; }
    friend bool operator==(const Real& x, long k) { return mpfr_cmp_si(x.v_, k) == 0 && !x.is_nan(); }
    friend bool operator!=(const Real& x, long k) { return !(x == k); }

    friend Real abs(const Real& x) { return unop(x, mpfr_abs); }
    friend Real sqrt(const Real& x) { return unop(x, mpfr_sqrt); }
    friend Real cbrt(const Real& x) { return unop(x, mpfr_cbrt); }
    friend Real log(const Real& x) { return unop(x, mpfr_log); }
    friend Real log1p(const Real& x) { return unop(x, mpfr_log1p); }
    friend Real sin(const Real& x) { return unop(x, mpfr_sin); }
    friend Real cos(const Real& x) { return unop(x, mpfr_cos); }
    friend Real digamma(const Real& x) { return unop(x, mpfr_digamma); }

    friend Real pow_i(const Real& x, long k) {
        Real r(x.prec());
        mpfr_pow_si(r.v_, x.v_, k, MPFR_RNDN);
        return r;
    }

    // x * 2^k, exact.
    friend Real ldexp2(const Real& x, long k) {
        Real r(x.prec());
        mpfr_mul_2si(r.v_, x.v_, k, MPFR_RNDN);
        return r;
    }

    friend Real min(const Real& x, const Real& y) { return y < x ? y : x; }
    friend Real max(const Real& x, const Real& y) { return x < y ? y : x; }

  private:
    static long clamp_prec(long p) { return p < min_precision ? min_precision : p; }

    using mpfr_binop_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using mpfr_unop_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    static Real binop(const Real& x, const Real& y, mpfr_binop_fn fn) {
        Real r(x.prec() > y.prec() ? x.prec() : y.prec());
        fn(r.v_, x.v_, y.v_, MPFR_RNDN);
        return r;
    }

    static Real unop(const Real& x, mpfr_unop_fn fn) {
        Real r(x.prec());
        fn(r.v_, x.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

} // namespace modeq

#endif
