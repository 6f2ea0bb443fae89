#include "modeq/hypergeom.hpp"

#include "modeq/errors.hpp"

#include <numeric>
#include <stdexcept>

namespace modeq {

Rational::Rational(long n, long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& text) {
    size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stol(text), 1);
        return Rational(std::stol(text.substr(0, slash)), std::stol(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

SignatureParams SignatureParams::from_t(Rational t, long precision_bits) {
    if (t.num <= 0 || 2 * t.num > t.den) {
        throw std::domain_error("t must lie in (0, 1/2], got " + t.str());
    }
    if (precision_bits < 53) {
        throw std::domain_error("precision_bits must be >= 53");
    }
    return SignatureParams(t, precision_bits, 0);
}

SignatureParams SignatureParams::from_signature(int signature, long precision_bits) {
    if (signature < 2) throw std::domain_error("signature must be >= 2");
    return from_t(Rational(1, signature), precision_bits);
}

std::optional<int> SignatureParams::lambda_sq() const {
    if (t_ == Rational(1, 2)) return 4;
    if (t_ == Rational(1, 3)) return 3;
    if (t_ == Rational(1, 4)) return 2;
    return std::nullopt;
}

SignatureParams SignatureParams::with_term_cap(long cap) const {
    return SignatureParams(t_, precision_bits_, cap);
}

SignatureParams SignatureParams::with_precision(long precision_bits) const {
    if (precision_bits < 53) throw std::domain_error("precision_bits must be >= 53");
    return SignatureParams(t_, precision_bits, term_cap_);
}

Real SignatureParams::theta(long prec_bits) const {
    // (1 - 2t) * pi = ((den - 2 num) / den) * pi
    Real th = Real::pi(prec_bits);
    th *= t_.den - 2 * t_.num;
    th /= t_.den;
    return th;
}

Real SignatureParams::lambda(long prec_bits) const {
    Real half_theta = theta(prec_bits + 8);
    half_theta /= 2;
    Real lam = cos(half_theta);
    lam *= 2;
    return lam.rounded_to(prec_bits);
}

namespace detail {

namespace {

constexpr long kGuardBits = 32;

void check_unit_interval_closed_left(const Real& z) {
    if (z.is_nan() || z < 0 || z >= 1) {
        throw std::domain_error("z must lie in [0, 1), got " + z.str(20));
    }
}

void check_unit_interval_open(const Real& z, const char* name) {
    if (z.is_nan() || z <= 0 || z >= 1) {
        throw std::domain_error(std::string(name) + " must lie in (0, 1), got " + z.str(20));
    }
}

} // namespace

Real series_2f1(const SignatureParams& params, const Real& z, long wp) {
    const Rational t = params.t();
    const long cap = params.term_cap();

    // term_{n+1} = term_n * (t+n)(1-t+n) / (n+1)^2 * z, with t = num/den:
    // (t+n)(1-t+n) = (num + n*den)(den - num + n*den) / den^2.
    Real term = Real::of(1L, wp);
    Real sum = Real::of(1L, wp);
    Real thresh = Real::exp2i(-(params.precision_bits() + 8), wp);

    Real zw = z.rounded_to(wp);
    Real p1(wp), p2(wp);
    for (long n = 0;; ++n) {
        if (n > cap) {
            throw ConvergenceError("2F1 series exceeded " + std::to_string(cap) +
                                   " terms at z = " + z.str(20));
        }
        p1 = Real::of(t.num + n * t.den, wp);
        p2 = Real::of(t.den - t.num + n * t.den, wp);
        term *= p1;
        term *= p2;
        term /= (n + 1) * (n + 1);
        term /= t.den;
        term /= t.den;
        term *= zw;
        sum += term;
        if (term < thresh * sum) break;
    }
    return sum;
}

Real log_connection_2f1(const SignatureParams& params, const Real& w, long wp) {
    // A&S 15.3.10 specialised to c = a + b, a = t, b = 1-t:
    //   F(z) = (sin(pi t)/pi) * sum_n c_n (L - d_n) w^n,
    // where w = 1-z, L = -log w, c_n the squared-factorial Pochhammer
    // weights and d_n = psi(t+n) + psi(1-t+n) - 2 psi(n+1).
    const Rational t = params.t();
    const long cap = params.term_cap();

    if (w.is_nan() || w <= 0) {
        throw std::domain_error("connection series needs 1 - z > 0");
    }

    Real ww = w.rounded_to(wp);
    Real big_l = -log(ww);

    Real d = digamma(Real::of_ratio(t.num, t.den, wp)) +
             digamma(Real::of_ratio(t.den - t.num, t.den, wp)) +
             ldexp2(Real::euler_gamma(wp), 1);

    Real c = Real::of(1L, wp);      // c_n * w^n accumulated together
    Real term = big_l - d;
    Real sum = term;
    Real thresh = Real::exp2i(-(params.precision_bits() + 8), wp);

    Real p1(wp), p2(wp);
    long tiny_streak = 0;
    for (long n = 0;; ++n) {
        if (n > cap) {
            throw ConvergenceError("2F1 connection series exceeded " + std::to_string(cap) +
                                   " terms at w = " + w.str(20));
        }
        // advance d_n -> d_{n+1} and c_n w^n -> c_{n+1} w^{n+1}
        d += Real::of_ratio(t.den, t.num + n * t.den, wp);
        d += Real::of_ratio(t.den, t.den - t.num + n * t.den, wp);
        d -= Real::of_ratio(2, n + 1, wp);
        p1 = Real::of(t.num + n * t.den, wp);
        p2 = Real::of(t.den - t.num + n * t.den, wp);
        c *= p1;
        c *= p2;
        c /= (n + 1) * (n + 1);
        c /= t.den;
        c /= t.den;
        c *= ww;
        term = c * (big_l - d);
        sum += term;
        // (L - d_n) can pass through zero; require two consecutive
        // sub-threshold terms before stopping.
        if (abs(term) < thresh * abs(sum)) {
            if (++tiny_streak >= 2) break;
        } else {
            tiny_streak = 0;
        }
    }

    Real pi_t = Real::pi(wp);
    Real angle = pi_t * t.num;
    angle /= t.den;
    sum *= sin(angle);
    sum /= pi_t;
    return sum;
}

Real ratio_R_wp(const SignatureParams& params, const Real& z, long wp) {
    check_unit_interval_open(z, "z");
    // Branches are arranged so that each series argument is exact:
    // for z <= 1/2, F(1-z) uses the connection series with w = z itself.
    Real half = Real::of_ratio(1, 2, wp);
    Real zw = z.rounded_to(wp);
    if (z <= half) {
        Real num = log_connection_2f1(params, zw, wp);
        Real den = series_2f1(params, zw, wp);
        return num / den;
    }
    Real w = 1 - zw;
    Real num = series_2f1(params, w, wp);
    Real den = log_connection_2f1(params, w, wp);
    return num / den;
}

} // namespace detail

Real gauss_2f1_unit(const SignatureParams& params, const Real& z) {
    detail::check_unit_interval_closed_left(z);
    const long wp = params.precision_bits() + detail::kGuardBits;
    if (z.is_zero()) return Real::of(1L, params.precision_bits());
    Real half = Real::of_ratio(1, 2, wp);
    Real value(wp);
    if (z <= half) {
        value = detail::series_2f1(params, z, wp);
    } else {
        Real w = 1 - z.rounded_to(wp);
        value = detail::log_connection_2f1(params, w, wp);
    }
    return value.rounded_to(params.precision_bits());
}

Real ratio_R(const SignatureParams& params, const Real& z) {
    const long wp = params.precision_bits() + detail::kGuardBits;
    return detail::ratio_R_wp(params, z, wp).rounded_to(params.precision_bits());
}

SchwarzValue schwarz_map(const SignatureParams& params, const Real& z) {
    Real r = ratio_R(params, z);
    return SchwarzValue{Real::of(0L, params.precision_bits()), r};
}

TriangleVertices triangle_vertices(const SignatureParams& params) {
    const long prec = params.precision_bits();
    Real half_theta = params.theta(prec + 8);
    half_theta /= 2;
    return TriangleVertices{Real::of(0L, prec), true, half_theta.rounded_to(prec)};
}

Real multiplier(const SignatureParams& params, const Real& alpha, const Real& beta) {
    detail::check_unit_interval_open(alpha, "alpha");
    detail::check_unit_interval_open(beta, "beta");
    const long wp = params.precision_bits() + detail::kGuardBits;
    const SignatureParams pw = params.with_precision(wp);
    Real num = gauss_2f1_unit(pw, alpha.rounded_to(wp));
    Real den = gauss_2f1_unit(pw, beta.rounded_to(wp));
    return (num / den).rounded_to(params.precision_bits());
}

} // namespace modeq
