#include "modeq/solver.hpp"

#include "modeq/errors.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace modeq {

namespace {

constexpr long kGuardBits = 32;
constexpr int kMaxBracketShrinks = 64;

void check_open_unit(const Real& x, const char* name) {
    if (x.is_nan() || x <= 0 || x >= 1) {
        throw std::domain_error(std::string(name) + " must lie in (0, 1)");
    }
}

} // namespace

Real default_tol(long precision_bits) {
    return Real::exp2i(-(precision_bits - 16), precision_bits);
}

ModulusPair solve_order_p(const SignatureParams& params, const Real& alpha, long p) {
    return solve_order_p(params, alpha, p, default_tol(params.precision_bits()));
}

ModulusPair solve_order_p(const SignatureParams& params, const Real& alpha, long p,
                          const Real& tol) {
    check_open_unit(alpha, "alpha");
    if (p < 1) throw std::domain_error("order p must be >= 1");
    if (tol.is_nan() || tol <= 0) throw std::domain_error("tol must be positive");

    const long bits = params.precision_bits();
    const long wp = bits + kGuardBits;
    if (tol < Real::exp2i(-(wp - 4), wp)) {
        throw PrecisionError("tol " + tol.str(8) + " below what precision_bits = " +
                             std::to_string(bits) + " can resolve; raise precision_bits");
    }

    Real a = alpha.rounded_to(bits);

    if (p == 1) {
        // R(beta) = R(alpha) forces beta = alpha by strict monotonicity.
        return ModulusPair{params.t(), 1, a, a, Real::of(1L, bits), Real::of(0L, bits), bits};
    }

    const SignatureParams pw = params.with_precision(wp);
    Real aw = alpha.rounded_to(wp);
    Real target = detail::ratio_R_wp(pw, aw, wp);
    target *= p;

    auto g = [&](const Real& b) { return detail::ratio_R_wp(pw, b, wp) - target; };

    // g is strictly decreasing with g(alpha) < 0. Squaring the lower
    // endpoint doubles log(1/eps) per step, so a sign change appears in
    // O(log p) steps.
    Real hi = aw;
    Real lo = aw * aw;
    if (lo >= hi) lo = hi * hi;
    int shrinks = 0;
    while (g(lo) <= 0) {
        if (++shrinks > kMaxBracketShrinks) {
            throw PrecisionError("failed to bracket beta from alpha = " + alpha.str(20) +
                                 ", p = " + std::to_string(p) + "; raise precision_bits");
        }
        hi = lo;
        lo *= lo;
    }

    // Bisection until ~10 correct bits of the root, i.e. the bracket is
    // narrower than 2^-10 of its midpoint.
    Real glo = g(lo);
    Real ghi = g(hi);
    Real mid(wp), gmid(wp);
    const Real coarse = Real::exp2i(-10, wp);
    while ((hi - lo) > coarse * hi) {
        mid = (lo + hi) / 2;
        gmid = g(mid);
        if (gmid > 0) {
            lo = mid;
            glo = gmid;
        } else {
            hi = mid;
            ghi = gmid;
        }
    }

    // Secant polish with the bracket as a safety net: a step landing
    // outside [lo, hi] falls back to bisection.
    Real x0 = lo, f0 = glo;
    Real x1 = hi, f1 = ghi;
    const long iter_cap = 4 * wp;
    for (long i = 0; i < iter_cap; ++i) {
        if (abs(f1) <= tol || lo == hi) break;
        Real step_den = f1 - f0;
        Real x2(wp);
        if (step_den.is_zero()) {
            x2 = (lo + hi) / 2;
        } else {
            x2 = x1 - f1 * (x1 - x0) / step_den;
            if (!(x2 > lo && x2 < hi)) x2 = (lo + hi) / 2;
        }
        Real f2 = g(x2);
        if (f2 > 0) lo = x2; else hi = x2;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
    if (abs(f1) > tol) {
        throw ConvergenceError("solver stalled above tol at alpha = " + alpha.str(20) +
                               ", p = " + std::to_string(p));
    }

    Real beta = x1.rounded_to(bits);
    Real m = multiplier(params, a, beta);
    Real residual = abs(f1).rounded_to(bits);
    return ModulusPair{params.t(), p, a, beta, m, residual, bits};
}

ModulusPair swap_solution(const ModulusPair& pair) {
    const SignatureParams params = SignatureParams::from_t(pair.t, pair.precision_bits);
    const long wp = pair.precision_bits + kGuardBits;
    Real alpha2 = (1 - pair.beta.rounded_to(wp)).rounded_to(pair.precision_bits);
    Real beta2 = (1 - pair.alpha.rounded_to(wp)).rounded_to(pair.precision_bits);
    ModulusPair swapped{pair.t, pair.p, alpha2, beta2, Real(pair.precision_bits),
                        Real(pair.precision_bits), pair.precision_bits};
    swapped.m = multiplier(params, alpha2, beta2);
    swapped.residual = verify_solution(params, swapped, default_tol(pair.precision_bits)).residual;
    return swapped;
}

VerifyResult verify_solution(const SignatureParams& params, const ModulusPair& pair,
                             const Real& tol) {
    check_open_unit(pair.alpha, "alpha");
    check_open_unit(pair.beta, "beta");
    if (pair.p < 1) throw std::domain_error("order p must be >= 1");
    const long wp = params.precision_bits() + kGuardBits;
    const SignatureParams pw = params.with_precision(wp);
    Real lhs = detail::ratio_R_wp(pw, pair.beta.rounded_to(wp), wp);
    Real rhs = detail::ratio_R_wp(pw, pair.alpha.rounded_to(wp), wp);
    rhs *= pair.p;
    Real residual = abs(lhs - rhs).rounded_to(params.precision_bits());
    return VerifyResult{residual, residual <= tol};
}

std::string to_json_string(const ModulusPair& pair, int indent) {
    nlohmann::json j{{"t", pair.t.str()},
                     {"p", pair.p},
                     {"alpha", pair.alpha.str()},
                     {"beta", pair.beta.str()},
                     {"m", pair.m.str()},
                     {"residual", pair.residual.str()},
                     {"precision_bits", pair.precision_bits}};
    return j.dump(indent);
}

ModulusPair modulus_pair_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    long bits = j.at("precision_bits").get<long>();
    return ModulusPair{Rational::parse(j.at("t").get<std::string>()),
                       j.at("p").get<long>(),
                       Real::parse(j.at("alpha").get<std::string>(), bits),
                       Real::parse(j.at("beta").get<std::string>(), bits),
                       Real::parse(j.at("m").get<std::string>(), bits),
                       Real::parse(j.at("residual").get<std::string>(), bits),
                       bits};
}

} // namespace modeq
