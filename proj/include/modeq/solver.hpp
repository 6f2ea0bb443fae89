#ifndef MODEQ_SOLVER_HPP
#define MODEQ_SOLVER_HPP

#include "modeq/hypergeom.hpp"
#include "modeq/real.hpp"

#include <string>

namespace modeq {

// One solved instance of the generalized modular equation
// R_t(beta) = p * R_t(alpha).
struct ModulusPair {
    Rational t;
    long p = 0;
    Real alpha;
    Real beta;
    Real m;
    Real residual;
    long precision_bits = 0;
};

// Default solve tolerance at a given precision: 2^(16 - bits).
Real default_tol(long precision_bits);

// Solve for beta of order p over alpha. Bracketing bisection on the
// strictly decreasing g(beta) = R(beta) - p R(alpha), then a safeguarded
// secant polish once ten bits of the root are fixed.
ModulusPair solve_order_p(const SignatureParams& params, const Real& alpha, long p);
ModulusPair solve_order_p(const SignatureParams& params, const Real& alpha, long p,
                          const Real& tol);

// Fricke swap (alpha, beta) -> (1 - beta, 1 - alpha): again a solution of
// the same order; multiplier and residual recomputed.
ModulusPair swap_solution(const ModulusPair& pair);

struct VerifyResult {
    Real residual;
    bool pass;
};

// Recomputed |R(beta) - p R(alpha)| checked against tol.
VerifyResult verify_solution(const SignatureParams& params, const ModulusPair& pair,
                             const Real& tol);

// JSON object {t, p, alpha, beta, m, residual, precision_bits} with
// decimal-string numerics; round-trips exactly at the stored precision.
std::string to_json_string(const ModulusPair& pair, int indent = -1);
ModulusPair modulus_pair_from_json(const std::string& text);

} // namespace modeq

#endif
