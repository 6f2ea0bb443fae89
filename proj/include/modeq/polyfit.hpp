#ifndef MODEQ_POLYFIT_HPP
#define MODEQ_POLYFIT_HPP

#include "modeq/hecke.hpp"
#include "modeq/hypergeom.hpp"
#include "modeq/real.hpp"
#include "modeq/solver.hpp"

#include <string>
#include <utility>
#include <vector>

namespace modeq {

// Integer-coefficient polynomial sum_{j,k} coeffs[j][k] alpha^j beta^k of
// degree mu in each variable, normalized to content 1 with positive
// leading coefficient in graded-lex order.
class BivariatePolynomial {
  public:
    BivariatePolynomial(long mu, std::vector<std::vector<BigInt>> coeffs);

    long mu() const { return mu_; }
    const BigInt& coeff(long j, long k) const { return coeffs_[j][k]; }
    const std::vector<std::vector<BigInt>>& grid() const { return coeffs_; }

    // Degree exactly mu in each variable: a nonzero entry in row mu and in
    // column mu.
    bool degree_exact() const;

    // "sum c a^j b^k" in graded-lex order, highest monomials first.
    std::string str() const;
    std::string to_json_string(int indent = -1) const;
    static BivariatePolynomial from_json_string(const std::string& text);

    friend bool operator==(const BivariatePolynomial& x, const BivariatePolynomial& y) {
        return x.mu_ == y.mu_ && x.coeffs_ == y.coeffs_;
    }

  private:
    long mu_;
    std::vector<std::vector<BigInt>> coeffs_;
};

// Solver-backed (alpha, beta) samples of order p, alpha spread over
// [lo, hi] with endpoint-included Chebyshev spacing, each record
// re-verified below the solver tolerance. jobs > 1 solves concurrently
// with deterministic ordering.
std::vector<std::pair<Real, Real>> sample_pairs(const SignatureParams& params, long p,
                                                long count, double lo, double hi,
                                                int jobs = 1);

struct FitDiagnostics {
    Real sigma_min;
    Real sigma_second;
    long samples;
    long columns;
};

// Reconstruct the degree-mu integer polynomial vanishing on the samples:
// one-sided Jacobi orthogonalization of the monomial matrix, a rank-1
// nullspace certified by a singular-value gap of 2^(precision_bits/4),
// then continued-fraction rational rounding (denominators <= 10^6).
BivariatePolynomial fit_modular_polynomial(const std::vector<std::pair<Real, Real>>& samples,
                                           long mu, long precision_bits,
                                           FitDiagnostics* diagnostics = nullptr);

// Horner evaluation in beta with coefficient polynomials in alpha.
Real eval_poly(const BivariatePolynomial& poly, const Real& alpha, const Real& beta);

// Residual bound used for held-out checks: 2^(-precision_bits/2) * max|coeff|.
Real fit_residual_bound(const BivariatePolynomial& poly, long precision_bits);

struct SymmetryReport {
    bool coeff_match;        // grid of P(1-y, 1-x) equals +-P exactly
    int sign;                // the matching sign, 0 if no match
    bool numeric_pass;       // every sample satisfies |P(1-beta, 1-alpha)| <= bound
    Real max_abs_residual;
    Real bound;
    std::vector<Real> residuals;
};

// Check the (alpha, beta) -> (1-beta, 1-alpha) symmetry of P both
// numerically on samples and exactly at the coefficient level.
SymmetryReport verify_symmetry(const BivariatePolynomial& poly,
                               const std::vector<std::pair<Real, Real>>& samples);

// Exact coefficient grid of P(1 - y, 1 - x) via binomial expansion.
BivariatePolynomial substitute_fricke(const BivariatePolynomial& poly);

} // namespace modeq

#endif
