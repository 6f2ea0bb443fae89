#include "modeq/polyfit.hpp"

#include "modeq/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace modeq {

namespace {

using Grid = std::vector<std::vector<BigInt>>;

BigInt content_of(const Grid& grid) {
    BigInt g = 0;
    for (const auto& row : grid) {
        for (const auto& c : row) g = boost::multiprecision::gcd(g, c);
    }
    return g;
}

// Leading coefficient in graded-lex order: highest total degree first,
// alpha-power breaking ties.
const BigInt* graded_lex_leading(const Grid& grid, long mu) {
    for (long total = 2 * mu; total >= 0; --total) {
        for (long j = std::min(total, mu); j >= 0 && total - j <= mu; --j) {
            const BigInt& c = grid[j][total - j];
            if (c != 0) return &c;
        }
    }
    return nullptr;
}

Real real_from_bigint(const BigInt& v, long prec) {
    if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max()) {
        return Real::of(v.convert_to<long>(), prec);
    }
    return Real::parse(v.str(), prec);
}

// Raw coefficient grid of P(1-y, 1-x), no normalization: alpha^j beta^k
// contributes binom(j,s) binom(k,r) (-1)^(r+s) to the x^r y^s entry.
Grid fricke_substituted_grid(const BivariatePolynomial& poly) {
    const long mu = poly.mu();
    Grid pascal(static_cast<size_t>(mu + 1), std::vector<BigInt>(static_cast<size_t>(mu + 1), 0));
    for (long i = 0; i <= mu; ++i) {
        pascal[i][0] = 1;
        for (long j = 1; j <= i; ++j) {
            pascal[i][j] = pascal[i - 1][j - 1] + (j <= i - 1 ? pascal[i - 1][j] : BigInt(0));
        }
    }
    Grid out(static_cast<size_t>(mu + 1), std::vector<BigInt>(static_cast<size_t>(mu + 1), 0));
    for (long j = 0; j <= mu; ++j) {
        for (long k = 0; k <= mu; ++k) {
            const BigInt& c = poly.coeff(j, k);
            if (c == 0) continue;
            for (long s = 0; s <= j; ++s) {
                for (long r = 0; r <= k; ++r) {
                    BigInt term = c * pascal[j][s] * pascal[k][r];
                    if ((r + s) % 2 != 0) term = -term;
                    out[static_cast<size_t>(r)][static_cast<size_t>(s)] += term;
                }
            }
        }
    }
    return out;
}

} // namespace

BivariatePolynomial::BivariatePolynomial(long mu, std::vector<std::vector<BigInt>> coeffs)
    : mu_(mu), coeffs_(std::move(coeffs)) {
    if (mu_ < 0) throw std::domain_error("mu must be >= 0");
    if (coeffs_.size() != static_cast<size_t>(mu_ + 1)) {
        throw std::domain_error("coefficient grid must be (mu+1) x (mu+1)");
    }
    for (const auto& row : coeffs_) {
        if (row.size() != static_cast<size_t>(mu_ + 1)) {
            throw std::domain_error("coefficient grid must be (mu+1) x (mu+1)");
        }
    }
    BigInt g = content_of(coeffs_);
    if (g == 0) throw std::domain_error("zero polynomial");
    const BigInt* lead = graded_lex_leading(coeffs_, mu_);
    if (*lead < 0) g = -g;
    if (g != 1) {
        for (auto& row : coeffs_) {
            for (auto& c : row) c /= g;
        }
    }
}

bool BivariatePolynomial::degree_exact() const {
    bool row_mu = false, col_mu = false;
    for (long k = 0; k <= mu_; ++k) {
        if (coeffs_[mu_][k] != 0) row_mu = true;
        if (coeffs_[k][mu_] != 0) col_mu = true;
    }
    return row_mu && col_mu;
}

std::string BivariatePolynomial::str() const {
    std::ostringstream out;
    bool first = true;
    for (long total = 2 * mu_; total >= 0; --total) {
        for (long j = std::min(total, mu_); j >= 0 && total - j <= mu_; --j) {
            long k = total - j;
            const BigInt& c = coeffs_[j][k];
            if (c == 0) continue;
            if (first) {
                if (c < 0) out << "-";
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            first = false;
            BigInt mag = abs(c);
            bool has_vars = j > 0 || k > 0;
            if (mag != 1 || !has_vars) out << mag.str();
            if (j > 0) {
                if (mag != 1) out << "*";
                out << "a" << (j > 1 ? "^" + std::to_string(j) : "");
            }
            if (k > 0) {
                if (j > 0 || mag != 1) out << "*";
                out << "b" << (k > 1 ? "^" + std::to_string(k) : "");
            }
        }
    }
    return out.str();
}

std::string BivariatePolynomial::to_json_string(int indent) const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : coeffs_) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& c : row) r.push_back(c.str());
        rows.push_back(std::move(r));
    }
    return nlohmann::json{{"mu", mu_}, {"coeffs", rows}}.dump(indent);
}

BivariatePolynomial BivariatePolynomial::from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    long mu = j.at("mu").get<long>();
    Grid grid;
    for (const auto& row : j.at("coeffs")) {
        std::vector<BigInt> r;
        for (const auto& c : row) r.emplace_back(c.get<std::string>());
        grid.push_back(std::move(r));
    }
    return BivariatePolynomial(mu, std::move(grid));
}

std::vector<std::pair<Real, Real>> sample_pairs(const SignatureParams& params, long p,
                                                long count, double lo, double hi, int jobs) {
    if (count < 2) throw std::domain_error("count must be >= 2");
    if (!(0.0 < lo && lo < hi && hi < 1.0)) {
        throw std::domain_error("need 0 < lo < hi < 1");
    }
    if (jobs < 1) jobs = 1;

    const long bits = params.precision_bits();
    const long wp = bits + 16;
    Real tol = default_tol(bits);

    // Chebyshev points of the closed kind on [lo, hi], ascending; the
    // endpoint clustering tempers the monomial-matrix conditioning.
    Real mid = (Real::of(lo, wp) + Real::of(hi, wp)) / 2;
    Real halfwidth = (Real::of(hi, wp) - Real::of(lo, wp)) / 2;
    Real pi_wp = Real::pi(wp);
    std::vector<Real> alphas;
    alphas.reserve(static_cast<size_t>(count));
    for (long i = count - 1; i >= 0; --i) {
        Real angle = pi_wp * i;
        angle /= count - 1;
        alphas.push_back((mid + halfwidth * cos(angle)).rounded_to(bits));
    }

    std::vector<std::pair<Real, Real>> out(static_cast<size_t>(count),
                                           {Real(bits), Real(bits)});
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto solve_range = [&](long begin, long step) {
        try {
            for (long i = begin; i < count; i += step) {
                ModulusPair pair = solve_order_p(params, alphas[static_cast<size_t>(i)], p, tol);
                if (pair.residual > tol) {
                    throw PrecisionError("sample residual above tolerance at alpha = " +
                                         pair.alpha.str(20));
                }
                out[static_cast<size_t>(i)] = {pair.alpha, pair.beta};
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    if (jobs == 1) {
        solve_range(0, 1);
    } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w) workers.emplace_back(solve_range, w, jobs);
        for (auto& t : workers) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

namespace {

// One-sided Jacobi orthogonalization of the columns of A (n x m): yields
// the singular values and right singular vectors without forming A^T A.
struct JacobiSvd {
    std::vector<Real> sigma;
    std::vector<std::vector<Real>> v_cols;
};

JacobiSvd one_sided_jacobi(std::vector<std::vector<Real>> cols, long wp) {
    const size_t m = cols.size();
    const size_t n = cols[0].size();

    std::vector<std::vector<Real>> v(m, std::vector<Real>(m, Real::of(0L, wp)));
    for (size_t i = 0; i < m; ++i) v[i][i] = Real::of(1L, wp);

    auto dot = [&](const std::vector<Real>& x, const std::vector<Real>& y) {
        Real s = Real::of(0L, wp);
        for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
        return s;
    };

    const Real eps = Real::exp2i(-(wp - 8), wp);
    const int max_sweeps = 64;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (size_t p = 0; p + 1 < m; ++p) {
            for (size_t q = p + 1; q < m; ++q) {
                Real app = dot(cols[p], cols[p]);
                Real aqq = dot(cols[q], cols[q]);
                Real apq = dot(cols[p], cols[q]);
                if (apq * apq <= eps * eps * app * aqq) continue;
                converged = false;
                Real tau = (aqq - app) / ldexp2(apq, 1);
                Real root = sqrt(1 + tau * tau);
                Real t = (tau >= 0) ? 1 / (tau + root) : 1 / (tau - root);
                Real c = 1 / sqrt(1 + t * t);
                Real s = c * t;
                for (size_t i = 0; i < n; ++i) {
                    Real cp = cols[p][i];
                    cols[p][i] = c * cp - s * cols[q][i];
                    cols[q][i] = s * cp + c * cols[q][i];
                }
                for (size_t i = 0; i < m; ++i) {
                    Real vp = v[p][i];
                    v[p][i] = c * vp - s * v[q][i];
                    v[q][i] = s * vp + c * v[q][i];
                }
            }
        }
    }
    if (!converged) throw FitError("Jacobi orthogonalization did not converge");

    JacobiSvd out{std::vector<Real>(), std::move(v)};
    out.sigma.reserve(m);
    for (size_t j = 0; j < m; ++j) out.sigma.push_back(sqrt(dot(cols[j], cols[j])));
    return out;
}

struct SmallRational {
    int64_t num;
    int64_t den;
};

constexpr int64_t kMaxDenominator = 1000000;

// Continued-fraction convergents until one lands within tol of x.
SmallRational rational_round(const Real& x, const Real& tol) {
    const long wp = x.prec();
    const Real coeff_cap = Real::of(static_cast<long>(1) << 40, wp);
    Real r = x;
    int64_t h2 = 0, h1 = 1;
    int64_t k2 = 1, k1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        Real fl(wp);
        mpfr_floor(fl.raw(), r.raw());
        if (abs(fl) > coeff_cap) break;
        int64_t a = static_cast<int64_t>(fl.to_long());
        int64_t h = a * h1 + h2;
        int64_t k = a * k1 + k2;
        if (k > kMaxDenominator) break;
        Real approx = Real::of(static_cast<long>(h), wp);
        approx /= static_cast<long>(k);
        if (abs(x - approx) <= tol) return SmallRational{h, k};
        Real frac = r - fl;
        if (frac.is_zero()) break;
        h2 = h1; h1 = h;
        k2 = k1; k1 = k;
        r = 1 / frac;
    }
    throw RationalRoundingError("no rational with denominator <= " +
                                std::to_string(kMaxDenominator) + " within tolerance of " +
                                x.str(24));
}

} // namespace

BivariatePolynomial fit_modular_polynomial(const std::vector<std::pair<Real, Real>>& samples,
                                           long mu, long precision_bits,
                                           FitDiagnostics* diagnostics) {
    if (mu < 1) throw std::domain_error("mu must be >= 1");
    const long m = (mu + 1) * (mu + 1);
    const long n = static_cast<long>(samples.size());
    if (n < m + 8) {
        throw std::domain_error("need at least (mu+1)^2 + 8 = " + std::to_string(m + 8) +
                                " samples, got " + std::to_string(n));
    }
    for (long i = 0; i + 1 < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            if (samples[i].first == samples[j].first) {
                throw std::domain_error("samples must be pairwise distinct in alpha");
            }
        }
    }

    const long wp = precision_bits + 64;

    // Monomial matrix: column (j,k) holds alpha_i^j beta_i^k.
    std::vector<std::vector<Real>> cols(static_cast<size_t>(m),
                                        std::vector<Real>(static_cast<size_t>(n), Real(wp)));
    for (long i = 0; i < n; ++i) {
        Real a = samples[i].first.rounded_to(wp);
        Real b = samples[i].second.rounded_to(wp);
        std::vector<Real> apow{Real::of(1L, wp)}, bpow{Real::of(1L, wp)};
        for (long e = 1; e <= mu; ++e) {
            apow.push_back(apow.back() * a);
            bpow.push_back(bpow.back() * b);
        }
        for (long j = 0; j <= mu; ++j) {
            for (long k = 0; k <= mu; ++k) {
                cols[static_cast<size_t>(j * (mu + 1) + k)][static_cast<size_t>(i)] =
                    apow[static_cast<size_t>(j)] * bpow[static_cast<size_t>(k)];
            }
        }
    }

    JacobiSvd svd = one_sided_jacobi(std::move(cols), wp);

    size_t min_idx = 0, second_idx = 1;
    if (svd.sigma[second_idx] < svd.sigma[min_idx]) std::swap(min_idx, second_idx);
    for (size_t j = 2; j < svd.sigma.size(); ++j) {
        if (svd.sigma[j] < svd.sigma[min_idx]) {
            second_idx = min_idx;
            min_idx = j;
        } else if (svd.sigma[j] < svd.sigma[second_idx]) {
            second_idx = j;
        }
    }
    if (diagnostics) {
        diagnostics->sigma_min = svd.sigma[min_idx].rounded_to(precision_bits);
        diagnostics->sigma_second = svd.sigma[second_idx].rounded_to(precision_bits);
        diagnostics->samples = n;
        diagnostics->columns = m;
    }

    // Rank deficiency must be exactly one: demand a wide gap between the
    // two smallest singular values.
    Real gap_factor = Real::exp2i(precision_bits / 4, wp);
    if (svd.sigma[second_idx].is_zero() ||
        !(svd.sigma[second_idx] > svd.sigma[min_idx] * gap_factor)) {
        throw AmbiguousNullspaceError(
            "nullspace gap test failed (sigma_min = " + svd.sigma[min_idx].str(12) +
            ", sigma_next = " + svd.sigma[second_idx].str(12) +
            "): wrong mu or insufficient precision");
    }

    const std::vector<Real>& null_dir = svd.v_cols[min_idx];

    size_t max_entry = 0;
    for (size_t i = 1; i < null_dir.size(); ++i) {
        if (abs(null_dir[i]) > abs(null_dir[max_entry])) max_entry = i;
    }

    // Entry ratios are rationals with small denominators; recover each by
    // continued fractions, then clear denominators with one lcm.
    const Real round_tol = Real::exp2i(-(precision_bits / 2), wp);
    std::vector<SmallRational> ratios;
    ratios.reserve(null_dir.size());
    int64_t lcm_den = 1;
    for (const Real& v : null_dir) {
        SmallRational r = rational_round(v / null_dir[max_entry], round_tol);
        int64_t g = std::gcd(lcm_den, r.den);
        if (lcm_den / g > kMaxDenominator / r.den + 1) {
            throw RationalRoundingError("denominator lcm exceeds bound");
        }
        lcm_den = lcm_den / g * r.den;
        ratios.push_back(r);
    }

    Grid grid(static_cast<size_t>(mu + 1), std::vector<BigInt>(static_cast<size_t>(mu + 1)));
    Real scale = Real::of(static_cast<long>(lcm_den), wp);
    for (long j = 0; j <= mu; ++j) {
        for (long k = 0; k <= mu; ++k) {
            size_t idx = static_cast<size_t>(j * (mu + 1) + k);
            const SmallRational& r = ratios[idx];
            BigInt c = BigInt(r.num) * (lcm_den / r.den);
            // Every rounded coefficient must sit on top of its estimate.
            Real estimate = (null_dir[idx] / null_dir[max_entry]) * scale;
            Real delta = abs(estimate - real_from_bigint(c, wp));
            if (delta > round_tol) {
                throw RationalRoundingError("coefficient estimate " + estimate.str(24) +
                                            " too far from integer " + c.str());
            }
            grid[static_cast<size_t>(j)][static_cast<size_t>(k)] = std::move(c);
        }
    }

    BivariatePolynomial poly(mu, std::move(grid));
    if (!poly.degree_exact()) {
        throw AmbiguousNullspaceError("fitted polynomial is degree-deficient in one variable");
    }
    return poly;
}

Real eval_poly(const BivariatePolynomial& poly, const Real& alpha, const Real& beta) {
    const long wp = std::max(alpha.prec(), beta.prec());
    const long mu = poly.mu();
    Real a = alpha.rounded_to(wp);
    Real b = beta.rounded_to(wp);
    Real acc = Real::of(0L, wp);
    for (long k = mu; k >= 0; --k) {
        Real row = Real::of(0L, wp);
        for (long j = mu; j >= 0; --j) {
            row *= a;
            row += real_from_bigint(poly.coeff(j, k), wp);
        }
        acc *= b;
        acc += row;
    }
    return acc;
}

Real fit_residual_bound(const BivariatePolynomial& poly, long precision_bits) {
    BigInt max_c = 0;
    for (const auto& row : poly.grid()) {
        for (const auto& c : row) {
            BigInt mag = abs(c);
            if (mag > max_c) max_c = mag;
        }
    }
    Real bound = Real::exp2i(-(precision_bits / 2), precision_bits + 16);
    bound *= real_from_bigint(max_c, precision_bits + 16);
    return bound;
}

BivariatePolynomial substitute_fricke(const BivariatePolynomial& poly) {
    return BivariatePolynomial(poly.mu(), fricke_substituted_grid(poly));
}

SymmetryReport verify_symmetry(const BivariatePolynomial& poly,
                               const std::vector<std::pair<Real, Real>>& samples) {
    long bits = 64;
    for (const auto& s : samples) bits = std::max(bits, s.first.prec());

    SymmetryReport report{false, 0, true, Real::of(0L, bits),
                          fit_residual_bound(poly, bits), {}};

    Grid raw = fricke_substituted_grid(poly);
    Grid negated = raw;
    for (auto& row : negated) {
        for (auto& c : row) c = -c;
    }
    if (raw == poly.grid()) {
        report.coeff_match = true;
        report.sign = 1;
    } else if (negated == poly.grid()) {
        report.coeff_match = true;
        report.sign = -1;
    }

    const long wp = bits + 32;
    for (const auto& s : samples) {
        Real alpha2 = 1 - s.second.rounded_to(wp);
        Real beta2 = 1 - s.first.rounded_to(wp);
        Real r = abs(eval_poly(poly, alpha2, beta2));
        if (r > report.max_abs_residual) report.max_abs_residual = r.rounded_to(bits);
        if (r > report.bound) report.numeric_pass = false;
        report.residuals.push_back(r.rounded_to(bits));
    }
    return report;
}

} // namespace modeq
