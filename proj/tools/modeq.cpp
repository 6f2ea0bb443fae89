#include "modeq/degrees.hpp"
#include "modeq/errors.hpp"
#include "modeq/hecke.hpp"
#include "modeq/hypergeom.hpp"
#include "modeq/polyfit.hpp"
#include "modeq/real.hpp"
#include "modeq/solver.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>

namespace {

using modeq::Real;
using modeq::Rational;
using modeq::SignatureParams;

enum class Format { text, json, csv };

struct GlobalOpts {
    long precision_bits = 128;
    bool precision_set = false;
    std::string format = "auto";
    std::string tol_text;
    unsigned long seed = 20240801UL;

    Format resolve_format(Format natural) const {
        if (format == "text") return Format::text;
        if (format == "json") return Format::json;
        if (format == "csv") return Format::csv;
        if (natural == Format::csv) return Format::csv;
        return isatty(STDOUT_FILENO) ? Format::text : Format::json;
    }

    long bits(long fallback = 0) const {
        if (precision_set) return precision_bits;
        if (const char* env = std::getenv("MODEQ_PRECISION_BITS")) {
            return std::stol(env);
        }
        return fallback > 0 ? fallback : precision_bits;
    }

    Real tol(long prec) const {
        if (tol_text.empty()) return modeq::default_tol(prec);
        Real t = Real::parse(tol_text, prec + 32);
        if (t <= 0) throw std::domain_error("tol must be positive");
        return t;
    }
};

struct TheoryOpts {
    int sig = 0;
    std::string t_text;

    SignatureParams params(long prec) const {
        if (!t_text.empty()) return SignatureParams::from_t(Rational::parse(t_text), prec);
        if (sig != 0) return SignatureParams::from_signature(sig, prec);
        throw std::domain_error("specify --sig or --t");
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--sig", sig, "signature 1/t (2, 3 or 4)");
        cmd->add_option("--t", t_text, "theory parameter t as a rational, e.g. 1/3");
    }
};

void emit_pair(const modeq::ModulusPair& pair, Format fmt) {
    if (fmt == Format::json) {
        std::cout << modeq::to_json_string(pair) << "\n";
        return;
    }
    std::cout << "t        = " << pair.t.str() << "\n"
              << "p        = " << pair.p << "\n"
              << "alpha    = " << pair.alpha.str() << "\n"
              << "beta     = " << pair.beta.str() << "\n"
              << "m        = " << pair.m.str() << "\n"
              << "residual = " << pair.residual.str(6) << "\n"
              << "bits     = " << pair.precision_bits << "\n";
}

int run_solve(const GlobalOpts& g, const TheoryOpts& th, const std::string& alpha_text, long p) {
    long prec = g.bits();
    SignatureParams params = th.params(prec);
    Real alpha = Real::parse(alpha_text, prec);
    modeq::ModulusPair pair = modeq::solve_order_p(params, alpha, p, g.tol(prec));
    emit_pair(pair, g.resolve_format(Format::text));
    return 0;
}

int run_table(const GlobalOpts& g, long p_max) {
    Format fmt = g.resolve_format(Format::csv);
    if (fmt == Format::json) {
        std::cout << modeq::degree_table_json(p_max) << "\n";
    } else {
        std::cout << modeq::degree_table_csv(p_max);
    }
    return 0;
}

int run_psi(const GlobalOpts& g, long n) {
    int64_t psi = modeq::dedekind_psi(n);
    if (g.resolve_format(Format::text) == Format::json) {
        std::cout << nlohmann::json{{"N", n}, {"psi", psi}}.dump() << "\n";
    } else {
        std::cout << psi << "\n";
    }
    return 0;
}

int run_mu(const GlobalOpts& g, long p, int sig) {
    int64_t mu = modeq::degree_mu(p, sig);
    if (g.resolve_format(Format::text) == Format::json) {
        std::cout << nlohmann::json{{"p", p}, {"signature", sig}, {"mu", mu}}.dump() << "\n";
    } else {
        std::cout << mu << "\n";
    }
    return 0;
}

int run_russell(const GlobalOpts& g, long p, int sig) {
    modeq::RussellDegree rd = modeq::russell_degree(p, sig);
    modeq::DegreeRecord rec = modeq::degree_record(p, sig);
    if (g.resolve_format(Format::text) == Format::json) {
        nlohmann::json j{{"p", p},       {"signature", sig}, {"m", rd.m}, {"l", rd.l},
                         {"mu", rec.mu}, {"relation", modeq::relation_name(rec.relation)}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "m = " << rd.m << ", l = " << rd.l << " (mu = " << rec.mu << ", "
                  << modeq::relation_name(rec.relation) << ")\n";
    }
    return 0;
}

int run_verify(const GlobalOpts& g, const TheoryOpts& th, long p, const std::string& which,
               long count) {
    long prec = g.bits();
    SignatureParams params = th.params(prec);
    Real tol = g.tol(prec);

    std::mt19937_64 rng(g.seed);
    std::uniform_real_distribution<double> dist(0.05, 0.95);

    const long wp = prec + 32;
    Real worst = Real::of(0L, prec);
    Real threshold(prec);

    if (which == "eq12") {
        if (!(params.signature() == Rational(3, 1)) || p != 2) {
            throw std::domain_error("eq12 is the signature-3, order-2 identity");
        }
        threshold = Real::parse("1e-12", prec);
        for (long i = 0; i < count; ++i) {
            Real alpha = Real::of(dist(rng), prec);
            modeq::ModulusPair pair = modeq::solve_order_p(params, alpha, 2, tol);
            Real a = pair.alpha.rounded_to(wp), b = pair.beta.rounded_to(wp);
            Real r = abs(cbrt(a * b) + cbrt((1 - a) * (1 - b)) - 1);
            worst = max(worst, r.rounded_to(prec));
        }
    } else if (which == "multiplier") {
        if (!(params.signature() == Rational(3, 1)) || p != 2) {
            throw std::domain_error("multiplier identities are signature-3, order-2");
        }
        threshold = Real::parse("1e-12", prec);
        for (long i = 0; i < count; ++i) {
            Real alpha = Real::of(dist(rng), prec);
            modeq::ModulusPair pair = modeq::solve_order_p(params, alpha, 2, tol);
            Real a = pair.alpha.rounded_to(wp), b = pair.beta.rounded_to(wp);
            Real m = pair.m.rounded_to(wp);
            Real r1 = abs(cbrt(pow_i(1 - b, 2) / (1 - a)) - cbrt(b * b / a) - m);
            Real r2 = abs(cbrt(a * a / b) + cbrt(pow_i(1 - a, 2) / (1 - b)) - 4 / (m * m));
            worst = max(worst, max(r1, r2).rounded_to(prec));
        }
    } else if (which == "fricke") {
        threshold = tol;
        for (long i = 0; i < count; ++i) {
            Real alpha = Real::of(dist(rng), prec);
            modeq::ModulusPair pair = modeq::solve_order_p(params, alpha, p, tol);
            modeq::ModulusPair swapped = modeq::swap_solution(pair);
            worst = max(worst, swapped.residual);
        }
    } else {
        throw std::domain_error("unknown identity '" + which +
                                "'; expected eq12, multiplier or fricke");
    }

    bool pass = worst <= threshold;
    if (g.resolve_format(Format::text) == Format::json) {
        nlohmann::json j{{"which", which},
                         {"count", count},
                         {"max_residual", worst.str(8)},
                         {"threshold", threshold.str(8)},
                         {"pass", pass}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << which << ": max residual " << worst.str(8) << " over " << count
                  << " samples (threshold " << threshold.str(8) << ") -> "
                  << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : 1;
}

int run_polyfit(const GlobalOpts& g, const TheoryOpts& th, long p, long mu_opt, long count,
                double lo, double hi, int jobs) {
    long prec = g.bits(256);
    SignatureParams params = th.params(prec);

    long mu = mu_opt;
    if (mu <= 0) {
        Rational sig = params.signature();
        if (sig.den != 1) {
            throw std::domain_error("--mu is required for non-integer signatures");
        }
        mu = modeq::degree_mu(p, static_cast<int>(sig.num));
    }
    long n = count > 0 ? count : (mu + 1) * (mu + 1) + 8;

    auto samples = modeq::sample_pairs(params, p, n, lo, hi, jobs);
    modeq::FitDiagnostics diag{Real(prec), Real(prec), 0, 0};
    modeq::BivariatePolynomial poly = modeq::fit_modular_polynomial(samples, mu, prec, &diag);

    std::cerr << "fit: " << diag.samples << " samples, " << diag.columns
              << " monomials, sigma_min " << diag.sigma_min.str(6) << ", next "
              << diag.sigma_second.str(6) << "\n";

    if (g.resolve_format(Format::text) == Format::json) {
        std::cout << poly.to_json_string() << "\n";
    } else {
        std::cout << poly.str() << "\n";
    }
    return 0;
}

int run_hecke(const GlobalOpts& g, const std::string& op, const std::vector<std::string>& args,
              long p, bool psi_check) {
    Format fmt = g.resolve_format(Format::text);
    auto need = [&](size_t k) {
        if (args.size() != k) {
            throw std::domain_error("hecke " + op + " needs " + std::to_string(k) +
                                    " matrix argument(s)");
        }
    };
    if (op == "mul") {
        need(2);
        auto r = multiply(modeq::HeckeMatrix::parse(args[0]), modeq::HeckeMatrix::parse(args[1]));
        std::cout << (fmt == Format::json ? nlohmann::json{{"matrix", r.str()}}.dump() : r.str())
                  << "\n";
    } else if (op == "inv") {
        need(1);
        auto r = inverse(modeq::HeckeMatrix::parse(args[0]));
        std::cout << (fmt == Format::json ? nlohmann::json{{"matrix", r.str()}}.dump() : r.str())
                  << "\n";
    } else if (op == "member") {
        need(1);
        bool member = in_HMp(modeq::HeckeMatrix::parse(args[0]), p);
        if (fmt == Format::json) {
            std::cout << nlohmann::json{{"p", p}, {"member", member}}.dump() << "\n";
        } else {
            std::cout << (member ? "true" : "false") << "\n";
        }
    } else if (op == "theta") {
        need(1);
        auto r = theta_iso(modeq::HeckeMatrix::parse(args[0]));
        std::cout << (fmt == Format::json ? nlohmann::json{{"matrix", r.str()}}.dump() : r.str())
                  << "\n";
    } else if (op == "fricke") {
        need(1);
        auto r = fricke_conj(modeq::HeckeMatrix::parse(args[0]), p);
        std::cout << (fmt == Format::json ? nlohmann::json{{"matrix", r.str()}}.dump() : r.str())
                  << "\n";
    } else if (op == "cosets") {
        need(1);
        long n = std::stol(args[0]);
        long idx = modeq::coset_index_bruteforce(n);
        if (fmt == Format::json) {
            nlohmann::json j{{"N", n}, {"index", idx}};
            if (psi_check) j["psi"] = modeq::dedekind_psi(n);
            std::cout << j.dump() << "\n";
        } else {
            std::cout << idx;
            if (psi_check) std::cout << (idx == modeq::dedekind_psi(n) ? " (= psi)" : " (!= psi)");
            std::cout << "\n";
        }
    } else {
        throw std::domain_error("unknown hecke op '" + op +
                                "'; expected mul, inv, member, theta, fricke or cosets");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized modular equations in signatures 2, 3 and 4: "
                 "solver, Hecke-subgroup arithmetic, degree tables and "
                 "modular-polynomial reconstruction"};
    app.require_subcommand(1);

    GlobalOpts g;
    auto* prec_opt =
        app.add_option("--precision-bits", g.precision_bits, "working precision (>= 53)");
    app.add_option("--format", g.format, "output format: text, json or csv")
        ->check(CLI::IsMember({"auto", "text", "json", "csv"}));
    app.add_option("--tol", g.tol_text, "solve tolerance (decimal)");
    app.add_option("--seed", g.seed, "seed for sampled verification runs");

    TheoryOpts th_solve, th_verify, th_fit;

    auto* solve = app.add_subcommand("solve", "solve the order-p modular equation for beta");
    solve->fallthrough();
    std::string alpha_text;
    long order = 2;
    th_solve.attach(solve);
    solve->add_option("--alpha", alpha_text, "modulus alpha in (0,1)")->required();
    solve->add_option("-p,--order", order, "order p >= 1")->required();

    auto* table = app.add_subcommand("table", "degree table mu(p, 1/t) for p = 2..p_max");
    table->fallthrough();
    long p_max = 20;
    table->add_option("p_max", p_max, "largest p")->required();

    auto* psi = app.add_subcommand("psi", "Dedekind psi function");
    psi->fallthrough();
    long psi_n = 1;
    psi->add_option("N", psi_n, "argument")->required();

    auto* mu_cmd = app.add_subcommand("mu", "modular polynomial degree mu(p, signature)");
    mu_cmd->fallthrough();
    long mu_p = 2;
    int mu_sig = 3;
    mu_cmd->add_option("-p,--order", mu_p, "order p >= 2")->required();
    mu_cmd->add_option("--sig", mu_sig, "signature (2, 3 or 4)")->required();

    auto* russell = app.add_subcommand("russell", "Russell degrees (m, l) for prime p");
    russell->fallthrough();
    long ru_p = 5;
    int ru_sig = 3;
    russell->add_option("-p,--order", ru_p, "prime p")->required();
    russell->add_option("--sig", ru_sig, "signature (2 or 3)")->required();

    auto* verify = app.add_subcommand("verify", "verify a named identity on sampled solutions");
    verify->fallthrough();
    long v_p = 2, v_count = 20;
    std::string v_which = "eq12";
    th_verify.attach(verify);
    verify->add_option("-p,--order", v_p, "order p");
    verify->add_option("--which", v_which, "identity: eq12, multiplier or fricke");
    verify->add_option("--count", v_count, "number of sampled alphas");

    auto* fit = app.add_subcommand("polyfit", "reconstruct the integer modular polynomial");
    fit->fallthrough();
    long f_p = 2, f_mu = 0, f_count = 0;
    double f_lo = 0.1, f_hi = 0.9;
    int f_jobs = 1;
    th_fit.attach(fit);
    fit->add_option("-p,--order", f_p, "order p >= 2")->required();
    fit->add_option("--mu", f_mu, "degree override (defaults to mu(p, signature))");
    fit->add_option("--count", f_count, "sample count (defaults to (mu+1)^2 + 8)");
    fit->add_option("--lo", f_lo, "sampling range lower end");
    fit->add_option("--hi", f_hi, "sampling range upper end");
    fit->add_option("--jobs", f_jobs, "parallel sampling threads");

    auto* hecke = app.add_subcommand("hecke", "exact Hecke-subgroup arithmetic");
    hecke->fallthrough();
    std::string h_op;
    std::vector<std::string> h_args;
    long h_p = 2;
    bool h_psi_check = false;
    hecke->add_option("op", h_op, "mul, inv, member, theta, fricke or cosets")->required();
    hecke->add_option("args", h_args, "matrix literal(s) '[a b; c d] lambda2=n', or N");
    hecke->add_option("-p,--order", h_p, "order p for member/fricke");
    hecke->add_flag("--psi-check", h_psi_check, "cross-check cosets against psi");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    g.precision_set = prec_opt->count() > 0;

    try {
        if (g.bits() < 53) throw std::domain_error("precision_bits must be >= 53");
        if (solve->parsed()) return run_solve(g, th_solve, alpha_text, order);
        if (table->parsed()) return run_table(g, p_max);
        if (psi->parsed()) return run_psi(g, psi_n);
        if (mu_cmd->parsed()) return run_mu(g, mu_p, mu_sig);
        if (russell->parsed()) return run_russell(g, ru_p, ru_sig);
        if (verify->parsed()) return run_verify(g, th_verify, v_p, v_which, v_count);
        if (fit->parsed()) return run_polyfit(g, th_fit, f_p, f_mu, f_count, f_lo, f_hi, f_jobs);
        if (hecke->parsed()) return run_hecke(g, h_op, h_args, h_p, h_psi_check);
    } catch (const modeq::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const modeq::PrecisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const modeq::FitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
