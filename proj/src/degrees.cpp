#include "modeq/degrees.hpp"

#include <nlohmann/json.hpp>

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace modeq {

namespace {

constexpr int64_t kMaxP = 1000000;

void check_signature(int signature) {
    if (signature != 2 && signature != 3 && signature != 4) {
        throw std::domain_error("signature must be 2, 3 or 4, got " + std::to_string(signature));
    }
}

} // namespace

int64_t dedekind_psi(int64_t n) {
    if (n < 1) throw std::out_of_range("Psi needs N >= 1, got " + std::to_string(n));
    int64_t result = 1;
    int64_t rest = n;
    for (int64_t q = 2; q * q <= rest; ++q) {
        if (rest % q != 0) continue;
        int64_t power = 1;
        while (rest % q == 0) {
            rest /= q;
            power *= q;
        }
        result *= (power / q) * (q + 1);
    }
    if (rest > 1) result *= rest + 1;
    return result;
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) return false;
    }
    return true;
}

int64_t degree_mu(int64_t p, int signature) {
    if (p < 2) throw std::domain_error("p must be >= 2, got " + std::to_string(p));
    check_signature(signature);
    if (signature == 3) {
        int64_t psi = dedekind_psi(3 * p);
        if (psi % 4 != 0) throw std::logic_error("Psi(3p) not divisible by 4 at p = " + std::to_string(p));
        return psi / 4;
    }
    int64_t psi2 = dedekind_psi(2 * p);
    if (psi2 % 3 != 0) throw std::logic_error("Psi(2p) not divisible by 3 at p = " + std::to_string(p));
    // Psi(4p) = 2 Psi(2p) underlies mu(p,2) = mu(p,4).
    if (dedekind_psi(4 * p) != 2 * psi2) {
        throw std::logic_error("Psi(4p) != 2 Psi(2p) at p = " + std::to_string(p));
    }
    return psi2 / 3;
}

RussellDegree russell_degree(int64_t p, int signature) {
    if (signature != 2 && signature != 3) {
        throw std::domain_error("Russell degrees are defined for signatures 2 and 3");
    }
    if (!is_prime(p)) throw std::domain_error(std::to_string(p) + " is not prime");
    int64_t den = signature == 2 ? 8 : 3;
    int64_t min_p = signature == 2 ? 2 : 3;
    if (p <= min_p) {
        throw std::domain_error("signature " + std::to_string(signature) + " needs prime p > " +
                                std::to_string(min_p));
    }
    int64_t g = std::gcd(p + 1, den);
    return RussellDegree{(p + 1) / g, den / g};
}

DegreeRecord degree_record(int64_t p, int signature) {
    DegreeRecord rec{p, signature, degree_mu(p, signature), std::nullopt, std::nullopt,
                     DegreeRelation::not_applicable};
    bool russell_defined = (signature == 2 && is_prime(p) && p > 2) ||
                           (signature == 3 && is_prime(p) && p > 3);
    if (russell_defined) {
        RussellDegree rd = russell_degree(p, signature);
        rec.russell_m = rd.m;
        rec.russell_l = rd.l;
        if (signature == 3) {
            rec.relation = (p % 3 == 2) ? DegreeRelation::mu_eq_3m : DegreeRelation::mu_eq_m;
        }
    }
    return rec;
}

std::vector<DegreeTableRow> degree_table(int64_t p_max) {
    if (p_max < 2 || p_max > kMaxP) {
        throw std::out_of_range("p_max must lie in [2, 10^6], got " + std::to_string(p_max));
    }
    std::vector<DegreeTableRow> rows;
    rows.reserve(static_cast<size_t>(p_max - 1));
    for (int64_t p = 2; p <= p_max; ++p) {
        rows.push_back(DegreeTableRow{p, degree_mu(p, 2), degree_mu(p, 3)});
    }
    return rows;
}

std::string degree_table_csv(int64_t p_max) {
    std::ostringstream out;
    out << "p,mu_sig2_and_4,mu_sig3\n";
    for (const auto& row : degree_table(p_max)) {
        out << row.p << "," << row.mu_sig2_and_4 << "," << row.mu_sig3 << "\n";
    }
    return out.str();
}

std::string relation_name(DegreeRelation r) {
    switch (r) {
    case DegreeRelation::mu_eq_m: return "mu_eq_m";
    case DegreeRelation::mu_eq_3m: return "mu_eq_3m";
    default: return "not_applicable";
    }
}

std::string degree_table_json(int64_t p_max, int indent) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : degree_table(p_max)) {
        for (int sig : {2, 3}) {
            DegreeRecord rec = degree_record(row.p, sig);
            nlohmann::json j{{"p", rec.p},
                             {"signature", rec.signature},
                             {"mu", rec.mu},
                             {"relation", relation_name(rec.relation)}};
            if (rec.russell_m) j["russell_m"] = *rec.russell_m;
            if (rec.russell_l) j["russell_l"] = *rec.russell_l;
            arr.push_back(std::move(j));
        }
    }
    return arr.dump(indent);
}

} // namespace modeq
