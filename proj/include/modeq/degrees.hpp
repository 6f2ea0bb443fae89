#ifndef MODEQ_DEGREES_HPP
#define MODEQ_DEGREES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace modeq {

// Dedekind psi: Psi(N) = N * prod_{q | N prime} (1 + 1/q), exact.
int64_t dedekind_psi(int64_t n);

bool is_prime(int64_t n);

// Degree of the modular polynomial in each variable:
// mu(p,2) = mu(p,4) = Psi(2p)/3 and mu(p,3) = Psi(3p)/4.
int64_t degree_mu(int64_t p, int signature);

struct RussellDegree {
    int64_t m;
    int64_t l;
};

// (p+1)/8 = m/l in lowest terms for signature 2 (p > 2 prime) and
// (p+1)/3 = m/l for signature 3 (p > 3 prime).
RussellDegree russell_degree(int64_t p, int signature);

enum class DegreeRelation { mu_eq_m, mu_eq_3m, not_applicable };

struct DegreeRecord {
    int64_t p;
    int signature;
    int64_t mu;
    std::optional<int64_t> russell_m;
    std::optional<int64_t> russell_l;
    DegreeRelation relation;
};

// Full record for one (p, signature), with Russell data and the mu/m
// relation filled in where defined (signature 3, prime p > 3).
DegreeRecord degree_record(int64_t p, int signature);

struct DegreeTableRow {
    int64_t p;
    int64_t mu_sig2_and_4;
    int64_t mu_sig3;
};

// Rows p = 2..p_max; the first nineteen reproduce the reference table.
std::vector<DegreeTableRow> degree_table(int64_t p_max);

// CSV with header "p,mu_sig2_and_4,mu_sig3", one row per p, '\n' endings.
std::string degree_table_csv(int64_t p_max);

std::string relation_name(DegreeRelation r);

// JSON array of degree records (signatures 2 and 3 per p).
std::string degree_table_json(int64_t p_max, int indent = -1);

} // namespace modeq

#endif
