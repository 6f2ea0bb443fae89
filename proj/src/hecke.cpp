#include "modeq/hecke.hpp"

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace modeq {

namespace {

void check_lambda_sq(int lambda_sq) {
    if (lambda_sq < 2 || lambda_sq > 4) {
        throw std::domain_error("lambda^2 must be 2, 3 or 4, got " + std::to_string(lambda_sq));
    }
}

// Strip "[a b; c d]" into four integers; returns the tail after ']'.
std::string parse_bracket(const std::string& text, BigInt out[4]) {
    std::string s = text;
    auto open = s.find('[');
    auto close = s.find(']');
    if (open == std::string::npos || close == std::string::npos || close < open) {
        throw std::invalid_argument("expected matrix literal '[a b; c d]', got '" + text + "'");
    }
    std::string body = s.substr(open + 1, close - open - 1);
    for (auto& ch : body) {
        if (ch == ';' || ch == ',') ch = ' ';
    }
    std::istringstream in(body);
    std::string tok;
    for (int i = 0; i < 4; ++i) {
        if (!(in >> tok)) throw std::invalid_argument("matrix literal needs 4 entries: '" + text + "'");
        try {
            out[i] = BigInt(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad integer '" + tok + "' in matrix literal");
        }
    }
    if (in >> tok) throw std::invalid_argument("matrix literal has trailing entries: '" + text + "'");
    return s.substr(close + 1);
}

} // namespace

HeckeMatrix::HeckeMatrix(BigInt a, BigInt b, BigInt c, BigInt d, int lambda_sq)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)),
      lambda_sq_(lambda_sq) {
    check_lambda_sq(lambda_sq_);
    if (a_ * d_ - b_ * c_ * lambda_sq_ != 1) {
        throw std::domain_error("not in H_e: a*d - b*c*lambda^2 != 1 for " + str());
    }
    if (a_ < 0 || (a_ == 0 && b_ < 0)) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
        d_ = -d_;
    }
}

HeckeMatrix HeckeMatrix::identity(int lambda_sq) {
    return HeckeMatrix(1, 0, 0, 1, lambda_sq);
}

HeckeMatrix HeckeMatrix::upper_translation(int lambda_sq) {
    return HeckeMatrix(1, 1, 0, 1, lambda_sq);
}

HeckeMatrix HeckeMatrix::lower_translation(int lambda_sq) {
    return HeckeMatrix(1, 0, 1, 1, lambda_sq);
}

std::string HeckeMatrix::str() const {
    std::ostringstream out;
    out << "[" << a_ << " " << b_ << "; " << c_ << " " << d_ << "] lambda2=" << lambda_sq_;
    return out.str();
}

HeckeMatrix HeckeMatrix::parse(const std::string& text) {
    BigInt e[4];
    std::string tail = parse_bracket(text, e);
    auto pos = tail.find("lambda2=");
    if (pos == std::string::npos) {
        throw std::invalid_argument("missing 'lambda2=n' in '" + text + "'");
    }
    int lambda_sq = std::stoi(tail.substr(pos + 8));
    return HeckeMatrix(e[0], e[1], e[2], e[3], lambda_sq);
}

IntMatrix::IntMatrix(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ != 1) {
        throw std::domain_error("not unimodular: a*d - b*c != 1 for " + str());
    }
    if (a_ < 0 || (a_ == 0 && b_ < 0)) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
        d_ = -d_;
    }
}

IntMatrix IntMatrix::identity() { return IntMatrix(1, 0, 0, 1); }

std::string IntMatrix::str() const {
    std::ostringstream out;
    out << "[" << a_ << " " << b_ << "; " << c_ << " " << d_ << "]";
    return out.str();
}

IntMatrix IntMatrix::parse(const std::string& text) {
    BigInt e[4];
    parse_bracket(text, e);
    return IntMatrix(e[0], e[1], e[2], e[3]);
}

HeckeMatrix multiply(const HeckeMatrix& x, const HeckeMatrix& y) {
    if (x.lambda_sq() != y.lambda_sq()) {
        throw std::invalid_argument("lambda mismatch: " + std::to_string(x.lambda_sq()) +
                                    " vs " + std::to_string(y.lambda_sq()));
    }
    const long lam2 = x.lambda_sq();
    return HeckeMatrix(x.a() * y.a() + x.b() * y.c() * lam2,
                       x.a() * y.b() + x.b() * y.d(),
                       x.c() * y.a() + x.d() * y.c(),
                       x.c() * y.b() * lam2 + x.d() * y.d(),
                       x.lambda_sq());
}

HeckeMatrix inverse(const HeckeMatrix& x) {
    return HeckeMatrix(x.d(), -x.b(), -x.c(), x.a(), x.lambda_sq());
}

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
    return IntMatrix(x.a() * y.a() + x.b() * y.c(),
                     x.a() * y.b() + x.b() * y.d(),
                     x.c() * y.a() + x.d() * y.c(),
                     x.c() * y.b() + x.d() * y.d());
}

bool in_HMp(const HeckeMatrix& x, long p) {
    if (p < 2) throw std::domain_error("p must be >= 2");
    return x.c() % p == 0;
}

IntMatrix theta_iso(const HeckeMatrix& x) {
    return IntMatrix(x.a(), x.b(), x.c() * x.lambda_sq(), x.d());
}

HeckeMatrix fricke_conj(const HeckeMatrix& x, long p) {
    if (p < 2) throw std::domain_error("p must be >= 2");
    if (x.c() % p != 0) {
        throw std::domain_error("fricke_conj needs p | c; p = " + std::to_string(p) +
                                ", matrix " + x.str());
    }
    return HeckeMatrix(x.d(), -x.c() / p, -p * x.b(), x.a(), x.lambda_sq());
}

bool gamma0_member(const IntMatrix& m, long n) {
    if (n < 1) throw std::domain_error("modulus N must be >= 1");
    return m.c() % n == 0;
}

long coset_index_bruteforce(long n) {
    if (n < 1 || n > 10000) {
        throw std::out_of_range("N must lie in [1, 10000], got " + std::to_string(n));
    }
    if (n == 1) return 1;

    const uint32_t un = static_cast<uint32_t>(n);
    std::vector<uint32_t> units;
    for (uint32_t u = 1; u < un; ++u) {
        if (std::gcd(u, un) == 1) units.push_back(u);
    }

    // Scan (c, d) in lexicographic order. The first pair of an orbit met
    // this way is its lexicographically smallest unit multiple; count it
    // and mark the whole orbit visited.
    std::vector<bool> visited(static_cast<size_t>(n) * n, false);
    long count = 0;
    for (uint32_t c = 0; c < un; ++c) {
        for (uint32_t d = 0; d < un; ++d) {
            if (visited[static_cast<size_t>(c) * un + d]) continue;
            if (std::gcd(std::gcd(c, d), un) != 1) continue;
            ++count;
            for (uint32_t u : units) {
                uint64_t uc = (static_cast<uint64_t>(u) * c) % un;
                uint64_t ud = (static_cast<uint64_t>(u) * d) % un;
                visited[uc * un + ud] = true;
            }
        }
    }
    return count;
}

} // namespace modeq
