#ifndef MODEQ_HECKE_HPP
#define MODEQ_HECKE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace modeq {

using BigInt = boost::multiprecision::cpp_int;

// Element of H_e(lambda): the matrix (a, b*lambda; c*lambda, d) with
// integer a, b, c, d, lambda^2 in {2, 3, 4} and det = ad - bc*lambda^2 = 1.
// All arithmetic stays in Z; lambda is carried implicitly through
// lambda_sq. Matrices are projective: stored sign-normalized so that the
// first nonzero of (a, b) is positive.
class HeckeMatrix {
  public:
    HeckeMatrix(BigInt a, BigInt b, BigInt c, BigInt d, int lambda_sq);

    static HeckeMatrix identity(int lambda_sq);
    // (1, lambda; 0, 1) and (1, 0; lambda, 1); together they generate H_e.
    static HeckeMatrix upper_translation(int lambda_sq);
    static HeckeMatrix lower_translation(int lambda_sq);

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    const BigInt& d() const { return d_; }
    int lambda_sq() const { return lambda_sq_; }

    bool is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }

    // "[a b; c d] lambda2=n", lambda implicit in b and c.
    std::string str() const;
    static HeckeMatrix parse(const std::string& text);

    friend bool operator==(const HeckeMatrix& x, const HeckeMatrix& y) {
        return x.lambda_sq_ == y.lambda_sq_ && x.a_ == y.a_ && x.b_ == y.b_ &&
               x.c_ == y.c_ && x.d_ == y.d_;
    }

  private:
    BigInt a_, b_, c_, d_;
    int lambda_sq_;
};

// Unit-determinant integer matrix, same projective sign convention.
class IntMatrix {
  public:
    IntMatrix(BigInt a, BigInt b, BigInt c, BigInt d);

    static IntMatrix identity();

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    const BigInt& d() const { return d_; }

    std::string str() const;
    static IntMatrix parse(const std::string& text);

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
    }

  private:
    BigInt a_, b_, c_, d_;
};

HeckeMatrix multiply(const HeckeMatrix& x, const HeckeMatrix& y);
HeckeMatrix inverse(const HeckeMatrix& x);
IntMatrix multiply(const IntMatrix& x, const IntMatrix& y);

// Membership in H_{M_p}: the H_e form with c = 0 (mod p).
bool in_HMp(const HeckeMatrix& x, long p);

// Theta(A) = M_lambda^{-1} A M_lambda = (a, b; c*lambda^2, d): the
// isomorphism H_e(lambda) -> Gamma_0(lambda^2) carrying H_{M_p} onto
// Gamma_0(lambda^2 p).
IntMatrix theta_iso(const HeckeMatrix& x);

// W_p-conjugation (d, -(c/p)*lambda; -p*b*lambda, a); requires p | c and
// maps H_{M_p} into itself. Projective involution.
HeckeMatrix fricke_conj(const HeckeMatrix& x, long p);

// Lower-left entry divisible by N.
bool gamma0_member(const IntMatrix& m, long n);

// |PSL(2,Z) : Gamma_0(N)| by direct enumeration of P^1(Z/N): pairs (c, d)
// with gcd(c, d, N) = 1 counted via their lexicographically smallest unit
// multiple. Independent oracle for dedekind_psi. 1 <= N <= 10000.
long coset_index_bruteforce(long n);

} // namespace modeq

#endif
