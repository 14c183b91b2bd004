#pragma once

// Elementary arithmetic functions over positive integers.
//
// Integer arguments are 64-bit; values that can outgrow 64 bits (totients,
// powers) are returned as GMP integers. Every function here is total on
// n >= 1 and throws std::domain_error when handed 0.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace crsum {

using PosInt = std::uint64_t;

struct PrimePower {
  PosInt prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Canonical factorization: primes strictly increasing, exponents >= 1,
// empty for n = 1.
class Factorization {
 public:
  Factorization() = default;
  explicit Factorization(std::vector<PrimePower> pairs);

  const std::vector<PrimePower>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  // Multiplies the factors back together; throws std::overflow_error past
  // 64 bits.
  PosInt value() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> pairs_;
};

// Trial division with a 2,3,5 wheel.
Factorization factorize(PosInt n);

int mobius(PosInt n);
int mobius(const Factorization& f);
bool is_squarefree(PosInt n);
unsigned omega(PosInt n);

// J_s(n) = prod over p^e || n of p^{s(e-1)} (p^s - 1).
mpz_class jordan_totient(unsigned s, PosInt n);
mpz_class jordan_totient(unsigned s, const Factorization& f);

// Klee's function: n * prod over p with e_p(n) >= s of (1 - p^-s).
mpz_class klee_phi(unsigned s, PosInt n);

// (a, b)_s, returned as the s-th power d^s itself.
PosInt generalized_gcd(PosInt a, PosInt b, unsigned s);

PosInt core(PosInt n);
PosInt star(PosInt n);

unsigned e_p(PosInt n, PosInt p);
unsigned e_p_s(PosInt n, PosInt p, unsigned s);

std::vector<PosInt> divisors(PosInt n);
std::vector<PosInt> divisors(const Factorization& f);

// xi_d(k) with the weight d when d | k.
PosInt xi(PosInt d, PosInt k);
// Indicator variant: 1 when d | k.
PosInt xi_indicator(PosInt d, PosInt k);
// xi^{(s)}_d(n) = d^s when d^s | n, else 0.
PosInt xi_s(PosInt d, PosInt n, unsigned s);

// base^exp; throws std::overflow_error when the result exceeds 64 bits.
PosInt checked_pow(PosInt base, unsigned exp);
PosInt checked_mul(PosInt a, PosInt b);
mpz_class mpz_pow(PosInt base, unsigned exp);

// Dirichlet-convolution helpers over a table f[1..N] (index 0 unused).
std::vector<mpq_class> mobius_transform(std::span<const mpq_class> f);
std::vector<mpq_class> summatory_transform(std::span<const mpq_class> g);

}  // namespace crsum
