#include "crsum/arith.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <string>

namespace crsum {

namespace {

void require_positive(PosInt n, const char* what) {
  if (n == 0) throw std::domain_error(std::string(what) + ": argument must be >= 1");
}

}  // namespace

Factorization::Factorization(std::vector<PrimePower> pairs) : pairs_(std::move(pairs)) {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (pairs_[i].exponent == 0 || pairs_[i].prime < 2)
      throw std::invalid_argument("Factorization: bad prime power");
    if (i > 0 && pairs_[i - 1].prime >= pairs_[i].prime)
      throw std::invalid_argument("Factorization: primes must be strictly increasing");
  }
}

PosInt Factorization::value() const {
  PosInt v = 1;
  for (const auto& [p, e] : pairs_) v = checked_mul(v, checked_pow(p, e));
  return v;
}

Factorization factorize(PosInt n) {
  require_positive(n, "factorize");
  std::vector<PrimePower> out;
  auto strip = [&](PosInt p) {
    if (n % p != 0) return;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  };
  strip(2);
  strip(3);
  strip(5);
  // Residues coprime to 30, as gaps starting from 7.
  static constexpr std::array<PosInt, 8> kGaps{4, 2, 4, 2, 4, 6, 2, 6};
  PosInt p = 7;
  for (std::size_t i = 0; p <= n / p; p += kGaps[i], i = (i + 1) % kGaps.size()) strip(p);
  if (n > 1) out.push_back({n, 1});
  return Factorization(std::move(out));
}

int mobius(const Factorization& f) {
  for (const auto& pp : f)
    if (pp.exponent > 1) return 0;
  return f.size() % 2 == 0 ? 1 : -1;
}

int mobius(PosInt n) { return mobius(factorize(n)); }

bool is_squarefree(PosInt n) { return mobius(n) != 0; }

unsigned omega(PosInt n) { return static_cast<unsigned>(factorize(n).size()); }

mpz_class mpz_pow(PosInt base, unsigned exp) {
  static_assert(sizeof(unsigned long) == sizeof(PosInt));
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

mpz_class jordan_totient(unsigned s, const Factorization& f) {
  if (s == 0) throw std::domain_error("jordan_totient: s must be >= 1");
  mpz_class out = 1;
  for (const auto& [p, e] : f) {
    mpz_class ps = mpz_pow(p, s);
    out *= (ps - 1);
    for (unsigned i = 1; i < e; ++i) out *= ps;
  }
  return out;
}

mpz_class jordan_totient(unsigned s, PosInt n) {
  require_positive(n, "jordan_totient");
  return jordan_totient(s, factorize(n));
}

mpz_class klee_phi(unsigned s, PosInt n) {
  require_positive(n, "klee_phi");
  if (s == 0) throw std::domain_error("klee_phi: s must be >= 1");
  mpz_class out = mpz_pow(n, 1);
  for (const auto& [p, e] : factorize(n)) {
    if (e < s) continue;
    mpz_class ps = mpz_pow(p, s);
    out /= ps;  // exact: p^s | n
    out *= (ps - 1);
  }
  return out;
}

PosInt generalized_gcd(PosInt a, PosInt b, unsigned s) {
  require_positive(a, "generalized_gcd");
  require_positive(b, "generalized_gcd");
  if (s == 0) throw std::domain_error("generalized_gcd: s must be >= 1");
  PosInt g = std::gcd(a, b);
  PosInt out = 1;
  for (const auto& [p, e] : factorize(g)) out *= checked_pow(p, s * (e / s));
  return out;
}

PosInt core(PosInt n) {
  require_positive(n, "core");
  PosInt out = 1;
  for (const auto& pp : factorize(n)) out *= pp.prime;
  return out;
}

PosInt star(PosInt n) { return n / core(n); }

unsigned e_p(PosInt n, PosInt p) {
  require_positive(n, "e_p");
  if (p < 2) throw std::domain_error("e_p: p must be prime");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

unsigned e_p_s(PosInt n, PosInt p, unsigned s) {
  if (s == 0) throw std::domain_error("e_p_s: s must be >= 1");
  return e_p(n, p) / s;
}

std::vector<PosInt> divisors(const Factorization& f) {
  std::vector<PosInt> out{1};
  for (const auto& [p, e] : f) {
    const std::size_t base = out.size();
    PosInt pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PosInt> divisors(PosInt n) {
  require_positive(n, "divisors");
  return divisors(factorize(n));
}

PosInt xi(PosInt d, PosInt k) {
  require_positive(d, "xi");
  require_positive(k, "xi");
  return k % d == 0 ? d : 0;
}

PosInt xi_indicator(PosInt d, PosInt k) {
  require_positive(d, "xi_indicator");
  require_positive(k, "xi_indicator");
  return k % d == 0 ? 1 : 0;
}

PosInt xi_s(PosInt d, PosInt n, unsigned s) {
  require_positive(d, "xi_s");
  require_positive(n, "xi_s");
  if (s == 0) throw std::domain_error("xi_s: s must be >= 1");
  // d^s > n cannot divide n; avoid overflowing the power.
  PosInt ds = 1;
  for (unsigned i = 0; i < s; ++i) {
    if (ds > n / d) return 0;
    ds *= d;
  }
  return n % ds == 0 ? ds : 0;
}

PosInt checked_mul(PosInt a, PosInt b) {
  PosInt r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("64-bit overflow in product");
  return r;
}

PosInt checked_pow(PosInt base, unsigned exp) {
  PosInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

std::vector<mpq_class> mobius_transform(std::span<const mpq_class> f) {
  std::vector<mpq_class> g(f.size());
  for (PosInt d = 1; d < f.size(); ++d) {
    const int mu = mobius(d);
    if (mu == 0) continue;
    for (PosInt q = 1; d * q < f.size(); ++q) g[d * q] += mu * f[q];
  }
  return g;
}

std::vector<mpq_class> summatory_transform(std::span<const mpq_class> g) {
  std::vector<mpq_class> f(g.size());
  for (PosInt d = 1; d < g.size(); ++d)
    for (PosInt k = d; k < g.size(); k += d) f[k] += g[d];
  return f;
}

}  // namespace crsum
