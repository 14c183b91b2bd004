#include "crsum/cr_sum.hpp"

#include <numeric>
#include <string>

namespace crsum {

void CRQuery::validate() const {
  if (k == 0 || n == 0 || s == 0) throw std::domain_error("CRQuery: k, n and s must all be >= 1");
}

NonIntegralResult::NonIntegralResult(const CRQuery& q, ExactRational value)
    : std::runtime_error("non-integral totient quotient " + to_string(value) + " at (k=" + std::to_string(q.k) +
                         ", n=" + std::to_string(q.n) + ", s=" + std::to_string(q.s) + ")"),
      query_(q),
      value_(std::move(value)) {}

namespace {

bool divides(const mpz_class& d, PosInt n) {
  return mpz_divisible_p(mpz_pow(n, 1).get_mpz_t(), d.get_mpz_t()) != 0;
}

// Walks the divisors d of k for which mu(k/d) != 0, i.e. d = k / (squarefree
// part), accumulating mu(k/d) d^s whenever d^s | n.
void mobius_terms(const std::vector<PrimePower>& pp, std::size_t i, PosInt d, int mu, PosInt n, unsigned s,
                  CRValue& acc) {
  if (i == pp.size()) {
    const PosInt ds = xi_s(d, n, s);
    if (ds != 0) acc += mu * mpz_pow(ds, 1);
    return;
  }
  const auto [p, e] = pp[i];
  const PosInt full = checked_pow(p, e);
  mobius_terms(pp, i + 1, d * full, mu, n, s, acc);
  mobius_terms(pp, i + 1, d * (full / p), -mu, n, s, acc);
}

}  // namespace

CRValue cr_mobius(const Factorization& k_factors, PosInt n, unsigned s) {
  CRValue acc = 0;
  mobius_terms(k_factors.pairs(), 0, 1, 1, n, s, acc);
  return acc;
}

CRValue cr_mobius(const CRQuery& q) {
  q.validate();
  return cr_mobius(factorize(q.k), q.n, q.s);
}

CRValue cr_multiplicative(const CRQuery& q) {
  q.validate();
  CRValue out = 1;
  for (const auto& [p, j] : factorize(q.k)) {
    const mpz_class top = mpz_pow(p, q.s * j);        // p^{sj}
    const mpz_class below = mpz_pow(p, q.s * (j - 1));  // p^{s(j-1)}
    if (divides(top, q.n)) {
      out *= top - below;
    } else if (divides(below, q.n)) {
      out *= -below;
    } else {
      return 0;
    }
  }
  return out;
}

ExactRational hoelder_literal_exact(const CRQuery& q) {
  q.validate();
  const PosInt m = q.n / std::gcd(q.k, q.n);
  const Factorization mf = factorize(m);
  return make_rational(jordan_totient(q.s, q.n) * mobius(mf), jordan_totient(q.s, mf));
}

CRValue cr_hoelder(const CRQuery& q, bool literal) {
  q.validate();
  if (literal) {
    ExactRational v = hoelder_literal_exact(q);
    if (v.get_den() != 1) throw NonIntegralResult(q, std::move(v));
    return v.get_num();
  }
  const Factorization kf = factorize(q.k);
  std::vector<PrimePower> m_pairs;
  for (const auto& [p, e] : kf) {
    const unsigned in_d = std::min(e, e_p_s(q.n, p, q.s));
    if (e > in_d) m_pairs.push_back({p, e - in_d});
  }
  const Factorization mf(std::move(m_pairs));
  const ExactRational v = make_rational(jordan_totient(q.s, kf) * mobius(mf), jordan_totient(q.s, mf));
  if (v.get_den() != 1) throw NonIntegralResult(q, v);
  return v.get_num();
}

mpz_class twisted(const CRQuery& q) {
  q.validate();
  const Factorization kf = factorize(q.k);
  return mobius(kf) * cr_mobius(kf, q.n, q.s);
}

mpz_class twisted_divisor_sum(PosInt k, PosInt n, unsigned s) {
  const PosInt g = generalized_gcd(checked_pow(k, s), n, s);
  mpz_class acc = 0;
  // d^s | g with g an s-th power r^s  <=>  d | r.
  PosInt r = 1;
  for (const auto& [p, e] : factorize(g)) r *= checked_pow(p, e / s);
  for (PosInt d : divisors(r)) {
    const int mu = mobius(d);
    if (mu != 0) acc += mu * mpz_pow(d, s);
  }
  return acc;
}

std::pair<ExactRational, ExactRational> reciprocity_sides(PosInt k, PosInt n, unsigned s) {
  auto side = [s](PosInt a, PosInt b) {
    const PosInt a_core = core(a);
    const PosInt a_star = a / a_core;
    const CRValue c = cr_mobius({a, checked_pow(checked_mul(b, a_star), s), s});
    return make_rational(mobius(a_core) * c, mpz_pow(a_star, s));
  };
  return {side(k, n), side(n, k)};
}

}  // namespace crsum
