#pragma once

// Cohen-Ramanujan sums c_k^(s)(n) and the mu-twisted function built on them.
//
// Three independent evaluation routes are provided:
//   cr_mobius          sum over d | k with d^s | n of mu(k/d) d^s  (canonical)
//   cr_multiplicative  prime-power closed form, multiplied over p^j || k
//   cr_hoelder         totient quotient J_s(k) mu(m) / J_s(m)
// The direct exponential sum lives in oracles.hpp.

#include <stdexcept>
#include <utility>

#include "crsum/arith.hpp"
#include "crsum/rational.hpp"

namespace crsum {

struct CRQuery {
  PosInt k = 1;
  PosInt n = 1;
  unsigned s = 1;

  void validate() const;
};

using CRValue = mpz_class;

class NonIntegralResult : public std::runtime_error {
 public:
  NonIntegralResult(const CRQuery& q, ExactRational value);
  const CRQuery& query() const { return query_; }
  const ExactRational& value() const { return value_; }

 private:
  CRQuery query_;
  ExactRational value_;
};

CRValue cr_mobius(const CRQuery& q);
// Same route with k already factored; used by the sweep kernels.
CRValue cr_mobius(const Factorization& k_factors, PosInt n, unsigned s);

CRValue cr_multiplicative(const CRQuery& q);

// literal = false: J_s(k) mu(m) / J_s(m) with m = k/d, d the largest divisor
// of k with d^s | n. Always integral.
// literal = true: J_s(n) mu(m) / J_s(m) with m = n / gcd(k, n). Integral
// because m | n, but it disagrees with cr_mobius at many points, e.g.
// (k, n, s) = (2, 4, 2). NonIntegralResult guards the division.
CRValue cr_hoelder(const CRQuery& q, bool literal);

// The literal totient quotient as an exact rational (never throws on
// non-integrality). Used by the audit sweep.
ExactRational hoelder_literal_exact(const CRQuery& q);

// mu(k) * c_k^(s)(n).
mpz_class twisted(const CRQuery& q);

// Sum of d^s mu(d) over d with d^s | (k^s, n)_s. Equals twisted(q) for
// squarefree k.
mpz_class twisted_divisor_sum(PosInt k, PosInt n, unsigned s);

// (mu(core k)/(k*)^s c_k(n^s (k*)^s),  mu(core n)/(n*)^s c_n(k^s (n*)^s)).
std::pair<ExactRational, ExactRational> reciprocity_sides(PosInt k, PosInt n, unsigned s);

}  // namespace crsum
