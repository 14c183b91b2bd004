#pragma once

// Worked example: the Cohen-Ramanujan expansion of Klee's function,
//
//   Phi_s(n) zeta(2s) / n = sum_k mu(k) / J_{2s}(k) * c_k^(s)(n),
//
// its second-variable counterpart, and the coefficient identity
//
//   sum_d mu(kd) / (kd)^{2s} = mu(k) / (J_{2s}(k) zeta(2s)).
//
// Series terms are exact rationals; they are rounded to the working
// precision and accumulated serially in index order, so reports do not
// depend on the number of threads used to produce the terms.

#include <string>
#include <utility>
#include <vector>

#include "crsum/arith.hpp"
#include "crsum/high_prec.hpp"
#include "crsum/rational.hpp"

namespace crsum {

// zeta(2s) by partial summation with an Euler-Maclaurin tail; absolute
// error below 2^(-precision/2).
HighPrecReal zeta_even_arg(unsigned s, long precision_bits);

// mu(k) / J_{2s}(k); zero off squarefree k.
ExactRational klee_coefficient(PosInt k, unsigned s);

struct SeriesReport {
  std::string variant;  // "cr", "cr-prime" or "cr-prime-literal"
  unsigned s = 1;
  PosInt n = 1;
  PosInt K = 1;
  long precision_bits = 128;
  std::vector<std::pair<PosInt, HighPrecReal>> partial_sums;  // at 10^j <= K and at K
  HighPrecReal target;
  HighPrecReal final_abs_error;

  const HighPrecReal& final_partial_sum() const { return partial_sums.back().second; }
};

// Checkpoints 1, 10, 100, ... below K, then K itself.
std::vector<PosInt> checkpoints(PosInt K);

// sum_{k <= K} klee_coefficient(k, s) c_k^(s)(n), against Phi_s(n) zeta(2s)/n.
// jobs <= 0 uses the OpenMP default; 1 runs the serial loop.
SeriesReport klee_series_eval(PosInt n, unsigned s, PosInt K, long precision_bits, int jobs = 0);

// The second-variable form obtained from the first-variable coefficients by
// the general transform (b(m) = mu(m) a(m), indicator xi). The series in
// this form expands sum_k a(k) c_k^(s)(n^s), so the target is
// Phi_s(n^s) zeta(2s) / n^s; for s = 1 this is the same number as the
// klee_series_eval target.
SeriesReport klee_cr_prime_eval(PosInt n, unsigned s, PosInt K, long precision_bits, int jobs = 0);

// The second-variable display taken at face value:
// mu(core n)/(n*)^s sum_k xi_{n*}(k) / Phi_{2s}(k^s) c_n^(s)(k^s) with the
// weighted xi. Same target as klee_cr_prime_eval. Kept to document that it
// does not reproduce the target.
SeriesReport klee_cr_prime_literal_eval(PosInt n, unsigned s, PosInt K, long precision_bits, int jobs = 0);

struct CoefficientIdentityReport {
  PosInt k = 1;
  unsigned s = 1;
  PosInt D = 1;
  long precision_bits = 128;
  std::vector<std::pair<PosInt, HighPrecReal>> lhs_partial;  // sum_{d <= checkpoint} mu(kd)/(kd)^{2s}
  HighPrecReal rhs;                                           // mu(k) / (J_{2s}(k) zeta(2s))

  const HighPrecReal& lhs() const { return lhs_partial.back().second; }
};

CoefficientIdentityReport coefficient_identity_report(PosInt k, unsigned s, PosInt D, long precision_bits,
                                                      int jobs = 0);
std::pair<HighPrecReal, HighPrecReal> coefficient_identity_check(PosInt k, unsigned s, PosInt D,
                                                                 long precision_bits);

// "# {json header}" line, then k_checkpoint,partial_sum,abs_error rows.
std::string series_report_to_csv(const SeriesReport& report);
// "# {json header}" line, then d_checkpoint,lhs,rhs,abs_diff rows.
std::string coefficient_identity_to_csv(const CoefficientIdentityReport& report);

}  // namespace crsum
