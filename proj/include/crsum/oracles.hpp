#pragma once

// Slow reference implementations. Nothing in here calls the routes in
// arith.hpp / cr_sum.hpp that it is meant to check; integer structure comes
// from std::gcd and exhaustive scans only.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace crsum::oracles {

using PosInt = std::uint64_t;

struct OracleConfig {
  long precision_bits = 128;
  double rounding_tolerance = 1e-6;

  void validate() const;
};

class ToleranceExceeded : public std::runtime_error {
 public:
  ToleranceExceeded(double residual, double tolerance);
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct RoundedSum {
  mpz_class value;
  double residual = 0.0;  // max(|imag|, |real - value|)
};

// sum over 1 <= h <= k^s with (h, k^s)_s = 1 of exp(2 pi i n h / k^s).
RoundedSum cr_direct(PosInt k, PosInt n, unsigned s, const OracleConfig& cfg = {});

// Direct sums for one (k, s) and many n, sharing the table of k^s-th roots
// of unity.
class DirectSumTable {
 public:
  DirectSumTable(PosInt k, unsigned s, const OracleConfig& cfg);
  RoundedSum evaluate(PosInt n) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Largest d^s with d^s | a and d^s | b, by scanning d = 1, 2, ...
PosInt ggcd_exhaustive(PosInt a, PosInt b, unsigned s);

// Classical Ramanujan sum by the trigonometric definition.
RoundedSum classical_ramanujan_naive(PosInt k, PosInt n, const OracleConfig& cfg = {});

class ClassicalSumTable {
 public:
  ClassicalSumTable(PosInt k, const OracleConfig& cfg);
  RoundedSum evaluate(PosInt n) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

enum class Totient { jordan, klee };

// jordan: s-tuples mod n with gcd(a_1, ..., a_s, n) = 1.
// klee:   1 <= m <= n with (m, n)_s = 1.
mpz_class totient_counting(unsigned s, PosInt n, Totient which);

}  // namespace crsum::oracles
