#pragma once

#include <string>

#include <gmpxx.h>

namespace crsum {

// Lowest-terms rational with positive denominator. gmpxx keeps results of
// arithmetic canonical; values built from raw parts go through make_rational.
using ExactRational = mpq_class;

inline ExactRational make_rational(const mpz_class& num, const mpz_class& den) {
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

// "p" for integers, "p/q" otherwise.
inline std::string to_string(const ExactRational& q) { return q.get_str(10); }
inline std::string to_string(const mpz_class& z) { return z.get_str(10); }

}  // namespace crsum
