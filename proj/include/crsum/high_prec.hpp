#pragma once

// RAII wrapper over an MPFR real with an explicit working precision.

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace crsum {

inline constexpr long kMinPrecisionBits = 64;

class HighPrecReal {
 public:
  explicit HighPrecReal(long precision_bits = 128);
  HighPrecReal(long precision_bits, double v);
  HighPrecReal(long precision_bits, const mpz_class& v);
  HighPrecReal(long precision_bits, const mpq_class& v);
  HighPrecReal(const HighPrecReal& other);
  HighPrecReal(HighPrecReal&& other) noexcept;
  HighPrecReal& operator=(const HighPrecReal& other);
  HighPrecReal& operator=(HighPrecReal&& other) noexcept;
  ~HighPrecReal();

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  HighPrecReal& operator+=(const HighPrecReal& o);
  HighPrecReal& operator-=(const HighPrecReal& o);
  HighPrecReal& operator*=(const HighPrecReal& o);
  HighPrecReal& operator/=(const HighPrecReal& o);

  friend HighPrecReal operator+(HighPrecReal a, const HighPrecReal& b) { return a += b; }
  friend HighPrecReal operator-(HighPrecReal a, const HighPrecReal& b) { return a -= b; }
  friend HighPrecReal operator*(HighPrecReal a, const HighPrecReal& b) { return a *= b; }
  friend HighPrecReal operator/(HighPrecReal a, const HighPrecReal& b) { return a /= b; }

  friend bool operator<(const HighPrecReal& a, const HighPrecReal& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const HighPrecReal& a, const HighPrecReal& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const HighPrecReal& a, const HighPrecReal& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator==(const HighPrecReal& a, const HighPrecReal& b) { return mpfr_equal_p(a.v_, b.v_); }

  HighPrecReal abs() const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Scientific notation with enough significant digits for the precision;
  // locale independent.
  std::string to_string() const;
  std::string to_string(int significant_digits) const;

 private:
  mpfr_t v_;
};

HighPrecReal abs(const HighPrecReal& x);

// True when libmpfr was built with thread-local caches (needed for OpenMP).
bool mpfr_is_thread_safe();

}  // namespace crsum
