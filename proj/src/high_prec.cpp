#include "crsum/high_prec.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace crsum {

namespace {

long checked_precision(long bits) {
  if (bits < kMinPrecisionBits) throw std::invalid_argument("HighPrecReal: precision must be >= 64 bits");
  return bits;
}

}  // namespace

HighPrecReal::HighPrecReal(long precision_bits) {
  mpfr_init2(v_, checked_precision(precision_bits));
  mpfr_set_zero(v_, 1);
}

HighPrecReal::HighPrecReal(long precision_bits, double v) : HighPrecReal(precision_bits) {
  mpfr_set_d(v_, v, MPFR_RNDN);
}

HighPrecReal::HighPrecReal(long precision_bits, const mpz_class& v) : HighPrecReal(precision_bits) {
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

HighPrecReal::HighPrecReal(long precision_bits, const mpq_class& v) : HighPrecReal(precision_bits) {
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

HighPrecReal::HighPrecReal(const HighPrecReal& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

HighPrecReal::HighPrecReal(HighPrecReal&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

HighPrecReal& HighPrecReal::operator=(const HighPrecReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

HighPrecReal& HighPrecReal::operator=(HighPrecReal&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

HighPrecReal::~HighPrecReal() { mpfr_clear(v_); }

HighPrecReal& HighPrecReal::operator+=(const HighPrecReal& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HighPrecReal& HighPrecReal::operator-=(const HighPrecReal& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HighPrecReal& HighPrecReal::operator*=(const HighPrecReal& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HighPrecReal& HighPrecReal::operator/=(const HighPrecReal& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HighPrecReal HighPrecReal::abs() const {
  HighPrecReal r(precision());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

HighPrecReal abs(const HighPrecReal& x) { return x.abs(); }

std::string HighPrecReal::to_string() const {
  // bits * log10(2), rounded up.
  return to_string(static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30102999566398120)));
}

std::string HighPrecReal::to_string(int significant_digits) const {
  const int digits_after_point = significant_digits > 1 ? significant_digits - 1 : 0;
  const int len = mpfr_snprintf(nullptr, 0, "%.*Re", digits_after_point, v_);
  std::vector<char> buf(static_cast<std::size_t>(len) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits_after_point, v_);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

bool mpfr_is_thread_safe() { return mpfr_buildopt_tls_p() != 0; }

}  // namespace crsum
