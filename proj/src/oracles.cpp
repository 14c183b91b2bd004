#include "crsum/oracles.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "crsum/high_prec.hpp"

namespace crsum::oracles {

void OracleConfig::validate() const {
  if (precision_bits < kMinPrecisionBits) throw std::invalid_argument("OracleConfig: precision must be >= 64 bits");
  if (!(rounding_tolerance > 0.0 && rounding_tolerance < 0.5))
    throw std::invalid_argument("OracleConfig: rounding tolerance must lie in (0, 0.5)");
}

ToleranceExceeded::ToleranceExceeded(double residual, double tolerance)
    : std::runtime_error("exponential sum residual " + std::to_string(residual) + " exceeds tolerance " +
                         std::to_string(tolerance) + "; retry with more precision bits"),
      residual_(residual) {}

namespace {

constexpr PosInt kMaxSummands = 10'000'000;

void require_positive(PosInt v, const char* what) {
  if (v == 0) throw std::domain_error(std::string(what) + ": arguments must be >= 1");
}

PosInt power_bounded(PosInt base, unsigned exp) {
  PosInt r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (r > kMaxSummands / base) throw std::out_of_range("oracle: k^s exceeds the summand budget");
    r *= base;
  }
  return r;
}

// d >= 2 with d^s | modulus, found by scanning every d up to modulus^(1/s).
std::vector<PosInt> sth_power_divisors(PosInt modulus, unsigned s) {
  std::vector<PosInt> out;
  for (PosInt d = 2;; ++d) {
    PosInt ds = 1;
    bool too_big = false;
    for (unsigned i = 0; i < s; ++i) {
      if (ds > modulus / d) {
        too_big = true;
        break;
      }
      ds *= d;
    }
    if (too_big) break;
    if (modulus % ds == 0) out.push_back(ds);
  }
  return out;
}

bool s_coprime(PosInt h, const std::vector<PosInt>& shared_powers) {
  for (PosInt ds : shared_powers)
    if (h % ds == 0) return false;
  return true;
}

// Accumulates exp(2 pi i r / modulus) at the given precision.
class RootSum {
 public:
  RootSum(long prec, PosInt modulus) : re_(prec), im_(prec), angle_(prec), s_(prec), c_(prec), prec_(prec) {
    HighPrecReal two_pi(prec);
    mpfr_const_pi(two_pi.get(), MPFR_RNDN);
    mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);
    step_ = two_pi;
    mpfr_div_ui(step_.get(), step_.get(), modulus, MPFR_RNDN);
  }

  void add(PosInt r) {
    mpfr_mul_ui(angle_.get(), step_.get(), r, MPFR_RNDN);
    mpfr_sin_cos(s_.get(), c_.get(), angle_.get(), MPFR_RNDN);
    re_ += c_;
    im_ += s_;
  }

  void add(const HighPrecReal& cos_part, const HighPrecReal& sin_part) {
    re_ += cos_part;
    im_ += sin_part;
  }

  void root(PosInt r, HighPrecReal& cos_out, HighPrecReal& sin_out) {
    mpfr_mul_ui(angle_.get(), step_.get(), r, MPFR_RNDN);
    mpfr_sin_cos(sin_out.get(), cos_out.get(), angle_.get(), MPFR_RNDN);
  }

  RoundedSum finish(double tolerance) const {
    RoundedSum out;
    mpfr_get_z(out.value.get_mpz_t(), re_.get(), MPFR_RNDN);
    HighPrecReal diff(re_);
    HighPrecReal nearest(prec_, out.value);
    diff -= nearest;
    const double real_err = std::fabs(diff.to_double());
    const double imag_err = std::fabs(im_.to_double());
    out.residual = std::max(real_err, imag_err);
    if (!(out.residual < tolerance)) throw ToleranceExceeded(out.residual, tolerance);
    return out;
  }

 private:
  HighPrecReal re_, im_, angle_, s_, c_, step_{kMinPrecisionBits};
  long prec_;
};

PosInt mulmod(PosInt a, PosInt b, PosInt m) {
  return static_cast<PosInt>((static_cast<unsigned __int128>(a) * b) % m);
}

struct RootTable {
  PosInt modulus = 1;
  std::vector<PosInt> residues;  // the h that enter the sum
  std::vector<HighPrecReal> cos_table, sin_table;
  long prec = 128;
  double tolerance = 1e-6;

  RoundedSum evaluate(PosInt n) const {
    require_positive(n, "oracle evaluate");
    RootSum acc(prec, modulus);
    const PosInt n_mod = n % modulus;
    for (PosInt h : residues) {
      const PosInt r = mulmod(n_mod, h, modulus);
      acc.add(cos_table[r], sin_table[r]);
    }
    return acc.finish(tolerance);
  }

  void fill_roots() {
    RootSum gen(prec, modulus);
    cos_table.reserve(modulus);
    sin_table.reserve(modulus);
    for (PosInt r = 0; r < modulus; ++r) {
      HighPrecReal c(prec), s(prec);
      gen.root(r, c, s);
      cos_table.push_back(std::move(c));
      sin_table.push_back(std::move(s));
    }
  }
};

}  // namespace

struct DirectSumTable::Impl : RootTable {};
struct ClassicalSumTable::Impl : RootTable {};

RoundedSum cr_direct(PosInt k, PosInt n, unsigned s, const OracleConfig& cfg) {
  require_positive(k, "cr_direct");
  require_positive(n, "cr_direct");
  require_positive(s, "cr_direct");
  cfg.validate();
  const PosInt modulus = power_bounded(k, s);
  const auto shared = sth_power_divisors(modulus, s);
  RootSum acc(cfg.precision_bits, modulus);
  const PosInt n_mod = n % modulus;
  for (PosInt h = 1; h <= modulus; ++h)
    if (s_coprime(h, shared)) acc.add(mulmod(n_mod, h, modulus));
  return acc.finish(cfg.rounding_tolerance);
}

DirectSumTable::DirectSumTable(PosInt k, unsigned s, const OracleConfig& cfg) {
  require_positive(k, "DirectSumTable");
  require_positive(s, "DirectSumTable");
  cfg.validate();
  auto impl = std::make_shared<Impl>();
  impl->modulus = power_bounded(k, s);
  impl->prec = cfg.precision_bits;
  impl->tolerance = cfg.rounding_tolerance;
  const auto shared = sth_power_divisors(impl->modulus, s);
  for (PosInt h = 1; h <= impl->modulus; ++h)
    if (s_coprime(h, shared)) impl->residues.push_back(h);
  impl->fill_roots();
  impl_ = std::move(impl);
}

RoundedSum DirectSumTable::evaluate(PosInt n) const { return impl_->evaluate(n); }

PosInt ggcd_exhaustive(PosInt a, PosInt b, unsigned s) {
  require_positive(a, "ggcd_exhaustive");
  require_positive(b, "ggcd_exhaustive");
  require_positive(s, "ggcd_exhaustive");
  const PosInt lo = std::min(a, b);
  PosInt best = 1;
  for (PosInt d = 1;; ++d) {
    PosInt ds = 1;
    bool too_big = false;
    for (unsigned i = 0; i < s; ++i) {
      if (ds > lo / d) {
        too_big = true;
        break;
      }
      ds *= d;
    }
    if (too_big) break;
    if (a % ds == 0 && b % ds == 0) best = ds;
  }
  return best;
}

RoundedSum classical_ramanujan_naive(PosInt k, PosInt n, const OracleConfig& cfg) {
  require_positive(k, "classical_ramanujan_naive");
  require_positive(n, "classical_ramanujan_naive");
  cfg.validate();
  RootSum acc(cfg.precision_bits, k);
  for (PosInt m = 1; m <= k; ++m)
    if (std::gcd(m, k) == 1) acc.add(mulmod(m, n % k, k));
  return acc.finish(cfg.rounding_tolerance);
}

ClassicalSumTable::ClassicalSumTable(PosInt k, const OracleConfig& cfg) {
  require_positive(k, "ClassicalSumTable");
  cfg.validate();
  auto impl = std::make_shared<Impl>();
  impl->modulus = k;
  impl->prec = cfg.precision_bits;
  impl->tolerance = cfg.rounding_tolerance;
  for (PosInt m = 1; m <= k; ++m)
    if (std::gcd(m, k) == 1) impl->residues.push_back(m);
  impl->fill_roots();
  impl_ = std::move(impl);
}

RoundedSum ClassicalSumTable::evaluate(PosInt n) const { return impl_->evaluate(n); }

namespace {

// Tuples (a_i, ..., a_s) mod n extending a prefix whose running gcd with n
// is g.
mpz_class count_tuples(PosInt n, PosInt g, unsigned remaining) {
  if (g == 1) {
    mpz_class all;
    mpz_ui_pow_ui(all.get_mpz_t(), n, remaining);
    return all;
  }
  if (remaining == 0) return 0;
  mpz_class total = 0;
  for (PosInt a = 0; a < n; ++a) total += count_tuples(n, std::gcd(g, a), remaining - 1);
  return total;
}

}  // namespace

mpz_class totient_counting(unsigned s, PosInt n, Totient which) {
  require_positive(n, "totient_counting");
  require_positive(s, "totient_counting");
  if (which == Totient::jordan) return count_tuples(n, n, s);
  const auto shared = sth_power_divisors(n, s);
  mpz_class count = 0;
  for (PosInt m = 1; m <= n; ++m)
    if (s_coprime(m, shared)) ++count;
  return count;
}

}  // namespace crsum::oracles
