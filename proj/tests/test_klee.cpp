#include <cmath>
#include <stdexcept>

#include <mpfr.h>

#include "crsum/expansion.hpp"
#include "crsum/klee.hpp"
#include "doctest.h"

using namespace crsum;

namespace {

HighPrecReal pi_power(unsigned e, long prec) {
  HighPrecReal pi(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  HighPrecReal out(prec, 1.0);
  for (unsigned i = 0; i < e; ++i) out *= pi;
  return out;
}

}  // namespace

TEST_CASE("zeta(2) and zeta(4) against closed forms") {
  for (long prec : {64L, 128L, 256L, 512L}) {
    const HighPrecReal bound = [&] {
      HighPrecReal b(prec, 1.0);
      mpfr_mul_2si(b.get(), b.get(), -prec / 2, MPFR_RNDN);
      return b;
    }();
    const HighPrecReal z2 = pi_power(2, prec) / HighPrecReal(prec, 6.0);
    const HighPrecReal z4 = pi_power(4, prec) / HighPrecReal(prec, 90.0);
    CHECK((zeta_even_arg(1, prec) - z2).abs() < bound);
    CHECK((zeta_even_arg(2, prec) - z4).abs() < bound);
  }
  CHECK(zeta_even_arg(1, 128).to_string(11) == "1.6449340668e+00");
  CHECK(zeta_even_arg(2, 128).to_string(11) == "1.0823232337e+00");
}

TEST_CASE("zeta error does not grow with precision") {
  const HighPrecReal ref = pi_power(2, 1024) / HighPrecReal(1024, 6.0);
  HighPrecReal prev(1024, 1.0);
  for (long prec : {64L, 96L, 128L, 192L, 256L, 512L}) {
    HighPrecReal z(1024);
    mpfr_set(z.get(), zeta_even_arg(1, prec).get(), MPFR_RNDN);
    const HighPrecReal err = (z - ref).abs();
    CHECK(err <= prev);
    prev = err;
  }
}

TEST_CASE("zeta at larger s") {
  // zeta(6) = pi^6 / 945
  const HighPrecReal z6 = pi_power(6, 200) / HighPrecReal(200, 945.0);
  CHECK((zeta_even_arg(3, 200) - z6).abs().to_double() < 1e-50);
  CHECK_THROWS_AS(zeta_even_arg(0, 128), std::domain_error);
  CHECK_THROWS_AS(zeta_even_arg(1, 32), std::domain_error);
}

TEST_CASE("klee coefficients") {
  CHECK(klee_coefficient(1, 1) == 1);
  CHECK(klee_coefficient(1, 3) == 1);
  CHECK(klee_coefficient(2, 1) == ExactRational(-1, 3));
  CHECK(klee_coefficient(4, 1) == 0);
  CHECK(klee_coefficient(6, 1) == ExactRational(1, 24));
  // the sequence is squarefree-supported, as the transform requires
  CoeffSeq a(SupportRule::squarefree_only);
  for (PosInt k = 1; k <= 200; ++k) REQUIRE_NOTHROW(a.set(k, klee_coefficient(k, 2)));
  REQUIRE_NOTHROW(transform_first_to_second(a));
}

TEST_CASE("checkpoints") {
  CHECK(checkpoints(1) == std::vector<PosInt>{1});
  CHECK(checkpoints(10) == std::vector<PosInt>{1, 10});
  CHECK(checkpoints(250) == std::vector<PosInt>{1, 10, 100, 250});
}

TEST_CASE("series at n = 1") {
  for (unsigned s = 1; s <= 3; ++s) {
    const SeriesReport r = klee_series_eval(1, s, 1, 128, 1);
    CHECK(r.partial_sums.size() == 1);
    CHECK(r.final_partial_sum() == HighPrecReal(128, 1.0));
  }
  const SeriesReport r = klee_series_eval(1, 1, 100000, 128, 0);
  CHECK(r.final_abs_error.to_double() < 1e-3);
  CHECK((r.target - zeta_even_arg(1, 128)).abs().to_double() == 0.0);
  for (const auto& [k, sum] : r.partial_sums) {
    if (k < 100) continue;
    CHECK((sum - r.target).abs().to_double() <= 2.0 / static_cast<double>(k));
  }
}

TEST_CASE("series error trajectory decreases") {
  for (PosInt n : {1, 2, 6, 8}) {
    const SeriesReport r = klee_series_eval(n, 1, 100000, 128, 0);
    double prev = 1e9;
    for (std::size_t i = 2; i < r.partial_sums.size(); ++i) {
      const double err = (r.partial_sums[i].second - r.target).abs().to_double();
      CHECK(err < prev);
      prev = err;
    }
  }
  const SeriesReport two = klee_series_eval(2, 1, 100000, 128, 0);
  CHECK(two.final_abs_error.to_double() < 1e-2);
}

TEST_CASE("second-variable series") {
  const SeriesReport one = klee_cr_prime_eval(1, 1, 100000, 128, 0);
  CHECK(one.final_abs_error.to_double() < 1e-3);
  for (PosInt n : {4, 8, 12}) {
    const SeriesReport a = klee_cr_prime_eval(n, 1, 100000, 128, 0);
    const SeriesReport b = klee_series_eval(n, 1, 100000, 128, 0);
    CHECK(a.target == b.target);
    CHECK(a.final_abs_error.to_double() < 1e-2);
  }
  // no support multiple of n* below K
  const SeriesReport empty = klee_cr_prime_eval(8, 1, 3, 128, 1);
  CHECK(empty.final_partial_sum() == HighPrecReal(128, 0.0));
  // the face-value display misses the target for non-squarefree n
  const SeriesReport lit = klee_cr_prime_literal_eval(4, 1, 10000, 128, 0);
  CHECK(lit.final_abs_error.to_double() > 1e-1);
}

TEST_CASE("coefficient identity") {
  for (unsigned s = 1; s <= 2; ++s)
    for (PosInt k = 1; k <= 20; ++k) {
      if (!is_squarefree(k)) continue;
      const PosInt D = 20000;
      const auto [lhs, rhs] = coefficient_identity_check(k, s, D, 128);
      REQUIRE((lhs - rhs).abs().to_double() < 10.0 / D);
    }
  const auto [l4, r4] = coefficient_identity_check(4, 1, 1000, 128);
  CHECK(l4 == HighPrecReal(128, 0.0));
  CHECK(r4 == HighPrecReal(128, 0.0));
  const auto [l1, r1] = coefficient_identity_check(1, 1, 100000, 128);
  CHECK(std::abs(l1.to_double() - 0.6079271) < 1e-4);
}

TEST_CASE("reports do not depend on the thread count") {
  const std::string a = series_report_to_csv(klee_series_eval(6, 2, 30000, 128, 1));
  for (int jobs : {2, 3, 4}) CHECK(series_report_to_csv(klee_series_eval(6, 2, 30000, 128, jobs)) == a);
  const std::string c = coefficient_identity_to_csv(coefficient_identity_report(3, 1, 30000, 128, 1));
  CHECK(coefficient_identity_to_csv(coefficient_identity_report(3, 1, 30000, 128, 4)) == c);
  CHECK(mpfr_is_thread_safe());
}

TEST_CASE("csv layout") {
  const std::string csv = series_report_to_csv(klee_series_eval(1, 1, 10, 128, 1));
  CHECK(csv.rfind("# {\"variant\":\"cr\"", 0) == 0);
  CHECK(csv.find("\nk_checkpoint,partial_sum,abs_error\n1,") != std::string::npos);
  CHECK(csv.find("\n10,") != std::string::npos);
}

TEST_CASE("bad arguments") {
  CHECK_THROWS_AS(klee_series_eval(0, 1, 10, 128), std::domain_error);
  CHECK_THROWS_AS(klee_series_eval(1, 1, 0, 128), std::domain_error);
  CHECK_THROWS_AS(klee_series_eval(1, 1, 10, 16), std::domain_error);
  CHECK_THROWS_AS(coefficient_identity_check(1, 0, 10, 128), std::domain_error);
}
