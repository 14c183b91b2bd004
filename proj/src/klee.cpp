#include "crsum/klee.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>

#include <omp.h>

#include "crsum/cr_sum.hpp"
#include "crsum/expansion.hpp"
#include "json.hpp"

namespace crsum {

namespace {

constexpr long kGuardBits = 32;

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

// B_0 .. B_{2m} by the standard recurrence.
std::vector<ExactRational> bernoulli_numbers(unsigned upto) {
  std::vector<ExactRational> b(upto + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= upto; ++m) {
    ExactRational acc = 0;
    mpz_class binom = 1;  // C(m+1, k)
    for (unsigned k = 0; k < m; ++k) {
      acc += ExactRational(binom) * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -acc / (m + 1);
  }
  return b;
}

// Terms t_1..t_K rounded to the working precision. The fill may run in
// parallel; each slot is written by exactly one iteration.
std::vector<HighPrecReal> fill_terms(PosInt K, long prec, int jobs,
                                     const std::function<ExactRational(PosInt)>& term) {
  std::vector<HighPrecReal> out;
  out.reserve(K);
  for (PosInt k = 1; k <= K; ++k) out.emplace_back(prec);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(K);
  std::exception_ptr failure;
#pragma omp parallel for num_threads(threads) schedule(dynamic, 512) if (threads > 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      const ExactRational t = term(static_cast<PosInt>(i) + 1);
      if (t != 0) mpfr_set_q(out[static_cast<std::size_t>(i)].get(), t.get_mpq_t(), MPFR_RNDN);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Serial accumulation in index order, recording checkpoints.
std::vector<std::pair<PosInt, HighPrecReal>> accumulate(const std::vector<HighPrecReal>& terms, PosInt K,
                                                       long prec) {
  std::vector<std::pair<PosInt, HighPrecReal>> out;
  const std::vector<PosInt> marks = checkpoints(K);
  std::size_t next = 0;
  HighPrecReal sum(prec);
  for (PosInt k = 1; k <= K; ++k) {
    sum += terms[k - 1];
    if (next < marks.size() && marks[next] == k) {
      out.emplace_back(k, sum);
      ++next;
    }
  }
  return out;
}

SeriesReport finish(std::string variant, PosInt n, unsigned s, PosInt K, long prec,
                    std::vector<std::pair<PosInt, HighPrecReal>> sums, HighPrecReal target) {
  SeriesReport r;
  r.variant = std::move(variant);
  r.n = n;
  r.s = s;
  r.K = K;
  r.precision_bits = prec;
  r.partial_sums = std::move(sums);
  r.target = std::move(target);
  r.final_abs_error = (r.final_partial_sum() - r.target).abs();
  return r;
}

// phi * zeta(2s) / m.
HighPrecReal klee_target(const mpz_class& phi, const mpz_class& m, unsigned s, long prec) {
  HighPrecReal t = zeta_even_arg(s, prec);
  t *= HighPrecReal(prec, phi);
  t /= HighPrecReal(prec, m);
  return t;
}

// Phi_t(k^s) from the factorization of k.
mpz_class klee_phi_of_power(unsigned t, PosInt k, unsigned s) {
  mpz_class out = 1;
  for (const auto& [p, e] : factorize(k)) {
    const unsigned ex = e * s;
    if (ex >= t) {
      out *= mpz_pow(p, ex - t) * (mpz_pow(p, t) - 1);
    } else {
      out *= mpz_pow(p, ex);
    }
  }
  return out;
}

void check_args(PosInt n, unsigned s, PosInt K, long prec) {
  require(n >= 1 && s >= 1 && K >= 1, "klee: n, s and K must be >= 1");
  require(prec >= kMinPrecisionBits, "klee: precision must be >= 64 bits");
}

}  // namespace

HighPrecReal zeta_even_arg(unsigned s, long precision_bits) {
  require(s >= 1, "zeta_even_arg: s must be >= 1");
  require(precision_bits >= kMinPrecisionBits, "zeta_even_arg: precision must be >= 64 bits");
  const long work = precision_bits + kGuardBits;
  const unsigned exponent = 2 * s;
  const PosInt N = std::max<PosInt>(16, static_cast<PosInt>(precision_bits) / 4);

  HighPrecReal sum(work);
  for (PosInt i = N - 1; i >= 1; --i) {  // smallest terms first
    HighPrecReal term(work, 1.0);
    mpfr_div_z(term.get(), term.get(), mpz_pow(i, exponent).get_mpz_t(), MPFR_RNDN);
    sum += term;
  }

  // Tail sum_{i >= N} i^{-2s}: integral, half endpoint, Bernoulli corrections.
  ExactRational tail = make_rational(1, mpz_pow(N, exponent - 1) * (exponent - 1));
  tail += make_rational(1, 2 * mpz_pow(N, exponent));
  HighPrecReal tail_real(work, tail);

  HighPrecReal cutoff(work, 1.0);
  mpfr_mul_2si(cutoff.get(), cutoff.get(), -(precision_bits + 16), MPFR_RNDN);
  constexpr unsigned kMaxTerms = 120;
  const std::vector<ExactRational> bern = bernoulli_numbers(2 * kMaxTerms);
  mpz_class rising = exponent;  // (2s)_{2j-1}
  mpz_class fact = 2;           // (2j)!
  bool converged = false;
  for (unsigned j = 1; j <= kMaxTerms; ++j) {
    if (j > 1) {
      rising *= mpz_class(exponent + 2 * j - 3) * (exponent + 2 * j - 2);
      fact *= mpz_class(2 * j - 1) * (2 * j);
    }
    const ExactRational coeff = bern[2 * j] * make_rational(rising, fact * mpz_pow(N, exponent + 2 * j - 1));
    const HighPrecReal term(work, coeff);
    tail_real += term;
    if (term.abs() < cutoff) {
      converged = true;
      break;
    }
  }
  if (!converged) throw std::runtime_error("zeta_even_arg: Euler-Maclaurin tail did not converge");
  sum += tail_real;
  HighPrecReal out(precision_bits);
  mpfr_set(out.get(), sum.get(), MPFR_RNDN);
  return out;
}

ExactRational klee_coefficient(PosInt k, unsigned s) {
  require(k >= 1 && s >= 1, "klee_coefficient: k and s must be >= 1");
  const Factorization kf = factorize(k);
  const int mu = mobius(kf);
  if (mu == 0) return 0;
  return make_rational(mpz_class(mu), jordan_totient(2 * s, kf));
}

std::vector<PosInt> checkpoints(PosInt K) {
  std::vector<PosInt> out;
  for (PosInt c = 1; c < K; c *= 10) out.push_back(c);
  out.push_back(K);
  return out;
}

SeriesReport klee_series_eval(PosInt n, unsigned s, PosInt K, long precision_bits, int jobs) {
  check_args(n, s, K, precision_bits);
  const auto terms = fill_terms(K, precision_bits, jobs, [n, s](PosInt k) -> ExactRational {
    const ExactRational a = klee_coefficient(k, s);
    if (a == 0) return 0;
    return a * ExactRational(cr_mobius({k, n, s}));
  });
  return finish("cr", n, s, K, precision_bits, accumulate(terms, K, precision_bits),
                klee_target(klee_phi(s, n), mpz_pow(n, 1), s, precision_bits));
}

SeriesReport klee_cr_prime_eval(PosInt n, unsigned s, PosInt K, long precision_bits, int jobs) {
  check_args(n, s, K, precision_bits);
  const PosInt n_star = star(n);
  const auto terms = fill_terms(K, precision_bits, jobs, [n, s, n_star](PosInt k) -> ExactRational {
    if (k % n_star != 0) return 0;
    const PosInt m = k / n_star;
    const ExactRational b = first_to_second_coefficient(klee_coefficient(m, s), m);
    if (b == 0) return 0;
    return second_variable_term(b, m, n, s, kAdjudicatedXi);
  });
  return finish("cr-prime", n, s, K, precision_bits, accumulate(terms, K, precision_bits),
                klee_target(klee_phi_of_power(s, n, s), mpz_pow(n, s), s, precision_bits));
}

SeriesReport klee_cr_prime_literal_eval(PosInt n, unsigned s, PosInt K, long precision_bits, int jobs) {
  check_args(n, s, K, precision_bits);
  const PosInt n_core = core(n);
  const PosInt n_star = n / n_core;
  const ExactRational prefactor = make_rational(mpz_class(mobius(n_core)), mpz_pow(n_star, s));
  const auto terms = fill_terms(K, precision_bits, jobs, [=](PosInt k) -> ExactRational {
    const PosInt weight = xi(n_star, k);
    if (weight == 0) return 0;
    const mpz_class c = cr_mobius({n, checked_pow(k, s), s});
    return prefactor * make_rational(c * weight, klee_phi_of_power(2 * s, k, s));
  });
  return finish("cr-prime-literal", n, s, K, precision_bits, accumulate(terms, K, precision_bits),
                klee_target(klee_phi_of_power(s, n, s), mpz_pow(n, s), s, precision_bits));
}

CoefficientIdentityReport coefficient_identity_report(PosInt k, unsigned s, PosInt D, long precision_bits,
                                                      int jobs) {
  require(k >= 1 && s >= 1 && D >= 1, "coefficient_identity: k, s and D must be >= 1");
  require(precision_bits >= kMinPrecisionBits, "coefficient_identity: precision must be >= 64 bits");
  const auto terms = fill_terms(D, precision_bits, jobs, [k, s](PosInt d) -> ExactRational {
    const PosInt kd = checked_mul(k, d);
    const int mu = mobius(kd);
    if (mu == 0) return 0;
    return make_rational(mpz_class(mu), mpz_pow(kd, 2 * s));
  });
  CoefficientIdentityReport r;
  r.k = k;
  r.s = s;
  r.D = D;
  r.precision_bits = precision_bits;
  r.lhs_partial = accumulate(terms, D, precision_bits);
  const ExactRational coeff = klee_coefficient(k, s);
  r.rhs = HighPrecReal(precision_bits, coeff);
  r.rhs /= zeta_even_arg(s, precision_bits);
  return r;
}

std::pair<HighPrecReal, HighPrecReal> coefficient_identity_check(PosInt k, unsigned s, PosInt D,
                                                                 long precision_bits) {
  CoefficientIdentityReport r = coefficient_identity_report(k, s, D, precision_bits);
  return {r.lhs(), r.rhs};
}

std::string series_report_to_csv(const SeriesReport& report) {
  nlohmann::ordered_json header;
  header["variant"] = report.variant;
  header["n"] = report.n;
  header["s"] = report.s;
  header["K"] = report.K;
  header["precision"] = report.precision_bits;
  header["target"] = report.target.to_string();
  std::string out = "# " + header.dump() + "\n";
  out += "k_checkpoint,partial_sum,abs_error\n";
  for (const auto& [k, sum] : report.partial_sums)
    out += std::to_string(k) + "," + sum.to_string() + "," + (sum - report.target).abs().to_string() + "\n";
  return out;
}

std::string coefficient_identity_to_csv(const CoefficientIdentityReport& report) {
  nlohmann::ordered_json header;
  header["variant"] = "coeff-identity";
  header["k"] = report.k;
  header["s"] = report.s;
  header["D"] = report.D;
  header["precision"] = report.precision_bits;
  header["rhs"] = report.rhs.to_string();
  std::string out = "# " + header.dump() + "\n";
  out += "d_checkpoint,lhs,rhs,abs_diff\n";
  for (const auto& [d, lhs] : report.lhs_partial)
    out += std::to_string(d) + "," + lhs.to_string() + "," + report.rhs.to_string() + "," +
           (lhs - report.rhs).abs().to_string() + "\n";
  return out;
}

}  // namespace crsum
