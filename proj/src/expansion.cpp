#include "crsum/expansion.hpp"

#include <algorithm>

#include "crsum/cr_sum.hpp"
#include "json.hpp"

namespace crsum {

std::string_view xi_semantics_name(XiSemantics xi) {
  return xi == XiSemantics::indicator ? "indicator" : "weighted";
}

namespace {

std::string_view rule_name(SupportRule rule) {
  switch (rule) {
    case SupportRule::any:
      return "any";
    case SupportRule::squarefree_only:
      return "squarefree-only";
    case SupportRule::sth_powers_of_squarefree:
      return "s-th-powers-of-squarefree";
  }
  return "?";
}

// d^s, or nullopt when it does not fit in 64 bits.
std::optional<PosInt> power_if_fits(PosInt d, unsigned s) {
  PosInt r = 1;
  for (unsigned i = 0; i < s; ++i)
    if (__builtin_mul_overflow(r, d, &r)) return std::nullopt;
  return r;
}

void require_sth_powers(const CoeffSeq& seq, unsigned s) {
  for (const auto& [i, v] : seq.entries())
    if (!exact_root(i, s)) throw SupportViolation(i, "s-th powers");
}

}  // namespace

SupportViolation::SupportViolation(PosInt index, const std::string& rule)
    : std::invalid_argument("coefficient at index " + std::to_string(index) + " violates the " + rule +
                            " support rule"),
      index_(index) {}

CoeffSeq::CoeffSeq(SupportRule rule, unsigned s) : rule_(rule), s_(s) {
  if (s == 0) throw std::domain_error("CoeffSeq: s must be >= 1");
}

void CoeffSeq::check_index(PosInt index) const {
  if (index == 0) throw std::domain_error("CoeffSeq: indices start at 1");
  switch (rule_) {
    case SupportRule::any:
      return;
    case SupportRule::squarefree_only:
      if (!is_squarefree(index)) throw SupportViolation(index, std::string(rule_name(rule_)));
      return;
    case SupportRule::sth_powers_of_squarefree: {
      const auto r = exact_root(index, s_);
      if (!r || !is_squarefree(*r)) throw SupportViolation(index, std::string(rule_name(rule_)));
      return;
    }
  }
}

void CoeffSeq::set(PosInt index, const ExactRational& value) {
  if (value == 0) {
    entries_.erase(index);
    return;
  }
  check_index(index);
  entries_[index] = value;
}

void CoeffSeq::add(PosInt index, const ExactRational& value) { set(index, at(index) + value); }

ExactRational CoeffSeq::at(PosInt index) const {
  auto it = entries_.find(index);
  return it == entries_.end() ? ExactRational(0) : it->second;
}

std::optional<PosInt> exact_root(PosInt i, unsigned s) {
  if (i == 0 || s == 0) return std::nullopt;
  PosInt r = 1;
  for (const auto& [p, e] : factorize(i)) {
    if (e % s != 0) return std::nullopt;
    r *= checked_pow(p, e / s);
  }
  return r;
}

ExactRational f_from_a(const CoeffSeq& a, unsigned s, PosInt k) {
  if (k == 0) throw std::domain_error("f_from_a: k must be >= 1");
  ExactRational acc = 0;
  for (PosInt d : divisors(k)) {
    const int mu = mobius(d);
    if (mu == 0) continue;
    const auto ds = power_if_fits(d, s);
    if (!ds) continue;
    const ExactRational ad = a.at(*ds);
    if (ad != 0) acc += ExactRational(mpz_pow(*ds, 1) * mu) * ad;
  }
  return acc;
}

CoeffSeq b_from_a(const CoeffSeq& a, unsigned s) {
  require_sth_powers(a, s);
  CoeffSeq b(SupportRule::any, s);
  for (const auto& [i, v] : a.entries()) {
    const PosInt r = *exact_root(i, s);
    // a(i) appears in b(k^s) for every k = r / n.
    for (PosInt n : divisors(r)) {
      const int mu = mobius(n);
      if (mu != 0) b.add(checked_pow(r / n, s), mu * v);
    }
  }
  return b;
}

CoeffSeq a_from_b(const CoeffSeq& b, unsigned s) {
  require_sth_powers(b, s);
  CoeffSeq a(SupportRule::any, s);
  for (const auto& [i, v] : b.entries()) {
    const PosInt r = *exact_root(i, s);
    for (PosInt n : divisors(r)) a.add(checked_pow(r / n, s), v);
  }
  return a;
}

ExactRational mu_f_via_b(const CoeffSeq& b, unsigned s, PosInt k) {
  ExactRational acc = 0;
  for (const auto& [i, v] : b.entries()) {
    if (!exact_root(i, s)) continue;  // b vanishes off s-th powers
    acc += v * ExactRational(cr_mobius({k, i, s}));
  }
  return acc;
}

ExactRational eval_first(const ExpansionSpec& spec, PosInt n, std::optional<PosInt> K) {
  if (spec.variable != Variable::first) throw std::invalid_argument("eval_first: spec is a second-variable series");
  const PosInt arg = checked_pow(n, spec.s);
  ExactRational acc = 0;
  for (const auto& [k, v] : spec.coeffs.entries()) {
    if (K && k > *K) break;
    acc += v * ExactRational(cr_mobius({k, arg, spec.s}));
  }
  return acc;
}

ExactRational second_variable_term(const ExactRational& b_m, PosInt m, PosInt n, unsigned s, XiSemantics xi) {
  const PosInt n_core = core(n);
  const PosInt n_star = n / n_core;
  const PosInt k = checked_mul(n_star, m);
  const PosInt weight = xi == XiSemantics::indicator ? xi_indicator(n_star, k) : crsum::xi(n_star, k);
  const mpz_class c = cr_mobius({n, checked_pow(k, s), s});
  return make_rational(mobius(n_core) * mpz_pow(weight, 1) * c, mpz_pow(n_star, s)) * b_m;
}

ExactRational eval_second(const ExpansionSpec& spec, PosInt n, std::optional<PosInt> K) {
  if (spec.variable != Variable::second) throw std::invalid_argument("eval_second: spec is a first-variable series");
  if (n == 0) throw std::domain_error("eval_second: n must be >= 1");
  const PosInt n_star = star(n);
  ExactRational acc = 0;
  // Only k = n* m with m in the support contribute.
  for (const auto& [m, v] : spec.coeffs.entries()) {
    if (K && checked_mul(n_star, m) > *K) break;
    acc += second_variable_term(v, m, n, spec.s, spec.xi_semantics);
  }
  return acc;
}

ExactRational first_to_second_coefficient(const ExactRational& a_m, PosInt m) { return mobius(m) * a_m; }

CoeffSeq transform_first_to_second(const CoeffSeq& a) {
  CoeffSeq b(SupportRule::squarefree_only);
  for (const auto& [m, v] : a.entries()) {
    if (!is_squarefree(m)) throw SupportViolation(m, "squarefree-only");
    b.set(m, first_to_second_coefficient(v, m));
  }
  return b;
}

CoeffSeq transform_second_to_first(const CoeffSeq& b, unsigned s) {
  CoeffSeq a(SupportRule::squarefree_only);
  for (const auto& [m, v] : b.entries()) {
    const PosInt m_core = core(m);
    const mpz_class star_s = mpz_pow(m / m_core, s);
    const ExactRational alpha = v * make_rational(mpz_class(mobius(m_core)), star_s);
    a.add(m_core, alpha * ExactRational(star_s));
  }
  return a;
}

namespace {

ExactRational random_entry(std::mt19937_64& rng, long max_num, long max_den) {
  std::uniform_int_distribution<long> num(1, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  std::bernoulli_distribution negative(0.5);
  const long p = num(rng) * (negative(rng) ? -1 : 1);
  return make_rational(mpz_class(p), mpz_class(den(rng)));
}

CoeffSeq random_on(std::mt19937_64& rng, const std::vector<PosInt>& pool, std::size_t max_entries, long max_num,
                   long max_den, SupportRule rule) {
  std::uniform_int_distribution<std::size_t> count(1, std::min(max_entries, pool.size()));
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  CoeffSeq out(rule);
  const std::size_t want = count(rng);
  while (out.size() < want) {
    const PosInt idx = pool[pick(rng)];
    if (out.at(idx) == 0) out.set(idx, random_entry(rng, max_num, max_den));
  }
  return out;
}

}  // namespace

CoeffSeq random_squarefree_seq(std::mt19937_64& rng, PosInt max_index, std::size_t max_entries, long max_num,
                               long max_den) {
  std::vector<PosInt> pool;
  for (PosInt i = 1; i <= max_index; ++i)
    if (is_squarefree(i)) pool.push_back(i);
  return random_on(rng, pool, max_entries, max_num, max_den, SupportRule::squarefree_only);
}

CoeffSeq random_seq(std::mt19937_64& rng, PosInt max_index, std::size_t max_entries, long max_num, long max_den) {
  std::vector<PosInt> pool(max_index);
  for (PosInt i = 1; i <= max_index; ++i) pool[i - 1] = i;
  return random_on(rng, pool, max_entries, max_num, max_den, SupportRule::any);
}

CoeffSeq lift_to_sth_powers(const CoeffSeq& seq, unsigned s) {
  CoeffSeq out(SupportRule::any, s);
  for (const auto& [r, v] : seq.entries()) out.set(checked_pow(r, s), v);
  return out;
}

XiAdjudication adjudicate_xi(std::span<const CoeffSeq> samples, unsigned s, PosInt n_max) {
  XiAdjudication out;
  out.samples = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const ExpansionSpec first{s, samples[i], Variable::first, kAdjudicatedXi};
    const CoeffSeq b = transform_first_to_second(samples[i]);
    for (XiSemantics xi : {XiSemantics::indicator, XiSemantics::weighted}) {
      bool& passes = xi == XiSemantics::indicator ? out.indicator_passes : out.weighted_passes;
      std::string& example = xi == XiSemantics::indicator ? out.indicator_counterexample : out.weighted_counterexample;
      if (!passes) continue;
      const ExpansionSpec second{s, b, Variable::second, xi};
      for (PosInt n = 1; n <= n_max; ++n) {
        const ExactRational lhs = eval_first(first, n);
        const ExactRational rhs = eval_second(second, n);
        if (lhs != rhs) {
          passes = false;
          example = "sample " + std::to_string(i) + ", s=" + std::to_string(s) + ", n=" + std::to_string(n) +
                    ": first=" + to_string(lhs) + " second=" + to_string(rhs);
          break;
        }
      }
    }
  }
  if (out.indicator_passes != out.weighted_passes)
    out.chosen = out.indicator_passes ? XiSemantics::indicator : XiSemantics::weighted;
  return out;
}

namespace {

nlohmann::json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str(10);
}

mpz_class integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
    return mpz_class(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("CoeffSeq JSON: bad integer string");
    return z;
  }
  throw std::invalid_argument("CoeffSeq JSON: expected an integer");
}

}  // namespace

std::string coeffs_to_json(const CoeffSeq& seq) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [i, v] : seq.entries())
    arr.push_back(nlohmann::json::array({i, integer_json(v.get_num()), integer_json(v.get_den())}));
  return arr.dump() + "\n";
}

CoeffSeq coeffs_from_json(std::string_view text, SupportRule rule, unsigned s) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("CoeffSeq JSON: ") + e.what());
  }
  if (!arr.is_array()) throw std::invalid_argument("CoeffSeq JSON: top level must be an array");
  CoeffSeq out(rule, s);
  std::vector<PosInt> seen;
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 3) throw std::invalid_argument("CoeffSeq JSON: entries are [i, num, den]");
    if (!item[0].is_number_unsigned() || item[0].get<std::uint64_t>() == 0)
      throw std::invalid_argument("CoeffSeq JSON: index must be a positive integer");
    const PosInt idx = item[0].get<std::uint64_t>();
    const mpz_class num = integer_from_json(item[1]);
    const mpz_class den = integer_from_json(item[2]);
    if (den <= 0) throw std::invalid_argument("CoeffSeq JSON: denominator must be positive");
    if (std::find(seen.begin(), seen.end(), idx) != seen.end())
      throw std::invalid_argument("CoeffSeq JSON: duplicate index " + std::to_string(idx));
    seen.push_back(idx);
    out.set(idx, make_rational(num, den));
  }
  return out;
}

}  // namespace crsum
