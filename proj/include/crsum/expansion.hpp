#pragma once

// Exact coefficient calculus for Cohen-Ramanujan series.
//
// First-variable (CR) series:   f(n) = sum_k a(k) c_k^(s)(n^s)
// Second-variable (CR') series: f(n) = mu(core n)/(n*)^s
//                                      * sum_k xi_{n*}(k) b(k/n*) c_n^(s)(k^s)
//
// Coefficient sequences are finitely supported, so every identity between the
// two forms is an exact finite statement about rationals.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crsum/arith.hpp"
#include "crsum/rational.hpp"

namespace crsum {

enum class SupportRule { any, squarefree_only, sth_powers_of_squarefree };

// How xi_{n*}(k) enters the second-variable series. indicator reproduces the
// first-variable values; weighted (xi_d(k) = d) is kept for comparison.
enum class XiSemantics { indicator, weighted };

inline constexpr XiSemantics kAdjudicatedXi = XiSemantics::indicator;

std::string_view xi_semantics_name(XiSemantics xi);

class SupportViolation : public std::invalid_argument {
 public:
  SupportViolation(PosInt index, const std::string& rule);
  PosInt index() const { return index_; }

 private:
  PosInt index_;
};

class CoeffSeq {
 public:
  using Map = std::map<PosInt, ExactRational>;

  // s only matters for sth_powers_of_squarefree.
  explicit CoeffSeq(SupportRule rule = SupportRule::any, unsigned s = 1);

  // Zero values erase the entry. Throws SupportViolation when index breaks
  // the support rule.
  void set(PosInt index, const ExactRational& value);
  void add(PosInt index, const ExactRational& value);
  ExactRational at(PosInt index) const;

  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  SupportRule rule() const { return rule_; }
  unsigned s() const { return s_; }

  // Equality of the underlying sequences (support rule is not compared).
  friend bool operator==(const CoeffSeq& a, const CoeffSeq& b) { return a.entries_ == b.entries_; }

 private:
  void check_index(PosInt index) const;

  Map entries_;
  SupportRule rule_;
  unsigned s_;
};

// r with r^s = i, if any.
std::optional<PosInt> exact_root(PosInt i, unsigned s);

// f(k) = sum over d | k of d^s mu(d) a(d^s).
ExactRational f_from_a(const CoeffSeq& a, unsigned s, PosInt k);

// b(k^s) = sum_n mu(n) a(n^s k^s); a must live on s-th powers.
CoeffSeq b_from_a(const CoeffSeq& a, unsigned s);
// a(k^s) = sum_n b(n^s k^s); inverse of b_from_a.
CoeffSeq a_from_b(const CoeffSeq& b, unsigned s);

// sum_n b(n^s) c_k^(s)(n^s); equals mu(k) f(k) for squarefree k.
ExactRational mu_f_via_b(const CoeffSeq& b, unsigned s, PosInt k);

enum class Variable { first, second };

struct ExpansionSpec {
  unsigned s = 1;
  CoeffSeq coeffs;
  Variable variable = Variable::first;
  XiSemantics xi_semantics = kAdjudicatedXi;
};

// Truncation K defaults to the whole support.
ExactRational eval_first(const ExpansionSpec& spec, PosInt n, std::optional<PosInt> K = std::nullopt);
ExactRational eval_second(const ExpansionSpec& spec, PosInt n, std::optional<PosInt> K = std::nullopt);

// One term of the second-variable series, prefactor included: the
// contribution of b(m) at k = n* m.
ExactRational second_variable_term(const ExactRational& b_m, PosInt m, PosInt n, unsigned s, XiSemantics xi);

// b(m) = mu(m) a(m); a must be squarefree-supported.
CoeffSeq transform_first_to_second(const CoeffSeq& a);
ExactRational first_to_second_coefficient(const ExactRational& a_m, PosInt m);

// a(k) = sum over m with core(m) = k of alpha(m) (m*)^s,
// alpha(m) = b(m) mu(core m) / (m*)^s.
CoeffSeq transform_second_to_first(const CoeffSeq& b, unsigned s);

// Random squarefree-supported sequence on [1, max_index] with 1..max_entries
// nonzero entries p/q, 1 <= |p| <= max_num, 1 <= q <= max_den.
CoeffSeq random_squarefree_seq(std::mt19937_64& rng, PosInt max_index, std::size_t max_entries, long max_num,
                               long max_den);
// Same, but any index in [1, max_index] may be used.
CoeffSeq random_seq(std::mt19937_64& rng, PosInt max_index, std::size_t max_entries, long max_num, long max_den);
// a(r^s) = seq(r).
CoeffSeq lift_to_sth_powers(const CoeffSeq& seq, unsigned s);

struct XiAdjudication {
  bool indicator_passes = true;
  bool weighted_passes = true;
  std::optional<XiSemantics> chosen;  // set iff exactly one passes
  std::size_t samples = 0;
  std::string indicator_counterexample;
  std::string weighted_counterexample;
};

// Compares eval_first(a) with eval_second(transform_first_to_second(a)) for
// n <= n_max under both semantics.
XiAdjudication adjudicate_xi(std::span<const CoeffSeq> samples, unsigned s, PosInt n_max);

// JSON array of [index, numerator, denominator], sorted by index. Integers
// beyond 64 bits are written as decimal strings.
std::string coeffs_to_json(const CoeffSeq& seq);
// Throws std::invalid_argument on malformed input, SupportViolation when the
// indices break the requested rule.
CoeffSeq coeffs_from_json(std::string_view text, SupportRule rule = SupportRule::any, unsigned s = 1);

}  // namespace crsum
