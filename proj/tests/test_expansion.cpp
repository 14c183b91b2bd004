#include <random>
#include <stdexcept>
#include <vector>

#include "crsum/cr_sum.hpp"
#include "crsum/expansion.hpp"
#include "doctest.h"

using namespace crsum;

namespace {

CoeffSeq seq(std::initializer_list<std::pair<PosInt, ExactRational>> items, SupportRule rule = SupportRule::any,
             unsigned s = 1) {
  CoeffSeq out(rule, s);
  for (const auto& [i, v] : items) out.set(i, v);
  return out;
}

}  // namespace

TEST_CASE("CoeffSeq support rules") {
  CoeffSeq a(SupportRule::squarefree_only);
  a.set(6, 1);
  CHECK_THROWS_AS(a.set(4, 1), SupportViolation);
  CoeffSeq b(SupportRule::sth_powers_of_squarefree, 2);
  b.set(36, 1);
  CHECK_THROWS_AS(b.set(6, 1), SupportViolation);
  CHECK_THROWS_AS(b.set(16, 1), SupportViolation);
  try {
    a.set(12, 1);
  } catch (const SupportViolation& e) {
    CHECK(e.index() == 12);
  }
  a.set(6, 0);
  CHECK(a.empty());
  CHECK_THROWS_AS(a.set(0, 1), std::domain_error);
}

TEST_CASE("exact roots") {
  CHECK(exact_root(1, 3) == PosInt{1});
  CHECK(exact_root(64, 3) == PosInt{4});
  CHECK(exact_root(63, 3) == std::nullopt);
  CHECK(exact_root(18446744065119617025ULL, 2) == PosInt{4294967295ULL});
}

TEST_CASE("f_from_a examples") {
  const CoeffSeq delta = seq({{1, 1}});
  for (PosInt k = 1; k <= 30; ++k) CHECK(f_from_a(delta, 2, k) == 1);
  for (unsigned s = 1; s <= 3; ++s) {
    const CoeffSeq a = seq({{1, 1}, {checked_pow(2, s), 1}});
    CHECK(f_from_a(a, s, 2) == 1 - ExactRational(mpz_pow(2, s)));
    CHECK(f_from_a(a, s, 1) == 1);
  }
}

TEST_CASE("b_from_a and a_from_b examples") {
  const CoeffSeq delta = seq({{1, 1}});
  CHECK(b_from_a(delta, 2) == delta);
  CHECK(a_from_b(delta, 2) == delta);
  CHECK(b_from_a(CoeffSeq{}, 2).empty());
  CHECK(a_from_b(CoeffSeq{}, 2).empty());
  const CoeffSeq a = seq({{1, 1}, {4, 1}});
  const CoeffSeq b = b_from_a(a, 2);
  CHECK(b.at(1) == 0);
  CHECK(b.at(4) == 1);
  CHECK_THROWS_AS(b_from_a(seq({{2, 1}}), 2), SupportViolation);
}

TEST_CASE("hardy-wright inversion on random sequences") {
  std::mt19937_64 rng(7);
  for (unsigned s = 1; s <= 2; ++s)
    for (int t = 0; t < 60; ++t) {
      const CoeffSeq a = lift_to_sth_powers(random_seq(rng, 50, 10, 100, 100), s);
      REQUIRE(a_from_b(b_from_a(a, s), s) == a);
      REQUIRE(b_from_a(a_from_b(a, s), s) == a);
    }
}

TEST_CASE("mu(k) f(k) equals the b-series at squarefree k") {
  std::mt19937_64 rng(11);
  for (unsigned s = 1; s <= 2; ++s)
    for (int t = 0; t < 40; ++t) {
      const CoeffSeq a = lift_to_sth_powers(random_squarefree_seq(rng, 50, 8, 100, 100), s);
      const CoeffSeq b = b_from_a(a, s);
      for (PosInt k = 1; k <= 100; ++k) {
        if (!is_squarefree(k)) continue;
        REQUIRE(mobius(k) * f_from_a(a, s, k) == mu_f_via_b(b, s, k));
      }
    }
  // a = delta gives c_k(1) = mu(k).
  const CoeffSeq delta = seq({{1, 1}});
  for (PosInt k = 1; k <= 50; ++k)
    if (is_squarefree(k)) CHECK(mu_f_via_b(delta, 2, k) == mobius(k));
}

TEST_CASE("eval_first examples") {
  const ExpansionSpec spec{2, seq({{1, 1}}), Variable::first, kAdjudicatedXi};
  for (PosInt n = 1; n <= 20; ++n) CHECK(eval_first(spec, n) == 1);
  const ExpansionSpec wide{1, seq({{1, 1}, {6, ExactRational(1, 3)}, {10, -2}}), Variable::first, kAdjudicatedXi};
  CHECK(eval_first(wide, 7, 10) == eval_first(wide, 7, 1000));
  CHECK(eval_first(wide, 7, 1) == 1);
  CHECK_THROWS_AS(eval_second(wide, 7), std::invalid_argument);
}

TEST_CASE("eval_second examples") {
  const ExpansionSpec delta{2, seq({{1, 1}}), Variable::second, XiSemantics::indicator};
  for (PosInt n = 1; n <= 40; ++n)
    if (is_squarefree(n)) CHECK(eval_second(delta, n) == mobius(n) * mobius(n));
  const ExpansionSpec zero{2, CoeffSeq{}, Variable::second, XiSemantics::indicator};
  CHECK(eval_second(zero, 12) == 0);
}

TEST_CASE("first/second transforms") {
  const CoeffSeq delta = seq({{1, 1}});
  CHECK(transform_first_to_second(delta) == delta);
  CHECK(transform_first_to_second(seq({{6, ExactRational(1, 5)}})).at(6) == ExactRational(1, 5));
  CHECK(transform_first_to_second(seq({{2, 1}})).at(2) == -1);
  CHECK_THROWS_AS(transform_first_to_second(seq({{4, 1}})), SupportViolation);
  CHECK(transform_second_to_first(delta, 2) == delta);
  CHECK(transform_second_to_first(seq({{2, 1}, {4, 1}}), 2).at(2) == -2);
  const CoeffSeq b = seq({{3, 2}, {30, ExactRational(-1, 7)}});
  const CoeffSeq a = transform_second_to_first(b, 1);
  CHECK(a.at(3) == -2);
  CHECK(a.at(30) == ExactRational(1, 7));
}

TEST_CASE("transforms agree with direct evaluation") {
  std::mt19937_64 rng(3);
  for (unsigned s = 1; s <= 2; ++s)
    for (int t = 0; t < 30; ++t) {
      const CoeffSeq a = random_squarefree_seq(rng, 50, 8, 100, 100);
      const CoeffSeq b = transform_first_to_second(a);
      REQUIRE(transform_second_to_first(b, s) == a);
      const ExpansionSpec first{s, a, Variable::first, kAdjudicatedXi};
      const ExpansionSpec second{s, b, Variable::second, XiSemantics::indicator};
      for (PosInt n = 1; n <= 50; ++n) REQUIRE(eval_first(first, n) == eval_second(second, n));
    }
}

TEST_CASE("xi adjudication picks the indicator") {
  std::mt19937_64 rng(5);
  std::vector<CoeffSeq> samples;
  for (int i = 0; i < 20; ++i) samples.push_back(random_squarefree_seq(rng, 50, 8, 100, 100));
  for (unsigned s = 1; s <= 2; ++s) {
    const XiAdjudication adj = adjudicate_xi(samples, s, 30);
    CHECK(adj.indicator_passes);
    CHECK_FALSE(adj.weighted_passes);
    CHECK(adj.chosen == XiSemantics::indicator);
    CHECK(adj.indicator_counterexample.empty());
    CHECK_FALSE(adj.weighted_counterexample.empty());
  }
  CHECK(xi_semantics_name(XiSemantics::indicator) == "indicator");
  CHECK(xi_semantics_name(XiSemantics::weighted) == "weighted");
}

TEST_CASE("random generators respect bounds") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const CoeffSeq a = random_squarefree_seq(rng, 50, 8, 100, 100);
    REQUIRE(!a.empty());
    REQUIRE(a.size() <= 8);
    for (const auto& [i, v] : a.entries()) {
      REQUIRE(i <= 50);
      REQUIRE(is_squarefree(i));
      REQUIRE(abs(v.get_num()) <= 100);
      REQUIRE(v.get_den() <= 100);
    }
  }
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const CoeffSeq a = random_seq(rng, 200, 12, 100, 100);
    REQUIRE(coeffs_from_json(coeffs_to_json(a)) == a);
  }
  CoeffSeq big;
  big.set(3, make_rational(mpz_pow(10, 40), mpz_pow(7, 30)));
  CHECK(coeffs_from_json(coeffs_to_json(big)) == big);
  CHECK(coeffs_from_json("[[1, 2, 4]]").at(1) == ExactRational(1, 2));
  CHECK(coeffs_from_json("[]").empty());
}

TEST_CASE("json rejects malformed input") {
  CHECK_THROWS_AS(coeffs_from_json("[[1, 1]]"), std::invalid_argument);
  CHECK_THROWS_AS(coeffs_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(coeffs_from_json("[[0, 1, 1]]"), std::invalid_argument);
  CHECK_THROWS_AS(coeffs_from_json("[[1, 1, 0]]"), std::invalid_argument);
  CHECK_THROWS_AS(coeffs_from_json("[[1, 1, 1], [1, 2, 1]]"), std::invalid_argument);
  CHECK_THROWS_AS(coeffs_from_json("[[1, \"x\", 1]]"), std::invalid_argument);
  CHECK_THROWS_AS(coeffs_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(coeffs_from_json("[[4, 1, 1]]", SupportRule::squarefree_only), SupportViolation);
}
