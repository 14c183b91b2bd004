#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "crsum/verify.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace crsum;

TEST_CASE("registry names round-trip") {
  const auto& reg = identity_registry();
  CHECK(reg.size() == 9);
  std::set<std::string_view> names;
  for (const auto& e : reg) {
    names.insert(e.name);
    REQUIRE(parse_identity(e.name) == e.id);
    REQUIRE(identity_name(e.id) == e.name);
    REQUIRE(&registry_entry(e.id) == &e);
  }
  CHECK(names.size() == reg.size());
  CHECK_FALSE(parse_identity("no-such-identity").has_value());
}

TEST_CASE("check_one examples") {
  const CheckResult a = check_one(IdentityId::twisted_sum, {2, 4, 0, 2});
  CHECK(a.holds);
  CHECK(a.lhs == -3);
  CHECK(a.rhs == -3);
  const CheckResult b = check_one(IdentityId::vanishing, {4, 3, 0, 1});
  CHECK(b.holds);
  CHECK(b.lhs == 0);
  CHECK(b.rhs == 0);
  const CheckResult c = check_one(IdentityId::symmetry, {1, 1, 0, 1});
  CHECK(c.holds);
  CHECK(c.lhs == 1);
  const CheckResult d = check_one(IdentityId::hoelder_literal_audit, {2, 4, 0, 2});
  CHECK_FALSE(d.holds);
  CHECK(d.lhs == 3);
  CHECK(d.rhs == -4);
}

TEST_CASE("check_one rejects points outside the hypothesis") {
  CHECK_THROWS_AS(check_one(IdentityId::twisted_sum, {4, 4, 0, 1}), HypothesisViolated);
  CHECK_THROWS_AS(check_one(IdentityId::symmetry, {4, 3, 0, 1}), HypothesisViolated);
}

TEST_CASE("grid validation") {
  GridSpec g;
  g.k_max = 0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g.k_max = 3;
  g.s_set = {};
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g.s_set = {0};
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("grid enumeration order") {
  GridSpec g{2, 2, {1, 2}, {}};
  const auto pts = enumerate_grid(IdentityId::route_agreement, g);
  REQUIRE(pts.size() == 8);
  CHECK(pts[0] == GridPoint{1, 1, 0, 1});
  CHECK(pts[1] == GridPoint{1, 2, 0, 1});
  CHECK(pts[2] == GridPoint{2, 1, 0, 1});
  CHECK(pts[4] == GridPoint{1, 1, 0, 2});
  GridSpec sf{10, 10, {1}, {true, false, true}};
  for (const auto& p : enumerate_grid(IdentityId::route_agreement, sf)) {
    REQUIRE(is_squarefree(p.k));
    REQUIRE(std::gcd(p.k, p.n) == 1);
  }
}

TEST_CASE("trivial route-agreement sweep") {
  const VerificationReport r = sweep(IdentityId::route_agreement, {1, 1, {1}, {}}, 1);
  CHECK(r.cases_checked == 1);
  CHECK(r.failures.empty());
  CHECK(r.passed());
}

TEST_CASE("audit sweep lists (2, 4)") {
  const VerificationReport r = sweep(IdentityId::hoelder_literal_audit, {20, 20, {2}, {}}, 1);
  CHECK_FALSE(r.failures.empty());
  bool listed = false;
  for (const auto& f : r.failures) listed |= f.point.k == 2 && f.point.n == 4;
  CHECK(listed);
}

TEST_CASE("identities hold on reduced grids") {
  for (const auto& e : identity_registry()) {
    if (e.expects_failures) continue;
    GridSpec g = e.default_grid;
    g.k_max = std::min<PosInt>(g.k_max, 30);
    g.n_max = std::min<PosInt>(g.n_max, 30);
    const VerificationReport r = sweep(e.id, g, 0);
    INFO(e.name);
    CHECK(r.failures.empty());
    CHECK(r.cases_checked > 0);
  }
}

TEST_CASE("serial and parallel sweeps match") {
  for (const auto id : {IdentityId::route_agreement, IdentityId::hoelder_literal_audit, IdentityId::mult_in_n}) {
    GridSpec g{25, 25, {1, 2, 3}, {}};
    const VerificationReport a = sweep_serial(id, g);
    for (int jobs : {1, 2, 3, 4}) {
      const VerificationReport b = sweep(id, g, jobs);
      REQUIRE(report_to_json(a) == report_to_json(b));
    }
  }
}

TEST_CASE("report json shape") {
  VerificationReport r = sweep(IdentityId::hoelder_literal_audit, {4, 4, {2}, {}}, 1);
  const auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["identity"] == "hoelder-literal-audit");
  CHECK(j["cases_checked"].get<std::uint64_t>() == r.cases_checked);
  CHECK(j["wall_time_s"].is_null());
  CHECK(j["failures"].size() == r.failures.size());
  const auto timed = nlohmann::json::parse(report_to_json(r, true));
  CHECK(timed["wall_time_s"].is_number());
}
