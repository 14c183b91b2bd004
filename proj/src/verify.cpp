#include "crsum/verify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include <omp.h>

#include "crsum/cr_sum.hpp"
#include "json.hpp"

namespace crsum {

namespace {

ExactRational q(const mpz_class& z) { return ExactRational(z); }

mpz_class c(PosInt k, PosInt n, unsigned s) { return cr_mobius({k, n, s}); }

std::vector<IdentityEntry> build_registry() {
  std::vector<IdentityEntry> r;

  r.push_back({IdentityId::mult_in_n, "mult-in-n",
               "mu(k)c_k(mn) = [mu(k)c_k(m)][mu(k)c_k(n)] for squarefree k, (m,n)=1", true, false,
               GridSpec{60, 60, {1, 2, 3}, {}},
               [](const GridPoint& p) { return is_squarefree(p.k) && std::gcd(p.m, p.n) == 1; },
               [](const GridPoint& p) {
                 const mpz_class lhs = twisted({p.k, checked_mul(p.m, p.n), p.s});
                 const mpz_class rhs = twisted({p.k, p.m, p.s}) * twisted({p.k, p.n, p.s});
                 return std::pair{q(lhs), q(rhs)};
               }});

  r.push_back({IdentityId::twisted_sum, "twisted-sum",
               "mu(k)c_k(n) = sum over d^s | (k^s,n)_s of d^s mu(d) for squarefree k", false, false,
               GridSpec{100, 200, {1, 2, 3}, {}}, [](const GridPoint& p) { return is_squarefree(p.k); },
               [](const GridPoint& p) {
                 return std::pair{q(twisted({p.k, p.n, p.s})), q(twisted_divisor_sum(p.k, p.n, p.s))};
               }});

  r.push_back({IdentityId::vanishing, "vanishing", "c_k(n) = 0 when (k*)^s does not divide n", false, false,
               GridSpec{100, 200, {1, 2}, {}},
               [](const GridPoint& p) { return p.n % checked_pow(star(p.k), p.s) != 0; },
               [](const GridPoint& p) { return std::pair{q(c(p.k, p.n, p.s)), ExactRational(0)}; }});

  r.push_back({IdentityId::core_shift, "core-shift", "c_k(n (k*)^s) = (k*)^s c_{core k}(n)", false, false,
               GridSpec{100, 100, {1, 2}, {}}, [](const GridPoint&) { return true; },
               [](const GridPoint& p) {
                 const PosInt ks = checked_pow(star(p.k), p.s);
                 return std::pair{q(c(p.k, checked_mul(p.n, ks), p.s)), q(mpz_pow(ks, 1) * c(core(p.k), p.n, p.s))};
               }});

  r.push_back({IdentityId::symmetry, "symmetry", "mu(k)c_k(n^s) = mu(n)c_n(k^s) for squarefree k, n", false, false,
               GridSpec{100, 100, {1, 2}, {}},
               [](const GridPoint& p) { return is_squarefree(p.k) && is_squarefree(p.n); },
               [](const GridPoint& p) {
                 return std::pair{q(twisted({p.k, checked_pow(p.n, p.s), p.s})),
                                  q(twisted({p.n, checked_pow(p.k, p.s), p.s}))};
               }});

  r.push_back({IdentityId::reciprocity, "reciprocity",
               "mu(core k)/(k*)^s c_k(n^s (k*)^s) = mu(core n)/(n*)^s c_n(k^s (n*)^s)", false, false,
               GridSpec{100, 100, {1, 2}, {}}, [](const GridPoint&) { return true; },
               [](const GridPoint& p) { return reciprocity_sides(p.k, p.n, p.s); }});

  r.push_back({IdentityId::xi_divisor_sum, "xi-divisor-sum", "xi^(s)_k(n) = sum over d | k of c_d(n)", false, false,
               GridSpec{100, 200, {1, 2, 3}, {}}, [](const GridPoint&) { return true; },
               [](const GridPoint& p) {
                 mpz_class sum = 0;
                 for (PosInt d : divisors(p.k)) sum += c(d, p.n, p.s);
                 return std::pair{q(mpz_pow(xi_s(p.k, p.n, p.s), 1)), q(sum)};
               }});

  r.push_back({IdentityId::route_agreement, "route-agreement",
               "Mobius form = prime-power product = corrected totient quotient", false, false,
               GridSpec{200, 200, {1, 2, 3}, {}}, [](const GridPoint&) { return true; },
               [](const GridPoint& p) {
                 const CRQuery query{p.k, p.n, p.s};
                 const mpz_class base = cr_mobius(query);
                 const mpz_class mult = cr_multiplicative(query);
                 if (mult != base) return std::pair{q(base), q(mult)};
                 return std::pair{q(base), q(cr_hoelder(query, false))};
               }});

  r.push_back({IdentityId::hoelder_literal_audit, "hoelder-literal-audit",
               "Mobius form vs J_s(n) mu(m)/J_s(m) with m = n/(k,n)", false, true, GridSpec{20, 20, {1, 2, 3}, {}},
               [](const GridPoint&) { return true; },
               [](const GridPoint& p) {
                 const CRQuery query{p.k, p.n, p.s};
                 return std::pair{q(cr_mobius(query)), hoelder_literal_exact(query)};
               }});
  return r;
}

enum class Outcome : unsigned char { skipped, passed, failed };

struct PointResult {
  Outcome outcome = Outcome::skipped;
  ExactRational lhs, rhs;
};

PointResult evaluate_point(const IdentityEntry& entry, const GridPoint& p) {
  PointResult r;
  if (!entry.hypothesis(p)) return r;
  auto [lhs, rhs] = entry.sides(p);
  r.outcome = lhs == rhs ? Outcome::passed : Outcome::failed;
  if (r.outcome == Outcome::failed) {
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
  }
  return r;
}

std::vector<unsigned> normalized_s(const std::vector<unsigned>& s_set) {
  std::vector<unsigned> out = s_set;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::string_view identity_name(IdentityId id) { return registry_entry(id).name; }

std::optional<IdentityId> parse_identity(std::string_view name) {
  for (const auto& e : identity_registry())
    if (e.name == name) return e.id;
  return std::nullopt;
}

void GridSpec::validate() const {
  if (k_max < 1 || n_max < 1) throw std::invalid_argument("GridSpec: bounds must be >= 1");
  if (s_set.empty()) throw std::invalid_argument("GridSpec: s_set must be non-empty");
  for (unsigned s : s_set)
    if (s < 1) throw std::invalid_argument("GridSpec: every s must be >= 1");
}

const std::vector<IdentityEntry>& identity_registry() {
  static const std::vector<IdentityEntry> registry = build_registry();
  return registry;
}

const IdentityEntry& registry_entry(IdentityId id) {
  for (const auto& e : identity_registry())
    if (e.id == id) return e;
  throw std::out_of_range("unknown identity");
}

CheckResult check_one(IdentityId id, const GridPoint& point) {
  const IdentityEntry& entry = registry_entry(id);
  if (point.k == 0 || point.n == 0 || point.s == 0 || (entry.uses_m && point.m == 0))
    throw std::domain_error("check_one: point coordinates must be >= 1");
  if (!entry.hypothesis(point))
    throw HypothesisViolated(std::string(entry.name) + ": point violates the identity's hypothesis");
  auto [lhs, rhs] = entry.sides(point);
  return {lhs == rhs, std::move(lhs), std::move(rhs)};
}

std::vector<GridPoint> enumerate_grid(IdentityId id, const GridSpec& grid) {
  grid.validate();
  const IdentityEntry& entry = registry_entry(id);
  const GridFilters& f = grid.filters;
  const PosInt m_max = entry.uses_m ? grid.n_max : 0;
  const PosInt m_min = entry.uses_m ? 1 : 0;
  std::vector<GridPoint> points;
  for (unsigned s : normalized_s(grid.s_set)) {
    for (PosInt k = 1; k <= grid.k_max; ++k) {
      if (f.squarefree_k && !is_squarefree(k)) continue;
      for (PosInt m = m_min; m <= m_max; ++m) {
        for (PosInt n = 1; n <= grid.n_max; ++n) {
          if (f.squarefree_n && !is_squarefree(n)) continue;
          if (f.coprime_pairs && std::gcd(entry.uses_m ? m : k, n) != 1) continue;
          points.push_back({k, n, m, s});
        }
      }
    }
  }
  return points;
}

VerificationReport sweep_serial(IdentityId id, const GridSpec& grid) {
  const auto start = std::chrono::steady_clock::now();
  const IdentityEntry& entry = registry_entry(id);
  VerificationReport report{id, grid, 0, 0, {}, 0.0};
  for (const GridPoint& p : enumerate_grid(id, grid)) {
    PointResult r = evaluate_point(entry, p);
    if (r.outcome == Outcome::skipped) {
      ++report.skipped;
      continue;
    }
    ++report.cases_checked;
    if (r.outcome == Outcome::failed) report.failures.push_back({p, std::move(r.lhs), std::move(r.rhs)});
  }
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

VerificationReport sweep(IdentityId id, const GridSpec& grid, int jobs) {
  const auto start = std::chrono::steady_clock::now();
  const IdentityEntry& entry = registry_entry(id);
  const std::vector<GridPoint> points = enumerate_grid(id, grid);
  const auto count = static_cast<std::int64_t>(points.size());
  std::vector<Outcome> outcomes(points.size());
  std::vector<std::vector<std::pair<std::size_t, PointResult>>> per_thread_failures;
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  per_thread_failures.resize(static_cast<std::size_t>(threads));

#pragma omp parallel for num_threads(threads) schedule(dynamic, 256)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    PointResult r = evaluate_point(entry, points[idx]);
    outcomes[idx] = r.outcome;
    if (r.outcome == Outcome::failed)
      per_thread_failures[static_cast<std::size_t>(omp_get_thread_num())].emplace_back(idx, std::move(r));
  }

  VerificationReport report{id, grid, 0, 0, {}, 0.0};
  for (Outcome o : outcomes) {
    if (o == Outcome::skipped)
      ++report.skipped;
    else
      ++report.cases_checked;
  }
  std::vector<std::pair<std::size_t, PointResult>> merged;
  for (auto& bucket : per_thread_failures)
    for (auto& f : bucket) merged.push_back(std::move(f));
  std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  report.failures.reserve(merged.size());
  for (auto& [idx, r] : merged) report.failures.push_back({points[idx], std::move(r.lhs), std::move(r.rhs)});
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_to_json(const VerificationReport& report, bool include_timing) {
  using nlohmann::ordered_json;
  const IdentityEntry& entry = registry_entry(report.identity);
  ordered_json grid;
  grid["k_max"] = report.grid.k_max;
  grid["n_max"] = report.grid.n_max;
  grid["s_set"] = normalized_s(report.grid.s_set);
  ordered_json filters = ordered_json::array();
  if (report.grid.filters.squarefree_k) filters.push_back("squarefree-k");
  if (report.grid.filters.squarefree_n) filters.push_back("squarefree-n");
  if (report.grid.filters.coprime_pairs) filters.push_back("coprime-pairs");
  grid["filters"] = filters;

  ordered_json failures = ordered_json::array();
  for (const Failure& f : report.failures) {
    ordered_json item;
    item["k"] = f.point.k;
    if (entry.uses_m) item["m"] = f.point.m;
    item["n"] = f.point.n;
    item["s"] = f.point.s;
    item["lhs"] = to_string(f.lhs);
    item["rhs"] = to_string(f.rhs);
    failures.push_back(std::move(item));
  }

  ordered_json out;
  out["identity"] = entry.name;
  out["grid"] = grid;
  out["cases_checked"] = report.cases_checked;
  out["skipped"] = report.skipped;
  out["failures"] = failures;
  out["wall_time_s"] = include_timing ? ordered_json(report.wall_time_s) : ordered_json(nullptr);
  return out.dump(2) + "\n";
}

}  // namespace crsum
