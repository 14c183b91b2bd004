#pragma once

// Grid sweeps of the Cohen-Ramanujan identities.
//
// Each identity is one registry entry: a hypothesis filter plus an evaluator
// returning both sides as exact rationals. sweep_serial() is the reference
// kernel; sweep() partitions the grid across OpenMP threads and must produce
// the same report (failures are always listed in grid order).

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crsum/arith.hpp"
#include "crsum/rational.hpp"

namespace crsum {

enum class IdentityId {
  mult_in_n,
  twisted_sum,
  vanishing,
  core_shift,
  symmetry,
  reciprocity,
  xi_divisor_sum,
  route_agreement,
  hoelder_literal_audit,
};

std::string_view identity_name(IdentityId id);
std::optional<IdentityId> parse_identity(std::string_view name);

struct GridFilters {
  bool squarefree_k = false;
  bool squarefree_n = false;
  // (m, n) coprime for mult-in-n, (k, n) coprime otherwise.
  bool coprime_pairs = false;
};

struct GridSpec {
  PosInt k_max = 1;
  PosInt n_max = 1;
  std::vector<unsigned> s_set{1};
  GridFilters filters;

  void validate() const;
};

// m is only meaningful for mult-in-n (it is 0 elsewhere). Grid order is
// lexicographic in (s, k, m, n).
struct GridPoint {
  PosInt k = 1;
  PosInt n = 1;
  PosInt m = 0;
  unsigned s = 1;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct IdentityEntry {
  IdentityId id;
  std::string_view name;
  std::string_view statement;
  bool uses_m = false;
  // Zero failures are expected on the default grid, except for the audit.
  bool expects_failures = false;
  GridSpec default_grid;
  std::function<bool(const GridPoint&)> hypothesis;
  std::function<std::pair<ExactRational, ExactRational>(const GridPoint&)> sides;
};

const std::vector<IdentityEntry>& identity_registry();
const IdentityEntry& registry_entry(IdentityId id);

class HypothesisViolated : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CheckResult {
  bool holds = false;
  ExactRational lhs;
  ExactRational rhs;
};

CheckResult check_one(IdentityId id, const GridPoint& point);

struct Failure {
  GridPoint point;
  ExactRational lhs;
  ExactRational rhs;
};

struct VerificationReport {
  IdentityId identity = IdentityId::route_agreement;
  GridSpec grid;
  std::uint64_t cases_checked = 0;
  std::uint64_t skipped = 0;
  std::vector<Failure> failures;
  double wall_time_s = 0.0;

  bool passed() const { return failures.empty(); }
};

// The filtered grid in sweep order (user filters applied, hypothesis not).
std::vector<GridPoint> enumerate_grid(IdentityId id, const GridSpec& grid);

VerificationReport sweep_serial(IdentityId id, const GridSpec& grid);
// jobs <= 0 uses the OpenMP default thread count.
VerificationReport sweep(IdentityId id, const GridSpec& grid, int jobs = 0);

// JSON object {identity, grid, cases_checked, skipped, failures, wall_time_s}.
// wall_time_s is null unless include_timing is set, so that reports from
// repeated runs compare byte for byte.
std::string report_to_json(const VerificationReport& report, bool include_timing = false);

}  // namespace crsum
