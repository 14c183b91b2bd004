// crsum: command-line front end for the Cohen-Ramanujan sum library.
//
//   crsum eval   --k K --n N --s S [--method mobius|multiplicative|hoelder|hoelder-literal|direct]
//   crsum verify --identity ID [--kmax K] [--nmax N] [--s 1,2] [--jobs J] [--out FILE]
//   crsum expand --in FILE --direction first-to-second|second-to-first|roundtrip [--s S] [--nmax N]
//   crsum klee   --variant cr|cr-prime|cr-prime-literal|coeff-identity [--n N] [--s S] [--K K] ...
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 oracle tolerance exceeded, 4 coefficient support violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crsum/cr_sum.hpp"
#include "crsum/expansion.hpp"
#include "crsum/klee.hpp"
#include "crsum/oracles.hpp"
#include "crsum/verify.hpp"
#include "json.hpp"

namespace {

using namespace crsum;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitSupport = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

long default_precision() {
  const char* env = std::getenv("CRSUM_PRECISION");
  if (env == nullptr || *env == '\0') return 128;
  char* end = nullptr;
  const long bits = std::strtol(env, &end, 10);
  if (*end != '\0' || bits < kMinPrecisionBits)
    throw UsageError("CRSUM_PRECISION must be an integer >= " + std::to_string(kMinPrecisionBits));
  return bits;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  PosInt k = 1, n = 1;
  unsigned s = 1;
  std::string method = "mobius";
  long precision = 0;
  double tolerance = 1e-6;
};

int run_eval(const EvalArgs& a) {
  const CRQuery q{a.k, a.n, a.s};
  if (a.method == "mobius") {
    std::cout << cr_mobius(q) << "\n";
  } else if (a.method == "multiplicative") {
    std::cout << cr_multiplicative(q) << "\n";
  } else if (a.method == "hoelder") {
    std::cout << cr_hoelder(q, false) << "\n";
  } else if (a.method == "hoelder-literal") {
    const ExactRational lit = hoelder_literal_exact(q);
    const mpz_class ref = cr_mobius(q);
    std::cout << to_string(lit) << "\n";
    if (lit.get_den() != 1)
      std::cerr << "warning: literal totient quotient is not an integer here; the Mobius form gives " << ref << "\n";
    else if (lit != ref)
      std::cerr << "warning: literal totient quotient disagrees with the Mobius form (" << ref << ")\n";
  } else {  // direct
    oracles::OracleConfig cfg;
    cfg.precision_bits = a.precision;
    cfg.rounding_tolerance = a.tolerance;
    const auto r = oracles::cr_direct(a.k, a.n, a.s, cfg);
    std::ostringstream res;
    res.imbue(std::locale::classic());
    res.precision(3);
    res << std::scientific << r.residual;
    std::cout << r.value << " residual=" << res.str() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string identity;
  PosInt k_max = 0, n_max = 0;
  std::vector<unsigned> s_set;
  bool squarefree_k = false, squarefree_n = false, coprime = false;
  int jobs = 0;
  std::string out;
  bool timing = false;
};

int run_verify(const VerifyArgs& a) {
  const IdentityId id = *parse_identity(a.identity);
  const IdentityEntry& entry = registry_entry(id);
  GridSpec grid = entry.default_grid;
  if (a.k_max > 0) grid.k_max = a.k_max;
  if (a.n_max > 0) grid.n_max = a.n_max;
  if (!a.s_set.empty()) grid.s_set = a.s_set;
  grid.filters = {a.squarefree_k, a.squarefree_n, a.coprime};
  grid.validate();
  const VerificationReport report = sweep(id, grid, a.jobs);
  write_output(a.out, report_to_json(report, a.timing));
  std::cerr << entry.name << ": " << report.cases_checked << " checked, " << report.skipped << " skipped, "
            << report.failures.size() << " failures\n";
  if (entry.expects_failures) return report.failures.empty() ? kExitFailure : 0;
  return report.passed() ? 0 : kExitFailure;
}

// ---------------------------------------------------------------- expand

struct ExpandArgs {
  std::string in;
  std::string direction = "roundtrip";
  unsigned s = 1;
  PosInt n_max = 50;
  std::string xi = "indicator";
  std::string out;
  std::string table;
  bool adjudicate = false;
  std::size_t samples = 200;
  std::uint64_t seed = 20240101;
};

ExactRational abs_q(const ExactRational& v) { return v < 0 ? ExactRational(-v) : v; }

int run_adjudicate(const ExpandArgs& a) {
  std::mt19937_64 rng(a.seed);
  std::vector<CoeffSeq> samples;
  for (std::size_t i = 0; i < a.samples; ++i) samples.push_back(random_squarefree_seq(rng, 50, 8, 100, 100));
  const XiAdjudication adj = adjudicate_xi(samples, a.s, a.n_max);
  nlohmann::ordered_json j;
  j["s"] = a.s;
  j["n_max"] = a.n_max;
  j["samples"] = adj.samples;
  j["seed"] = a.seed;
  j["indicator_passes"] = adj.indicator_passes;
  j["weighted_passes"] = adj.weighted_passes;
  j["chosen"] = adj.chosen ? nlohmann::ordered_json(std::string(xi_semantics_name(*adj.chosen)))
                           : nlohmann::ordered_json(nullptr);
  j["indicator_counterexample"] = adj.indicator_counterexample;
  j["weighted_counterexample"] = adj.weighted_counterexample;
  write_output(a.out, j.dump(2) + "\n");
  return adj.chosen ? 0 : kExitFailure;
}

int run_expand(const ExpandArgs& a) {
  if (a.adjudicate) return run_adjudicate(a);
  if (a.in.empty()) throw UsageError("expand: --in is required");
  const XiSemantics xi = a.xi == "weighted" ? XiSemantics::weighted : XiSemantics::indicator;
  CoeffSeq input;
  try {
    input = coeffs_from_json(read_file(a.in));
  } catch (const SupportViolation&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  CoeffSeq first_coeffs, second_coeffs, written;
  ExactRational max_gap = 0;
  if (a.direction == "first-to-second") {
    first_coeffs = input;
    second_coeffs = transform_first_to_second(input);
    written = second_coeffs;
  } else if (a.direction == "second-to-first") {
    second_coeffs = input;
    first_coeffs = transform_second_to_first(input, a.s);
    written = first_coeffs;
  } else {
    first_coeffs = input;
    second_coeffs = transform_first_to_second(input);
    written = transform_second_to_first(second_coeffs, a.s);
    for (const auto& [i, v] : input.entries()) max_gap = std::max(max_gap, abs_q(v - written.at(i)));
    for (const auto& [i, v] : written.entries()) max_gap = std::max(max_gap, abs_q(v - input.at(i)));
  }

  const ExpansionSpec first{a.s, first_coeffs, Variable::first, xi};
  const ExpansionSpec second{a.s, second_coeffs, Variable::second, xi};
  std::string table = "n,first_variable,second_variable,discrepancy\n";
  for (PosInt n = 1; n <= a.n_max; ++n) {
    const ExactRational lhs = eval_first(first, n);
    const ExactRational rhs = eval_second(second, n);
    const ExactRational gap = abs_q(lhs - rhs);
    max_gap = std::max(max_gap, gap);
    table += std::to_string(n) + "," + to_string(lhs) + "," + to_string(rhs) + "," + to_string(gap) + "\n";
  }
  table += "# max_discrepancy=" + to_string(max_gap) + "\n";

  if (!a.out.empty()) write_output(a.out, coeffs_to_json(written));
  if (a.table.empty() && a.out.empty()) {
    std::cout << coeffs_to_json(written);
  }
  write_output(a.table, table);
  return max_gap == 0 ? 0 : kExitFailure;
}

// ---------------------------------------------------------------- klee

struct KleeArgs {
  std::string variant = "cr";
  PosInt n = 1, k = 1;
  unsigned s = 1;
  PosInt K = 100000, D = 100000;
  long precision = 0;
  int jobs = 0;
  std::string out;
};

int run_klee(const KleeArgs& a) {
  if (a.variant == "coeff-identity") {
    write_output(a.out, coefficient_identity_to_csv(coefficient_identity_report(a.k, a.s, a.D, a.precision, a.jobs)));
    return 0;
  }
  SeriesReport r;
  if (a.variant == "cr")
    r = klee_series_eval(a.n, a.s, a.K, a.precision, a.jobs);
  else if (a.variant == "cr-prime")
    r = klee_cr_prime_eval(a.n, a.s, a.K, a.precision, a.jobs);
  else
    r = klee_cr_prime_literal_eval(a.n, a.s, a.K, a.precision, a.jobs);
  write_output(a.out, series_report_to_csv(r));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohen-Ramanujan sums: evaluation, identity sweeps, expansions, Klee series"};
  app.require_subcommand(1, 1);
  app.allow_extras(false);

  long precision_default = 128;
  try {
    precision_default = default_precision();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<std::string> identity_names;
  for (const auto& e : identity_registry()) identity_names.emplace_back(e.name);

  EvalArgs eval;
  eval.precision = precision_default;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate c_k^(s)(n) by one route");
  eval_cmd->add_option("--k", eval.k, "first variable k")->required()->check(CLI::PositiveNumber);
  eval_cmd->add_option("--n", eval.n, "second variable n")->required()->check(CLI::PositiveNumber);
  eval_cmd->add_option("--s", eval.s, "exponent s")->check(CLI::PositiveNumber)->capture_default_str();
  eval_cmd->add_option("--method", eval.method, "evaluation route")
      ->check(CLI::IsMember({"mobius", "multiplicative", "hoelder", "hoelder-literal", "direct"}))
      ->capture_default_str();
  eval_cmd->add_option("--precision", eval.precision, "bits for --method direct (env CRSUM_PRECISION)")
      ->check(CLI::Range(kMinPrecisionBits, 1L << 20))
      ->capture_default_str();
  eval_cmd->add_option("--tolerance", eval.tolerance, "largest accepted rounding residual for --method direct")
      ->check(CLI::Range(1e-300, 0.49))
      ->capture_default_str();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Sweep one identity over a grid and write a JSON report");
  verify_cmd->add_option("--identity", verify.identity, "identity id")->required()->check(CLI::IsMember(identity_names));
  verify_cmd->add_option("--kmax", verify.k_max, "largest k (default: identity's grid)")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--nmax", verify.n_max, "largest n (and m) (default: identity's grid)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--s", verify.s_set, "comma-separated exponents")->delimiter(',')->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--squarefree-k", verify.squarefree_k, "restrict to squarefree k");
  verify_cmd->add_flag("--squarefree-n", verify.squarefree_n, "restrict to squarefree n");
  verify_cmd->add_flag("--coprime", verify.coprime, "restrict to coprime pairs");
  verify_cmd->add_option("--jobs", verify.jobs, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--out", verify.out, "report path (default stdout)");
  verify_cmd->add_flag("--timing", verify.timing, "record wall_time_s (reports then differ between runs)");

  ExpandArgs expand;
  auto* expand_cmd = app.add_subcommand("expand", "Transform CR / CR' coefficient sequences");
  expand_cmd->add_option("--in", expand.in, "CoeffSeq JSON file");
  expand_cmd->add_option("--direction", expand.direction, "transform direction")
      ->check(CLI::IsMember({"first-to-second", "second-to-first", "roundtrip"}))
      ->capture_default_str();
  expand_cmd->add_option("--s", expand.s, "exponent s")->check(CLI::PositiveNumber)->capture_default_str();
  expand_cmd->add_option("--nmax", expand.n_max, "compare series values for n <= nmax")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  expand_cmd->add_option("--xi", expand.xi, "xi semantics in the second-variable series")
      ->check(CLI::IsMember({"indicator", "weighted"}))
      ->capture_default_str();
  expand_cmd->add_option("--out", expand.out, "write the transformed CoeffSeq here");
  expand_cmd->add_option("--table", expand.table, "write the comparison CSV here (default stdout)");
  expand_cmd->add_flag("--adjudicate-xi", expand.adjudicate, "run the xi-semantics adjudication on random inputs");
  expand_cmd->add_option("--samples", expand.samples, "random sequences for --adjudicate-xi")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  expand_cmd->add_option("--seed", expand.seed, "RNG seed for --adjudicate-xi")->capture_default_str();

  KleeArgs klee;
  klee.precision = precision_default;
  auto* klee_cmd = app.add_subcommand("klee", "Klee-function series reports (CSV with a JSON header line)");
  klee_cmd->add_option("--variant", klee.variant, "report variant")
      ->check(CLI::IsMember({"cr", "cr-prime", "cr-prime-literal", "coeff-identity"}))
      ->capture_default_str();
  klee_cmd->add_option("--n", klee.n, "series argument n")->check(CLI::PositiveNumber)->capture_default_str();
  klee_cmd->add_option("--k", klee.k, "coefficient index k (coeff-identity)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  klee_cmd->add_option("--s", klee.s, "exponent s")->check(CLI::PositiveNumber)->capture_default_str();
  klee_cmd->add_option("--K", klee.K, "series truncation")->check(CLI::PositiveNumber)->capture_default_str();
  klee_cmd->add_option("--D", klee.D, "inner sum truncation (coeff-identity)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  klee_cmd->add_option("--precision", klee.precision, "working precision in bits (env CRSUM_PRECISION)")
      ->check(CLI::Range(kMinPrecisionBits, 1L << 20))
      ->capture_default_str();
  klee_cmd->add_option("--jobs", klee.jobs, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  klee_cmd->add_option("--out", klee.out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval_cmd) return run_eval(eval);
    if (*verify_cmd) return run_verify(verify);
    if (*expand_cmd) return run_expand(expand);
    if (*klee_cmd) return run_klee(klee);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const oracles::ToleranceExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const SupportViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSupport;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
