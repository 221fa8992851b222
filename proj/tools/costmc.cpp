// Command-line front end: run recoveries, compute sparsity numbers, certify
// optimality gaps against the brute-force baseline, and reproduce the built-in
// worked examples.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <costmc/algorithms.hpp>
#include <costmc/baselines.hpp>
#include <costmc/instance.hpp>
#include <costmc/report.hpp>
#include <costmc/sparsity.hpp>

namespace {

using namespace costmc;

constexpr int kExitOk = 0;
constexpr int kExitFileError = 1;
constexpr int kExitBadFlags = 2;
constexpr int kExitUnsound = 3;
constexpr int kExitCapExceeded = 4;
constexpr int kExitClaimViolated = 5;

struct Options {
  std::string instance;
  std::string algorithm;
  std::string mode = "rational";
  std::string format = "text";
  std::string d = "auto";
  std::string of = "matrix";
  std::string epsilon;
  std::uint64_t seed = 0;
  Tolerance tol = Tolerance::from_environment();
  bool inject_error = false;
};

template <class S>
Instance<S> resolve_instance(const Options& opt) {
  if (opt.instance == "tightness" && !opt.epsilon.empty()) {
    const auto eps = try_parse_scalar<S>(opt.epsilon);
    if (!eps) throw UnknownFixture("cannot parse epsilon '" + opt.epsilon + "'");
    return tightness_fixture<S>(*eps);
  }
  if (is_builtin_fixture_name(opt.instance)) return paper_fixture<S>(opt.instance);
  return load_instance<S>(opt.instance, opt.tol);
}

template <class S>
std::pair<Index, bool> resolve_d(const Options& opt, const Instance<S>& inst) {
  if (opt.d == "auto") {
    const auto report = matrix_sparsity(inst.hidden, opt.tol);
    return {report.sparsity + 1, true};
  }
  try {
    std::size_t used = 0;
    const long value = std::stol(opt.d, &used);
    if (used != opt.d.size()) throw InvalidD("--d must be an integer or 'auto'");
    if (value < 1) throw InvalidD("--d must be at least 1");
    return {static_cast<Index>(value), false};
  } catch (const InvalidD&) {
    throw;
  } catch (...) {
    throw InvalidD("--d must be an integer or 'auto'");
  }
}

void emit(const Options& opt, const RunReport& report) {
  if (opt.format == "json") {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    std::cout << report.to_text();
  }
}

template <class S>
int run_recover(const Options& opt) {
  const Instance<S> inst = resolve_instance<S>(opt);
  const auto [d, d_auto] = resolve_d(opt, inst);
  auto oracle = inst.make_oracle();

  RecoveryResult<S> result = [&] {
    if (opt.algorithm == "ercs") return ercs(oracle, d, SeededRandomRows{opt.seed}, opt.tol);
    if (opt.algorithm == "ercc")
      return ercs_column_ordered(oracle, d, inst.model.column_costs(),
                                 SeededRandomRows{opt.seed}, opt.tol);
    if (opt.algorithm == "erhc") return erhc(oracle, d, opt.tol);
    throw ModelMismatch("unknown algorithm '" + opt.algorithm + "'");
  }();

  const RunReport report = make_run_report(opt.algorithm, inst, result, d_auto);
  emit(opt, report);
  return report.unsound ? kExitUnsound : kExitOk;
}

template <class S>
int run_sparsity(const Options& opt) {
  const Instance<S> inst = resolve_instance<S>(opt);
  SparsityReport<S> report;
  if (opt.of == "columnspace") {
    const auto pivots = independent_columns(inst.hidden, opt.tol);
    report = subspace_sparsity<S>(cols_of(inst.hidden, IndexSet::of(pivots, inst.hidden.cols())),
                                  opt.tol);
  } else {
    report = matrix_sparsity(inst.hidden, opt.tol);
  }

  std::vector<std::string> witness;
  witness.reserve(static_cast<std::size_t>(report.witness.size()));
  for (Index i = 0; i < report.witness.size(); ++i)
    witness.push_back(format_scalar(report.witness(i)));

  if (opt.format == "json") {
    nlohmann::json j{{"instance", inst.meta.name},
                     {"mode", scalar_traits<S>::mode_name},
                     {"of", opt.of},
                     {"ambient", report.ambient},
                     {"psi", report.nonsparsity},
                     {"psi_bar", report.sparsity},
                     {"witness", witness},
                     {"zero_support", report.zero_support.indices()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "instance: " << inst.meta.name << "\n"
              << "mode: " << scalar_traits<S>::mode_name << "\n"
              << "of: " << opt.of << "\n"
              << "ambient: " << report.ambient << "\n"
              << "psi: " << report.nonsparsity << "\n"
              << "psi_bar: " << report.sparsity << "\n";
    std::cout << "witness: [";
    for (std::size_t k = 0; k < witness.size(); ++k) std::cout << (k ? ", " : "") << witness[k];
    std::cout << "]\n"
              << "zero_support: " << to_string(report.zero_support) << "\n";
  }
  return kExitOk;
}

template <class S>
int run_certify(const Options& opt) {
  const Instance<S> inst = resolve_instance<S>(opt);
  const auto [d, d_auto] = resolve_d(opt, inst);

  auto oracle = inst.make_oracle();
  const RecoveryResult<S> greedy = erhc(oracle, d, opt.tol);
  const TwoStagePlan<S> optimal = brute_force_optimal(inst.hidden, inst.model, d, opt.tol);

  RunReport report = make_run_report("erhc", inst, greedy, d_auto);
  attach_certification(report, greedy.ledger.total_cost, optimal);
  emit(opt, report);

  if (greedy.ledger.total_cost > S(2) * optimal.cost) {
    std::cerr << "2-optimality violated: greedy " << format_scalar(greedy.ledger.total_cost)
              << " > 2 * " << format_scalar(optimal.cost) << "\n";
    return kExitClaimViolated;
  }
  return report.unsound ? kExitUnsound : kExitOk;
}

struct ReproRow {
  std::string check;
  std::string computed;
  std::string expected;
  bool pass = false;
};

int run_repro(const Options& opt) {
  using R = Rational;
  std::vector<ReproRow> rows;
  const auto record = [&](std::string check, const R& computed, const R& expected) {
    rows.push_back({std::move(check), format_scalar(computed), format_scalar(expected),
                    computed == expected});
  };

  Instance<R> suboptimal = paper_fixture<R>("greedy-suboptimal");
  if (opt.inject_error) {
    DenseMatrix<R> costs = suboptimal.model.entry_costs();
    costs(0, 0) += R(1);
    suboptimal.model = CostModel<R>::per_entry(std::move(costs));
  }
  {
    auto oracle = suboptimal.make_oracle();
    const auto greedy = erhc(oracle, 2);
    record("greedy-suboptimal erhc cost", greedy.ledger.total_cost, R(32));
    const auto optimal = brute_force_optimal(suboptimal.hidden, suboptimal.model, 2);
    record("greedy-suboptimal optimal cost", optimal.cost, R(31));
    record("greedy-suboptimal plan {1,3}x{1,3} cost",
           two_stage_cost(suboptimal.model, IndexSet{{0, 2}, 4}, IndexSet{{0, 2}, 4}), R(31));
  }
  {
    const Instance<R> inst = paper_fixture<R>("greedy-optimal");
    auto oracle = inst.make_oracle();
    const auto greedy = erhc(oracle, 2);
    const auto optimal = brute_force_optimal(inst.hidden, inst.model, 2);
    record("greedy-optimal erhc cost equals optimal", greedy.ledger.total_cost, optimal.cost);
  }

  std::vector<std::array<std::string, 4>> sweep;
  R previous_ratio(0);
  bool ratios_increase = true;
  for (const R& eps : {R(1), R(1, 10), R(1, 100)}) {
    const Instance<R> inst = tightness_fixture<R>(eps);
    auto oracle = inst.make_oracle();
    const auto greedy = erhc(oracle, 2);
    const auto optimal = brute_force_optimal(inst.hidden, inst.model, 2);
    const R greedy_expected = R(80) - R(8) * eps + R(3, 25) * eps;
    const R optimal_expected = R(40) + R(4, 25) * eps;
    record("tightness(" + format_scalar(eps) + ") erhc cost", greedy.ledger.total_cost,
           greedy_expected);
    record("tightness(" + format_scalar(eps) + ") optimal cost", optimal.cost, optimal_expected);
    const R ratio = optimality_ratio(greedy.ledger.total_cost, optimal.cost);
    if (!(ratio > previous_ratio)) ratios_increase = false;
    previous_ratio = ratio;
    sweep.push_back({format_scalar(eps), format_scalar(greedy.ledger.total_cost),
                     format_scalar(optimal.cost), format_scalar(to_double(ratio))});
  }
  rows.push_back({"tightness ratio sweep strictly increasing", ratios_increase ? "yes" : "no",
                  "yes", ratios_increase});
  const bool approaches_two = previous_ratio >= R(199, 100) && previous_ratio < R(2);
  rows.push_back({"tightness(1/100) ratio in [1.99, 2)",
                  format_scalar(to_double(previous_ratio)), "[1.99, 2)", approaches_two});

  std::size_t check_width = 0;
  std::size_t value_width = 0;
  for (const auto& row : rows) {
    check_width = std::max(check_width, row.check.size());
    value_width = std::max({value_width, row.computed.size(), row.expected.size()});
  }
  bool all_pass = true;
  for (const auto& row : rows) {
    all_pass = all_pass && row.pass;
    std::cout << std::left << std::setw(static_cast<int>(check_width) + 2) << row.check
              << std::setw(static_cast<int>(value_width) + 2) << row.computed
              << std::setw(static_cast<int>(value_width) + 2) << row.expected
              << (row.pass ? "PASS" : "FAIL") << "\n";
  }
  std::cout << "\nepsilon,greedy_cost,optimal_cost,ratio\n";
  for (const auto& line : sweep)
    std::cout << line[0] << "," << line[1] << "," << line[2] << "," << line[3] << "\n";
  return all_pass ? kExitOk : kExitClaimViolated;
}

template <template <class> class Runner>
struct ModeDispatch;

int dispatch(const Options& opt, const std::function<int()>& rational_run,
             const std::function<int()>& float_run) {
  if (opt.mode == "rational") return rational_run();
  if (opt.mode == "float") return float_run();
  throw ModelMismatch("unknown mode '" + opt.mode + "'");
}

int guarded(const std::function<int()>& run) {
  try {
    return run();
  } catch (const DimensionCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const InvalidD& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const ModelMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const LengthMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const UnknownFixture& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const NonpositiveCost& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFileError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive exact low-rank matrix completion under observation-cost models"};
  app.require_subcommand(1);

  Options opt;

  const auto add_common = [&](CLI::App* sub, bool with_d) {
    sub->add_option("--instance", opt.instance,
                    "instance file, or a built-in fixture: greedy-suboptimal, greedy-optimal, "
                    "tightness, tightness(EPS)")
        ->required();
    sub->add_option("--mode", opt.mode, "scalar mode: rational | float")
        ->check(CLI::IsMember({"rational", "float"}));
    sub->add_option("--format", opt.format, "output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--tol", opt.tol.tau, "float-mode tolerance (default 1e-8 or COSTMC_TOL)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--epsilon", opt.epsilon, "epsilon for the bare 'tightness' fixture name");
    if (with_d) sub->add_option("--d", opt.d, "rows to observe per column, or 'auto'");
  };

  CLI::App* recover = app.add_subcommand("recover", "run a recovery algorithm on an instance");
  add_common(recover, true);
  recover->add_option("--algorithm", opt.algorithm, "ercs | ercc | erhc")
      ->required()
      ->check(CLI::IsMember({"ercs", "ercc", "erhc"}));
  recover->add_option("--seed", opt.seed, "seed for the random row draw (default 0)");

  CLI::App* sparsity = app.add_subcommand("sparsity", "sparsity numbers of an instance matrix");
  add_common(sparsity, false);
  sparsity->add_option("--of", opt.of, "matrix | columnspace")
      ->check(CLI::IsMember({"matrix", "columnspace"}));

  CLI::App* certify =
      app.add_subcommand("certify", "erhc vs. the brute-force optimal two-stage plan");
  add_common(certify, true);

  CLI::App* repro = app.add_subcommand("repro-paper", "recompute the built-in worked examples");
  repro->add_flag("--inject-error", opt.inject_error,
                  "corrupt a fixture to exercise the failure path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadFlags;
  }

  if (recover->parsed())
    return guarded([&] {
      return dispatch(opt, [&] { return run_recover<Rational>(opt); },
                      [&] { return run_recover<double>(opt); });
    });
  if (sparsity->parsed())
    return guarded([&] {
      return dispatch(opt, [&] { return run_sparsity<Rational>(opt); },
                      [&] { return run_sparsity<double>(opt); });
    });
  if (certify->parsed())
    return guarded([&] {
      return dispatch(opt, [&] { return run_certify<Rational>(opt); },
                      [&] { return run_certify<double>(opt); });
    });
  return guarded([&] { return run_repro(opt); });
}
