#pragma once

#include <json.hpp>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "costmc/algorithms.hpp"
#include "costmc/baselines.hpp"
#include "costmc/instance.hpp"
#include "costmc/scalar.hpp"

namespace costmc {

// Float-mode recoveries count as exact up to this max-abs error.
inline constexpr double kFloatRecoveryTolerance = 1e-8;

// Machine-readable summary of one recovery run. Scalar-valued fields are kept
// as exact formatted strings so the text and JSON outputs carry identical
// values in both scalar modes.
struct RunReport {
  std::string algorithm;
  std::string instance;
  std::string mode;
  Index m = 0;
  Index n = 0;
  Index d = 0;
  bool d_auto = false;
  Index learned_rank = 0;
  std::vector<Index> rows_selected;
  std::vector<Index> columns_selected;
  Index entry_count = 0;
  Index paper_count = 0;
  std::string total_cost;
  std::string recovery_max_abs_error;
  bool exact_recovery = false;
  bool unsound = false;
  std::optional<std::string> optimal_cost;
  std::optional<std::vector<Index>> optimal_rows;
  std::optional<std::vector<Index>> optimal_cols;
  std::optional<std::string> ratio;
  std::optional<double> ratio_decimal;

  nlohmann::json to_json() const {
    nlohmann::json j{
        {"algorithm", algorithm},
        {"instance", instance},
        {"mode", mode},
        {"m", m},
        {"n", n},
        {"d", d},
        {"d_auto", d_auto},
        {"learned_rank", learned_rank},
        {"rows_selected", rows_selected},
        {"columns_selected", columns_selected},
        {"entry_count", entry_count},
        {"paper_count", paper_count},
        {"total_cost", total_cost},
        {"recovery_max_abs_error", recovery_max_abs_error},
        {"exact_recovery", exact_recovery},
        {"unsound", unsound},
    };
    if (optimal_cost) j["optimal_cost"] = *optimal_cost;
    if (optimal_rows) j["optimal_rows"] = *optimal_rows;
    if (optimal_cols) j["optimal_cols"] = *optimal_cols;
    if (ratio) j["ratio"] = *ratio;
    if (ratio_decimal) j["ratio_decimal"] = *ratio_decimal;
    return j;
  }

  std::string to_text() const {
    std::ostringstream out;
    const auto list = [](const std::vector<Index>& v) {
      std::string s = "[";
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ", ";
        s += std::to_string(v[k]);
      }
      return s + "]";
    };
    out << "algorithm: " << algorithm << "\n"
        << "instance: " << instance << "\n"
        << "mode: " << mode << "\n"
        << "m: " << m << "\n"
        << "n: " << n << "\n"
        << "d: " << d << "\n"
        << "d_auto: " << (d_auto ? "true" : "false") << "\n"
        << "learned_rank: " << learned_rank << "\n"
        << "rows_selected: " << list(rows_selected) << "\n"
        << "columns_selected: " << list(columns_selected) << "\n"
        << "entry_count: " << entry_count << "\n"
        << "paper_count: " << paper_count << "\n"
        << "total_cost: " << total_cost << "\n"
        << "recovery_max_abs_error: " << recovery_max_abs_error << "\n"
        << "exact_recovery: " << (exact_recovery ? "true" : "false") << "\n"
        << "unsound: " << (unsound ? "true" : "false") << "\n";
    if (optimal_cost) out << "optimal_cost: " << *optimal_cost << "\n";
    if (optimal_rows) out << "optimal_rows: " << list(*optimal_rows) << "\n";
    if (optimal_cols) out << "optimal_cols: " << list(*optimal_cols) << "\n";
    if (ratio) out << "ratio: " << *ratio << "\n";
    if (ratio_decimal) out << "ratio_decimal: " << format_scalar(*ratio_decimal) << "\n";
    return out.str();
  }
};

template <class S>
S recovery_max_abs_error(const DenseMatrix<S>& recovered, const DenseMatrix<S>& hidden) {
  if (recovered.rows() != hidden.rows() || recovered.cols() != hidden.cols())
    throw DimensionMismatch("recovered matrix shape differs from hidden matrix");
  S worst(0);
  for (Index i = 0; i < hidden.rows(); ++i)
    for (Index j = 0; j < hidden.cols(); ++j) {
      using std::abs;
      const S err = abs(recovered(i, j) - hidden(i, j));
      if (err > worst) worst = err;
    }
  return worst;
}

template <class S>
RunReport make_run_report(const std::string& algorithm, const Instance<S>& inst,
                          const RecoveryResult<S>& result, bool d_was_auto) {
  RunReport report;
  report.algorithm = algorithm;
  report.instance = inst.meta.name;
  report.mode = scalar_traits<S>::mode_name;
  report.m = inst.hidden.rows();
  report.n = inst.hidden.cols();
  report.d = result.d;
  report.d_auto = d_was_auto;
  report.learned_rank = result.learned_rank;
  report.rows_selected = result.rows_selected.indices();
  report.columns_selected = result.independent_columns.indices();
  report.entry_count = result.ledger.entry_count;
  report.paper_count = result.paper_count();
  report.total_cost = format_scalar(result.ledger.total_cost);

  const S err = recovery_max_abs_error(result.recovered, inst.hidden);
  report.recovery_max_abs_error = format_scalar(err);
  if constexpr (is_exact_scalar_v<S>) {
    report.exact_recovery = err == S(0);
  } else {
    report.exact_recovery = err <= kFloatRecoveryTolerance;
  }
  report.unsound = result.unsound || !report.exact_recovery;
  return report;
}

template <class S>
void attach_certification(RunReport& report, const S& greedy_cost, const TwoStagePlan<S>& optimal) {
  report.optimal_cost = format_scalar(optimal.cost);
  report.optimal_rows = optimal.rows.indices();
  report.optimal_cols = optimal.cols.indices();
  const S ratio = optimality_ratio(greedy_cost, optimal.cost);
  report.ratio = format_scalar(ratio);
  report.ratio_decimal = to_double(ratio);
}

}  // namespace costmc
