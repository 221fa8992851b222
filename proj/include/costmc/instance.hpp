#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "costmc/cost_model.hpp"
#include "costmc/errors.hpp"
#include "costmc/linalg.hpp"
#include "costmc/oracle.hpp"
#include "costmc/rng.hpp"
#include "costmc/scalar.hpp"
#include "costmc/sparsity.hpp"

namespace costmc {

struct InstanceMetadata {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::optional<Index> declared_rank;
  std::optional<Index> declared_sparsity;
};

template <class S>
struct Instance {
  DenseMatrix<S> hidden;
  CostModel<S> model;
  InstanceMetadata meta;

  ObservationOracle<S> make_oracle() const { return ObservationOracle<S>(hidden, model); }
};

// Seeded rank-r product A * B^T; regenerates until the rank is exact. Small
// integer factors in rational mode, standard normal factors in float mode.
template <class S>
DenseMatrix<S> random_low_rank(Index m, Index n, Index r, std::uint64_t seed,
                               const Tolerance& tol = {}) {
  if (m < 1 || n < 1) throw DimensionMismatch("matrix dimensions must be positive");
  if (r < 1 || r > std::min(m, n))
    throw InvalidRank("rank must lie in [1, min(m, n)]; got " + std::to_string(r));
  SeededRng rng(seed);
  const auto fill = [&rng](DenseMatrix<S>& factor) {
    for (Index i = 0; i < factor.rows(); ++i)
      for (Index k = 0; k < factor.cols(); ++k) {
        if constexpr (is_exact_scalar_v<S>) {
          factor(i, k) = S(rng.int_in(-3, 3));
        } else {
          factor(i, k) = rng.standard_normal();
        }
      }
  };
  for (int attempt = 0; attempt < 256; ++attempt) {
    DenseMatrix<S> left(m, r);
    DenseMatrix<S> right(n, r);
    fill(left);
    fill(right);
    DenseMatrix<S> product = left * right.transpose();
    if (rank(product, tol) == r) return product;
  }
  throw Error("random low-rank generation failed to reach the requested rank");
}

namespace detail {

template <class S>
DenseMatrix<S> matrix_from(const int* data, Index m, Index n) {
  DenseMatrix<S> out(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = S(data[i * n + j]);
  return out;
}

// Shared 4x4 cost matrix of the worked greedy examples.
inline constexpr int kWorkedExampleCosts[16] = {
    1, 1, 4, 1,  //
    1, 5, 3, 4,  //
    4, 3, 4, 4,  //
    1, 4, 4, 8,
};

inline constexpr int kGreedySuboptimalMatrix[16] = {
    1, 1, 2, 3,  //
    1, 2, 3, 4,  //
    1, 3, 4, 5,  //
    1, 4, 5, 6,
};

inline constexpr int kGreedyOptimalMatrix[16] = {
    1, 1, 2, 2,  //
    1, 2, 2, 3,  //
    1, 3, 2, 4,  //
    1, 4, 2, 5,
};

}  // namespace detail

// 6x6 family on which the greedy plan approaches twice the optimal cost as
// epsilon shrinks. The cost matrix is fully determined; the hidden matrix is
// one fixed rank-2 completion whose column pairs {1,2} and {5,6} (1-based)
// are both bases, so the greedy and the optimal plans are both feasible.
template <class S>
Instance<S> tightness_fixture(const S& epsilon) {
  if (!(epsilon > S(0)) || !(epsilon < S(10)))
    throw NonpositiveCost("tightness epsilon must lie in (0, 10) to keep all costs positive");

  const Index m = 6;
  const S small = epsilon / S(100);
  const S high = S(10);
  const S high_discounted = S(10) - epsilon;

  DenseMatrix<S> costs(m, m);
  for (Index j = 0; j < 6; ++j) {
    costs(0, j) = costs(1, j) = j < 4 ? small : high_discounted;
    costs(2, j) = costs(3, j) = j < 2 ? high : small;
    costs(4, j) = costs(5, j) = j < 2 ? small : (j < 4 ? high : high_discounted);
  }

  DenseVector<S> ones(m), ramp(m);
  for (Index i = 0; i < m; ++i) {
    ones(i) = S(1);
    ramp(i) = S(static_cast<long>(i + 1));
  }
  DenseMatrix<S> hidden(m, 6);
  hidden.col(0) = ones;
  hidden.col(1) = ramp;
  hidden.col(2) = ones * S(2);
  hidden.col(3) = ramp * S(2);
  hidden.col(4) = ones + ramp;
  hidden.col(5) = ones + ramp * S(2);

  Instance<S> inst{std::move(hidden), CostModel<S>::per_entry(std::move(costs)), {}};
  inst.meta.name = "tightness(" + format_scalar(epsilon) + ")";
  inst.meta.declared_rank = 2;
  inst.meta.declared_sparsity = 1;
  return inst;
}

// Built-in worked examples; "tightness" takes its epsilon as
// "tightness(1/100)" or via the explicit overload above.
template <class S>
Instance<S> paper_fixture(std::string_view name) {
  const auto worked_example = [](const int* matrix, const char* fixture_name) {
    Instance<S> inst{detail::matrix_from<S>(matrix, 4, 4),
                     CostModel<S>::per_entry(detail::matrix_from<S>(detail::kWorkedExampleCosts, 4, 4)),
                     {}};
    inst.meta.name = fixture_name;
    inst.meta.declared_rank = 2;
    inst.meta.declared_sparsity = 1;
    return inst;
  };

  if (name == "greedy-suboptimal")
    return worked_example(detail::kGreedySuboptimalMatrix, "greedy-suboptimal");
  if (name == "greedy-optimal")
    return worked_example(detail::kGreedyOptimalMatrix, "greedy-optimal");
  if (name == "tightness") return tightness_fixture<S>(S(1) / S(100));
  if (name.starts_with("tightness(") && name.ends_with(")")) {
    const auto arg = name.substr(10, name.size() - 11);
    if (const auto eps = try_parse_scalar<S>(arg)) return tightness_fixture<S>(*eps);
    throw UnknownFixture("cannot parse tightness epsilon '" + std::string(arg) + "'");
  }
  throw UnknownFixture("unknown fixture '" + std::string(name) + "'");
}

inline bool is_builtin_fixture_name(std::string_view name) {
  return name == "greedy-suboptimal" || name == "greedy-optimal" || name == "tightness" ||
         (name.starts_with("tightness(") && name.ends_with(")"));
}

// --- instance text format ----------------------------------------------------
//
//   # name: greedy-suboptimal        (metadata comments, all optional)
//   # rank: 2
//   matrix M N
//   <M rows of N scalars>
//
//   cost uniform C | cost percolumn <row> | cost perentry <M rows>
//
// Scalars are integers, decimals, or p/q fractions; `#` starts a comment.
// Rational-mode round trips are bit exact.

namespace detail {

struct Line {
  std::vector<std::string> tokens;
  long number = 0;
};

inline std::optional<std::pair<std::string, std::string>> metadata_comment(const std::string& raw) {
  auto pos = raw.find('#');
  if (pos == std::string::npos) return std::nullopt;
  std::string body = raw.substr(pos + 1);
  auto colon = body.find(':');
  if (colon == std::string::npos) return std::nullopt;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) return std::string();
    return s.substr(first, last - first + 1);
  };
  return std::make_pair(trim(body.substr(0, colon)), trim(body.substr(colon + 1)));
}

inline std::vector<Line> significant_lines(std::istream& in, InstanceMetadata& meta) {
  std::vector<Line> lines;
  std::string raw;
  long number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto kv = metadata_comment(raw)) {
      const auto& [key, value] = *kv;
      if (key == "name") meta.name = value;
      if (key == "seed") {
        try {
          meta.seed = std::stoull(value);
        } catch (...) {
          throw ParseError("bad seed metadata '" + value + "'", number);
        }
      }
      if (key == "rank" || key == "sparsity") {
        long parsed = 0;
        try {
          parsed = std::stol(value);
        } catch (...) {
          throw ParseError("bad " + key + " metadata '" + value + "'", number);
        }
        (key == "rank" ? meta.declared_rank : meta.declared_sparsity) = parsed;
      }
    }
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream stream(raw);
    Line line;
    line.number = number;
    std::string token;
    while (stream >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

template <class S>
S parse_scalar_token(const std::string& token, long line, long column) {
  if (auto value = try_parse_scalar<S>(token)) return *value;
  throw ParseError("cannot parse scalar '" + token + "'", line, column);
}

template <class S>
DenseVector<S> parse_row(const Line& line, std::size_t offset, Index expected,
                         bool dimension_checked) {
  const Index given = static_cast<Index>(line.tokens.size() - offset);
  if (given != expected) {
    const std::string msg = "expected " + std::to_string(expected) + " values, got " +
                            std::to_string(given);
    if (dimension_checked) throw DimensionMismatch("line " + std::to_string(line.number) + ": " + msg);
    throw ParseError(msg, line.number);
  }
  DenseVector<S> row(expected);
  for (Index j = 0; j < expected; ++j)
    row(j) = parse_scalar_token<S>(line.tokens[offset + static_cast<std::size_t>(j)], line.number,
                                   static_cast<long>(offset) + j + 1);
  return row;
}

}  // namespace detail

template <class S>
Instance<S> parse_instance(std::istream& in, const Tolerance& tol = {}) {
  InstanceMetadata meta;
  const std::vector<detail::Line> lines = detail::significant_lines(in, meta);
  std::size_t at = 0;
  const auto need_line = [&](const char* what) -> const detail::Line& {
    if (at >= lines.size()) throw ParseError(std::string("unexpected end of file; expected ") + what,
                                             lines.empty() ? 1 : lines.back().number);
    return lines[at++];
  };

  const detail::Line& header = need_line("matrix header");
  if (header.tokens.size() != 3 || header.tokens[0] != "matrix")
    throw ParseError("expected 'matrix M N'", header.number);
  Index m = 0, n = 0;
  try {
    m = std::stol(header.tokens[1]);
    n = std::stol(header.tokens[2]);
  } catch (...) {
    throw ParseError("bad matrix dimensions", header.number);
  }
  if (m < 1 || n < 1) throw ParseError("matrix dimensions must be positive", header.number);

  DenseMatrix<S> hidden(m, n);
  for (Index i = 0; i < m; ++i)
    hidden.row(i) = detail::parse_row<S>(need_line("matrix row"), 0, n, false).transpose();

  const detail::Line& cost_header = need_line("cost header");
  if (cost_header.tokens.empty() || cost_header.tokens[0] != "cost")
    throw ParseError("expected 'cost uniform|percolumn|perentry'", cost_header.number);
  if (cost_header.tokens.size() < 2)
    throw ParseError("missing cost model kind", cost_header.number);
  const std::string& kind = cost_header.tokens[1];

  const auto make_model = [&]() -> CostModel<S> {
    try {
      if (kind == "uniform") {
        if (cost_header.tokens.size() != 3)
          throw ParseError("expected 'cost uniform C'", cost_header.number);
        return CostModel<S>::uniform(
            detail::parse_scalar_token<S>(cost_header.tokens[2], cost_header.number, 3));
      }
      if (kind == "percolumn") {
        if (cost_header.tokens.size() > 2)
          return CostModel<S>::per_column(detail::parse_row<S>(cost_header, 2, n, true));
        return CostModel<S>::per_column(detail::parse_row<S>(need_line("column cost row"), 0, n, true));
      }
      if (kind == "perentry") {
        DenseMatrix<S> costs(m, n);
        for (Index i = 0; i < m; ++i) {
          if (at >= lines.size())
            throw DimensionMismatch("per-entry cost block has " + std::to_string(i) +
                                    " rows; matrix has " + std::to_string(m));
          costs.row(i) = detail::parse_row<S>(lines[at++], 0, n, true).transpose();
        }
        return CostModel<S>::per_entry(std::move(costs));
      }
      throw ParseError("unknown cost model '" + kind + "'", cost_header.number);
    } catch (const NonpositiveCost&) {
      throw ParseError("costs must be positive", cost_header.number);
    }
  };

  Instance<S> inst{std::move(hidden), make_model(), std::move(meta)};
  if (at < lines.size())
    throw ParseError("unexpected trailing content", lines[at].number);

  if (inst.meta.declared_rank && *inst.meta.declared_rank != rank(inst.hidden, tol))
    throw ParseError("declared rank " + std::to_string(*inst.meta.declared_rank) +
                     " does not match the matrix");
  if (inst.meta.declared_sparsity && inst.hidden.rows() <= kSparsityDimensionCap &&
      *inst.meta.declared_sparsity != matrix_sparsity(inst.hidden, tol).sparsity)
    throw ParseError("declared sparsity " + std::to_string(*inst.meta.declared_sparsity) +
                     " does not match the matrix");
  return inst;
}

template <class S>
Instance<S> load_instance(const std::string& path, const Tolerance& tol = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  auto inst = parse_instance<S>(in, tol);
  if (inst.meta.name.empty()) inst.meta.name = path;
  return inst;
}

template <class S>
void save_instance(const Instance<S>& inst, std::ostream& out) {
  if (!inst.meta.name.empty()) out << "# name: " << inst.meta.name << "\n";
  if (inst.meta.seed) out << "# seed: " << *inst.meta.seed << "\n";
  if (inst.meta.declared_rank) out << "# rank: " << *inst.meta.declared_rank << "\n";
  if (inst.meta.declared_sparsity) out << "# sparsity: " << *inst.meta.declared_sparsity << "\n";
  const Index m = inst.hidden.rows();
  const Index n = inst.hidden.cols();
  out << "matrix " << m << " " << n << "\n";
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) out << (j ? " " : "") << format_scalar(inst.hidden(i, j));
    out << "\n";
  }
  out << "\n";
  switch (inst.model.kind()) {
    case CostModel<S>::Kind::Uniform:
      out << "cost uniform " << format_scalar(inst.model.uniform_cost()) << "\n";
      break;
    case CostModel<S>::Kind::PerColumn: {
      out << "cost percolumn\n";
      const auto& costs = inst.model.column_costs();
      for (Index j = 0; j < n; ++j) out << (j ? " " : "") << format_scalar(costs(j));
      out << "\n";
      break;
    }
    case CostModel<S>::Kind::PerEntry: {
      out << "cost perentry\n";
      const auto& costs = inst.model.entry_costs();
      for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < n; ++j) out << (j ? " " : "") << format_scalar(costs(i, j));
        out << "\n";
      }
      break;
    }
  }
}

template <class S>
void save_instance(const Instance<S>& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save_instance(inst, out);
}

}  // namespace costmc
