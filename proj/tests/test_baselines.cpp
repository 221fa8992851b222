#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <costmc/algorithms.hpp>
#include <costmc/baselines.hpp>
#include <costmc/instance.hpp>
#include <costmc/rng.hpp>
#include <costmc/sparsity.hpp>

using namespace costmc;

namespace {

template <class S>
Instance<S> random_per_entry_instance(SeededRng& rng, Index max_dim, Index max_rank) {
  const Index m = 4 + rng.below(max_dim - 3);
  const Index n = 4 + rng.below(max_dim - 3);
  const Index r = 1 + rng.below(std::min<Index>(max_rank, std::min(m, n)));
  DenseMatrix<S> costs(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) costs(i, j) = S(rng.int_in(1, 9));
  return Instance<S>{random_low_rank<S>(m, n, r, rng.next_u64()),
                     CostModel<S>::per_entry(std::move(costs)),
                     {}};
}

}  // namespace

TEST_CASE("two_stage_cost matches the worked example decompositions") {
  const auto inst = paper_fixture<Rational>("greedy-suboptimal");
  CHECK(two_stage_cost(inst.model, IndexSet{{0, 2}, 4}, IndexSet{{0, 2}, 4}) == Rational(31));
  CHECK(two_stage_cost(inst.model, IndexSet{{0, 1}, 4}, IndexSet{{0, 1}, 4}) == Rational(32));
}

TEST_CASE("two_stage_cost under a uniform model counts distinct cells") {
  const auto uniform = CostModel<Rational>::uniform(Rational(1));
  for (Index d = 1; d <= 4; ++d) {
    for (Index r = 1; r <= 3; ++r) {
      const IndexSet rows = IndexSet::of(std::vector<Index>(
          [&] { std::vector<Index> v; for (Index i = 0; i < d; ++i) v.push_back(i); return v; }()), 6);
      const IndexSet cols = IndexSet::of(std::vector<Index>(
          [&] { std::vector<Index> v; for (Index j = 0; j < r; ++j) v.push_back(j + 1); return v; }()), 5);
      CHECK(two_stage_cost(uniform, rows, cols) == Rational(d * 5 + r * 6 - d * r));
    }
  }
}

TEST_CASE("brute force finds the cheaper non-greedy plan of the worked example") {
  const auto inst = paper_fixture<Rational>("greedy-suboptimal");
  const auto plan = brute_force_optimal(inst.hidden, inst.model, 2);
  CHECK(plan.cost == Rational(31));
  CHECK(plan.rows == IndexSet({0, 2}, 4));
  CHECK(plan.cols == IndexSet({0, 2}, 4));
}

TEST_CASE("brute force certifies greedy optimality on the sibling example") {
  const auto inst = paper_fixture<Rational>("greedy-optimal");
  auto oracle = inst.make_oracle();
  const auto greedy = erhc(oracle, 2);
  const auto plan = brute_force_optimal(inst.hidden, inst.model, 2);
  CHECK(plan.cost == greedy.ledger.total_cost);
  CHECK(plan.cost == Rational(32));
}

TEST_CASE("brute force on the tightness family") {
  const auto inst = tightness_fixture<Rational>(Rational(1));
  const auto plan = brute_force_optimal(inst.hidden, inst.model, 2);
  CHECK(plan.cost == Rational(40) + Rational(4, 25));
  CHECK(plan.rows == IndexSet({2, 3}, 6));
  CHECK(plan.cols == IndexSet({0, 1}, 6));
}

TEST_CASE("optimality ratio") {
  CHECK(optimality_ratio(Rational(32), Rational(31)) == Rational(32, 31));
  CHECK(optimality_ratio(Rational(7), Rational(7)) == Rational(1));
  CHECK_THROWS_AS(optimality_ratio(Rational(1), Rational(0)), DivisionByZero);

  const Rational eps(1, 100);
  const Rational ratio = (Rational(80) - Rational(8) * eps + Rational(3, 25) * eps) /
                         (Rational(40) + Rational(4, 25) * eps);
  CHECK(to_double(ratio) == doctest::Approx(1.998).epsilon(1e-3));
}

TEST_CASE("caps and infeasibility") {
  DenseMatrix<Rational> wide = DenseMatrix<Rational>::Ones(4, 15);
  CHECK_THROWS_AS(brute_force_optimal(wide, CostModel<Rational>::uniform(Rational(1)), 2),
                  DimensionCapExceeded);

  // With fewer rows than the rank, no restriction can keep a basis at full
  // rank.
  const auto inst = paper_fixture<Rational>("greedy-suboptimal");
  CHECK_THROWS_AS(brute_force_optimal(inst.hidden, inst.model, 1), NoFeasiblePlan);
  CHECK_THROWS_AS(brute_force_optimal(inst.hidden, inst.model, 0), InvalidD);
}

TEST_CASE("greedy heterogeneous cost stays within twice the optimum") {
  SeededRng rng(501);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = random_per_entry_instance<Rational>(rng, 7, 3);
    const Index d = matrix_sparsity(inst.hidden).sparsity + 1;
    auto oracle = inst.make_oracle();
    const auto greedy = erhc(oracle, d);
    const auto optimal = brute_force_optimal(inst.hidden, inst.model, d);
    CHECK(greedy.ledger.total_cost <= Rational(2) * optimal.cost);
    CHECK(greedy.ledger.total_cost >= optimal.cost);
    // The ledger total of a clean run is exactly the two-stage cost of the
    // plan the scan ended up with.
    CHECK(greedy.ledger.total_cost ==
          two_stage_cost(inst.model, greedy.rows_selected, greedy.independent_columns));
  }
}

TEST_CASE("column-ordered recovery matches the brute force under per-column costs") {
  SeededRng rng(503);
  for (int trial = 0; trial < 30; ++trial) {
    const Index m = 4 + rng.below(4);
    const Index n = 4 + rng.below(4);
    const Index r = 1 + rng.below(std::min<Index>(3, std::min(m, n)));
    DenseVector<Rational> costs(n);
    for (Index j = 0; j < n; ++j) costs(j) = Rational(rng.int_in(1, 9));
    Instance<Rational> inst{random_low_rank<Rational>(m, n, r, rng.next_u64()),
                            CostModel<Rational>::per_column(costs),
                            {}};
    const Index d = matrix_sparsity(inst.hidden).sparsity + 1;
    auto oracle = inst.make_oracle();
    const auto greedy =
        ercs_column_ordered(oracle, d, costs, SeededRandomRows{static_cast<std::uint64_t>(trial)});
    const auto optimal = brute_force_optimal(inst.hidden, inst.model, d);
    CHECK(greedy.ledger.total_cost == optimal.cost);
  }
}

TEST_CASE("enumerating more rows never finds a cheaper plan") {
  SeededRng rng(507);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_per_entry_instance<Rational>(rng, 6, 2);
    const Index m = inst.hidden.rows();
    const Index d = matrix_sparsity(inst.hidden).sparsity + 1;
    const auto baseline = brute_force_optimal(inst.hidden, inst.model, d);
    for (Index wider = d + 1; wider <= m; ++wider)
      CHECK(brute_force_optimal(inst.hidden, inst.model, wider).cost >= baseline.cost);
  }
}

TEST_CASE("uniform cost makes every feasible plan equally expensive") {
  const auto hidden = random_low_rank<Rational>(5, 6, 2, 7);
  const auto model = CostModel<Rational>::uniform(Rational(1));
  const Index d = matrix_sparsity(hidden).sparsity + 1;
  const Rational expected(d * 6 + 2 * 5 - d * 2);
  for_each_combination(5, d, [&](const std::vector<Index>& rset) {
    const IndexSet rows = IndexSet::of(rset, 5);
    for_each_combination(6, 2, [&](const std::vector<Index>& cset) {
      const IndexSet cols = IndexSet::of(cset, 6);
      if (rank(cols_of(hidden, cols)) != 2) return;
      if (rank(submatrix_of(hidden, rows, cols)) != 2) return;
      CHECK(two_stage_cost(model, rows, cols) == expected);
    });
  });
}
