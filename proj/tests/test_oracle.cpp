#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <costmc/cost_model.hpp>
#include <costmc/instance.hpp>
#include <costmc/oracle.hpp>

using namespace costmc;

TEST_CASE("observe_entry charges each distinct entry once") {
  const auto inst = paper_fixture<Rational>("greedy-suboptimal");
  auto oracle = inst.make_oracle();

  CHECK(oracle.observe_entry(0, 0) == Rational(1));
  CHECK(oracle.ledger().total_cost == Rational(1));
  CHECK(oracle.ledger().entry_count == 1);

  CHECK(oracle.observe_entry(0, 0) == Rational(1));
  CHECK(oracle.ledger().total_cost == Rational(1));
  CHECK(oracle.ledger().entry_count == 1);

  CHECK(oracle.observe_entry(2, 0) == Rational(1));
  CHECK(oracle.ledger().total_cost == Rational(5));
}

TEST_CASE("observe_rows charges the row block") {
  const auto inst = paper_fixture<Rational>("greedy-suboptimal");
  auto oracle = inst.make_oracle();
  const auto block = oracle.observe_rows(IndexSet{{0, 1}, 4});
  CHECK(block.rows() == 2);
  CHECK(block(1, 2) == Rational(3));
  CHECK(oracle.ledger().total_cost == Rational(20));  // row sums 7 and 13
  CHECK(oracle.ledger().entry_count == 8);

  oracle.observe_rows(IndexSet{{0}, 4});
  CHECK(oracle.ledger().total_cost == Rational(20));

  CHECK_THROWS_AS(oracle.observe_rows(IndexSet(4)), EmptySelection);
  CHECK_THROWS_AS(oracle.observe_rows(IndexSet{{0}, 5}), DimensionMismatch);
}

TEST_CASE("observe_column charges only unobserved entries") {
  const auto inst = paper_fixture<Rational>("greedy-suboptimal");
  auto oracle = inst.make_oracle();
  oracle.observe_rows(IndexSet{{0, 1}, 4});

  oracle.observe_column(0);
  CHECK(oracle.ledger().total_cost == Rational(25));  // +4+1 below the observed rows
  oracle.observe_column(0);
  CHECK(oracle.ledger().total_cost == Rational(25));

  oracle.observe_column(1);
  CHECK(oracle.ledger().total_cost == Rational(32));  // +3+4

  CHECK(oracle.ledger().rows_fully_observed() == IndexSet({0, 1}, 4));
  CHECK(oracle.ledger().columns_fully_observed() == IndexSet({0, 1}, 4));
  CHECK_THROWS_AS(oracle.observe_column(4), IndexOutOfRange);
  CHECK_THROWS_AS(oracle.observe_entry(4, 0), IndexOutOfRange);
}

TEST_CASE("submatrix_cost sums the block under each model") {
  const auto inst = paper_fixture<Rational>("greedy-suboptimal");
  CHECK(submatrix_cost(inst.model, IndexSet{{0, 1}, 4}, IndexSet::all(4)) == Rational(20));
  CHECK(submatrix_cost(inst.model, IndexSet(4), IndexSet::all(4)) == Rational(0));

  const auto tight = tightness_fixture<Rational>(Rational(1));
  CHECK(submatrix_cost(tight.model, IndexSet{{2, 3}, 6}, IndexSet::all(6)) ==
        Rational(40) + Rational(8, 100));

  const auto uniform = CostModel<Rational>::uniform(Rational(3));
  CHECK(submatrix_cost(uniform, IndexSet{{0, 2}, 5}, IndexSet{{1}, 7}) == Rational(6));

  DenseVector<Rational> per_col(3);
  per_col << Rational(1), Rational(2), Rational(5);
  const auto columnar = CostModel<Rational>::per_column(per_col);
  CHECK(submatrix_cost(columnar, IndexSet{{0, 1}, 4}, IndexSet{{0, 2}, 3}) == Rational(12));
}

TEST_CASE("cost models reject nonpositive costs and bad shapes") {
  CHECK_THROWS_AS(CostModel<Rational>::uniform(Rational(0)), NonpositiveCost);
  DenseVector<Rational> with_zero(2);
  with_zero << Rational(1), Rational(0);
  CHECK_THROWS_AS(CostModel<Rational>::per_column(with_zero), NonpositiveCost);

  DenseVector<Rational> short_costs(3);
  short_costs << Rational(1), Rational(1), Rational(1);
  const auto inst = paper_fixture<Rational>("greedy-suboptimal");
  CHECK_THROWS_AS(ObservationOracle<Rational>(inst.hidden,
                                              CostModel<Rational>::per_column(short_costs)),
                  LengthMismatch);
}

TEST_CASE("ledger total matches an independent recount of the observed set") {
  const auto inst = paper_fixture<Rational>("greedy-suboptimal");
  auto oracle = inst.make_oracle();
  oracle.observe_rows(IndexSet{{1, 3}, 4});
  oracle.observe_column(2);
  oracle.observe_entry(0, 0);

  Rational recount(0);
  Index entries = 0;
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      if (oracle.is_observed(i, j)) {
        recount += inst.model.entry_cost(i, j);
        ++entries;
      }
  CHECK(recount == oracle.ledger().total_cost);
  CHECK(entries == oracle.ledger().entry_count);
}

TEST_CASE("ledger totals never decrease") {
  const auto inst = tightness_fixture<double>(0.25);
  auto oracle = inst.make_oracle();
  double last = 0.0;
  for (Index j = 0; j < 6; ++j) {
    oracle.observe_column(j);
    CHECK(oracle.ledger().total_cost >= last);
    last = oracle.ledger().total_cost;
  }
  CHECK(oracle.ledger().entry_count == 36);
}
