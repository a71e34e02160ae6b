#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dpgame/matrix_game.h"
#include "oracle/matrix_oracle.h"
#include "oracle/published_table.h"
#include "test_support.h"

using namespace dpgame;
using testing_support::DefaultMatrix;

namespace {

oracle::Matrix ToOracle(const PayoffMatrix& p) {
  oracle::Matrix m(p.rows(), std::vector<double>(p.cols()));
  for (int r = 0; r < p.rows(); ++r) {
    for (int c = 0; c < p.cols(); ++c) m[r][c] = p(r, c);
  }
  return m;
}

const PayoffMatrix& DefaultPayoff() {
  static const PayoffMatrix p = MakePayoffMatrix(DefaultMatrix());
  return p;
}

}  // namespace

TEST_CASE("payoff matrix from the seeded matchups") {
  const PayoffMatrix& p = DefaultPayoff();
  REQUIRE(p.rows() == 13);
  REQUIRE(p.cols() == 13);
  CHECK(p(1, 6) == 1.0);   // Phone vs Trust
  CHECK(p(0, 4) == 0.0);   // Email vs No trust
  CHECK(p(0, 12) == 0.5);  // Email vs Backup, unjudged

  // Attacker wins counted straight from the transcription.
  int attacker_rows = 0;
  for (const auto& row : oracle::kPublishedTable) attacker_rows += row.a_points;
  int ones = 0, zeros = 0, halves = 0;
  for (double v : p.values()) {
    ones += v == 1.0;
    zeros += v == 0.0;
    halves += v == 0.5;
  }
  CHECK(ones == attacker_rows);
  CHECK(ones == 9);
  CHECK(zeros == 17);
  CHECK(halves == 169 - 26);
}

TEST_CASE("mixed strategies") {
  CHECK_THROWS_AS(MixedStrategy({0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(MixedStrategy({1.2, -0.2}), ValidationError);
  CHECK_THROWS_AS(MixedStrategy({}), ValidationError);
  CHECK(MixedStrategy::Uniform(4)[2] == 0.25);
  CHECK(MixedStrategy::Pure(3, 1) == MixedStrategy({0.0, 1.0, 0.0}));
}

TEST_CASE("matching pennies") {
  const PayoffMatrix mp{{1, 0}, {0, 1}};
  const auto r = SolveMatrixGame(mp, 10000, 0.0);
  CHECK(std::abs(r.value - 0.5) <= 0.02);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(r.attacker_strategy[i] - 0.5) <= 0.02);
    CHECK(std::abs(r.defender_strategy[i] - 0.5) <= 0.02);
  }
}

TEST_CASE("exploitability") {
  const PayoffMatrix mp{{1, 0}, {0, 1}};
  const auto u = MixedStrategy::Uniform(2);
  CHECK(Exploitability(mp, u, u) == doctest::Approx(0.0));
  // Best replies to (1,0) and to uniform: max(Pd) = 0.5, min(a'P) = 0.
  CHECK(Exploitability(mp, MixedStrategy::Pure(2, 0), u) == doctest::Approx(0.5));
  CHECK_THROWS_AS(Exploitability(mp, MixedStrategy::Uniform(3), u), ValidationError);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    PayoffMatrix p(3, 4);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) p(r, c) = unit(rng);
    }
    std::vector<double> a{unit(rng), unit(rng), unit(rng)};
    std::vector<double> d{unit(rng), unit(rng), unit(rng), unit(rng)};
    double sa = 0, sd = 0;
    for (double v : a) sa += v;
    for (double v : d) sd += v;
    for (double& v : a) v /= sa;
    for (double& v : d) v /= sd;
    CHECK(Exploitability(p, MixedStrategy(a), MixedStrategy(d)) >= 0.0);
  }
}

TEST_CASE("pure saddle in the Phone/Chat sub-game") {
  const PayoffMatrix& full = DefaultPayoff();
  // Rows Phone, Chat; columns Trust, Network monitoring.
  const PayoffMatrix sub{{full(1, 6), full(1, 1)}, {full(2, 6), full(2, 1)}};
  CHECK(sub == PayoffMatrix{{1, 0}, {1, 0.5}});

  const auto exact = oracle::SupportEnumeration(ToOracle(sub));
  REQUIRE(exact.has_value());
  CHECK(exact->value == doctest::Approx(0.5));

  const auto r = SolveMatrixGame(sub, 10000, 0.0);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(r.attacker_strategy[1] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(r.defender_strategy[1] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("fictitious play against the support oracle on random 3x3 games") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    PayoffMatrix p(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) p(r, c) = unit(rng);
    }
    const auto exact = oracle::SupportEnumeration(ToOracle(p));
    REQUIRE(exact.has_value());
    CHECK(exact->value == doctest::Approx(oracle::LinearProgramValue(ToOracle(p))).epsilon(1e-9));
    const auto r = SolveMatrixGame(p, 100000, 0.0);
    CHECK(std::abs(r.value - exact->value) <= 1e-2);
    double lo = 1.0, hi = 0.0;
    for (double v : p.values()) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(r.value >= lo);
    CHECK(r.value <= hi);
  }
}

TEST_CASE("default game value") {
  const auto r = SolveMatrixGame(DefaultPayoff(), 100000, 0.0);
  const double lp = oracle::LinearProgramValue(ToOracle(DefaultPayoff()));
  CHECK(lp == doctest::Approx(3.0 / 7.0).epsilon(1e-9));
  CHECK(r.exploitability <= 0.02);
  CHECK(std::abs(r.value - lp) <= 1e-3);
  CHECK(r.iterations == 100000);
  CHECK(Exploitability(DefaultPayoff(), r.attacker_strategy, r.defender_strategy) ==
        r.exploitability);
  // Pinned from this implementation.
  CHECK(r.value == doctest::Approx(0.42856420675).epsilon(1e-9));

  // With a tolerance the solver may stop early, but never above it.
  const auto early = SolveMatrixGame(DefaultPayoff(), 100000, 0.02);
  CHECK(early.exploitability <= 0.02);
  CHECK(early.iterations <= 100000);
}

TEST_CASE("averaged strategies stay on the simplex at every length") {
  const PayoffMatrix& p = DefaultPayoff();
  for (int n : {1, 2, 3, 10, 137, 1000}) {
    const auto r = SolveMatrixGame(p, n, 0.0);
    for (const auto* s : {&r.attacker_strategy, &r.defender_strategy}) {
      double sum = 0.0;
      for (double v : s->probabilities()) {
        CHECK(v >= 0.0);
        sum += v;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("solver input checks") {
  const PayoffMatrix mp{{1, 0}, {0, 1}};
  CHECK_THROWS_AS(SolveMatrixGame(mp, 0, 0.0), ValidationError);
  PayoffMatrix bad{{1, 0}, {0, 1}};
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(SolveMatrixGame(bad, 10, 0.0), ValidationError);
}

TEST_CASE("hypergame") {
  const PayoffMatrix& t = DefaultPayoff();
  const PayoffMatrix ignorant(13, 13, 0.5);

  SUBCASE("both sides see the true game") {
    const auto h = HypergameEval(t, t, t);
    const auto solved = SolveMatrixGame(t, 100000, 1e-4);
    CHECK(std::abs(h.realized_value - solved.value) <= 2e-4);
    CHECK(h.attacker.regret <= 0.005);
    CHECK(h.defender.regret <= 0.005);
  }
  SUBCASE("an ignorant attacker") {
    const auto h = HypergameEval(t, ignorant, t);
    // Pinned from this implementation. Ignorance puts the attacker on A1,
    // which lies in the equilibrium support, so the informed defender is
    // the one leaving value on the table.
    CHECK(h.attacker.regret == doctest::Approx(0.001365).epsilon(1e-3));
    CHECK(h.defender.regret == doctest::Approx(0.428305).epsilon(1e-3));
    CHECK(h.realized_value == doctest::Approx(0.428305).epsilon(1e-3));
    CHECK(h.attacker_strategy == MixedStrategy::Pure(13, 0));
  }
  SUBCASE("exchanging the roles mirrors the report") {
    const auto h = HypergameEval(t, ignorant, t);
    const auto m = HypergameEval(t.Mirrored(), t.Mirrored(), ignorant.Mirrored());
    CHECK(m.attacker.regret == doctest::Approx(h.defender.regret).epsilon(1e-12));
    CHECK(m.defender.regret == doctest::Approx(h.attacker.regret).epsilon(1e-12));
    CHECK(m.realized_value == doctest::Approx(1.0 - h.realized_value).epsilon(1e-12));
    for (int i = 0; i < 13; ++i) {
      CHECK(m.attacker_strategy[i] == doctest::Approx(h.defender_strategy[i]));
      CHECK(m.defender_strategy[i] == doctest::Approx(h.attacker_strategy[i]));
    }
  }
  CHECK(t.Mirrored().Mirrored() == t);
}
