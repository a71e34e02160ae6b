#ifndef DPGAME_MATRIX_GAME_H_
#define DPGAME_MATRIX_GAME_H_

#include <span>
#include <vector>

#include "dpgame/catalog.h"

namespace dpgame {

// Zero-sum payoff to the attacker (row player); the defender (column player)
// minimises it. Rows are attacker tokens, columns defender tokens, when built
// from a matchup matrix.
class PayoffMatrix {
 public:
  PayoffMatrix(int rows, int cols, double fill = 0.0);
  // Row-major nested initialiser, e.g. {{1, 0}, {0, 1}}.
  PayoffMatrix(std::initializer_list<std::initializer_list<double>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int r, int c) const { return values_[r * cols_ + c]; }
  double& operator()(int r, int c) { return values_[r * cols_ + c]; }
  std::span<const double> values() const { return values_; }

  // 1 - transpose: the same game with the roles exchanged.
  PayoffMatrix Mirrored() const;

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<double> values_;
};

inline constexpr double kUnjudgedPayoff = 0.5;

// 13x13: judged attacker wins 1.0, judged defender wins 0.0, unjudged 0.5.
PayoffMatrix MakePayoffMatrix(const MatchupMatrix& matrix);

// Probability vector; construction validates non-negativity and a sum within
// 1e-9 of one.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> probabilities);
  static MixedStrategy Uniform(int n);
  static MixedStrategy Pure(int n, int index);

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[i]; }
  std::span<const double> probabilities() const { return p_; }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  std::vector<double> p_;
};

// a' P d
double ExpectedPayoff(const PayoffMatrix& payoff, const MixedStrategy& a, const MixedStrategy& d);

// max_i (P d)_i - min_j (a' P)_j. Non-negative; zero exactly at an
// equilibrium. Throws ValidationError on a dimension mismatch.
double Exploitability(const PayoffMatrix& payoff, const MixedStrategy& a, const MixedStrategy& d);

struct EquilibriumReport {
  MixedStrategy attacker_strategy;
  MixedStrategy defender_strategy;
  double value = 0.0;
  int iterations = 0;
  double exploitability = 0.0;
};

// Fictitious play. Each iteration both sides best-respond simultaneously to
// the opponent's empirical play so far (lowest index wins ties; the empty
// history makes index 0 the first response). Stops after `iterations` or once
// the running exploitability is <= tolerance. Returns the time averages.
EquilibriumReport SolveMatrixGame(const PayoffMatrix& payoff, int iterations, double tolerance);

struct HypergameSide {
  EquilibriumReport perceived;  // solution of this side's own view
  double regret = 0.0;          // vs best response under the true payoff
};

struct HypergameReport {
  MixedStrategy attacker_strategy;
  MixedStrategy defender_strategy;
  double realized_value = 0.0;  // under the true payoff
  HypergameSide attacker;
  HypergameSide defender;
};

// Each side plays the equilibrium strategy of the game it believes it is in;
// the outcome is scored under the true payoff.
HypergameReport HypergameEval(const PayoffMatrix& true_payoff,
                              const PayoffMatrix& perceived_by_attacker,
                              const PayoffMatrix& perceived_by_defender,
                              int iterations = 100000, double tolerance = 1e-4);

}  // namespace dpgame

#endif  // DPGAME_MATRIX_GAME_H_
