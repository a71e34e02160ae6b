#include "dpgame/matrix_game.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dpgame {
namespace {

void CheckFinite(const PayoffMatrix& p) {
  for (double v : p.values()) {
    if (!std::isfinite(v)) throw ValidationError("payoff matrix has non-finite entries");
  }
}

void CheckDims(const PayoffMatrix& p, const MixedStrategy& a, const MixedStrategy& d) {
  if (a.size() != p.rows() || d.size() != p.cols()) {
    throw ValidationError("dimension mismatch: payoff " + std::to_string(p.rows()) + "x" +
                          std::to_string(p.cols()) + ", strategies " +
                          std::to_string(a.size()) + " and " + std::to_string(d.size()));
  }
}

// Index of the first maximum / minimum.
int ArgMax(std::span<const double> v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}
int ArgMin(std::span<const double> v) {
  return static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
}

MixedStrategy Normalized(std::span<const long long> counts, long long total) {
  std::vector<double> p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    p[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return MixedStrategy(std::move(p));
}

}  // namespace

PayoffMatrix::PayoffMatrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), values_(static_cast<std::size_t>(rows) * cols, fill) {
  if (rows < 1 || cols < 1) throw ValidationError("payoff matrix must be non-empty");
}

PayoffMatrix::PayoffMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(static_cast<int>(rows.size())), cols_(0) {
  if (rows_ == 0) throw ValidationError("payoff matrix must be non-empty");
  cols_ = static_cast<int>(rows.begin()->size());
  if (cols_ == 0) throw ValidationError("payoff matrix must be non-empty");
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw ValidationError("ragged payoff matrix");
    values_.insert(values_.end(), r.begin(), r.end());
  }
}

PayoffMatrix PayoffMatrix::Mirrored() const {
  PayoffMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m(c, r) = 1.0 - (*this)(r, c);
  }
  return m;
}

PayoffMatrix MakePayoffMatrix(const MatchupMatrix& matrix) {
  PayoffMatrix p(kTokensPerRole, kTokensPerRole, kUnjudgedPayoff);
  for (const auto& e : matrix.entries()) {
    p(e.attacker.index - 1, e.defender.index - 1) = e.winner == Player::kAttacker ? 1.0 : 0.0;
  }
  return p;
}

MixedStrategy::MixedStrategy(std::vector<double> probabilities) : p_(std::move(probabilities)) {
  if (p_.empty()) throw ValidationError("empty mixed strategy");
  double sum = 0.0;
  for (double x : p_) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw ValidationError("mixed strategy has a negative or non-finite probability");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("mixed strategy does not sum to 1");
}

MixedStrategy MixedStrategy::Uniform(int n) {
  return MixedStrategy(std::vector<double>(n, 1.0 / n));
}

MixedStrategy MixedStrategy::Pure(int n, int index) {
  std::vector<double> p(n, 0.0);
  p.at(index) = 1.0;
  return MixedStrategy(std::move(p));
}

double ExpectedPayoff(const PayoffMatrix& payoff, const MixedStrategy& a, const MixedStrategy& d) {
  CheckDims(payoff, a, d);
  double v = 0.0;
  for (int r = 0; r < payoff.rows(); ++r) {
    double row = 0.0;
    for (int c = 0; c < payoff.cols(); ++c) row += payoff(r, c) * d[c];
    v += a[r] * row;
  }
  return v;
}

double Exploitability(const PayoffMatrix& payoff, const MixedStrategy& a, const MixedStrategy& d) {
  CheckDims(payoff, a, d);
  double best_attack = -INFINITY;
  for (int r = 0; r < payoff.rows(); ++r) {
    double v = 0.0;
    for (int c = 0; c < payoff.cols(); ++c) v += payoff(r, c) * d[c];
    best_attack = std::max(best_attack, v);
  }
  double best_defence = INFINITY;
  for (int c = 0; c < payoff.cols(); ++c) {
    double v = 0.0;
    for (int r = 0; r < payoff.rows(); ++r) v += a[r] * payoff(r, c);
    best_defence = std::min(best_defence, v);
  }
  // Rounding can push an exact equilibrium a hair below zero.
  return std::max(0.0, best_attack - best_defence);
}

EquilibriumReport SolveMatrixGame(const PayoffMatrix& payoff, int iterations, double tolerance) {
  if (iterations < 1) throw ValidationError("iterations must be >= 1");
  CheckFinite(payoff);
  const int n = payoff.rows();
  const int m = payoff.cols();

  std::vector<long long> row_counts(n, 0);
  std::vector<long long> col_counts(m, 0);
  // Cumulative payoff of each pure row against the defender's history, and of
  // each column against the attacker's history.
  std::vector<double> row_totals(n, 0.0);
  std::vector<double> col_totals(m, 0.0);

  int t = 0;
  while (t < iterations) {
    const int r = ArgMax(row_totals);
    const int c = ArgMin(col_totals);
    ++row_counts[r];
    ++col_counts[c];
    for (int i = 0; i < n; ++i) row_totals[i] += payoff(i, c);
    for (int j = 0; j < m; ++j) col_totals[j] += payoff(r, j);
    ++t;
    const double gap =
        (*std::max_element(row_totals.begin(), row_totals.end()) -
         *std::min_element(col_totals.begin(), col_totals.end())) /
        t;
    // The running gap is cheap but rounds differently from Exploitability();
    // confirm with the exact figure so the report never exceeds tolerance.
    if (gap <= tolerance &&
        Exploitability(payoff, Normalized(row_counts, t), Normalized(col_counts, t)) <= tolerance) {
      break;
    }
  }

  EquilibriumReport report{Normalized(row_counts, t), Normalized(col_counts, t), 0.0, t, 0.0};
  report.value = ExpectedPayoff(payoff, report.attacker_strategy, report.defender_strategy);
  report.exploitability =
      Exploitability(payoff, report.attacker_strategy, report.defender_strategy);
  return report;
}

HypergameReport HypergameEval(const PayoffMatrix& true_payoff,
                              const PayoffMatrix& perceived_by_attacker,
                              const PayoffMatrix& perceived_by_defender, int iterations,
                              double tolerance) {
  for (const PayoffMatrix* p : {&perceived_by_attacker, &perceived_by_defender}) {
    if (p->rows() != true_payoff.rows() || p->cols() != true_payoff.cols()) {
      throw ValidationError("dimension mismatch between true and perceived payoffs");
    }
  }
  CheckFinite(true_payoff);

  EquilibriumReport attacker_view = SolveMatrixGame(perceived_by_attacker, iterations, tolerance);
  EquilibriumReport defender_view = SolveMatrixGame(perceived_by_defender, iterations, tolerance);
  const MixedStrategy a = attacker_view.attacker_strategy;
  const MixedStrategy d = defender_view.defender_strategy;
  const double realized = ExpectedPayoff(true_payoff, a, d);

  double best_attack = -INFINITY;
  for (int r = 0; r < true_payoff.rows(); ++r) {
    best_attack = std::max(best_attack,
                           ExpectedPayoff(true_payoff, MixedStrategy::Pure(true_payoff.rows(), r), d));
  }
  double best_defence = INFINITY;
  for (int c = 0; c < true_payoff.cols(); ++c) {
    best_defence = std::min(best_defence,
                            ExpectedPayoff(true_payoff, a, MixedStrategy::Pure(true_payoff.cols(), c)));
  }

  return HypergameReport{a,
                         d,
                         realized,
                         HypergameSide{std::move(attacker_view), best_attack - realized},
                         HypergameSide{std::move(defender_view), realized - best_defence}};
}

}  // namespace dpgame
