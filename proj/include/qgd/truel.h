// Copyright 2026 The qgd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// One-round quantum truel.
//
// Alice, Bob and Charles each own a qubit that starts in |1> ("alive") and
// move once, in that order. A move is either nothing or a shot at an
// opponent: U(theta, 0, 0) on the target's qubit with sin^2(theta/2) equal
// to the shooter's success probability. After each move, with probability
// p, all qubits are measured and the outcome becomes common knowledge.
// Bob and Charles pick their actions by backward induction over the
// observable history. At the end each player whose bit is 1 receives
// 1 / (number of 1 bits).
//
// Conventions:
//  * A player is forced to do nothing only when the latest measurement
//    showed their bit 0 and nobody has targeted them since. In unmeasured
//    branches everybody acts.
//  * Indifferent players prefer doing nothing; a player indifferent between
//    targets mixes uniformly over them.
//  * The measurement after Charles's move is not branched: it commutes with
//    the final measurement and no decision follows it.

#ifndef QGD_TRUEL_H
#define QGD_TRUEL_H

#include <array>
#include <cstddef>
#include <vector>

#include "qgd/kernel.h"

namespace qgd {

inline constexpr std::size_t kTruelPlayers = 3;
inline constexpr std::size_t kCharles = 2;

struct TruelConfig {
  // Failure probability of each player's shot: a, b, c.
  std::array<double, kTruelPlayers> failure{0.0, 0.0, 0.0};
  // Probability of a full measurement after each move.
  double p = 0.0;

  void validate() const;
};

struct TruelAction {
  enum class Kind { kDoNothing, kTarget };

  Kind kind = Kind::kDoNothing;
  std::size_t target = 0;

  static TruelAction do_nothing() { return {}; }
  static TruelAction target_player(std::size_t player) { return {Kind::kTarget, player}; }

  friend bool operator==(const TruelAction&, const TruelAction&) = default;
};

struct TruelOutcomeReport {
  std::array<double, kTruelPlayers> expected_payoffs{};
  // Probability that every bit ends at 0; payoffs sum to 1 minus this.
  double prob_all_zero = 0.0;
  // Total probability of the terminal branches reached under the chosen play.
  double leaf_probability = 0.0;
  // Smallest weight of any chance branch followed.
  double min_branch_probability = 1.0;
  // Chance branches with and without a measurement along the chosen play.
  std::size_t measured_branches = 0;
  std::size_t unmeasured_branches = 0;
};

/// U(theta, 0, 0) with theta = 2 asin(sqrt(1 - failure_prob)).
Unitary shot_operator(double failure_prob);

/// Expected outcome when Alice opens with `alice_action`.
TruelOutcomeReport evaluate(const TruelConfig& cfg, const TruelAction& alice_action);

struct BoundaryCell {
  double a = 0.0;
  double b = 0.0;
  double payoff_nothing = 0.0;
  double payoff_target_charles = 0.0;
};

struct BoundaryPoint {
  double a = 0.0;
  double b = 0.0;
};

struct BoundaryScan {
  double p = 0.0;
  double c = 0.0;
  std::size_t grid_n = 0;
  // a-major, b-minor; a_i = i / (grid_n - 1), b_j = j / (grid_n - 1).
  std::vector<BoundaryCell> cells;
  // One point per a column that has a boundary, ascending in a.
  std::vector<BoundaryPoint> boundary;
};

/// Alice's payoff for doing nothing and for targeting Charles over a
/// uniform (a, b) grid, plus the boundary between the two regions.
BoundaryScan boundary_scan(double p, std::size_t grid_n, double c = 0.0,
                           std::size_t workers = 0);

/// Per a column, the topmost b where targeting Charles stops paying more
/// than doing nothing, linearly interpolated between grid rows. Columns where
/// the top row does not favour targeting Charles have no point.
std::vector<BoundaryPoint> extract_boundary(const std::vector<BoundaryCell>& cells,
                                            std::size_t grid_n);

}  // namespace qgd

#endif  // QGD_TRUEL_H
