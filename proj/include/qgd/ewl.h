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

// Entangled quantum games with decoherence between the moves.
//
// A game runs the six stages
//
//   rho0 = |0..0><0..0|
//   rho1 = J rho0 J^dagger                  entangle
//   rho2 = D(rho1, p1)                      decohere
//   rho3 = (U_1 x .. x U_N) rho2 (..)^dagger moves
//   rho4 = D(rho3, p2)                      decohere
//   rho5 = J^dagger rho4 J                  dis-entangle
//
// and pays player k the Born-weighted sum of the classical payoff table over
// the computational basis of rho5. Basis indices are big-endian: player 0
// (Alice) owns the most significant bit.

#ifndef QGD_EWL_H
#define QGD_EWL_H

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qgd/kernel.h"

namespace qgd {

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr std::size_t kAlice = 0;
inline constexpr std::size_t kBob = 1;

/// One player's SU(2) move, theta in [0, pi] and alpha, beta in [-pi, pi].
struct StrategyParams {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;

  static StrategyParams classical(double theta) { return {theta, 0.0, 0.0}; }

  friend bool operator==(const StrategyParams&, const StrategyParams&) = default;
};

/// U(theta, alpha, beta) = [[e^{ia} cos(t/2), i e^{ib} sin(t/2)],
///                          [i e^{-ib} sin(t/2), e^{-ia} cos(t/2)]].
Unitary strategy_unitary(const StrategyParams& s);

/// J = (I^{xN} + i sigma_x^{xN}) / sqrt(2) for N = 2 or 3.
Unitary entangler(std::size_t player_count);

enum class NoiseKind { kMeasurement, kDephasing };

/// Decoherence applied before (p1) and after (p2) the players' moves.
class DecoherenceSpec {
 public:
  DecoherenceSpec() = default;

  static DecoherenceSpec none() { return {}; }
  static DecoherenceSpec measurement(double p1, double p2);
  static DecoherenceSpec dephasing(double lambda1, double lambda2);

  NoiseKind kind() const { return kind_; }
  double p1() const { return p1_; }
  double p2() const { return p2_; }
  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }

  /// Applies the slot's channel to every qubit; slot is 1 or 2.
  DensityMatrix apply(const DensityMatrix& rho, int slot) const;

 private:
  NoiseKind kind_ = NoiseKind::kMeasurement;
  double p1_ = 0.0;
  double p2_ = 0.0;
  double lambda1_ = 0.0;
  double lambda2_ = 0.0;
};

/// Payoff to each player for each computational-basis outcome.
class PayoffTable {
 public:
  /// `rows[outcome][player]`; needs 2^N rows of N payoffs.
  PayoffTable(std::size_t player_count, std::vector<std::vector<double>> rows);

  std::size_t player_count() const { return players_; }
  std::size_t outcome_count() const { return std::size_t{1} << players_; }
  double payoff(std::size_t player, std::size_t outcome) const {
    return entries_[outcome * players_ + player];
  }

  /// The four values $_00, $_01, $_10, $_11 for one player of a 2x2 game.
  std::array<double, 4> two_player_payoffs(std::size_t player) const;

  double min_payoff(std::size_t player) const;
  double max_payoff(std::size_t player) const;

 private:
  std::size_t players_;
  std::vector<double> entries_;
};

struct GameDefinition {
  std::string name;
  PayoffTable payoffs;
  // Labels of the classical moves |0> and |1>, e.g. {"C", "D"}.
  std::array<std::string, 2> move_labels;

  std::size_t player_count() const { return payoffs.player_count(); }
  /// Basis index for a string of move labels such as "DC".
  std::size_t outcome_index(const std::string& labels) const;
};

struct PayoffReport {
  std::vector<double> payoffs;
  std::vector<double> outcome_distribution;
};

struct GameResult {
  // rho0 .. rho5.
  std::vector<DensityMatrix> stages;
  std::vector<double> expected_payoffs;
  std::vector<double> outcome_distribution;

  const DensityMatrix& final_state() const { return stages.back(); }
};

/// Runs the six-stage protocol.
GameResult play(const GameDefinition& game, std::span<const StrategyParams> strategies,
                const DecoherenceSpec& noise);

/// <$^k> = sum_a <a|rho|a> $^k_a, plus the diagonal of rho.
PayoffReport expected_payoffs(const DensityMatrix& rho, const PayoffTable& table);

/// Closed-form two-player payoff to `player` for arbitrary moves and
/// measurement-channel decoherence p1, p2.
double closed_form_payoff(std::size_t player, const StrategyParams& alice,
                          const StrategyParams& bob, double p1, double p2,
                          const PayoffTable& table);

/// The closed form with Alice restricted to U(theta_alice, 0, 0).
double closed_form_classical_alice(std::size_t player, double theta_alice,
                                   const StrategyParams& bob, double p1, double p2,
                                   const PayoffTable& table);

/// The closed form at p1 = p2 = 1, where only the thetas matter:
/// x/2 ($00 + $11) + (1 - x)/2 ($01 + $10), x = cA^2 cB^2 + sA^2 sB^2.
double max_decoherence_payoff(std::size_t player, double theta_alice, double theta_bob,
                              const PayoffTable& table);

/// Prisoners' dilemma, chicken and battle of the sexes.
const std::vector<GameDefinition>& game_catalog();

/// Looks up a catalog game by name ("pd", "chicken", "bos").
const GameDefinition& find_game(const std::string& name);

/// The quantum counter-strategy to a classical opponent used for each
/// catalog game: (pi/2, pi/2, 0) for pd and chicken, (pi/2, -pi/2, 0) for bos.
StrategyParams quantum_counter_strategy(const GameDefinition& game);

}  // namespace qgd

#endif  // QGD_EWL_H
