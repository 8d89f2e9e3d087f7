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

// Grid search for best responses and pure-profile Nash equilibria of
// two-player games, evaluated with the closed-form payoff.

#ifndef QGD_EQUILIBRIA_H
#define QGD_EQUILIBRIA_H

#include <cstddef>
#include <span>
#include <vector>

#include "qgd/ewl.h"

namespace qgd {

enum class Restriction { kFullQuantum, kClassicalOnly };

/// Uniform grid over the strategy box. theta_i = pi i / (n - 1); alpha and
/// beta run from -pi to pi inclusive. A single step places the axis at 0.
/// kClassicalOnly pins alpha = beta = 0 and ignores their step counts.
struct StrategyGrid {
  std::size_t theta_steps = 33;
  std::size_t alpha_steps = 17;
  std::size_t beta_steps = 17;
  Restriction restriction = Restriction::kFullQuantum;
  std::size_t refine_rounds = 3;

  static StrategyGrid classical(std::size_t theta_steps, std::size_t refine_rounds = 3) {
    return {theta_steps, 1, 1, Restriction::kClassicalOnly, refine_rounds};
  }

  /// Throws std::invalid_argument for a grid with an empty axis.
  void validate() const;

  std::vector<double> theta_values() const;
  std::vector<double> alpha_values() const;
  std::vector<double> beta_values() const;

  /// All grid points, theta-major then alpha then beta.
  std::vector<StrategyParams> points() const;
};

/// Strict-weak "preferred among equal payoffs" order: smaller theta first,
/// then the phase representative with beta in [-pi/2, pi/2) (U and -U are
/// the same move), then smaller alpha, then smaller beta.
bool tie_break_less(const StrategyParams& a, const StrategyParams& b);

struct ResponseSample {
  StrategyParams params;
  double value = 0.0;
};

struct ResponseReport {
  StrategyParams best_params;
  double best_value = 0.0;
  // Every grid point, in StrategyGrid::points() order.
  std::vector<ResponseSample> value_surface;
  // Points accepted by the refinement passes, in order.
  std::vector<ResponseSample> refinement_trail;
};

/// Payoff improvements smaller than this are treated as ties.
inline constexpr double kTieTolerance = 1e-12;

/// Best response of `responder` to opponents drawn uniformly from
/// `opponents`: the grid point maximising the responder's payoff averaged
/// over that set, refined by `grid.refine_rounds` halving passes. A single
/// opponent gives the ordinary best response; an opponent's whole grid
/// models a responder who does not know the opponent's move.
ResponseReport best_response(const GameDefinition& game, std::size_t responder,
                             std::span<const StrategyParams> opponents,
                             const DecoherenceSpec& noise, const StrategyGrid& grid,
                             std::size_t workers = 0);

ResponseReport best_response(const GameDefinition& game, std::size_t responder,
                             const StrategyParams& fixed_opponent, const DecoherenceSpec& noise,
                             const StrategyGrid& grid, std::size_t workers = 0);

struct StrategyProfile {
  StrategyParams alice;
  StrategyParams bob;
  double payoff_alice = 0.0;
  double payoff_bob = 0.0;
};

/// Every grid profile from which neither player can gain more than `tol`
/// by moving to another grid point, ordered by (alice index, bob index).
std::vector<StrategyProfile> nash_equilibria(const GameDefinition& game,
                                             const DecoherenceSpec& noise,
                                             const StrategyGrid& grid, double tol = 1e-6,
                                             std::size_t workers = 0);

/// Largest |closed form - pipeline| payoff difference over the profiles.
double pipeline_deviation(const GameDefinition& game, std::span<const StrategyProfile> profiles,
                          const DecoherenceSpec& noise);

}  // namespace qgd

#endif  // QGD_EQUILIBRIA_H
