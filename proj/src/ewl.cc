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

#include "qgd/ewl.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qgd {
namespace {

// Slack for angles computed as multiples of pi in floating point.
constexpr double kAngleSlack = 1e-12;

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << p << " outside [0, 1]";
    throw std::invalid_argument(msg.str());
  }
}

void require_two_players(const PayoffTable& table) {
  if (table.player_count() != 2) {
    throw std::invalid_argument("closed-form payoff is defined for two-player games only");
  }
}

}  // namespace

void StrategyParams::validate() const {
  auto bad = [](double v, double lo, double hi) {
    return !std::isfinite(v) || v < lo - kAngleSlack || v > hi + kAngleSlack;
  };
  if (bad(theta, 0.0, kPi) || bad(alpha, -kPi, kPi) || bad(beta, -kPi, kPi)) {
    std::ostringstream msg;
    msg << "strategy (" << theta << ", " << alpha << ", " << beta
        << ") outside 0 <= theta <= pi, -pi <= alpha, beta <= pi";
    throw std::invalid_argument(msg.str());
  }
}

Unitary strategy_unitary(const StrategyParams& s) {
  s.validate();
  const double c = std::cos(s.theta / 2);
  const double sn = std::sin(s.theta / 2);
  const Complex i(0.0, 1.0);
  return Unitary(SquareMatrix(2, {std::polar(c, s.alpha), i * std::polar(sn, s.beta),
                                  i * std::polar(sn, -s.beta), std::polar(c, -s.alpha)}));
}

Unitary entangler(std::size_t player_count) {
  if (player_count != 2 && player_count != 3) {
    throw std::invalid_argument("entangler: player count must be 2 or 3, got " +
                                std::to_string(player_count));
  }
  const std::size_t dim = std::size_t{1} << player_count;
  SquareMatrix flip_all = SquareMatrix::identity(1);
  for (std::size_t k = 0; k < player_count; ++k) flip_all = tensor_product(flip_all, pauli_x());
  SquareMatrix j = SquareMatrix::identity(dim) + Complex(0.0, 1.0) * flip_all;
  j *= 1.0 / std::sqrt(2.0);
  return Unitary(std::move(j));
}

DecoherenceSpec DecoherenceSpec::measurement(double p1, double p2) {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  DecoherenceSpec spec;
  spec.kind_ = NoiseKind::kMeasurement;
  spec.p1_ = p1;
  spec.p2_ = p2;
  return spec;
}

DecoherenceSpec DecoherenceSpec::dephasing(double lambda1, double lambda2) {
  DecoherenceSpec spec;
  spec.kind_ = NoiseKind::kDephasing;
  spec.p1_ = dephasing_probability(lambda1);
  spec.p2_ = dephasing_probability(lambda2);
  spec.lambda1_ = lambda1;
  spec.lambda2_ = lambda2;
  return spec;
}

DensityMatrix DecoherenceSpec::apply(const DensityMatrix& rho, int slot) const {
  if (slot != 1 && slot != 2) throw std::invalid_argument("decoherence slot must be 1 or 2");
  if (kind_ == NoiseKind::kDephasing) {
    return dephasing_channel(rho, slot == 1 ? lambda1_ : lambda2_);
  }
  return measurement_channel(rho, slot == 1 ? p1_ : p2_);
}

PayoffTable::PayoffTable(std::size_t player_count, std::vector<std::vector<double>> rows)
    : players_(player_count) {
  if (player_count == 0 || player_count > kMaxQubits) {
    throw std::invalid_argument("PayoffTable: player count must be 1..3");
  }
  if (rows.size() != outcome_count()) {
    throw std::invalid_argument("PayoffTable: expected " + std::to_string(outcome_count()) +
                                " outcomes, got " + std::to_string(rows.size()));
  }
  entries_.reserve(outcome_count() * players_);
  for (const auto& row : rows) {
    if (row.size() != players_) {
      throw std::invalid_argument("PayoffTable: each outcome needs one payoff per player");
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("PayoffTable: non-finite payoff");
      entries_.push_back(v);
    }
  }
}

std::array<double, 4> PayoffTable::two_player_payoffs(std::size_t player) const {
  if (players_ != 2 || player >= 2) {
    throw std::invalid_argument("two_player_payoffs: not a two-player table/player");
  }
  return {payoff(player, 0), payoff(player, 1), payoff(player, 2), payoff(player, 3)};
}

double PayoffTable::min_payoff(std::size_t player) const {
  double m = payoff(player, 0);
  for (std::size_t a = 1; a < outcome_count(); ++a) m = std::min(m, payoff(player, a));
  return m;
}

double PayoffTable::max_payoff(std::size_t player) const {
  double m = payoff(player, 0);
  for (std::size_t a = 1; a < outcome_count(); ++a) m = std::max(m, payoff(player, a));
  return m;
}

std::size_t GameDefinition::outcome_index(const std::string& labels) const {
  if (labels.size() != player_count()) {
    throw std::invalid_argument("outcome '" + labels + "' has the wrong number of moves");
  }
  std::size_t index = 0;
  for (char ch : labels) {
    index <<= 1;
    if (std::string(1, ch) == move_labels[1]) {
      index |= 1;
    } else if (std::string(1, ch) != move_labels[0]) {
      throw std::invalid_argument("unknown move label in '" + labels + "'");
    }
  }
  return index;
}

PayoffReport expected_payoffs(const DensityMatrix& rho, const PayoffTable& table) {
  if (rho.dim() != table.outcome_count()) {
    throw std::invalid_argument("expected_payoffs: state has " + std::to_string(rho.dim()) +
                                " outcomes, table has " + std::to_string(table.outcome_count()));
  }
  PayoffReport report;
  report.outcome_distribution = rho.probabilities();
  report.payoffs.assign(table.player_count(), 0.0);
  for (std::size_t k = 0; k < table.player_count(); ++k) {
    for (std::size_t a = 0; a < table.outcome_count(); ++a) {
      report.payoffs[k] += report.outcome_distribution[a] * table.payoff(k, a);
    }
  }
  return report;
}

GameResult play(const GameDefinition& game, std::span<const StrategyParams> strategies,
                const DecoherenceSpec& noise) {
  const std::size_t n = game.player_count();
  if (strategies.size() != n) {
    throw std::invalid_argument("play: " + std::to_string(strategies.size()) +
                                " strategies for a " + std::to_string(n) + "-player game");
  }
  const Unitary j = entangler(n);
  Unitary moves = strategy_unitary(strategies[0]);
  for (std::size_t k = 1; k < n; ++k) moves = tensor_product(moves, strategy_unitary(strategies[k]));

  GameResult result;
  result.stages.reserve(6);
  result.stages.push_back(DensityMatrix::basis_state(n, 0));
  result.stages.push_back(conjugate_by(result.stages.back(), j));
  result.stages.push_back(noise.apply(result.stages.back(), 1));
  result.stages.push_back(conjugate_by(result.stages.back(), moves));
  result.stages.push_back(noise.apply(result.stages.back(), 2));
  result.stages.push_back(conjugate_by(result.stages.back(), j.adjoint()));

  PayoffReport report = expected_payoffs(result.final_state(), game.payoffs);
  result.expected_payoffs = std::move(report.payoffs);
  result.outcome_distribution = std::move(report.outcome_distribution);
  return result;
}

double closed_form_payoff(std::size_t player, const StrategyParams& alice,
                          const StrategyParams& bob, double p1, double p2,
                          const PayoffTable& table) {
  require_two_players(table);
  alice.validate();
  bob.validate();
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  const auto [d00, d01, d10, d11] = table.two_player_payoffs(player);

  const double ca = std::cos(alice.theta / 2), sa = std::sin(alice.theta / 2);
  const double cb = std::cos(bob.theta / 2), sb = std::sin(bob.theta / 2);
  const double ca2 = ca * ca, sa2 = sa * sa, cb2 = cb * cb, sb2 = sb * sb;
  const double aa = alice.alpha, ba = alice.beta, ab = bob.alpha, bb = bob.beta;
  const double q1 = (1 - p1) * (1 - p1);
  const double q2 = (1 - p2) * (1 - p2);

  const double classical =
      0.5 * (ca2 * cb2 + sa2 * sb2) * (d00 + d11) + 0.5 * (ca2 * sb2 + sa2 * cb2) * (d01 + d10);
  const double phases =
      0.5 * q1 * q2 *
      ((ca2 * cb2 * std::cos(2 * aa + 2 * ab) - sa2 * sb2 * std::cos(2 * ba + 2 * bb)) *
           (d00 - d11) +
       (ca2 * sb2 * std::cos(2 * aa - 2 * bb) - sa2 * cb2 * std::cos(2 * ab - 2 * ba)) *
           (d01 - d10));
  const double interference =
      0.25 * std::sin(alice.theta) * std::sin(bob.theta) *
      (q1 * std::sin(aa + ab - ba - bb) * (-d00 + d01 + d10 - d11) +
       q2 * std::sin(aa + ab + ba + bb) * (d00 - d11) +
       q2 * std::sin(aa - ab + ba - bb) * (d10 - d01));
  return classical + phases + interference;
}

double closed_form_classical_alice(std::size_t player, double theta_alice,
                                   const StrategyParams& bob, double p1, double p2,
                                   const PayoffTable& table) {
  require_two_players(table);
  StrategyParams::classical(theta_alice).validate();
  bob.validate();
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  const auto [d00, d01, d10, d11] = table.two_player_payoffs(player);

  const double ca = std::cos(theta_alice / 2), sa = std::sin(theta_alice / 2);
  const double cb = std::cos(bob.theta / 2), sb = std::sin(bob.theta / 2);
  const double ca2 = ca * ca, sa2 = sa * sa, cb2 = cb * cb, sb2 = sb * sb;
  const double q1 = (1 - p1) * (1 - p1);
  const double q2 = (1 - p2) * (1 - p2);
  const double x = ca2 * cb2 + sa2 * sb2;

  return x / 2 * (d00 + d11) + (1 - x) / 2 * (d01 + d10) +
         0.5 * q1 * q2 *
             (cb2 * std::cos(2 * bob.alpha) * (ca2 * (d00 - d11) + sa2 * (d10 - d01)) -
              sb2 * std::cos(2 * bob.beta) * (ca2 * (d10 - d01) + sa2 * (d00 - d11))) +
         0.25 * std::sin(theta_alice) * std::sin(bob.theta) *
             (q1 * std::sin(bob.alpha - bob.beta) * (-d00 + d01 + d10 - d11) +
              q2 * std::sin(bob.alpha + bob.beta) * (d00 + d01 - d10 - d11));
}

double max_decoherence_payoff(std::size_t player, double theta_alice, double theta_bob,
                              const PayoffTable& table) {
  require_two_players(table);
  StrategyParams::classical(theta_alice).validate();
  StrategyParams::classical(theta_bob).validate();
  const auto [d00, d01, d10, d11] = table.two_player_payoffs(player);
  const double ca = std::cos(theta_alice / 2), sa = std::sin(theta_alice / 2);
  const double cb = std::cos(theta_bob / 2), sb = std::sin(theta_bob / 2);
  const double x = ca * ca * cb * cb + sa * sa * sb * sb;
  return x / 2 * (d00 + d11) + (1 - x) / 2 * (d01 + d10);
}

const std::vector<GameDefinition>& game_catalog() {
  static const std::vector<GameDefinition> catalog = {
      {"pd", PayoffTable(2, {{3, 3}, {0, 5}, {5, 0}, {1, 1}}), {"C", "D"}},
      {"chicken", PayoffTable(2, {{3, 3}, {1, 4}, {4, 1}, {0, 0}}), {"C", "D"}},
      {"bos", PayoffTable(2, {{2, 1}, {0, 0}, {0, 0}, {1, 2}}), {"O", "T"}},
  };
  return catalog;
}

const GameDefinition& find_game(const std::string& name) {
  for (const auto& g : game_catalog()) {
    if (g.name == name) return g;
  }
  throw std::invalid_argument("unknown game '" + name + "' (expected pd, chicken or bos)");
}

StrategyParams quantum_counter_strategy(const GameDefinition& game) {
  if (game.name == "bos") return {kPi / 2, -kPi / 2, 0.0};
  return {kPi / 2, kPi / 2, 0.0};
}

}  // namespace qgd
