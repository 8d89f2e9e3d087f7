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

#include "qgd/equilibria.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "qgd/parallel.h"

namespace qgd {
namespace {

std::vector<double> axis(std::size_t steps, double lo, double hi) {
  if (steps == 1) return {0.0};
  std::vector<double> v(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  // Pin the end points so they are exact and stay inside the valid range.
  v.front() = lo;
  v.back() = hi;
  return v;
}

double axis_step(std::size_t steps, double span) {
  return steps > 1 ? span / static_cast<double>(steps - 1) : span / 2;
}

bool canonical_phase(double beta) { return beta >= -kPi / 2 && beta < kPi / 2; }

// Payoff to `responder` when they play `mine` against `theirs`.
double responder_payoff(const PayoffTable& table, std::size_t responder,
                        const StrategyParams& mine, const StrategyParams& theirs,
                        const DecoherenceSpec& noise) {
  return responder == kAlice
             ? closed_form_payoff(kAlice, mine, theirs, noise.p1(), noise.p2(), table)
             : closed_form_payoff(kBob, theirs, mine, noise.p1(), noise.p2(), table);
}

double averaged_payoff(const PayoffTable& table, std::size_t responder,
                       const StrategyParams& mine, std::span<const StrategyParams> opponents,
                       const DecoherenceSpec& noise) {
  double sum = 0.0;
  for (const auto& o : opponents) sum += responder_payoff(table, responder, mine, o, noise);
  return sum / static_cast<double>(opponents.size());
}

// Does `a` beat `incumbent`: strictly larger beyond the tie tolerance, or
// tied and preferred by the tie-break order.
bool better(const ResponseSample& a, const ResponseSample& incumbent) {
  if (a.value > incumbent.value + kTieTolerance) return true;
  if (a.value < incumbent.value - kTieTolerance) return false;
  return tie_break_less(a.params, incumbent.params);
}

void require_two_player(const GameDefinition& game) {
  if (game.player_count() != 2) {
    throw std::invalid_argument("equilibrium search needs a two-player game");
  }
}

}  // namespace

void StrategyGrid::validate() const {
  if (theta_steps == 0) throw std::invalid_argument("StrategyGrid: theta_steps must be positive");
  if (restriction == Restriction::kFullQuantum && (alpha_steps == 0 || beta_steps == 0)) {
    throw std::invalid_argument("StrategyGrid: alpha_steps and beta_steps must be positive");
  }
}

std::vector<double> StrategyGrid::theta_values() const { return axis(theta_steps, 0.0, kPi); }

std::vector<double> StrategyGrid::alpha_values() const {
  if (restriction == Restriction::kClassicalOnly) return {0.0};
  return axis(alpha_steps, -kPi, kPi);
}

std::vector<double> StrategyGrid::beta_values() const {
  if (restriction == Restriction::kClassicalOnly) return {0.0};
  return axis(beta_steps, -kPi, kPi);
}

std::vector<StrategyParams> StrategyGrid::points() const {
  validate();
  std::vector<StrategyParams> out;
  const auto ts = theta_values(), as = alpha_values(), bs = beta_values();
  out.reserve(ts.size() * as.size() * bs.size());
  for (double t : ts) {
    for (double a : as) {
      for (double b : bs) out.push_back({t, a, b});
    }
  }
  return out;
}

bool tie_break_less(const StrategyParams& a, const StrategyParams& b) {
  return std::make_tuple(a.theta, !canonical_phase(a.beta), a.alpha, a.beta) <
         std::make_tuple(b.theta, !canonical_phase(b.beta), b.alpha, b.beta);
}

ResponseReport best_response(const GameDefinition& game, std::size_t responder,
                             std::span<const StrategyParams> opponents,
                             const DecoherenceSpec& noise, const StrategyGrid& grid,
                             std::size_t workers) {
  require_two_player(game);
  if (responder > kBob) throw std::invalid_argument("best_response: responder must be 0 or 1");
  if (opponents.empty()) throw std::invalid_argument("best_response: no opponent strategies");
  grid.validate();

  const std::vector<StrategyParams> pts = grid.points();
  ResponseReport report;
  report.value_surface.resize(pts.size());
  parallel_for(pts.size(), workers, [&](std::size_t i) {
    report.value_surface[i] = {pts[i],
                               averaged_payoff(game.payoffs, responder, pts[i], opponents, noise)};
  });

  ResponseSample best = report.value_surface.front();
  for (const auto& s : report.value_surface) {
    if (better(s, best)) best = s;
  }

  const bool quantum = grid.restriction == Restriction::kFullQuantum;
  double dt = axis_step(grid.theta_steps, kPi);
  double da = quantum ? axis_step(grid.alpha_steps, 2 * kPi) : 0.0;
  double db = quantum ? axis_step(grid.beta_steps, 2 * kPi) : 0.0;
  for (std::size_t round = 0; round < grid.refine_rounds; ++round) {
    dt /= 2;
    da /= 2;
    db /= 2;
    ResponseSample round_best = best;
    for (int it = -1; it <= 1; ++it) {
      for (int ia = quantum ? -1 : 0; ia <= (quantum ? 1 : 0); ++ia) {
        for (int ib = quantum ? -1 : 0; ib <= (quantum ? 1 : 0); ++ib) {
          if (it == 0 && ia == 0 && ib == 0) continue;
          StrategyParams cand{std::clamp(best.params.theta + it * dt, 0.0, kPi),
                              std::clamp(best.params.alpha + ia * da, -kPi, kPi),
                              std::clamp(best.params.beta + ib * db, -kPi, kPi)};
          ResponseSample s{cand,
                           averaged_payoff(game.payoffs, responder, cand, opponents, noise)};
          // Refinement only moves on a strict improvement.
          if (s.value > best.value + kTieTolerance && better(s, round_best)) round_best = s;
        }
      }
    }
    if (round_best.value > best.value + kTieTolerance) {
      best = round_best;
      report.refinement_trail.push_back(best);
    }
  }
  report.best_params = best.params;
  report.best_value = best.value;
  return report;
}

ResponseReport best_response(const GameDefinition& game, std::size_t responder,
                             const StrategyParams& fixed_opponent, const DecoherenceSpec& noise,
                             const StrategyGrid& grid, std::size_t workers) {
  return best_response(game, responder, std::span<const StrategyParams>(&fixed_opponent, 1),
                       noise, grid, workers);
}

std::vector<StrategyProfile> nash_equilibria(const GameDefinition& game,
                                             const DecoherenceSpec& noise,
                                             const StrategyGrid& grid, double tol,
                                             std::size_t workers) {
  require_two_player(game);
  if (!(tol >= 0.0)) throw std::invalid_argument("nash_equilibria: tolerance must be >= 0");
  const std::vector<StrategyParams> pts = grid.points();
  const std::size_t n = pts.size();
  const PayoffTable& table = game.payoffs;
  auto pay = [&](std::size_t player, std::size_t i, std::size_t j) {
    return closed_form_payoff(player, pts[i], pts[j], noise.p1(), noise.p2(), table);
  };

  // Alice's best payoff against each Bob column, Bob's against each Alice row.
  std::vector<double> alice_best(n), bob_best(n);
  parallel_for(n, workers, [&](std::size_t j) {
    double m = pay(kAlice, 0, j);
    for (std::size_t i = 1; i < n; ++i) m = std::max(m, pay(kAlice, i, j));
    alice_best[j] = m;
  });
  parallel_for(n, workers, [&](std::size_t i) {
    double m = pay(kBob, i, 0);
    for (std::size_t j = 1; j < n; ++j) m = std::max(m, pay(kBob, i, j));
    bob_best[i] = m;
  });

  std::vector<std::vector<StrategyProfile>> rows(n);
  parallel_for(n, workers, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = pay(kAlice, i, j);
      if (a < alice_best[j] - tol) continue;
      const double b = pay(kBob, i, j);
      if (b < bob_best[i] - tol) continue;
      rows[i].push_back({pts[i], pts[j], a, b});
    }
  });

  std::vector<StrategyProfile> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

double pipeline_deviation(const GameDefinition& game, std::span<const StrategyProfile> profiles,
                          const DecoherenceSpec& noise) {
  double worst = 0.0;
  for (const auto& prof : profiles) {
    const std::array<StrategyParams, 2> s{prof.alice, prof.bob};
    const GameResult r = play(game, s, noise);
    worst = std::max(worst, std::abs(r.expected_payoffs[kAlice] - prof.payoff_alice));
    worst = std::max(worst, std::abs(r.expected_payoffs[kBob] - prof.payoff_bob));
  }
  return worst;
}

}  // namespace qgd
