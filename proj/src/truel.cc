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

#include "qgd/truel.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "qgd/ewl.h"
#include "qgd/parallel.h"

namespace qgd {
namespace {

constexpr double kActionTieTolerance = 1e-12;
constexpr std::size_t kAllAlive = 0b111;

bool bit_of(std::size_t basis_index, std::size_t player) {
  return (basis_index >> (kTruelPlayers - 1 - player)) & 1u;
}

// Conditional value of a subtree given that it is reached.
struct Subtree {
  std::array<double, kTruelPlayers> payoff{};
  double prob_all_zero = 0.0;
  double leaf_probability = 0.0;
  double min_branch = 1.0;
  std::size_t measured = 0;
  std::size_t unmeasured = 0;

  void accumulate(const Subtree& child, double weight) {
    for (std::size_t k = 0; k < kTruelPlayers; ++k) payoff[k] += weight * child.payoff[k];
    prob_all_zero += weight * child.prob_all_zero;
    leaf_probability += weight * child.leaf_probability;
    min_branch = std::min(min_branch, child.min_branch);
    measured += child.measured;
    unmeasured += child.unmeasured;
  }
};

using KnownDead = std::array<bool, kTruelPlayers>;

class TruelSolver {
 public:
  explicit TruelSolver(const TruelConfig& cfg) : p_(cfg.p) {
    for (std::size_t shooter = 0; shooter < kTruelPlayers; ++shooter) {
      const Unitary shot = shot_operator(cfg.failure[shooter]);
      for (std::size_t target = 0; target < kTruelPlayers; ++target) {
        if (target == shooter) continue;
        shots_[shooter][target] =
            Unitary(embed_single_qubit(shot.matrix(), target, kTruelPlayers));
      }
    }
  }

  Subtree play_action(const DensityMatrix& rho, std::size_t mover, const TruelAction& action,
                      KnownDead known) const {
    if (action.kind == TruelAction::Kind::kDoNothing) return after_move(rho, mover + 1, known);
    known[action.target] = false;
    return after_move(conjugate_by(rho, *shots_[mover][action.target]), mover + 1, known);
  }

 private:
  // Chance node following a move; `next` is the next mover (3 = game over).
  Subtree after_move(const DensityMatrix& rho, std::size_t next, const KnownDead& known) const {
    if (next == kTruelPlayers) return leaf(rho);
    Subtree node;
    if (p_ < 1.0) {
      const double w = 1.0 - p_;
      node.accumulate(decide(rho, next, known), w);
      node.min_branch = std::min(node.min_branch, w);
      node.unmeasured += 1;
    }
    if (p_ > 0.0) {
      const std::vector<double> probs = rho.probabilities();
      for (std::size_t k = 0; k < probs.size(); ++k) {
        if (!(probs[k] > 0.0)) continue;
        const double w = p_ * probs[k];
        KnownDead seen{};
        for (std::size_t j = 0; j < kTruelPlayers; ++j) seen[j] = !bit_of(k, j);
        node.accumulate(decide(DensityMatrix::basis_state(kTruelPlayers, k), next, seen), w);
        node.min_branch = std::min(node.min_branch, w);
        node.measured += 1;
      }
    }
    return node;
  }

  // Backward-induction choice for `mover` (Bob or Charles).
  Subtree decide(const DensityMatrix& rho, std::size_t mover, const KnownDead& known) const {
    const Subtree idle = play_action(rho, mover, TruelAction::do_nothing(), known);
    if (known[mover]) return idle;

    std::array<Subtree, kTruelPlayers> shots;
    std::array<bool, kTruelPlayers> is_target{};
    double best = idle.payoff[mover];
    for (std::size_t t = 0; t < kTruelPlayers; ++t) {
      if (t == mover) continue;
      shots[t] = play_action(rho, mover, TruelAction::target_player(t), known);
      is_target[t] = true;
      best = std::max(best, shots[t].payoff[mover]);
    }
    if (idle.payoff[mover] >= best - kActionTieTolerance) return idle;

    Subtree mixed;
    std::size_t tied = 0;
    for (std::size_t t = 0; t < kTruelPlayers; ++t) {
      if (is_target[t] && shots[t].payoff[mover] >= best - kActionTieTolerance) ++tied;
    }
    for (std::size_t t = 0; t < kTruelPlayers; ++t) {
      if (is_target[t] && shots[t].payoff[mover] >= best - kActionTieTolerance) {
        mixed.accumulate(shots[t], 1.0 / static_cast<double>(tied));
      }
    }
    return mixed;
  }

  static Subtree leaf(const DensityMatrix& rho) {
    Subtree node;
    const std::vector<double> probs = rho.probabilities();
    for (std::size_t k = 0; k < probs.size(); ++k) {
      const double pk = probs[k];
      node.leaf_probability += pk;
      std::size_t alive = 0;
      for (std::size_t j = 0; j < kTruelPlayers; ++j) alive += bit_of(k, j);
      if (alive == 0) {
        node.prob_all_zero += pk;
        continue;
      }
      for (std::size_t j = 0; j < kTruelPlayers; ++j) {
        if (bit_of(k, j)) node.payoff[j] += pk / static_cast<double>(alive);
      }
    }
    return node;
  }

  double p_;
  std::array<std::array<std::optional<Unitary>, kTruelPlayers>, kTruelPlayers> shots_;
};

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << v << " outside [0, 1]";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

void TruelConfig::validate() const {
  check_unit(failure[0], "truel failure probability a");
  check_unit(failure[1], "truel failure probability b");
  check_unit(failure[2], "truel failure probability c");
  check_unit(p, "truel measurement probability");
}

Unitary shot_operator(double failure_prob) {
  check_unit(failure_prob, "shot failure probability");
  const double theta = 2.0 * std::asin(std::sqrt(1.0 - failure_prob));
  return strategy_unitary(StrategyParams::classical(std::min(theta, kPi)));
}

TruelOutcomeReport evaluate(const TruelConfig& cfg, const TruelAction& alice_action) {
  cfg.validate();
  if (alice_action.kind == TruelAction::Kind::kTarget &&
      (alice_action.target == 0 || alice_action.target >= kTruelPlayers)) {
    throw std::invalid_argument("Alice must target Bob (1) or Charles (2)");
  }
  const TruelSolver solver(cfg);
  const Subtree root = solver.play_action(DensityMatrix::basis_state(kTruelPlayers, kAllAlive),
                                          0, alice_action, KnownDead{});
  TruelOutcomeReport report;
  report.expected_payoffs = root.payoff;
  report.prob_all_zero = root.prob_all_zero;
  report.leaf_probability = root.leaf_probability;
  report.min_branch_probability = root.min_branch;
  report.measured_branches = root.measured;
  report.unmeasured_branches = root.unmeasured;
  return report;
}

std::vector<BoundaryPoint> extract_boundary(const std::vector<BoundaryCell>& cells,
                                            std::size_t grid_n) {
  if (grid_n < 2 || cells.size() != grid_n * grid_n) {
    throw std::invalid_argument("extract_boundary: cell count does not match grid");
  }
  const double h = 1.0 / static_cast<double>(grid_n - 1);
  std::vector<BoundaryPoint> out;
  for (std::size_t i = 0; i < grid_n; ++i) {
    auto diff = [&](std::size_t j) {
      const BoundaryCell& cell = cells[i * grid_n + j];
      return cell.payoff_target_charles - cell.payoff_nothing;
    };
    const double a = cells[i * grid_n].a;
    if (diff(grid_n - 1) <= kActionTieTolerance) continue;
    std::size_t j = grid_n - 1;
    while (j > 0 && diff(j - 1) > kActionTieTolerance) --j;
    if (j == 0) {
      out.push_back({a, 0.0});
      continue;
    }
    const double lo = diff(j - 1);
    const double hi = diff(j);
    const double frac = lo < 0.0 ? -lo / (hi - lo) : 0.0;
    out.push_back({a, (static_cast<double>(j - 1) + frac) * h});
  }
  return out;
}

BoundaryScan boundary_scan(double p, std::size_t grid_n, double c, std::size_t workers) {
  check_unit(p, "truel measurement probability");
  check_unit(c, "truel failure probability c");
  if (grid_n < 8) throw std::invalid_argument("boundary_scan: grid_n must be at least 8");

  BoundaryScan scan;
  scan.p = p;
  scan.c = c;
  scan.grid_n = grid_n;
  scan.cells.resize(grid_n * grid_n);
  const double h = 1.0 / static_cast<double>(grid_n - 1);
  parallel_for(scan.cells.size(), workers, [&](std::size_t idx) {
    const std::size_t i = idx / grid_n;
    const std::size_t j = idx % grid_n;
    const double a = i + 1 == grid_n ? 1.0 : static_cast<double>(i) * h;
    const double b = j + 1 == grid_n ? 1.0 : static_cast<double>(j) * h;
    const TruelConfig cfg{{a, b, c}, p};
    scan.cells[idx] = {a, b, evaluate(cfg, TruelAction::do_nothing()).expected_payoffs[0],
                       evaluate(cfg, TruelAction::target_player(kCharles)).expected_payoffs[0]};
  });
  scan.boundary = extract_boundary(scan.cells, grid_n);
  return scan;
}

}  // namespace qgd
