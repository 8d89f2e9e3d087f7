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

#include <cmath>
#include <stdexcept>

#include "gtest/gtest.h"

using namespace qgd;

namespace {

std::vector<StrategyParams> alice_classical_points() {
  return StrategyGrid::classical(33).points();
}

}  // namespace

TEST(grid, axes_and_points) {
  const StrategyGrid g{5, 3, 3, Restriction::kFullQuantum, 0};
  const auto th = g.theta_values();
  ASSERT_EQ(th.size(), 5u);
  EXPECT_EQ(th.front(), 0.0);
  EXPECT_EQ(th.back(), kPi);
  EXPECT_EQ(g.alpha_values(), (std::vector<double>{-kPi, 0.0, kPi}));
  const auto pts = g.points();
  ASSERT_EQ(pts.size(), 45u);
  EXPECT_EQ(pts[1], (StrategyParams{0.0, -kPi, 0.0}));

  const StrategyGrid c = StrategyGrid::classical(4);
  EXPECT_EQ(c.points().size(), 4u);
  for (const auto& s : c.points()) {
    EXPECT_EQ(s.alpha, 0.0);
    EXPECT_EQ(s.beta, 0.0);
  }
  EXPECT_THROW((StrategyGrid{0, 3, 3}.validate()), std::invalid_argument);
  EXPECT_THROW((StrategyGrid{3, 0, 3}.validate()), std::invalid_argument);
}

TEST(best_response, bob_recovers_pd_and_chicken_counter_strategy) {
  const auto alice = alice_classical_points();
  for (const char* name : {"pd", "chicken"}) {
    const ResponseReport r = best_response(find_game(name), kBob, alice, DecoherenceSpec::none(),
                                           StrategyGrid{});
    EXPECT_NEAR(r.best_params.theta, kPi / 2, 1e-12) << name;
    EXPECT_NEAR(r.best_params.alpha, kPi / 2, 1e-12) << name;
    EXPECT_NEAR(r.best_params.beta, 0.0, 1e-12) << name;
  }
}

TEST(best_response, bob_recovers_bos_counter_strategy) {
  const ResponseReport r = best_response(find_game("bos"), kBob, alice_classical_points(),
                                         DecoherenceSpec::none(), StrategyGrid{});
  EXPECT_NEAR(r.best_params.theta, kPi / 2, 1e-12);
  EXPECT_NEAR(r.best_params.alpha, -kPi / 2, 1e-12);
  EXPECT_NEAR(r.best_params.beta, 0.0, 1e-12);
}

TEST(best_response, alice_classical_reply_to_quantum_bob) {
  const ResponseReport r =
      best_response(find_game("pd"), kAlice, StrategyParams{kPi / 2, kPi / 2, 0},
                    DecoherenceSpec::none(), StrategyGrid::classical(33));
  EXPECT_NEAR(r.best_value, 0.5, 1e-12);
  // Both extremes give 0.5; the tie rule takes the smaller theta.
  EXPECT_EQ(r.best_params.theta, 0.0);
  double at_pi = 0.0;
  for (const auto& s : r.value_surface) {
    if (s.params.theta == kPi) at_pi = s.value;
  }
  EXPECT_NEAR(at_pi, 0.5, 1e-12);
}

TEST(best_response, best_value_is_surface_maximum) {
  const ResponseReport r = best_response(find_game("chicken"), kBob, alice_classical_points(),
                                         DecoherenceSpec::measurement(0.3, 0.3),
                                         StrategyGrid{9, 9, 9, Restriction::kFullQuantum, 0});
  double best = -1e300;
  for (const auto& s : r.value_surface) best = std::max(best, s.value);
  EXPECT_EQ(r.best_value, best);
  EXPECT_EQ(r.value_surface.size(), 9u * 9u * 9u);
}

TEST(best_response, refinement_never_loses_value) {
  const StrategyGrid coarse{9, 5, 5, Restriction::kFullQuantum, 0};
  StrategyGrid refined = coarse;
  refined.refine_rounds = 3;
  const auto noise = DecoherenceSpec::measurement(0.45, 0.2);
  const StrategyParams alice{1.1, 0.3, -0.7};
  const auto a = best_response(find_game("pd"), kBob, alice, noise, coarse);
  const auto b = best_response(find_game("pd"), kBob, alice, noise, refined);
  EXPECT_GE(b.best_value, a.best_value);
  for (std::size_t i = 1; i < b.refinement_trail.size(); ++i) {
    EXPECT_GT(b.refinement_trail[i].value, b.refinement_trail[i - 1].value);
  }
}

TEST(best_response, rejects_bad_inputs) {
  const std::vector<StrategyParams> none;
  EXPECT_THROW(best_response(find_game("pd"), kBob, none, DecoherenceSpec::none(), StrategyGrid{}),
               std::invalid_argument);
  EXPECT_THROW(best_response(find_game("pd"), 2, StrategyParams{}, DecoherenceSpec::none(),
                             StrategyGrid{}),
               std::invalid_argument);
  EXPECT_THROW(best_response(find_game("pd"), kBob, StrategyParams{}, DecoherenceSpec::none(),
                             StrategyGrid{0, 1, 1}),
               std::invalid_argument);
}

TEST(best_response_property, monotone_under_grid_refinement) {
  const auto alice = alice_classical_points();
  for (const auto& game : game_catalog()) {
    for (double p : {0.0, 0.4, 0.9}) {
      const auto noise = DecoherenceSpec::measurement(p, p);
      double previous = -1e300;
      for (std::size_t n : {3u, 5u, 9u, 17u}) {
        const StrategyGrid grid{n, n, n, Restriction::kFullQuantum, 0};
        const double v = best_response(game, kBob, alice, noise, grid).best_value;
        EXPECT_GE(v, previous - 1e-15) << game.name << " p=" << p << " n=" << n;
        previous = v;
      }
    }
  }
}

TEST(best_response_property, independent_of_worker_count) {
  const auto alice = alice_classical_points();
  const StrategyGrid grid{17, 9, 9, Restriction::kFullQuantum, 2};
  const auto noise = DecoherenceSpec::measurement(0.25, 0.5);
  const auto one = best_response(find_game("bos"), kBob, alice, noise, grid, 1);
  for (std::size_t w : {2u, 3u, 8u}) {
    const auto many = best_response(find_game("bos"), kBob, alice, noise, grid, w);
    EXPECT_EQ(many.best_params, one.best_params);
    EXPECT_EQ(many.best_value, one.best_value);
  }
}

// Bob at his counter strategy, Alice at her best classical reply.
TEST(best_response_property, quantum_player_outscores_classical_player) {
  for (const auto& game : game_catalog()) {
    const StrategyParams bob = quantum_counter_strategy(game);
    std::vector<double> bob_payoff;
    for (int i = 0; i <= 10; ++i) {
      const double p = i / 10.0;
      const auto noise = DecoherenceSpec::measurement(p, p);
      const auto alice = best_response(game, kAlice, bob, noise, StrategyGrid::classical(33));
      const double vb = closed_form_payoff(kBob, alice.best_params, bob, p, p, game.payoffs);
      if (i < 10) {
        EXPECT_GE(vb, alice.best_value - 1e-12) << game.name << " p=" << p;
      }
      bob_payoff.push_back(vb);
    }
    EXPECT_GT(bob_payoff.front(), bob_payoff.back()) << game.name;
  }
}

TEST(nash, pd_classical_unique_mutual_defection) {
  const auto eq = nash_equilibria(find_game("pd"), DecoherenceSpec::none(),
                                  StrategyGrid::classical(33, 0), 1e-9);
  ASSERT_EQ(eq.size(), 1u);
  EXPECT_EQ(eq[0].alice.theta, kPi);
  EXPECT_EQ(eq[0].bob.theta, kPi);
  EXPECT_NEAR(eq[0].payoff_alice, 1.0, 1e-12);
}

TEST(nash, chicken_pure_endpoints) {
  const auto eq = nash_equilibria(find_game("chicken"), DecoherenceSpec::none(),
                                  StrategyGrid::classical(2, 0), 1e-9);
  ASSERT_EQ(eq.size(), 2u);
  EXPECT_EQ(eq[0].alice.theta, 0.0);
  EXPECT_EQ(eq[0].bob.theta, kPi);
  EXPECT_EQ(eq[1].alice.theta, kPi);
  EXPECT_EQ(eq[1].bob.theta, 0.0);
}

TEST(nash, single_point_grid_returns_that_profile) {
  const StrategyGrid one{1, 1, 1, Restriction::kFullQuantum, 0};
  for (const auto& game : game_catalog()) {
    const auto eq = nash_equilibria(game, DecoherenceSpec::measurement(0.5, 0.5), one);
    ASSERT_EQ(eq.size(), 1u);
    EXPECT_EQ(eq[0].alice, (StrategyParams{0, 0, 0}));
    EXPECT_EQ(eq[0].bob, (StrategyParams{0, 0, 0}));
  }
}

TEST(nash_property, independent_of_evaluation_order) {
  const StrategyGrid grid{5, 5, 5, Restriction::kFullQuantum, 0};
  const auto noise = DecoherenceSpec::measurement(0.3, 0.3);
  const auto one = nash_equilibria(find_game("chicken"), noise, grid, 1e-6, 1);
  const auto many = nash_equilibria(find_game("chicken"), noise, grid, 1e-6, 7);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].alice, many[i].alice);
    EXPECT_EQ(one[i].bob, many[i].bob);
    EXPECT_EQ(one[i].payoff_alice, many[i].payoff_alice);
  }
  EXPECT_LE(pipeline_deviation(find_game("chicken"), one, noise), 1e-9);
}
