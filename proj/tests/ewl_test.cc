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

#include <cmath>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "oracles.h"

using namespace qgd;

namespace {

const Complex kI(0.0, 1.0);

std::array<double, 2> payoffs(const std::string& game, StrategyParams a, StrategyParams b,
                              DecoherenceSpec noise = DecoherenceSpec::none()) {
  const std::array<StrategyParams, 2> s{a, b};
  const GameResult r = play(find_game(game), s, noise);
  return {r.expected_payoffs[0], r.expected_payoffs[1]};
}

StrategyParams random_strategy(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(0.0, kPi), ab(-kPi, kPi);
  return {t(rng), ab(rng), ab(rng)};
}

// c_A^2 c_B^2 $00 + c_A^2 s_B^2 $01 + s_A^2 c_B^2 $10 + s_A^2 s_B^2 $11.
double classical_mixed(const PayoffTable& t, std::size_t player, double ta, double tb) {
  const double ca = std::cos(ta / 2), sa = std::sin(ta / 2);
  const double cb = std::cos(tb / 2), sb = std::sin(tb / 2);
  return ca * ca * cb * cb * t.payoff(player, 0) + ca * ca * sb * sb * t.payoff(player, 1) +
         sa * sa * cb * cb * t.payoff(player, 2) + sa * sa * sb * sb * t.payoff(player, 3);
}

}  // namespace

TEST(ewl, strategy_unitary_examples) {
  EXPECT_LE(max_abs_diff(strategy_unitary({0, 0, 0}).matrix(), SquareMatrix::identity(2)), 1e-15);
  EXPECT_LE(max_abs_diff(strategy_unitary({kPi, 0, 0}).matrix(), pauli_x() * kI), 1e-15);
  const double h = 1 / std::sqrt(2.0);
  EXPECT_LE(max_abs_diff(strategy_unitary({kPi / 2, kPi / 2, 0}).matrix(),
                         SquareMatrix(2, {kI * h, kI * h, kI * h, -kI * h})),
            1e-15);
}

TEST(ewl, strategy_unitary_is_special_unitary) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const SquareMatrix u = strategy_unitary(random_strategy(rng)).matrix();
    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    EXPECT_NEAR(std::abs(det - 1.0), 0.0, 1e-14);
    EXPECT_LE(unitarity_deviation(u), 1e-14);
  }
}

TEST(ewl, strategy_rejects_out_of_range) {
  EXPECT_THROW(strategy_unitary({-0.1, 0, 0}), std::invalid_argument);
  EXPECT_THROW(strategy_unitary({4.0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(strategy_unitary({1.0, 3.2, 0}), std::invalid_argument);
  EXPECT_THROW(strategy_unitary({1.0, 0, -3.2}), std::invalid_argument);
  EXPECT_THROW(strategy_unitary({std::nan(""), 0, 0}), std::invalid_argument);
}

TEST(ewl, entangler_examples) {
  const Unitary j = entangler(2);
  const double h = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(j.matrix()(0, 0) - h), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(j.matrix()(3, 0) - kI * h), 0.0, 1e-15);
  EXPECT_EQ(j.matrix()(1, 0), Complex{});
  EXPECT_EQ(j.matrix()(2, 0), Complex{});
  EXPECT_LE(max_abs_diff(j.matrix() * j.adjoint().matrix(), SquareMatrix::identity(4)), 1e-15);

  const SquareMatrix f = strategy_unitary({kPi, 0, 0}).matrix();
  for (const SquareMatrix& move : {tensor_product(f, f), tensor_product(f, SquareMatrix::identity(2)),
                                   tensor_product(SquareMatrix::identity(2), f)}) {
    EXPECT_LE(max_abs_diff(j.matrix() * move, move * j.matrix()), 1e-15);
  }
  const Unitary j3 = entangler(3);
  EXPECT_LE(unitarity_deviation(j3.matrix()), 1e-15);
  EXPECT_THROW(entangler(1), std::invalid_argument);
  EXPECT_THROW(entangler(4), std::invalid_argument);
}

TEST(ewl, play_examples) {
  const auto cc = payoffs("pd", {0, 0, 0}, {0, 0, 0});
  EXPECT_NEAR(cc[0], 3.0, 1e-14);
  EXPECT_NEAR(cc[1], 3.0, 1e-14);
  const auto dd = payoffs("pd", {kPi, 0, 0}, {kPi, 0, 0});
  EXPECT_NEAR(dd[0], 1.0, 1e-14);
  EXPECT_NEAR(dd[1], 1.0, 1e-14);
  const auto mixed =
      payoffs("pd", {kPi, 0, 0}, {kPi / 2, kPi / 2, 0}, DecoherenceSpec::measurement(1, 1));
  EXPECT_NEAR(mixed[0], 2.25, 1e-12);
  EXPECT_NEAR(mixed[1], 2.25, 1e-12);
  const auto quantum = payoffs("pd", {kPi, 0, 0}, {kPi / 2, kPi / 2, 0});
  EXPECT_NEAR(quantum[0], 0.5, 1e-12);
  EXPECT_NEAR(quantum[1], 3.0, 1e-12);
}

TEST(ewl, play_rejects_wrong_strategy_count) {
  const std::array<StrategyParams, 3> three{};
  EXPECT_THROW(play(find_game("pd"), three, DecoherenceSpec::none()), std::invalid_argument);
}

TEST(ewl, expected_payoffs_examples) {
  const PayoffTable& pd = find_game("pd").payoffs;
  const PayoffReport cd = expected_payoffs(DensityMatrix::basis_state(2, 1), pd);
  EXPECT_EQ(cd.payoffs[0], 0.0);
  EXPECT_EQ(cd.payoffs[1], 5.0);
  const PayoffReport mixed = expected_payoffs(DensityMatrix::maximally_mixed(2), pd);
  EXPECT_NEAR(mixed.payoffs[0], 2.25, 1e-15);
  EXPECT_NEAR(mixed.payoffs[1], 2.25, 1e-15);
  const double h = 1 / std::sqrt(2.0);
  const std::vector<Complex> psi{0.0, kI * h, 0.0, -h};
  const PayoffReport r = expected_payoffs(density_from_state(psi), pd);
  EXPECT_NEAR(r.payoffs[0], 0.5, 1e-15);
  EXPECT_NEAR(r.payoffs[1], 3.0, 1e-15);
  EXPECT_THROW(expected_payoffs(DensityMatrix::basis_state(3, 0), pd), std::invalid_argument);
}

TEST(ewl, closed_form_examples) {
  const PayoffTable& pd = find_game("pd").payoffs;
  EXPECT_NEAR(closed_form_payoff(kAlice, {0, 0, 0}, {0, 0, 0}, 0, 0, pd), 3.0, 1e-14);
  // Decoherence of the entangled start state mixes in $11 even for identity moves.
  EXPECT_NEAR(closed_form_payoff(kAlice, {0, 0, 0}, {0, 0, 0}, 1, 1, pd), 2.0, 1e-14);
  for (double p : {0.0, 0.3, 1.0}) {
    const auto played = payoffs("pd", {0, 0, 0}, {0, 0, 0}, DecoherenceSpec::measurement(p, p));
    EXPECT_NEAR(closed_form_payoff(kAlice, {0, 0, 0}, {0, 0, 0}, p, p, pd), played[0], 1e-12);
  }
  const StrategyParams d{kPi, 0, 0}, q{kPi / 2, kPi / 2, 0};
  EXPECT_NEAR(closed_form_payoff(kAlice, d, q, 0, 0, pd), 0.5, 1e-14);
  EXPECT_NEAR(closed_form_payoff(kBob, d, q, 0, 0, pd), 3.0, 1e-14);

  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const StrategyParams a = random_strategy(rng), b = random_strategy(rng);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_NEAR(closed_form_payoff(k, a, b, 1, 1, pd),
                  max_decoherence_payoff(k, a.theta, b.theta, pd), 1e-12);
    }
  }
}

TEST(ewl, closed_form_classical_alice_examples) {
  const PayoffTable& pd = find_game("pd").payoffs;
  const PayoffTable& chicken = find_game("chicken").payoffs;
  const StrategyParams q{kPi / 2, kPi / 2, 0};
  EXPECT_NEAR(closed_form_classical_alice(kAlice, 0, {0, 0, 0}, 0, 0, pd), 3.0, 1e-14);
  EXPECT_NEAR(closed_form_classical_alice(kBob, kPi, q, 0, 0, pd), 3.0, 1e-14);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_NEAR(closed_form_classical_alice(k, kPi / 2, q, 1, 1, chicken), 2.0, 1e-14);
  }
  const auto played = payoffs("chicken", StrategyParams::classical(kPi / 2), q,
                              DecoherenceSpec::measurement(1, 1));
  EXPECT_NEAR(played[0], 2.0, 1e-12);
  EXPECT_NEAR(played[1], 2.0, 1e-12);
}

TEST(ewl, max_decoherence_examples) {
  const PayoffTable& pd = find_game("pd").payoffs;
  EXPECT_NEAR(max_decoherence_payoff(kAlice, 0, 0, pd), 2.0, 1e-15);
  EXPECT_NEAR(max_decoherence_payoff(kAlice, 0, kPi, pd), 2.5, 1e-15);
  EXPECT_NEAR(max_decoherence_payoff(kAlice, kPi, kPi / 2, pd), 2.25, 1e-15);
  EXPECT_NEAR(max_decoherence_payoff(kBob, kPi, kPi / 2, pd), 2.25, 1e-15);
}

TEST(ewl, catalog_entries) {
  const GameDefinition& pd = find_game("pd");
  const std::size_t dc = pd.outcome_index("DC");
  EXPECT_EQ(pd.payoffs.payoff(0, dc), 5.0);
  EXPECT_EQ(pd.payoffs.payoff(1, dc), 0.0);
  const GameDefinition& chicken = find_game("chicken");
  EXPECT_EQ(chicken.payoffs.payoff(0, chicken.outcome_index("DD")), 0.0);
  EXPECT_EQ(chicken.payoffs.payoff(1, chicken.outcome_index("DD")), 0.0);
  EXPECT_EQ(chicken.payoffs.payoff(0, chicken.outcome_index("CD")), 1.0);
  EXPECT_EQ(chicken.payoffs.payoff(1, chicken.outcome_index("CD")), 4.0);
  const GameDefinition& bos = find_game("bos");
  EXPECT_EQ(bos.payoffs.payoff(0, bos.outcome_index("TT")), 1.0);
  EXPECT_EQ(bos.payoffs.payoff(1, bos.outcome_index("TT")), 2.0);
  EXPECT_EQ(bos.payoffs.payoff(0, bos.outcome_index("OO")), 2.0);
  EXPECT_THROW(find_game("matching"), std::invalid_argument);
  EXPECT_THROW(pd.outcome_index("CX"), std::invalid_argument);
}

TEST(ewl, payoff_table_rejects_bad_shape) {
  EXPECT_THROW(PayoffTable(2, {{1, 1}, {1, 1}, {1, 1}}), std::invalid_argument);
  EXPECT_THROW(PayoffTable(2, {{1, 1}, {1, 1}, {1, 1}, {1}}), std::invalid_argument);
  EXPECT_THROW(PayoffTable(2, {{1, 1}, {1, 1}, {1, 1}, {1, std::nan("")}}),
               std::invalid_argument);
}

TEST(ewl, three_player_pipeline_runs) {
  PayoffTable table(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                        {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  const GameDefinition game{"three", table, {"0", "1"}};
  const std::array<StrategyParams, 3> s{StrategyParams{kPi, 0, 0}, StrategyParams{0, 0, 0},
                                        StrategyParams{kPi, 0, 0}};
  const GameResult r = play(game, s, DecoherenceSpec::none());
  // Outcome |101> with certainty.
  EXPECT_NEAR(r.outcome_distribution[5], 1.0, 1e-14);
  EXPECT_NEAR(r.expected_payoffs[0], 1.0, 1e-14);
  EXPECT_NEAR(r.expected_payoffs[1], 0.0, 1e-14);
  EXPECT_NEAR(r.expected_payoffs[2], 1.0, 1e-14);
}

TEST(ewl_property, closed_form_matches_pipeline) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& game : game_catalog()) {
    for (int i = 0; i < 500; ++i) {
      const StrategyParams a = random_strategy(rng), b = random_strategy(rng);
      const double p1 = unit(rng), p2 = unit(rng);
      const std::array<StrategyParams, 2> s{a, b};
      const GameResult r = play(game, s, DecoherenceSpec::measurement(p1, p2));
      for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_NEAR(r.expected_payoffs[k], closed_form_payoff(k, a, b, p1, p2, game.payoffs),
                    1e-9);
      }
    }
  }
}

TEST(ewl_property, classical_reduction) {
  for (const auto& game : game_catalog()) {
    for (int i = 0; i <= 32; ++i) {
      for (int j = 0; j <= 32; ++j) {
        const double ta = kPi * i / 32, tb = kPi * j / 32;
        const auto r = payoffs(game.name, StrategyParams::classical(ta),
                               StrategyParams::classical(tb));
        for (std::size_t k = 0; k < 2; ++k) {
          EXPECT_NEAR(r[k], classical_mixed(game.payoffs, k, ta, tb), 1e-12);
        }
      }
    }
  }
}

TEST(ewl_property, global_phase_invariance) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t(0.0, kPi), ab(-kPi, 0.0), unit(0.0, 1.0);
  for (const auto& game : game_catalog()) {
    for (int i = 0; i < 100; ++i) {
      const StrategyParams a{t(rng), ab(rng), ab(rng)}, b{t(rng), ab(rng), ab(rng)};
      const StrategyParams a2{a.theta, a.alpha + kPi, a.beta + kPi};
      const StrategyParams b2{b.theta, b.alpha + kPi, b.beta + kPi};
      const auto noise = DecoherenceSpec::measurement(unit(rng), unit(rng));
      const auto base = payoffs(game.name, a, b, noise);
      for (const auto& shifted :
           {payoffs(game.name, a2, b, noise), payoffs(game.name, a, b2, noise)}) {
        EXPECT_NEAR(shifted[0], base[0], 1e-12);
        EXPECT_NEAR(shifted[1], base[1], 1e-12);
      }
    }
  }
}

TEST(ewl_property, symmetric_games_equalise_at_full_decoherence) {
  std::mt19937_64 rng(6);
  for (const char* name : {"pd", "chicken"}) {
    for (int i = 0; i < 200; ++i) {
      const auto r = payoffs(name, random_strategy(rng), random_strategy(rng),
                             DecoherenceSpec::measurement(1, 1));
      EXPECT_NEAR(r[0], r[1], 1e-12);
    }
  }
}

TEST(ewl_property, all_stages_are_density_matrices) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const std::array<StrategyParams, 2> s{random_strategy(rng), random_strategy(rng)};
    const DecoherenceSpec noise = i % 2 ? DecoherenceSpec::measurement(unit(rng), unit(rng))
                                        : DecoherenceSpec::dephasing(3 * unit(rng), 3 * unit(rng));
    const GameResult r = play(find_game("bos"), s, noise);
    ASSERT_EQ(r.stages.size(), 6u);
    for (const auto& rho : r.stages) {
      EXPECT_TRUE(rho.check_invariants().ok(1e-12));
    }
    double total = 0.0;
    for (double v : r.outcome_distribution) total += v;
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(ewl_property, classical_alice_restriction_consistent) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> t(0.0, kPi), unit(0.0, 1.0);
  for (const auto& game : game_catalog()) {
    for (int i = 0; i < 200; ++i) {
      const double ta = t(rng), p1 = unit(rng), p2 = unit(rng);
      const StrategyParams b = random_strategy(rng);
      for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_NEAR(closed_form_classical_alice(k, ta, b, p1, p2, game.payoffs),
                    closed_form_payoff(k, StrategyParams::classical(ta), b, p1, p2, game.payoffs),
                    1e-12);
      }
    }
  }
}

TEST(ewl_property, dephasing_matches_mapped_measurement) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> lam(0.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    const StrategyParams a = random_strategy(rng), b = random_strategy(rng);
    const double l1 = lam(rng), l2 = lam(rng);
    const auto d = payoffs("pd", a, b, DecoherenceSpec::dephasing(l1, l2));
    const auto m = payoffs("pd", a, b,
                           DecoherenceSpec::measurement(-std::expm1(-l1), -std::expm1(-l2)));
    EXPECT_NEAR(d[0], m[0], 1e-12);
    EXPECT_NEAR(d[1], m[1], 1e-12);
  }
}

TEST(ewl, decoherence_spec_rejects_bad_levels) {
  EXPECT_THROW(DecoherenceSpec::measurement(-0.1, 0), std::invalid_argument);
  EXPECT_THROW(DecoherenceSpec::measurement(0, 1.1), std::invalid_argument);
  EXPECT_THROW(DecoherenceSpec::dephasing(-1, 0), std::invalid_argument);
  EXPECT_NO_THROW(DecoherenceSpec::dephasing(1e9, 0));
}
