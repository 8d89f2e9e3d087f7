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

#include "qgd/cli.h"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgd/equilibria.h"
#include "qgd/parallel.h"
#include "qgd/pennyflip.h"
#include "qgd/truel.h"

namespace qgd::cli {
namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> unit_grid(std::size_t n) {
  if (n == 1) return {0.0};
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = 1.0;
  return v;
}

std::vector<double> p_grid(const RunSpec& spec) {
  return spec.p_values.empty() ? unit_grid(spec.steps) : spec.p_values;
}

std::vector<const GameDefinition*> selected_games(const RunSpec& spec) {
  std::vector<const GameDefinition*> games;
  if (!spec.game.empty()) {
    games.push_back(&find_game(spec.game));
  } else {
    for (const auto& g : game_catalog()) games.push_back(&g);
  }
  return games;
}

void flag_mismatch(Table& table, double deviation, const std::string& where) {
  if (deviation > kConsistencyTol && table.consistent) {
    table.consistent = false;
    table.diagnostic = where + ": closed form and pipeline differ by " + format_number(deviation);
  }
}

Table surface(const RunSpec& spec) {
  const GameDefinition& game = find_game(spec.game.empty() ? "pd" : spec.game);
  const StrategyParams bob = quantum_counter_strategy(game);
  const std::vector<double> ps = p_grid(spec);
  const std::vector<double> thetas =
      StrategyGrid::classical(spec.grid ? spec.grid : 33).theta_values();

  Table table{{"p", "theta", "payoff_alice", "payoff_bob"}, {}};
  const std::size_t n = ps.size() * thetas.size();
  std::vector<std::array<double, 3>> cells(n);  // alice, bob, deviation
  parallel_for(n, spec.workers, [&](std::size_t idx) {
    const double p = ps[idx / thetas.size()];
    const double theta = thetas[idx % thetas.size()];
    const std::array<StrategyParams, 2> s{StrategyParams::classical(theta), bob};
    const GameResult r = play(game, s, DecoherenceSpec::measurement(p, p));
    const double dev =
        std::max(std::abs(r.expected_payoffs[kAlice] -
                          closed_form_payoff(kAlice, s[0], s[1], p, p, game.payoffs)),
                 std::abs(r.expected_payoffs[kBob] -
                          closed_form_payoff(kBob, s[0], s[1], p, p, game.payoffs)));
    cells[idx] = {r.expected_payoffs[kAlice], r.expected_payoffs[kBob], dev};
  });
  for (std::size_t idx = 0; idx < n; ++idx) {
    table.rows.push_back({ps[idx / thetas.size()], thetas[idx % thetas.size()], cells[idx][0],
                          cells[idx][1]});
    flag_mismatch(table, cells[idx][2], "surface");
  }
  return table;
}

Table curves(const RunSpec& spec) {
  const std::vector<double> ps = p_grid(spec);
  const StrategyGrid alice_grid = StrategyGrid::classical(spec.grid ? spec.grid : 33);
  Table table{{"game", "p", "payoff_alice", "payoff_bob"}, {}};
  for (const GameDefinition* game : selected_games(spec)) {
    const StrategyParams bob = quantum_counter_strategy(*game);
    std::vector<std::array<double, 3>> cells(ps.size());
    parallel_for(ps.size(), spec.workers, [&](std::size_t i) {
      const DecoherenceSpec noise = DecoherenceSpec::measurement(ps[i], ps[i]);
      const ResponseReport alice = best_response(*game, kAlice, bob, noise, alice_grid, 1);
      const std::array<StrategyParams, 2> s{alice.best_params, bob};
      const GameResult r = play(*game, s, noise);
      cells[i] = {r.expected_payoffs[kAlice], r.expected_payoffs[kBob],
                  std::abs(r.expected_payoffs[kAlice] - alice.best_value)};
    });
    for (std::size_t i = 0; i < ps.size(); ++i) {
      table.rows.push_back({game->name, ps[i], cells[i][0], cells[i][1]});
      flag_mismatch(table, cells[i][2], "curves");
    }
  }
  return table;
}

Table pennyflip(const RunSpec& spec) {
  Table table{{"p", "q_win"}, {}};
  for (double p : p_grid(spec)) table.rows.push_back({p, q_win_probability(p)});
  return table;
}

Table truel_boundary(const RunSpec& spec) {
  const std::vector<double> ps =
      spec.p_values.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0} : spec.p_values;
  Table table{{"p", "a", "b", "payoff_nothing", "payoff_target_charles"}, {}};
  for (double p : ps) {
    const BoundaryScan scan = boundary_scan(p, spec.grid ? spec.grid : 21, spec.c, spec.workers);
    for (const auto& cell : scan.cells) {
      table.rows.push_back({p, cell.a, cell.b, cell.payoff_nothing, cell.payoff_target_charles});
    }
  }
  return table;
}

Table crosscheck(const RunSpec& spec) {
  Table table{{"game", "samples", "seed", "max_abs_diff"}, {}};
  const auto games = selected_games(spec);
  for (std::size_t g = 0; g < games.size(); ++g) {
    const GameDefinition& game = *games[g];
    std::vector<double> dev(spec.samples);
    parallel_for(spec.samples, spec.workers, [&](std::size_t i) {
      const CrosscheckCase cs = crosscheck_case(spec.seed, g * spec.samples + i);
      const std::array<StrategyParams, 2> s{cs.alice, cs.bob};
      const GameResult r = play(game, s, DecoherenceSpec::measurement(cs.p1, cs.p2));
      double worst = 0.0;
      for (std::size_t k = 0; k < 2; ++k) {
        worst = std::max(worst, std::abs(r.expected_payoffs[k] -
                                         closed_form_payoff(k, cs.alice, cs.bob, cs.p1, cs.p2,
                                                            game.payoffs)));
      }
      dev[i] = worst;
    });
    const double worst = dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
    table.rows.push_back({game.name, static_cast<double>(spec.samples),
                          static_cast<double>(spec.seed), worst});
    flag_mismatch(table, worst, "crosscheck " + game.name);
  }
  return table;
}

Table nash(const RunSpec& spec) {
  const GameDefinition& game = find_game(spec.game.empty() ? "pd" : spec.game);
  const std::size_t theta_steps = spec.grid ? spec.grid : 33;
  const StrategyGrid grid =
      spec.quantum ? StrategyGrid{theta_steps, spec.alpha_steps, spec.beta_steps,
                                  Restriction::kFullQuantum, 0}
                   : StrategyGrid::classical(theta_steps, 0);
  const std::vector<double> ps = spec.p_values.empty() ? std::vector<double>{0.0} : spec.p_values;
  Table table{{"game", "p", "theta_a", "alpha_a", "beta_a", "theta_b", "alpha_b", "beta_b",
               "payoff_a", "payoff_b"},
              {}};
  for (double p : ps) {
    const DecoherenceSpec noise = DecoherenceSpec::measurement(p, p);
    const auto eq = nash_equilibria(game, noise, grid, spec.tol, spec.workers);
    if (spec.crosscheck) flag_mismatch(table, pipeline_deviation(game, eq, noise), "nash");
    for (const auto& e : eq) {
      table.rows.push_back({game.name, p, e.alice.theta, e.alice.alpha, e.alice.beta, e.bob.theta,
                            e.bob.alpha, e.bob.beta, e.payoff_alice, e.payoff_bob});
    }
  }
  return table;
}

}  // namespace

void RunSpec::validate() const {
  if (!game.empty()) find_game(game);
  if (steps == 0) throw std::invalid_argument("--steps must be positive");
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("--p values must lie in [0, 1]");
  }
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("--c must lie in [0, 1]");
  if (command == Command::kTruelBoundary && grid != 0 && grid < 8) {
    throw std::invalid_argument("--grid must be at least 8 for truel-boundary");
  }
  // A one-point theta grid is legal for nash only.
  if ((command == Command::kSurface || command == Command::kCurves) && grid == 1) {
    throw std::invalid_argument("--grid must be at least 2");
  }
  if (command == Command::kCrosscheck && samples == 0) {
    throw std::invalid_argument("--samples must be positive");
  }
  if (quantum && (alpha_steps == 0 || beta_steps == 0)) {
    throw std::invalid_argument("--alpha-steps and --beta-steps must be positive");
  }
  if (!(tol >= 0.0)) throw std::invalid_argument("--tol must be non-negative");
}

Table compute(const RunSpec& spec) {
  spec.validate();
  switch (spec.command) {
    case Command::kSurface:
      return surface(spec);
    case Command::kCurves:
      return curves(spec);
    case Command::kPennyflip:
      return pennyflip(spec);
    case Command::kTruelBoundary:
      return truel_boundary(spec);
    case Command::kCrosscheck:
      return crosscheck(spec);
    case Command::kNash:
      return nash(spec);
  }
  throw std::logic_error("unhandled command");
}

std::string render(const Table& table, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        std::visit([&](const auto& v) { obj[table.columns[c]] = v; }, row[c]);
      }
      rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
  }
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      if (const auto* s = std::get_if<std::string>(&row[c])) {
        out << *s;
      } else {
        out << format_number(std::get<double>(row[c]));
      }
    }
    out << "\n";
  }
  return out.str();
}

void write_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << contents;
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser over seed and index.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

CrosscheckCase crosscheck_case(std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng(cell_seed(seed, index));
  std::uniform_real_distribution<double> theta(0.0, kPi);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CrosscheckCase cs;
  cs.alice = {theta(rng), phase(rng), phase(rng)};
  cs.bob = {theta(rng), phase(rng), phase(rng)};
  cs.p1 = unit(rng);
  cs.p2 = unit(rng);
  return cs;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum games under decoherence: reproductions and consistency checks"};
  app.require_subcommand(1);

  RunSpec spec;
  std::string format = "csv";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", spec.out_path, "Write the table to FILE instead of stdout");
  app.add_option("--seed", spec.seed, "Random seed")->capture_default_str();
  app.add_option("--jobs", spec.workers, "Worker threads (0 = hardware concurrency)");
  app.fallthrough();

  auto* surface_cmd = app.add_subcommand("surface", "Payoffs vs p and Alice's theta");
  surface_cmd->add_option("--game", spec.game, "pd, chicken or bos");
  surface_cmd->add_option("--grid", spec.grid, "Theta steps (default 33)");
  surface_cmd->add_option("--steps", spec.steps, "Number of p values in [0, 1]");

  auto* curves_cmd = app.add_subcommand("curves", "Payoffs vs p with Alice's best classical reply");
  curves_cmd->add_option("--game", spec.game, "Restrict to one game");
  curves_cmd->add_option("--grid", spec.grid, "Theta steps for Alice's search (default 33)");
  curves_cmd->add_option("--steps", spec.steps, "Number of p values in [0, 1]");

  auto* penny_cmd = app.add_subcommand("pennyflip", "Q's win probability vs p");
  penny_cmd->add_option("--steps", spec.steps, "Number of p values in [0, 1]");

  auto* truel_cmd = app.add_subcommand("truel-boundary", "Alice's truel payoffs over (a, b)");
  truel_cmd->add_option("--grid", spec.grid, "Points per axis (default 21, minimum 8)");
  truel_cmd->add_option("--p", spec.p_values, "Measurement probabilities (default 0 .25 .5 .75 1)");
  truel_cmd->add_option("--c", spec.c, "Charles's failure probability")->capture_default_str();

  auto* cross_cmd = app.add_subcommand("crosscheck", "Closed form vs density-matrix pipeline");
  cross_cmd->add_option("--samples", spec.samples, "Random samples per game")
      ->capture_default_str();
  cross_cmd->add_option("--game", spec.game, "Restrict to one game");

  auto* nash_cmd = app.add_subcommand("nash", "Pure-profile equilibria on a strategy grid");
  nash_cmd->add_option("--game", spec.game, "pd, chicken or bos");
  nash_cmd->add_option("--grid", spec.grid, "Theta steps (default 33)");
  nash_cmd->add_option("--alpha-steps", spec.alpha_steps)->capture_default_str();
  nash_cmd->add_option("--beta-steps", spec.beta_steps)->capture_default_str();
  nash_cmd->add_flag("--quantum", spec.quantum, "Search the full SU(2) grid");
  nash_cmd->add_option("--p", spec.p_values, "Decoherence probabilities (default 0)");
  nash_cmd->add_option("--tol", spec.tol, "Improvement tolerance")->capture_default_str();
  nash_cmd->add_flag("--crosscheck", spec.crosscheck, "Re-run equilibria through the pipeline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalidArguments;
  }

  if (surface_cmd->parsed()) spec.command = Command::kSurface;
  if (curves_cmd->parsed()) spec.command = Command::kCurves;
  if (penny_cmd->parsed()) spec.command = Command::kPennyflip;
  if (truel_cmd->parsed()) spec.command = Command::kTruelBoundary;
  if (cross_cmd->parsed()) spec.command = Command::kCrosscheck;
  if (nash_cmd->parsed()) spec.command = Command::kNash;
  spec.format = format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;

  Table table;
  try {
    table = compute(spec);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidArguments;
  }

  const std::string text = render(table, spec.format);
  try {
    if (spec.out_path.empty()) {
      out << text;
    } else {
      write_atomically(spec.out_path, text);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidArguments;
  }
  if (!table.consistent) {
    err << "consistency check failed: " << table.diagnostic << "\n";
    return kExitConsistencyFailure;
  }
  return kExitOk;
}

}  // namespace qgd::cli
