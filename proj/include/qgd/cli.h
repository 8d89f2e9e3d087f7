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

#ifndef QGD_CLI_H
#define QGD_CLI_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qgd/ewl.h"

namespace qgd::cli {

enum class Command { kSurface, kCurves, kPennyflip, kTruelBoundary, kCrosscheck, kNash };
enum class OutputFormat { kCsv, kJson };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidArguments = 1;
inline constexpr int kExitConsistencyFailure = 2;

/// Largest tolerated |closed form - pipeline| payoff difference.
inline constexpr double kConsistencyTol = 1e-9;

struct RunSpec {
  Command command = Command::kSurface;
  // Empty means every catalog game where the command allows it.
  std::string game;
  // Theta steps (surface, curves, nash) or (a, b) resolution (truel-boundary).
  // 0 selects the command's default.
  std::size_t grid = 0;
  std::size_t alpha_steps = 17;
  std::size_t beta_steps = 17;
  // Number of evenly spaced p values in [0, 1].
  std::size_t steps = 11;
  // Explicit p values; overrides `steps` where supported.
  std::vector<double> p_values;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  double c = 0.0;
  bool quantum = false;
  double tol = 1e-6;
  bool crosscheck = false;
  std::size_t workers = 0;
  OutputFormat format = OutputFormat::kCsv;
  std::string out_path;

  /// Throws std::invalid_argument when a parameter is unusable.
  void validate() const;
};

using Cell = std::variant<std::string, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // False when an internal cross-check exceeded kConsistencyTol.
  bool consistent = true;
  std::string diagnostic{};
};

/// Computes the command's table. Deterministic for a fixed spec, whatever
/// the worker count.
Table compute(const RunSpec& spec);

/// CSV with one header row, or a JSON array of row objects. Numbers use 17
/// significant digits.
std::string render(const Table& table, OutputFormat format);

/// Writes via a temporary file in the same directory and a rename.
void write_atomically(const std::string& path, const std::string& contents);

/// Seed of the `index`-th random cell, mixed from the run seed.
std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t index);

struct CrosscheckCase {
  StrategyParams alice;
  StrategyParams bob;
  double p1 = 0.0;
  double p2 = 0.0;
};

/// The `index`-th uniformly random strategy pair and decoherence levels.
CrosscheckCase crosscheck_case(std::uint64_t seed, std::uint64_t index);

/// Parses argv, runs, writes output; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qgd::cli

#endif  // QGD_CLI_H
