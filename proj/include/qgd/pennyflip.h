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

// Penny flip: Q plays Hadamard, P flips or not, Q plays Hadamard again; Q
// wins on heads (|0>). A measurement with probability p hits the coin once.

#ifndef QGD_PENNYFLIP_H
#define QGD_PENNYFLIP_H

#include "qgd/kernel.h"

namespace qgd {

enum class PennyMove { kIdentity, kFlip };

/// Where the decohering measurement is inserted.
enum class MeasurementPlacement { kAfterFirstQMove, kAfterPMove };

struct PennyConfig {
  double p = 0.0;
  PennyMove p_move = PennyMove::kIdentity;
  MeasurementPlacement placement = MeasurementPlacement::kAfterFirstQMove;
};

/// Coin state after H, measurement, P's move, H applied to |0><0|.
DensityMatrix final_state(const PennyConfig& cfg);

/// Probability that the coin shows heads at the end; P's move is irrelevant.
double q_win_probability(double p);

}  // namespace qgd

#endif  // QGD_PENNYFLIP_H
