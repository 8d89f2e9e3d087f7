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

#include "qgd/pennyflip.h"

namespace qgd {

DensityMatrix final_state(const PennyConfig& cfg) {
  const KrausSet decohere = measurement_kraus(cfg.p);
  const Unitary h(hadamard());
  const Unitary p_move(cfg.p_move == PennyMove::kFlip ? pauli_x() : SquareMatrix::identity(2));

  DensityMatrix rho = conjugate_by(DensityMatrix::basis_state(1, 0), h);
  if (cfg.placement == MeasurementPlacement::kAfterFirstQMove) rho = apply_channel(rho, decohere);
  rho = conjugate_by(rho, p_move);
  if (cfg.placement == MeasurementPlacement::kAfterPMove) rho = apply_channel(rho, decohere);
  return conjugate_by(rho, h);
}

double q_win_probability(double p) { return final_state({p}).probabilities()[0]; }

}  // namespace qgd
