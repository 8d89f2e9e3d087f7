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

#include "qgd/kernel.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qgd {
namespace {

bool valid_dim(std::size_t dim) {
  return dim == 1 || dim == 2 || dim == 4 || dim == 8;
}

std::size_t qubits_for_dim(std::size_t dim) {
  return static_cast<std::size_t>(std::countr_zero(dim));
}

void require_same_dim(const SquareMatrix& a, const SquareMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch " << a.dim() << " vs " << b.dim();
    throw std::invalid_argument(msg.str());
  }
}

// Determinant by Gaussian elimination with partial pivoting. n <= 8.
Complex determinant(std::array<Complex, kMaxDim * kMaxDim> a, std::size_t n) {
  Complex det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (a[pivot * n + col] == Complex{}) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
      det = -det;
    }
    const Complex d = a[col * n + col];
    det *= d;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a[r * n + col] / d;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return det;
}

}  // namespace

SquareMatrix::SquareMatrix(std::size_t dim) : dim_(dim) {
  if (!valid_dim(dim)) {
    throw std::invalid_argument("SquareMatrix: dimension must be 1, 2, 4 or 8, got " +
                                std::to_string(dim));
  }
}

SquareMatrix::SquareMatrix(std::size_t dim, std::initializer_list<Complex> row_major)
    : SquareMatrix(dim) {
  if (row_major.size() != dim * dim) {
    throw std::invalid_argument("SquareMatrix: expected " + std::to_string(dim * dim) +
                                " entries, got " + std::to_string(row_major.size()));
  }
  std::copy(row_major.begin(), row_major.end(), data_.begin());
}

SquareMatrix SquareMatrix::identity(std::size_t dim) {
  SquareMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::diagonal(std::span<const Complex> diag) {
  SquareMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

SquareMatrix SquareMatrix::adjoint() const {
  SquareMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Complex SquareMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] += other.data_[i];
  return *this;
}

SquareMatrix& SquareMatrix::operator-=(const SquareMatrix& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] -= other.data_[i];
  return *this;
}

SquareMatrix& SquareMatrix::operator*=(Complex scale) {
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] *= scale;
  return *this;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a, b, "operator*");
  const std::size_t n = a.dim_;
  SquareMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a.data_[r * n + k];
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) out.data_[r * n + c] += ark * b.data_[k * n + c];
    }
  }
  return out;
}

bool SquareMatrix::all_finite() const {
  for (std::size_t i = 0; i < dim_ * dim_; ++i) {
    if (!std::isfinite(data_[i].real()) || !std::isfinite(data_[i].imag())) return false;
  }
  return true;
}

double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  }
  return worst;
}

SquareMatrix tensor_product(const SquareMatrix& a, const SquareMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da * db > kMaxDim) {
    throw std::invalid_argument("tensor_product: result dimension " + std::to_string(da * db) +
                                " exceeds " + std::to_string(kMaxDim));
  }
  SquareMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < db; ++k) {
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

SquareMatrix tensor_product(std::span<const SquareMatrix> factors) {
  SquareMatrix out = SquareMatrix::identity(1);
  for (const auto& f : factors) out = tensor_product(out, f);
  return out;
}

SquareMatrix embed_single_qubit(const SquareMatrix& op, std::size_t qubit,
                                std::size_t qubit_count) {
  if (op.dim() != 2) throw std::invalid_argument("embed_single_qubit: operator must be 2x2");
  if (qubit >= qubit_count || qubit_count > kMaxQubits) {
    throw std::invalid_argument("embed_single_qubit: qubit " + std::to_string(qubit) +
                                " out of range for " + std::to_string(qubit_count) + " qubits");
  }
  const std::size_t before = std::size_t{1} << qubit;
  const std::size_t after = std::size_t{1} << (qubit_count - qubit - 1);
  return tensor_product(tensor_product(SquareMatrix::identity(before), op),
                        SquareMatrix::identity(after));
}

SquareMatrix pauli_x() { return SquareMatrix(2, {0.0, 1.0, 1.0, 0.0}); }

SquareMatrix hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  return SquareMatrix(2, {h, h, h, -h});
}

SquareMatrix projector(std::size_t dim, std::size_t index) {
  SquareMatrix m(dim);
  if (index >= dim) throw std::invalid_argument("projector: index out of range");
  m(index, index) = 1.0;
  return m;
}

double unitarity_deviation(const SquareMatrix& m) {
  return max_abs_diff(m * m.adjoint(), SquareMatrix::identity(m.dim()));
}

Unitary::Unitary(SquareMatrix m) : m_(std::move(m)) {
  if (!m_.all_finite()) throw std::invalid_argument("Unitary: non-finite entry");
  const double dev = unitarity_deviation(m_);
  if (dev > kValidationTol) {
    std::ostringstream msg;
    msg << "Unitary: |U U^dagger - I| = " << dev << " exceeds " << kValidationTol;
    throw std::invalid_argument(msg.str());
  }
}

Unitary Unitary::adjoint() const { return Unitary(m_.adjoint(), Trusted{}); }

Unitary operator*(const Unitary& a, const Unitary& b) {
  return Unitary(a.m_ * b.m_, Unitary::Trusted{});
}

Unitary tensor_product(const Unitary& a, const Unitary& b) {
  return Unitary(tensor_product(a.m_, b.m_), Unitary::Trusted{});
}

double completeness_deviation(std::span<const SquareMatrix> operators) {
  if (operators.empty()) return 1.0;
  SquareMatrix sum(operators.front().dim());
  for (const auto& e : operators) sum += e.adjoint() * e;
  return max_abs_diff(sum, SquareMatrix::identity(sum.dim()));
}

KrausSet::KrausSet(std::vector<SquareMatrix> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) throw std::invalid_argument("KrausSet: no operators");
  for (const auto& e : ops_) {
    if (e.dim() != ops_.front().dim()) {
      throw std::invalid_argument("KrausSet: operators have differing dimensions");
    }
    if (!e.all_finite()) throw std::invalid_argument("KrausSet: non-finite entry");
  }
  const double dev = completeness_deviation(ops_);
  if (dev > kValidationTol) {
    std::ostringstream msg;
    msg << "KrausSet: completeness deviation |sum E^dagger E - I| = " << dev << " exceeds "
        << kValidationTol;
    throw std::invalid_argument(msg.str());
  }
}

InvariantReport measure_invariants(const SquareMatrix& m) {
  InvariantReport report;
  const std::size_t n = m.dim();
  report.hermiticity_deviation = max_abs_diff(m, m.adjoint());
  report.trace_deviation = std::abs(m.trace() - 1.0);

  // Every principal minor of a PSD matrix is non-negative.
  double min_minor = 0.0;
  bool first = true;
  std::array<Complex, kMaxDim * kMaxDim> sub{};
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::array<std::size_t, kMaxDim> idx{};
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) idx[k++] = i;
    }
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) sub[r * k + c] = m(idx[r], idx[c]);
    }
    const double minor = determinant(sub, k).real();
    if (first || minor < min_minor) min_minor = minor;
    first = false;
  }
  report.min_principal_minor = min_minor;
  return report;
}

DensityMatrix DensityMatrix::from_matrix(SquareMatrix m) {
  if (m.dim() < 2) throw std::invalid_argument("DensityMatrix: dimension must be 2, 4 or 8");
  if (!m.all_finite()) throw std::invalid_argument("DensityMatrix: non-finite entry");
  const InvariantReport r = measure_invariants(m);
  if (!r.ok()) {
    std::ostringstream msg;
    msg << "DensityMatrix: invalid state (hermiticity " << r.hermiticity_deviation
        << ", trace deviation " << r.trace_deviation << ", min principal minor "
        << r.min_principal_minor << ")";
    throw std::invalid_argument(msg.str());
  }
  const std::size_t qubits = qubits_for_dim(m.dim());
  return DensityMatrix(qubits, std::move(m));
}

DensityMatrix DensityMatrix::basis_state(std::size_t qubit_count, std::size_t index) {
  if (qubit_count == 0 || qubit_count > kMaxQubits) {
    throw std::invalid_argument("basis_state: qubit count must be 1..3");
  }
  return DensityMatrix(qubit_count, projector(std::size_t{1} << qubit_count, index));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t qubit_count) {
  if (qubit_count == 0 || qubit_count > kMaxQubits) {
    throw std::invalid_argument("maximally_mixed: qubit count must be 1..3");
  }
  const std::size_t dim = std::size_t{1} << qubit_count;
  return DensityMatrix(qubit_count,
                       SquareMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

std::vector<double> DensityMatrix::probabilities() const {
  std::vector<double> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = m_(i, i).real();
  return out;
}

DensityMatrix density_from_state(std::span<const Complex> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || !valid_dim(dim)) {
    throw std::invalid_argument("density_from_state: length must be 2, 4 or 8, got " +
                                std::to_string(dim));
  }
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  const double norm = std::sqrt(norm2);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kValidationTol) {
    std::ostringstream msg;
    msg << "density_from_state: state norm " << norm << " is not 1";
    throw std::invalid_argument(msg.str());
  }
  SquareMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
  }
  return DensityMatrix(qubits_for_dim(dim), std::move(m));
}

DensityMatrix conjugate_by(const DensityMatrix& rho, const Unitary& u) {
  require_same_dim(rho.matrix(), u.matrix(), "conjugate_by");
  return DensityMatrix(rho.qubit_count(), u.matrix() * rho.matrix() * u.matrix().adjoint());
}

DensityMatrix conjugate_by(const DensityMatrix& rho, const SquareMatrix& u) {
  return conjugate_by(rho, Unitary(u));
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& k) {
  if (k.dim() != rho.dim()) {
    throw std::invalid_argument("apply_channel: Kraus dimension " + std::to_string(k.dim()) +
                                " does not match state dimension " + std::to_string(rho.dim()));
  }
  SquareMatrix out(rho.dim());
  for (const auto& e : k.operators()) out += e * rho.matrix() * e.adjoint();
  return DensityMatrix(rho.qubit_count(), std::move(out));
}

DensityMatrix apply_channel(const DensityMatrix& rho, std::span<const SquareMatrix> operators) {
  return apply_channel(rho, KrausSet({operators.begin(), operators.end()}));
}

KrausSet measurement_kraus(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("measurement channel: probability " + std::to_string(p) +
                                " outside [0, 1]");
  }
  const double sp = std::sqrt(p);
  const double sq = std::sqrt(1.0 - p);
  return KrausSet({SquareMatrix(2, {sp, 0.0, 0.0, 0.0}), SquareMatrix(2, {0.0, 0.0, 0.0, sp}),
                   SquareMatrix(2, {sq, 0.0, 0.0, sq})});
}

DensityMatrix measure_qubit(const DensityMatrix& rho, std::size_t qubit, double p) {
  const KrausSet single = measurement_kraus(p);
  std::vector<SquareMatrix> embedded;
  embedded.reserve(3);
  for (const auto& e : single.operators()) {
    embedded.push_back(embed_single_qubit(e, qubit, rho.qubit_count()));
  }
  return apply_channel(rho, KrausSet(std::move(embedded)));
}

DensityMatrix measurement_channel(const DensityMatrix& rho, double p) {
  DensityMatrix out = rho;
  for (std::size_t q = 0; q < rho.qubit_count(); ++q) out = measure_qubit(out, q, p);
  return out;
}

double dephasing_probability(double lambda) {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("dephasing: rate must be non-negative, got " +
                                std::to_string(lambda));
  }
  if (lambda > kDephasingCap) return 1.0;
  return -std::expm1(-lambda);
}

DensityMatrix dephasing_channel(const DensityMatrix& rho, double lambda) {
  return measurement_channel(rho, dephasing_probability(lambda));
}

}  // namespace qgd
