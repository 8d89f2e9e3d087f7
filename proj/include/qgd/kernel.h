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

#ifndef QGD_KERNEL_H
#define QGD_KERNEL_H

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qgd {

using Complex = std::complex<double>;

/// Largest supported Hilbert-space dimension (three qubits).
inline constexpr std::size_t kMaxDim = 8;
inline constexpr std::size_t kMaxQubits = 3;

/// Validation tolerance shared by Hermiticity, trace, unitarity, Kraus
/// completeness and state-norm checks.
inline constexpr double kValidationTol = 1e-9;

/// Rates above this are treated as full dephasing (e^-lambda underflows).
inline constexpr double kDephasingCap = 700.0;

/// Dense row-major complex matrix of dimension 1, 2, 4 or 8.
///
/// Dimension 1 exists only as the neutral element of the tensor product;
/// every physical operator in this library is 2x2, 4x4 or 8x8.
class SquareMatrix {
 public:
  SquareMatrix() : SquareMatrix(1) {}
  explicit SquareMatrix(std::size_t dim);
  SquareMatrix(std::size_t dim, std::initializer_list<Complex> row_major);

  static SquareMatrix identity(std::size_t dim);
  static SquareMatrix diagonal(std::span<const Complex> diag);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  SquareMatrix adjoint() const;
  Complex trace() const;

  SquareMatrix& operator+=(const SquareMatrix& other);
  SquareMatrix& operator-=(const SquareMatrix& other);
  SquareMatrix& operator*=(Complex scale);

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(SquareMatrix a, Complex s) { return a *= s; }
  friend SquareMatrix operator*(Complex s, SquareMatrix a) { return a *= s; }

  bool all_finite() const;

 private:
  std::size_t dim_;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

/// Largest entrywise modulus of a - b. Dimensions must match.
double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b);

/// Kronecker product; rejects results larger than 8x8.
SquareMatrix tensor_product(const SquareMatrix& a, const SquareMatrix& b);

/// Tensor product of a list of operators, first factor most significant.
SquareMatrix tensor_product(std::span<const SquareMatrix> factors);

/// Embeds a 2x2 operator on `qubit` of an `qubit_count`-qubit register.
/// Qubit 0 is the most significant bit of the basis index.
SquareMatrix embed_single_qubit(const SquareMatrix& op, std::size_t qubit,
                                std::size_t qubit_count);

/// Common single-qubit matrices.
SquareMatrix pauli_x();
SquareMatrix hadamard();
SquareMatrix projector(std::size_t dim, std::size_t index);

/// A square matrix known to satisfy U U^dagger = I within kValidationTol.
class Unitary {
 public:
  explicit Unitary(SquareMatrix m);

  const SquareMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  Unitary adjoint() const;

  friend Unitary operator*(const Unitary& a, const Unitary& b);
  friend Unitary tensor_product(const Unitary& a, const Unitary& b);

 private:
  struct Trusted {};
  Unitary(SquareMatrix m, Trusted) : m_(std::move(m)) {}
  SquareMatrix m_;
};

/// Max entry of |U U^dagger - I|.
double unitarity_deviation(const SquareMatrix& m);

/// Kraus operators {E_j} with sum_j E_j^dagger E_j = I within kValidationTol.
class KrausSet {
 public:
  explicit KrausSet(std::vector<SquareMatrix> operators);

  std::span<const SquareMatrix> operators() const { return ops_; }
  std::size_t dim() const { return ops_.front().dim(); }

 private:
  std::vector<SquareMatrix> ops_;
};

/// Max entry of |sum_j E_j^dagger E_j - I|.
double completeness_deviation(std::span<const SquareMatrix> operators);

struct InvariantReport {
  double hermiticity_deviation = 0.0;
  double trace_deviation = 0.0;
  // Smallest principal minor; non-negative for a PSD matrix.
  double min_principal_minor = 0.0;

  bool ok(double tol = kValidationTol) const {
    return hermiticity_deviation <= tol && trace_deviation <= tol &&
           min_principal_minor >= -tol;
  }
};

/// Hermiticity, trace and positivity measurements of an arbitrary matrix.
InvariantReport measure_invariants(const SquareMatrix& m);

/// Density matrix of 1 to 3 qubits.
class DensityMatrix {
 public:
  /// Validates the matrix; throws std::invalid_argument on failure.
  static DensityMatrix from_matrix(SquareMatrix m);

  /// Computational basis state |index><index|.
  static DensityMatrix basis_state(std::size_t qubit_count, std::size_t index);

  /// Maximally mixed state I / 2^N.
  static DensityMatrix maximally_mixed(std::size_t qubit_count);

  std::size_t qubit_count() const { return qubit_count_; }
  std::size_t dim() const { return m_.dim(); }
  const SquareMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  /// Diagonal in the computational basis (Born-rule outcome probabilities).
  std::vector<double> probabilities() const;

  InvariantReport check_invariants() const { return measure_invariants(m_); }

 private:
  friend DensityMatrix density_from_state(std::span<const Complex> amplitudes);
  friend DensityMatrix conjugate_by(const DensityMatrix& rho, const Unitary& u);
  friend DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& k);

  DensityMatrix(std::size_t qubit_count, SquareMatrix m)
      : qubit_count_(qubit_count), m_(std::move(m)) {}

  std::size_t qubit_count_;
  SquareMatrix m_;
};

/// |psi><psi| for a normalised amplitude vector of length 2, 4 or 8.
DensityMatrix density_from_state(std::span<const Complex> amplitudes);

/// U rho U^dagger.
DensityMatrix conjugate_by(const DensityMatrix& rho, const Unitary& u);
DensityMatrix conjugate_by(const DensityMatrix& rho, const SquareMatrix& u);

/// sum_j E_j rho E_j^dagger.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& k);
DensityMatrix apply_channel(const DensityMatrix& rho,
                            std::span<const SquareMatrix> operators);

/// Single-qubit measurement-with-probability-p channel:
/// {sqrt(p)|0><0|, sqrt(p)|1><1|, sqrt(1-p) I}.
KrausSet measurement_kraus(double p);

/// The measurement channel applied to one qubit of rho.
DensityMatrix measure_qubit(const DensityMatrix& rho, std::size_t qubit, double p);

/// The measurement channel applied to every qubit in turn (qubit 0 first).
DensityMatrix measurement_channel(const DensityMatrix& rho, double p);

/// Pure dephasing with rate lambda; same as measurement_channel(rho, 1 - e^-lambda).
DensityMatrix dephasing_channel(const DensityMatrix& rho, double lambda);

/// 1 - e^-lambda, saturating at 1 above kDephasingCap.
double dephasing_probability(double lambda);

}  // namespace qgd

#endif  // QGD_KERNEL_H
