// Copyright 2026 The randcorr Authors
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

#pragma once

// Small dense complex linear algebra for multi-qubit states: Pauli
// operators, Kronecker products, partial traces, Pauli correlation tensors
// and the standard state families used throughout the library.
//
// Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
// computational-basis index.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "randcorr/rng.hpp"

namespace randcorr {

using Complex = std::complex<double>;
using ComplexOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix3 = Eigen::Matrix3d;

/// Largest register held as a dense 2^N x 2^N matrix (4096^2 complex = 256 MB
/// worst case; typical use stays far below).
inline constexpr int kMaxDenseQubits = 12;

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };
inline constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

Matrix2c pauli(Axis axis);

/// Kronecker product a (x) b. Throws Dimension if the result would exceed
/// `max_qubits` qubits.
ComplexOperator tensor_product(const ComplexOperator& a, const ComplexOperator& b,
                               int max_qubits = kMaxDenseQubits);

/// Number of qubits for a power-of-two dimension; throws Dimension otherwise.
int qubits_for_dim(Eigen::Index dim);

bool is_hermitian(const ComplexOperator& op, double tol = 1e-12);
bool is_unitary(const ComplexOperator& op, double tol = 1e-10);

struct StateCheck {
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;

  bool ok(double tol = 1e-10) const {
    return trace_error <= tol && hermiticity_error <= tol && min_eigenvalue >= -tol;
  }
};

/// Unit-trace, Hermitian, positive semidefinite operator on N qubits.
class DensityMatrix {
 public:
  /// Validates trace (1e-12), Hermiticity (1e-12) and positivity (-1e-10);
  /// throws InvalidState on failure.
  explicit DensityMatrix(ComplexOperator op);

  /// For constructors whose output is a state by construction (projectors,
  /// convex mixtures). Only the dimension is checked.
  static DensityMatrix trusted(ComplexOperator op);
  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int nqubits);

  int nqubits() const noexcept { return nqubits_; }
  Eigen::Index dim() const noexcept { return op_.rows(); }
  const ComplexOperator& op() const noexcept { return op_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return op_(r, c); }

  /// Full numerical validation, including an eigendecomposition.
  StateCheck check() const;

 private:
  struct Unchecked {};
  DensityMatrix(ComplexOperator op, Unchecked);

  ComplexOperator op_;
  int nqubits_ = 0;
};

/// Convex combination sum_i w_i rho_i (weights must be non-negative, sum 1).
DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights);

struct BlochDirection {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double norm() const;
  BlochDirection operator-() const { return {-x, -y, -z}; }
  static BlochDirection normalized(double x, double y, double z);
};

/// Pauli expectation values T_{i1..iN} = tr[rho sigma_{i1} (x) ... (x) sigma_{iN}].
///
/// Entries are stored with qubit 0 as the most significant base-3 digit.
class CorrelationTensor {
 public:
  CorrelationTensor(int nqubits, std::vector<double> entries);
  static CorrelationTensor zeros(int nqubits);
  static CorrelationTensor from_matrix(const Matrix3& t);  // 2 qubits

  int nqubits() const noexcept { return nqubits_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const double> entries() const noexcept { return entries_; }

  double operator[](std::size_t flat) const { return entries_[flat]; }
  double& operator[](std::size_t flat) { return entries_[flat]; }
  double at(std::initializer_list<Axis> axes) const;
  double at(std::span<const Axis> axes) const;

  static std::size_t flat_index(std::span<const Axis> axes);

  CorrelationTensor scaled(double s) const;
  double squared_norm() const;
  Matrix3 as_matrix() const;  // 2 qubits only

 private:
  int nqubits_;
  std::vector<double> entries_;
};

std::size_t pow3(int n);

CorrelationTensor correlation_tensor(const DensityMatrix& rho);
CorrelationTensor correlation_tensor(const StateVector& psi);

/// 3x3 tensor of <1..sigma_i(alpha)..sigma_j(beta)..1>.
CorrelationTensor two_body_correlation_tensor(const DensityMatrix& rho, int alpha, int beta);

/// Reduced state on `keep` (sorted, unique, in range), qubits kept in order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep);

/// Applies (x)_n U_n to rho: rho -> U rho U^dagger.
DensityMatrix apply_local_unitaries(const DensityMatrix& rho, std::span<const Matrix2c> unitaries);
/// Applies a single-qubit gate to qubit `q` of a state vector in place.
void apply_single_qubit(StateVector& psi, const Matrix2c& gate, int q);

/// Rotation matrix R with U sigma_j U^dagger = sum_i R_ij sigma_i.
Matrix3 bloch_rotation(const Matrix2c& u);
/// SU(2) element realizing a proper rotation (inverse of bloch_rotation up to sign).
Matrix2c unitary_for_rotation(const Matrix3& r);

// ---------------------------------------------------------------------------
// Bell-diagonal states.

struct BellDiagonalParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  std::array<double, 3> c() const { return {c1, c2, c3}; }
  std::array<double, 4> eigenvalues() const;
  bool is_physical(double tol = 1e-10) const;
  double l1_norm() const;
  /// Exact separability rule for Bell-diagonal states: |c1|+|c2|+|c3| <= 1.
  bool is_separable() const { return l1_norm() <= 1.0; }
};

/// (1/4)[1 + sum_j c_j sigma_j (x) sigma_j]; throws NonPhysicalParams if an
/// eigenvalue is below -1e-10.
DensityMatrix bell_diagonal(const BellDiagonalParams& params);

/// Local-unitary diagonalization of the correlation matrix followed by the
/// twirl rho -> (rho + sum_i s_i s_i rho s_i s_i)/4. Preserves all moments.
BellDiagonalParams bd_project(const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// State families.

struct DickeMarginalCoeffs {
  double vplus = 0.0;
  double vminus = 0.0;
  double y = 0.0;
};

/// Two-body marginal of |D^N_k>: v+ |00><00| + v- |11><11| + y (|01>+|10>)(<01|+<10|).
/// Valid for any 2 <= N <= 10^6.
DickeMarginalCoeffs dicke_marginal_coeffs(long long n, long long k);
DensityMatrix dicke_two_body_marginal(long long n, long long k);
/// Closed-form correlation tensor of the marginal: diag(2y, 2y, v+ + v- - 2y).
CorrelationTensor dicke_marginal_tensor(long long n, long long k);

StateVector dicke_vector(int n, int k);
DensityMatrix dicke_state(int n, int k);
DensityMatrix w_state(int n);

StateVector psi_theta_vector(int n, double theta);  // cos|0..0> + sin|1..1>
DensityMatrix psi_theta(int n, double theta);
DensityMatrix ghz(int n);
/// p 1/2^N + (1-p)|GHZ><GHZ|.
DensityMatrix noisy_ghz(int n, double p);
/// Closed-form tensor of cos|0..0> + sin|1..1> (any N, no dense matrices).
CorrelationTensor psi_theta_tensor(int n, double theta);

/// Three-qubit form l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>
/// (5 lambdas) or, for any N, the W-class form
/// x0|0..0> + sum_i x_i |0..1_i..0> (N+1 lambdas).
struct StandardFormParams {
  std::vector<double> lambdas;
  double phi = 0.0;
};

StateVector standard_form_vector(int n, const StandardFormParams& params, bool wclass_only);
DensityMatrix standard_form_state(int n, const StandardFormParams& params, bool wclass_only);
/// W-class amplitudes for N+1 non-negative, normalized coefficients.
StateVector wclass_vector(int n, std::span<const double> x);

// ---------------------------------------------------------------------------
// Random generators. Every generator is a pure function of its seed.

Matrix2c random_su2(Rng& rng);
StateVector random_pure_vector(int n, Rng& rng);
StateVector random_product_vector(int n, Rng& rng);
/// Random W-class standard form conjugated by Haar-random local unitaries.
StateVector random_wclass_vector(int n, Rng& rng);
/// Uniform over the physical tetrahedron of Bell-diagonal parameters.
BellDiagonalParams random_bd_params(Rng& rng);

DensityMatrix random_product_state(int n, std::uint64_t seed);
DensityMatrix random_separable_mixture(int n, int rank, std::uint64_t seed);
DensityMatrix random_mixed_wclass(int n, int count, std::uint64_t seed);
/// Flat-Dirichlet mixture of r Haar-random pure states, r uniform in [1, 2^N].
DensityMatrix random_density_matrix(int n, std::uint64_t seed);

}  // namespace randcorr
