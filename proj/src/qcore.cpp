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

#include "randcorr/qcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "randcorr/error.hpp"

namespace randcorr {
namespace {

constexpr Complex kI{0.0, 1.0};

// i^k for k mod 4.
Complex ipow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void fwht(std::vector<Complex>& a) {
  const std::size_t n = a.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const Complex u = a[j];
        const Complex v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
    }
  }
}

// Shared kernel for dense and pure inputs. `pair(r, f)` must return
// <r|rho|r^f> (dense) or conj(psi(r^f)) psi(r) (pure); for each flip mask f
// the Walsh-Hadamard transform over r yields every Pauli string whose X/Y
// positions are exactly f.
template <typename Pair>
CorrelationTensor correlation_tensor_impl(int n, Pair pair) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t full = dim - 1;
  std::vector<double> entries(pow3(n), 0.0);
  std::vector<Complex> a(dim);
  std::vector<std::size_t> digit_weight(n);
  for (int q = 0; q < n; ++q) digit_weight[q] = pow3(n - 1 - q);

  for (std::size_t f = 0; f < dim; ++f) {
    for (std::size_t r = 0; r < dim; ++r) a[r] = pair(r, f);
    fwht(a);
    // Enumerate subsets ymask of f; Y on ymask, X on f \ ymask, Z elsewhere.
    std::size_t ymask = 0;
    while (true) {
      const std::size_t phase_mask = ymask | (full & ~f);
      const int ny = std::popcount(ymask);
      const double value = (ipow(ny) * a[phase_mask]).real();
      std::size_t flat = 0;
      for (int q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        const std::size_t digit = (f & bit) ? ((ymask & bit) ? 1 : 0) : 2;
        flat += digit * digit_weight[q];
      }
      entries[flat] = value;
      if (ymask == f) break;
      ymask = (ymask - f) & f;  // next subset in increasing order
    }
  }
  return CorrelationTensor(n, std::move(entries));
}

// tr[rho P] for a Pauli string with letters 0=I, 1=X, 2=Y, 3=Z per qubit.
double pauli_string_expectation(const DensityMatrix& rho, std::span<const int> letters) {
  const int n = rho.nqubits();
  std::size_t flip = 0;
  std::size_t phase = 0;
  int ny = 0;
  for (int q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    if (letters[q] == 1 || letters[q] == 2) flip |= bit;
    if (letters[q] == 2 || letters[q] == 3) phase |= bit;
    if (letters[q] == 2) ++ny;
  }
  Complex acc{0.0, 0.0};
  const std::size_t dim = rho.dim();
  for (std::size_t r = 0; r < dim; ++r) {
    const double sign = (std::popcount(r & phase) & 1) ? -1.0 : 1.0;
    acc += sign * rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r ^ flip));
  }
  return (ipow(ny) * acc).real();
}

}  // namespace

std::size_t pow3(int n) {
  std::size_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

Matrix2c pauli(Axis axis) {
  Matrix2c m;
  switch (axis) {
    case Axis::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Axis::Y: m << 0.0, -kI, kI, 0.0; break;
    case Axis::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

int qubits_for_dim(Eigen::Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    raise(ErrorKind::Dimension, "dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

ComplexOperator tensor_product(const ComplexOperator& a, const ComplexOperator& b, int max_qubits) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  const Eigen::Index limit = Eigen::Index{1} << max_qubits;
  if (rows > limit || cols > limit) {
    raise(ErrorKind::Dimension,
          "tensor product exceeds " + std::to_string(max_qubits) + " qubits");
  }
  ComplexOperator out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool is_hermitian(const ComplexOperator& op, double tol) {
  return op.rows() == op.cols() && (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexOperator& op, double tol) {
  if (op.rows() != op.cols()) return false;
  const ComplexOperator id = ComplexOperator::Identity(op.rows(), op.cols());
  return (op * op.adjoint() - id).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexOperator op, Unchecked) : op_(std::move(op)) {
  if (op_.rows() != op_.cols()) raise(ErrorKind::Dimension, "density matrix must be square");
  nqubits_ = qubits_for_dim(op_.rows());
  if (nqubits_ > kMaxDenseQubits) {
    raise(ErrorKind::Dimension, "dense states are limited to " + std::to_string(kMaxDenseQubits) + " qubits");
  }
}

DensityMatrix::DensityMatrix(ComplexOperator op) : DensityMatrix(std::move(op), Unchecked{}) {
  const StateCheck c = check();
  if (c.trace_error > 1e-12 || c.hermiticity_error > 1e-12 || c.min_eigenvalue < -1e-10) {
    raise(ErrorKind::InvalidState,
          "trace error " + std::to_string(c.trace_error) + ", hermiticity error " +
              std::to_string(c.hermiticity_error) + ", min eigenvalue " + std::to_string(c.min_eigenvalue));
  }
}

DensityMatrix DensityMatrix::trusted(ComplexOperator op) { return DensityMatrix(std::move(op), Unchecked{}); }

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  const StateVector v = psi / psi.norm();
  return DensityMatrix(v * v.adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(int nqubits) {
  const Eigen::Index dim = Eigen::Index{1} << nqubits;
  return DensityMatrix(ComplexOperator::Identity(dim, dim) / static_cast<double>(dim), Unchecked{});
}

StateCheck DensityMatrix::check() const {
  StateCheck c;
  c.trace_error = std::abs(op_.trace() - Complex{1.0, 0.0});
  c.hermiticity_error = (op_ - op_.adjoint()).cwiseAbs().maxCoeff();
  const ComplexOperator herm = 0.5 * (op_ + op_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexOperator> es(herm, Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  return c;
}

DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights) {
  if (states.empty() || states.size() != weights.size()) {
    raise(ErrorKind::Domain, "mix needs one weight per state");
  }
  ComplexOperator acc = ComplexOperator::Zero(states[0].dim(), states[0].dim());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != acc.rows()) raise(ErrorKind::Dimension, "mixed states differ in dimension");
    if (weights[i] < 0.0) raise(ErrorKind::Domain, "negative mixing weight");
    acc += weights[i] * states[i].op();
  }
  return DensityMatrix::trusted(std::move(acc));
}

double BlochDirection::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochDirection BlochDirection::normalized(double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  return {x / r, y / r, z / r};
}

// ---------------------------------------------------------------------------

CorrelationTensor::CorrelationTensor(int nqubits, std::vector<double> entries)
    : nqubits_(nqubits), entries_(std::move(entries)) {
  if (nqubits < 1) raise(ErrorKind::Domain, "correlation tensor needs at least one qubit");
  if (entries_.size() != pow3(nqubits)) raise(ErrorKind::Dimension, "correlation tensor must have 3^N entries");
}

CorrelationTensor CorrelationTensor::zeros(int nqubits) {
  return CorrelationTensor(nqubits, std::vector<double>(pow3(nqubits), 0.0));
}

CorrelationTensor CorrelationTensor::from_matrix(const Matrix3& t) {
  std::vector<double> e(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e[3 * i + j] = t(i, j);
  return CorrelationTensor(2, std::move(e));
}

std::size_t CorrelationTensor::flat_index(std::span<const Axis> axes) {
  std::size_t flat = 0;
  for (Axis a : axes) flat = 3 * flat + static_cast<std::size_t>(a);
  return flat;
}

double CorrelationTensor::at(std::span<const Axis> axes) const {
  if (static_cast<int>(axes.size()) != nqubits_) raise(ErrorKind::Dimension, "axis count must equal qubit count");
  return entries_[flat_index(axes)];
}

double CorrelationTensor::at(std::initializer_list<Axis> axes) const {
  return at(std::span<const Axis>(axes.begin(), axes.size()));
}

CorrelationTensor CorrelationTensor::scaled(double s) const {
  std::vector<double> e(entries_);
  for (auto& v : e) v *= s;
  return CorrelationTensor(nqubits_, std::move(e));
}

double CorrelationTensor::squared_norm() const {
  return std::inner_product(entries_.begin(), entries_.end(), entries_.begin(), 0.0);
}

Matrix3 CorrelationTensor::as_matrix() const {
  if (nqubits_ != 2) raise(ErrorKind::Dimension, "as_matrix needs a two-qubit tensor");
  Matrix3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = entries_[3 * i + j];
  return m;
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho) {
  const auto& op = rho.op();
  return correlation_tensor_impl(rho.nqubits(), [&](std::size_t r, std::size_t f) {
    return op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r ^ f));
  });
}

CorrelationTensor correlation_tensor(const StateVector& psi) {
  const int n = qubits_for_dim(psi.size());
  const StateVector v = psi / psi.norm();
  return correlation_tensor_impl(n, [&](std::size_t r, std::size_t f) {
    return std::conj(v(static_cast<Eigen::Index>(r ^ f))) * v(static_cast<Eigen::Index>(r));
  });
}

CorrelationTensor two_body_correlation_tensor(const DensityMatrix& rho, int alpha, int beta) {
  const int n = rho.nqubits();
  if (alpha == beta || alpha < 0 || beta < 0 || alpha >= n || beta >= n) {
    raise(ErrorKind::Domain, "two-body indices must be distinct qubits of the register");
  }
  std::vector<int> letters(n, 0);
  Matrix3 t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      letters[alpha] = i + 1;
      letters[beta] = j + 1;
      t(i, j) = pauli_string_expectation(rho, letters);
    }
  }
  return CorrelationTensor::from_matrix(t);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  const int n = rho.nqubits();
  std::sort(keep.begin(), keep.end());
  if (keep.empty() || std::adjacent_find(keep.begin(), keep.end()) != keep.end() || keep.front() < 0 ||
      keep.back() >= n) {
    raise(ErrorKind::Domain, "partial_trace: keep must be a nonempty set of valid qubit indices");
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!std::binary_search(keep.begin(), keep.end(), q)) traced.push_back(q);

  const int k = static_cast<int>(keep.size());
  const int m = static_cast<int>(traced.size());
  // Scatter a k-bit (resp. m-bit) index onto the kept (resp. traced) positions.
  auto scatter = [n](std::size_t idx, const std::vector<int>& positions) {
    std::size_t out = 0;
    const int len = static_cast<int>(positions.size());
    for (int i = 0; i < len; ++i) {
      if (idx & (std::size_t{1} << (len - 1 - i))) out |= std::size_t{1} << (n - 1 - positions[i]);
    }
    return out;
  };
  const std::size_t kd = std::size_t{1} << k;
  const std::size_t md = std::size_t{1} << m;
  std::vector<std::size_t> kept_bits(kd), traced_bits(md);
  for (std::size_t i = 0; i < kd; ++i) kept_bits[i] = scatter(i, keep);
  for (std::size_t i = 0; i < md; ++i) traced_bits[i] = scatter(i, traced);

  ComplexOperator out = ComplexOperator::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  for (std::size_t r = 0; r < kd; ++r) {
    for (std::size_t c = 0; c < kd; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < md; ++t) {
        acc += rho(static_cast<Eigen::Index>(kept_bits[r] | traced_bits[t]),
                   static_cast<Eigen::Index>(kept_bits[c] | traced_bits[t]));
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  }
  return DensityMatrix::trusted(std::move(out));
}

void apply_single_qubit(StateVector& psi, const Matrix2c& gate, int q) {
  const int n = qubits_for_dim(psi.size());
  const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
  for (Eigen::Index r = 0; r < psi.size(); ++r) {
    if (r & bit) continue;
    const Complex a0 = psi(r);
    const Complex a1 = psi(r | bit);
    psi(r) = gate(0, 0) * a0 + gate(0, 1) * a1;
    psi(r | bit) = gate(1, 0) * a0 + gate(1, 1) * a1;
  }
}

DensityMatrix apply_local_unitaries(const DensityMatrix& rho, std::span<const Matrix2c> unitaries) {
  const int n = rho.nqubits();
  if (static_cast<int>(unitaries.size()) != n) raise(ErrorKind::Dimension, "one unitary per qubit required");
  // Act column-wise with U, then row-wise with U^dagger via (U (U rho)^dagger)^dagger.
  ComplexOperator m = rho.op();
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      StateVector col = m.col(c);
      for (int q = 0; q < n; ++q) apply_single_qubit(col, unitaries[q], q);
      m.col(c) = col;
    }
    m.adjointInPlace();
  }
  return DensityMatrix::trusted(std::move(m));
}

Matrix3 bloch_rotation(const Matrix2c& u) {
  Matrix3 r;
  for (int j = 0; j < 3; ++j) {
    const Matrix2c rotated = u * pauli(kAxes[j]) * u.adjoint();
    for (int i = 0; i < 3; ++i) r(i, j) = 0.5 * (rotated * pauli(kAxes[i])).trace().real();
  }
  return r;
}

Matrix2c unitary_for_rotation(const Matrix3& r) {
  // Quaternion (w, v) of the rotation; U = w 1 - i v.sigma.
  const Eigen::Quaterniond q(r);
  Matrix2c u = Complex{q.w(), 0.0} * Matrix2c::Identity();
  u -= kI * (q.x() * pauli(Axis::X) + q.y() * pauli(Axis::Y) + q.z() * pauli(Axis::Z));
  return u;
}

// ---------------------------------------------------------------------------

std::array<double, 4> BellDiagonalParams::eigenvalues() const {
  return {(1.0 - c1 - c2 - c3) / 4.0, (1.0 + c1 + c2 - c3) / 4.0, (1.0 + c1 - c2 + c3) / 4.0,
          (1.0 - c1 + c2 + c3) / 4.0};
}

bool BellDiagonalParams::is_physical(double tol) const {
  const auto ev = eigenvalues();
  return *std::min_element(ev.begin(), ev.end()) >= -tol;
}

double BellDiagonalParams::l1_norm() const { return std::abs(c1) + std::abs(c2) + std::abs(c3); }

DensityMatrix bell_diagonal(const BellDiagonalParams& params) {
  if (!params.is_physical(1e-10)) {
    raise(ErrorKind::NonPhysicalParams, "Bell-diagonal parameters have a negative eigenvalue");
  }
  ComplexOperator op = ComplexOperator::Identity(4, 4);
  const auto c = params.c();
  for (int j = 0; j < 3; ++j) op += c[j] * tensor_product(pauli(kAxes[j]), pauli(kAxes[j]));
  return DensityMatrix::trusted(op / 4.0);
}

BellDiagonalParams bd_project(const DensityMatrix& rho) {
  if (rho.nqubits() != 2) raise(ErrorKind::Dimension, "bd_project needs a two-qubit state");
  const Matrix3 t = correlation_tensor(rho).as_matrix();

  // T = U S V^T with U, V proper rotations; a reflection is absorbed into the
  // sign of the last singular value.
  Eigen::JacobiSVD<Matrix3> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix3 u = svd.matrixU();
  Matrix3 v = svd.matrixV();
  if (u.determinant() < 0) u.col(2) *= -1.0;
  if (v.determinant() < 0) v.col(2) *= -1.0;

  // Local unitaries with rotations R_A = U^T, R_B = V^T map T to R_A T R_B^T.
  const std::array<Matrix2c, 2> locals{unitary_for_rotation(u.transpose()),
                                       unitary_for_rotation(v.transpose())};
  const DensityMatrix rotated = apply_local_unitaries(rho, locals);

  ComplexOperator twirled = rotated.op();
  for (Axis a : kAxes) {
    const ComplexOperator ss = tensor_product(pauli(a), pauli(a));
    twirled += ss * rotated.op() * ss;
  }
  twirled /= 4.0;

  BellDiagonalParams out;
  std::array<double, 3> c{};
  for (int j = 0; j < 3; ++j) {
    c[j] = (twirled * tensor_product(pauli(kAxes[j]), pauli(kAxes[j]))).trace().real();
  }
  out.c1 = c[0];
  out.c2 = c[1];
  out.c3 = c[2];
  return out;
}

}  // namespace randcorr
