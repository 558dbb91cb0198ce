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

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "randcorr/error.hpp"
#include "randcorr/qcore.hpp"

namespace randcorr {
namespace {

void require_dense(int n) {
  if (n < 1 || n > kMaxDenseQubits) {
    raise(ErrorKind::Dimension, "dense states need 1 <= N <= " + std::to_string(kMaxDenseQubits));
  }
}

StateVector basis_vector(int n, std::size_t index) {
  StateVector v = StateVector::Zero(Eigen::Index{1} << n);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dicke family.

DickeMarginalCoeffs dicke_marginal_coeffs(long long n, long long k) {
  if (n < 2 || n > 1'000'000) raise(ErrorKind::Domain, "Dicke marginal needs 2 <= N <= 10^6");
  if (k < 0 || k > n) raise(ErrorKind::Domain, "Dicke excitation number out of range");
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double denom = nn * (nn - 1.0);
  // v+ counts pairs of unexcited qubits: (N-k)(N-k-1). The form (N-1)(N-k-1)
  // agrees only for k <= 1 and breaks the unit trace otherwise.
  return {(nn - kk) * (nn - kk - 1.0) / denom, kk * (kk - 1.0) / denom, kk * (nn - kk) / denom};
}

DensityMatrix dicke_two_body_marginal(long long n, long long k) {
  const auto c = dicke_marginal_coeffs(n, k);
  ComplexOperator op = ComplexOperator::Zero(4, 4);
  op(0, 0) = c.vplus;
  op(3, 3) = c.vminus;
  op(1, 1) = op(1, 2) = op(2, 1) = op(2, 2) = c.y;
  return DensityMatrix::trusted(std::move(op));
}

CorrelationTensor dicke_marginal_tensor(long long n, long long k) {
  const auto c = dicke_marginal_coeffs(n, k);
  Matrix3 t = Matrix3::Zero();
  t(0, 0) = 2.0 * c.y;
  t(1, 1) = 2.0 * c.y;
  t(2, 2) = c.vplus + c.vminus - 2.0 * c.y;
  return CorrelationTensor::from_matrix(t);
}

StateVector dicke_vector(int n, int k) {
  require_dense(n);
  if (k < 0 || k > n) raise(ErrorKind::Domain, "Dicke excitation number out of range");
  StateVector v = StateVector::Zero(Eigen::Index{1} << n);
  for (Eigen::Index r = 0; r < v.size(); ++r) {
    if (std::popcount(static_cast<std::uint64_t>(r)) == k) v(r) = 1.0;
  }
  return v / v.norm();
}

DensityMatrix dicke_state(int n, int k) { return DensityMatrix::from_pure(dicke_vector(n, k)); }

DensityMatrix w_state(int n) { return dicke_state(n, 1); }

// ---------------------------------------------------------------------------
// GHZ family.

StateVector psi_theta_vector(int n, double theta) {
  require_dense(n);
  if (theta < 0.0 || theta > std::numbers::pi / 2 + 1e-15) raise(ErrorKind::Domain, "theta must lie in [0, pi/2]");
  StateVector v = StateVector::Zero(Eigen::Index{1} << n);
  v(0) = std::cos(theta);
  v(v.size() - 1) += std::sin(theta);
  return v;
}

DensityMatrix psi_theta(int n, double theta) { return DensityMatrix::from_pure(psi_theta_vector(n, theta)); }

DensityMatrix ghz(int n) { return psi_theta(n, std::numbers::pi / 4); }

DensityMatrix noisy_ghz(int n, double p) {
  if (p < 0.0 || p > 1.0) raise(ErrorKind::Domain, "noise parameter must lie in [0, 1]");
  const DensityMatrix g = ghz(n);
  const Eigen::Index dim = g.dim();
  ComplexOperator op = (1.0 - p) * g.op();
  op.diagonal().array() += p / static_cast<double>(dim);
  return DensityMatrix::trusted(std::move(op));
}

CorrelationTensor psi_theta_tensor(int n, double theta) {
  if (n < 1 || n > 20) raise(ErrorKind::Domain, "psi_theta_tensor supports 1 <= N <= 20");
  // Z^N gives cos^2 + (-1)^N sin^2; strings of X/Y with an even number m of Y
  // give sin(2 theta) Re[(-i)^m]; everything else vanishes.
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  auto t = CorrelationTensor::zeros(n);
  const std::size_t size = t.size();
  for (std::size_t flat = 0; flat < size; ++flat) {
    int ny = 0, nz = 0;
    std::size_t rest = flat;
    for (int q = 0; q < n; ++q, rest /= 3) {
      if (rest % 3 == 1) ++ny;
      if (rest % 3 == 2) ++nz;
    }
    if (nz == n) {
      t[flat] = c * c + ((n % 2 == 0) ? s * s : -s * s);
    } else if (nz == 0 && ny % 2 == 0) {
      t[flat] = std::sin(2.0 * theta) * ((ny / 2) % 2 == 0 ? 1.0 : -1.0);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Standard forms.

StateVector wclass_vector(int n, std::span<const double> x) {
  require_dense(n);
  if (static_cast<int>(x.size()) != n + 1) raise(ErrorKind::Dimension, "W-class form needs N+1 coefficients");
  StateVector v = StateVector::Zero(Eigen::Index{1} << n);
  v(0) = x[0];
  for (int q = 0; q < n; ++q) v(Eigen::Index{1} << (n - 1 - q)) = x[q + 1];
  return v;
}

StateVector standard_form_vector(int n, const StandardFormParams& params, bool wclass_only) {
  const auto& l = params.lambdas;
  double norm2 = 0.0;
  for (double v : l) {
    if (v < 0.0) raise(ErrorKind::Domain, "standard-form coefficients must be non-negative");
    norm2 += v * v;
  }
  if (std::abs(norm2 - 1.0) > 1e-12) raise(ErrorKind::Domain, "standard-form coefficients must be normalized");
  if (params.phi < 0.0 || params.phi > std::numbers::pi) raise(ErrorKind::Domain, "phase must lie in [0, pi]");

  if (n == 3 && l.size() == 5) {
    if (wclass_only && (l[4] != 0.0 || params.phi != 0.0)) {
      raise(ErrorKind::Domain, "W-class three-qubit form requires lambda_4 = phi = 0");
    }
    StateVector v = StateVector::Zero(8);
    v(0b000) = l[0];
    v(0b100) = l[1] * std::polar(1.0, params.phi);
    v(0b101) = l[2];
    v(0b110) = l[3];
    v(0b111) = l[4];
    return v;
  }
  if (params.phi != 0.0) raise(ErrorKind::Domain, "the N-qubit W-class form has no phase");
  return wclass_vector(n, l);
}

DensityMatrix standard_form_state(int n, const StandardFormParams& params, bool wclass_only) {
  return DensityMatrix::from_pure(standard_form_vector(n, params, wclass_only));
}

// ---------------------------------------------------------------------------
// Random states.

Matrix2c random_su2(Rng& rng) {
  Eigen::Vector2cd v(rng.complex_normal(), rng.complex_normal());
  v.normalize();
  Matrix2c u;
  u << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
  return u;
}

StateVector random_pure_vector(int n, Rng& rng) {
  require_dense(n);
  StateVector v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

StateVector random_product_vector(int n, Rng& rng) {
  require_dense(n);
  StateVector v = basis_vector(n, 0);
  for (int q = 0; q < n; ++q) apply_single_qubit(v, random_su2(rng), q);
  return v;
}

StateVector random_wclass_vector(int n, Rng& rng) {
  std::vector<double> x(n + 1);
  double norm2 = 0.0;
  for (auto& v : x) {
    v = std::abs(rng.normal());
    norm2 += v * v;
  }
  for (auto& v : x) v /= std::sqrt(norm2);
  StateVector psi = wclass_vector(n, x);
  for (int q = 0; q < n; ++q) apply_single_qubit(psi, random_su2(rng), q);
  return psi;
}

BellDiagonalParams random_bd_params(Rng& rng) {
  while (true) {
    BellDiagonalParams p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (p.is_physical(0.0)) return p;
  }
}

DensityMatrix random_product_state(int n, std::uint64_t seed) {
  Rng rng(seed);
  return DensityMatrix::from_pure(random_product_vector(n, rng));
}

namespace {

template <typename Draw>
DensityMatrix random_mixture(int n, int count, Rng& rng, Draw draw) {
  if (count < 1) raise(ErrorKind::Domain, "mixture needs at least one component");
  const auto w = rng.dirichlet(static_cast<std::size_t>(count));
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexOperator acc = ComplexOperator::Zero(dim, dim);
  for (int i = 0; i < count; ++i) {
    const StateVector psi = draw();
    acc += w[i] * (psi * psi.adjoint());
  }
  return DensityMatrix::trusted(std::move(acc));
}

}  // namespace

DensityMatrix random_separable_mixture(int n, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_mixture(n, rank, rng, [&] { return random_product_vector(n, rng); });
}

DensityMatrix random_mixed_wclass(int n, int count, std::uint64_t seed) {
  Rng rng(seed);
  return random_mixture(n, count, rng, [&] { return random_wclass_vector(n, rng); });
}

DensityMatrix random_density_matrix(int n, std::uint64_t seed) {
  require_dense(n);
  Rng rng(seed);
  const int rank = 1 + static_cast<int>(rng.uniform_index(std::size_t{1} << n));
  return random_mixture(n, rank, rng, [&] { return random_pure_vector(n, rng); });
}

}  // namespace randcorr
