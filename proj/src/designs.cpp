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


#include "randcorr/designs.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "randcorr/error.hpp"

namespace randcorr {
namespace {

bool points_equal(const BlochDirection& a, const BlochDirection& b, double tol) {
  return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol && std::abs(a.z - b.z) <= tol;
}

bool contains(const std::vector<Matrix2c>& set, const Matrix2c& m, bool up_to_phase, double tol) {
  for (const auto& s : set) {
    if (up_to_phase ? equal_up_to_phase(s, m, tol) : (s - m).cwiseAbs().maxCoeff() <= tol) return true;
  }
  return false;
}

}  // namespace

SphericalDesign octahedron_design() {
  return {"octahedron", 3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}};
}

SphericalDesign icosahedron_design() {
  const double phi = std::numbers::phi;
  SphericalDesign d{"icosahedron", 5, {}};
  for (double s1 : {1.0, -1.0}) {
    for (double s2 : {1.0, -1.0}) {
      d.points.push_back(BlochDirection::normalized(0.0, s1, s2 * phi));
      d.points.push_back(BlochDirection::normalized(s1, s2 * phi, 0.0));
      d.points.push_back(BlochDirection::normalized(s2 * phi, 0.0, s1));
    }
  }
  return d;
}

bool equal_up_to_phase(const Matrix2c& a, const Matrix2c& b, double tol) {
  Eigen::Index r = 0, c = 0;
  const double amax = a.cwiseAbs().maxCoeff(&r, &c);
  if (amax <= tol) return b.cwiseAbs().maxCoeff() <= tol;
  const Complex ratio = b(r, c) / a(r, c);
  if (std::abs(std::abs(ratio) - 1.0) > tol) return false;
  return (b - ratio * a).cwiseAbs().maxCoeff() <= tol;
}

std::vector<Matrix2c> close_group(const std::vector<Matrix2c>& generators, bool up_to_phase,
                                  std::size_t max_size, double tol) {
  std::vector<Matrix2c> elements;
  for (const auto& g : generators) {
    if (!contains(elements, g, up_to_phase, tol)) elements.push_back(g);
  }
  // Breadth-first: right-multiply every new element by every generator.
  for (std::size_t next = 0; next < elements.size(); ++next) {
    for (const auto& g : generators) {
      const Matrix2c product = elements[next] * g;
      if (contains(elements, product, up_to_phase, tol)) continue;
      if (elements.size() >= max_size) {
        raise(ErrorKind::ClosureSizeMismatch,
              "group closure exceeded " + std::to_string(max_size) + " elements");
      }
      elements.push_back(product);
    }
  }
  return elements;
}

UnitaryDesign clifford_group_1q() {
  const double h = 1.0 / std::numbers::sqrt2;
  Matrix2c hadamard;
  hadamard << h, h, h, -h;
  Matrix2c phase = Matrix2c::Zero();
  phase(0, 0) = std::polar(1.0, std::numbers::pi / 4);
  phase(1, 1) = std::polar(1.0, -std::numbers::pi / 4);
  auto elements = close_group({hadamard, phase}, true, 64);
  if (elements.size() != 24) {
    raise(ErrorKind::ClosureSizeMismatch,
          "Clifford closure gave " + std::to_string(elements.size()) + " elements, expected 24");
  }
  return {"clifford", 3, std::move(elements)};
}

std::array<Matrix2c, 4> sl2f5_generators(GeneratorTable table) {
  auto w = [](int k) { return std::polar(1.0, 2.0 * std::numbers::pi * k / 15.0); };
  std::array<Matrix2c, 4> g;
  g[0] << -1.0, 0.0, 0.0, -1.0;
  g[1] << w(10), w(11) + w(14), -w(2) - w(8), -w(10);
  g[2] << -w(11) - w(14), w(6) + w(9), -w(1) - w(2) - w(4) - w(7) - w(8) - w(13), w(11) + w(14);
  const int last = table == GeneratorTable::Corrected ? 12 : 17;
  g[3] << 0.0, w(5), -w(10), -w(3) - w(last);
  return g;
}

UnitaryDesign sl2f5_design(GeneratorTable table, Sl2f5Report* report) {
  Sl2f5Report local;
  Sl2f5Report& rep = report ? *report : local;
  const auto gens = sl2f5_generators(table);
  const std::vector<Matrix2c> group =
      close_group(std::vector<Matrix2c>(gens.begin(), gens.end()), false, 240);
  rep.group_order = group.size();
  if (group.size() != 120) {
    raise(ErrorKind::ClosureSizeMismatch,
          "SL(2,F5) closure gave " + std::to_string(group.size()) + " elements, expected 120");
  }

  Matrix2c p = Matrix2c::Zero();
  for (const auto& s : group) p += s.adjoint() * s;
  const Eigen::SelfAdjointEigenSolver<Matrix2c> eig(p);
  rep.min_p_eigenvalue = eig.eigenvalues().minCoeff();
  if (rep.min_p_eigenvalue <= 0.0) raise(ErrorKind::NotPositiveDefinite, "P is not positive definite");
  const Eigen::Vector2d sq = eig.eigenvalues().cwiseSqrt();
  const Matrix2c& v = eig.eigenvectors();
  const Matrix2c sqrt_p = v * sq.cast<Complex>().asDiagonal() * v.adjoint();
  const Matrix2c sqrt_p_inv = v * sq.cwiseInverse().cast<Complex>().asDiagonal() * v.adjoint();

  std::vector<Matrix2c> unitaries;
  rep.max_unitarity_error = 0.0;
  for (const auto& s : group) {
    const Matrix2c u = sqrt_p * s * sqrt_p_inv;
    const double err = (u * u.adjoint() - Matrix2c::Identity()).cwiseAbs().maxCoeff();
    rep.max_unitarity_error = std::max(rep.max_unitarity_error, err);
    if (err > 1e-8) raise(ErrorKind::NonUnitaryResult, "conjugated SL(2,F5) element is not unitary");
    if (!contains(unitaries, u, true, 1e-8)) unitaries.push_back(u);
  }
  rep.phase_classes = unitaries.size();
  if (unitaries.size() != 60) {
    raise(ErrorKind::DedupSizeMismatch,
          "phase dedup gave " + std::to_string(unitaries.size()) + " unitaries, expected 60");
  }
  return {"sl2f5", 5, std::move(unitaries)};
}

SphericalDesign project_to_sphere(const UnitaryDesign& design) {
  SphericalDesign out{design.name + "-sphere", design.strength, {}};
  for (const auto& u : design.unitaries) {
    const Eigen::Vector3d col = bloch_rotation(u).col(2);
    const BlochDirection p = BlochDirection::normalized(col.x(), col.y(), col.z());
    bool seen = false;
    for (const auto& q : out.points) seen = seen || points_equal(p, q, 1e-8);
    if (!seen) out.points.push_back(p);
  }
  return out;
}

double sphere_monomial_average(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) raise(ErrorKind::Domain, "monomial exponents must be non-negative");
  if (a % 2 || b % 2 || c % 2) return 0.0;
  // Normalized integral of x^a y^b z^c over S^2:
  // G((a+1)/2) G((b+1)/2) G((c+1)/2) G(3/2) / (G((a+b+c+3)/2) G(1/2)^3).
  const double la = std::lgamma((a + 1) / 2.0);
  const double lb = std::lgamma((b + 1) / 2.0);
  const double lc = std::lgamma((c + 1) / 2.0);
  const double lsum = std::lgamma((a + b + c + 3) / 2.0);
  return std::exp(la + lb + lc - lsum + std::lgamma(1.5) - 3.0 * std::lgamma(0.5));
}

DesignCheck verify_spherical_design(const std::vector<BlochDirection>& points, int t, double tol) {
  if (points.empty()) raise(ErrorKind::Domain, "cannot verify an empty point set");
  if (t < 0) raise(ErrorKind::Domain, "design strength must be non-negative");
  DesignCheck check;
  const double inv = 1.0 / static_cast<double>(points.size());
  for (int a = 0; a <= t; ++a) {
    for (int b = 0; a + b <= t; ++b) {
      for (int c = 0; a + b + c <= t; ++c) {
        double avg = 0.0;
        for (const auto& p : points) avg += std::pow(p.x, a) * std::pow(p.y, b) * std::pow(p.z, c);
        const double dev = std::abs(avg * inv - sphere_monomial_average(a, b, c));
        if (dev > check.max_deviation) {
          check.max_deviation = dev;
          check.worst_monomial = {a, b, c};
        }
      }
    }
  }
  check.passed = check.max_deviation < tol;
  return check;
}

std::vector<BlochDirection> antipodal_half(const std::vector<BlochDirection>& points, double tol) {
  std::vector<bool> used(points.size(), false);
  std::vector<BlochDirection> half;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (used[i]) continue;
    std::size_t partner = points.size();
    for (std::size_t j = i + 1; j < points.size() && partner == points.size(); ++j) {
      if (!used[j] && points_equal(points[j], -points[i], tol)) partner = j;
    }
    if (partner == points.size()) return {};
    used[i] = used[partner] = true;
    half.push_back(points[i]);
  }
  return half;
}

}  // namespace randcorr
