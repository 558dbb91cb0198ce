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

#include <array>
#include <string>
#include <vector>

#include "randcorr/qcore.hpp"

namespace randcorr {

/// Finite point set on S^2 whose average reproduces the sphere average of
/// every polynomial of degree <= strength.
struct SphericalDesign {
  std::string name;
  int strength = 0;
  std::vector<BlochDirection> points;
};

/// Finite set of 2x2 unitaries, distinct up to a global phase.
struct UnitaryDesign {
  std::string name;
  int strength = 0;
  std::vector<Matrix2c> unitaries;
};

SphericalDesign octahedron_design();   // t = 3, 6 points
SphericalDesign icosahedron_design();  // t = 5, 12 points

UnitaryDesign clifford_group_1q();  // t = 3, 24 elements

enum class GeneratorTable {
  Corrected,  // fourth generator with lower-right entry -w^3 - w^12
  AsPrinted,  // lower-right entry -w^3 - w^17: not of finite order
};

/// The four SL(2,F5) generators, w = exp(2 pi i / 15).
std::array<Matrix2c, 4> sl2f5_generators(GeneratorTable table = GeneratorTable::Corrected);

/// Intermediate counts of the SL(2,F5) pipeline.
struct Sl2f5Report {
  std::size_t group_order = 0;     // closure size, expected 120
  std::size_t phase_classes = 0;   // after phase dedup, expected 60
  double min_p_eigenvalue = 0.0;   // P = sum S^dagger S must be positive definite
  double max_unitarity_error = 0.0;
};

/// Closure -> P = sum S_k^dagger S_k -> U_k = sqrt(P) S_k sqrt(P)^-1 ->
/// unitarity check -> phase dedup. Throws ClosureSizeMismatch,
/// NotPositiveDefinite, NonUnitaryResult or DedupSizeMismatch.
UnitaryDesign sl2f5_design(GeneratorTable table = GeneratorTable::Corrected, Sl2f5Report* report = nullptr);

/// Closes a generator set under multiplication. `up_to_phase` identifies
/// elements differing by a global phase. Throws ClosureSizeMismatch once the
/// set grows beyond `max_size`.
std::vector<Matrix2c> close_group(const std::vector<Matrix2c>& generators, bool up_to_phase,
                                  std::size_t max_size = 10000, double tol = 1e-8);

bool equal_up_to_phase(const Matrix2c& a, const Matrix2c& b, double tol = 1e-8);

/// Distinct Bloch directions of U sigma_z U^dagger over the design.
SphericalDesign project_to_sphere(const UnitaryDesign& design);

/// Exact average of x^a y^b z^c over the unit sphere (normalized measure).
double sphere_monomial_average(int a, int b, int c);

struct DesignCheck {
  bool passed = false;
  double max_deviation = 0.0;
  std::array<int, 3> worst_monomial{0, 0, 0};
};

/// Compares point averages of all monomials x^a y^b z^c with a+b+c <= t
/// against the exact sphere integrals.
DesignCheck verify_spherical_design(const std::vector<BlochDirection>& points, int t, double tol = 1e-10);

/// Keeps one point of each antipodal pair; returns an empty vector when the
/// set is not closed under inversion.
std::vector<BlochDirection> antipodal_half(const std::vector<BlochDirection>& points, double tol = 1e-10);

}  // namespace randcorr
