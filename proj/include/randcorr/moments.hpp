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

// Moments R^(t) = average of E(u_1..u_N)^t over independent uniform
// directions u_n on the Bloch sphere, where
// E(u_1..u_N) = sum T_{i1..iN} u_1^(i1) ... u_N^(iN).
//
// Four engines: finite spherical designs, Monte Carlo, exact monomial
// integration, and closed forms for Bell-diagonal states.

#include <cstdint>
#include <optional>
#include <string_view>

#include "randcorr/designs.hpp"
#include "randcorr/qcore.hpp"

namespace randcorr {

enum class MomentEngine { Design, MonteCarlo, Monomial, BdClosedForm };

std::string_view to_string(MomentEngine engine);

struct McInfo {
  std::size_t nsamples = 0;
  double se_r2 = 0.0;
  double se_r4 = 0.0;
  std::optional<double> se_r6;
};

struct MomentSet {
  double r2 = 0.0;
  double r4 = 0.0;
  std::optional<double> r6;
  MomentEngine engine = MomentEngine::Design;
  std::optional<McInfo> mc;  // set iff engine == MonteCarlo
};

/// Largest number of design terms (L/2)^N a design sum may visit.
inline constexpr double kMaxDesignTerms = 1e9;

/// Exact sum over all N-tuples of design points. For even t only one point
/// of each antipodal pair is visited. Throws InsufficientStrength if the
/// design is too weak and CostTooLarge above kMaxDesignTerms.
double moment_design(const CorrelationTensor& t, int order, const SphericalDesign& design);

struct McEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t nsamples = 0;
};

/// Sample mean of E^t over uniform direction tuples. Samples are drawn in
/// fixed chunks from split streams, so results do not depend on the thread
/// count. Requires nsamples >= 100.
McEstimate moment_mc(const CorrelationTensor& t, int order, std::size_t nsamples, std::uint64_t seed);

/// Expands E^t with the multinomial formula and integrates each monomial on
/// the sphere exactly. t in {2, 4, 6}; throws ExpansionTooLarge when the
/// number of multisets exceeds kMaxMonomialTerms.
inline constexpr double kMaxMonomialTerms = 5e8;
double moment_monomial(const CorrelationTensor& t, int order);

/// R2 = sum c^2 / 9, R4 = 2/75 sum c^4 + 27/25 R2^2,
/// R6 = 8/735 sum c^6 - 486/245 R2^3 + 135/49 R2 R4.
MomentSet bd_moments(const BellDiagonalParams& c);

/// Moment of the two-body marginal on qubits (alpha, beta).
double two_body_moment(const DensityMatrix& rho, int alpha, int beta, int order);

/// Exact value with the cheapest applicable engine: 0 for odd t, the
/// octahedron for t <= 3, the icosahedron for t <= 5, monomial integration
/// for t = 6.
double moment_exact(const CorrelationTensor& t, int order);

struct MomentOptions {
  bool with_r6 = false;
  std::size_t nsamples = 100000;   // Monte Carlo only
  std::uint64_t seed = 1;          // Monte Carlo only
  const SphericalDesign* design6 = nullptr;  // design engine, r6 only
};

/// (R2, R4[, R6]) from one engine. The design engine uses the octahedron and
/// icosahedron; r6 needs `design6` of strength >= 6. BdClosedForm is not
/// available here (it takes Bell-diagonal parameters, see bd_moments).
MomentSet compute_moments(const CorrelationTensor& t, MomentEngine engine, const MomentOptions& options = {});

}  // namespace randcorr
