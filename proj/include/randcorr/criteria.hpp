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

// Boundary curves of the two-qubit (R2, R4) moment region and the
// entanglement / W-class membership tests built on them.

#include <string_view>

namespace randcorr {

inline constexpr double kDecisionTol = 1e-10;

// Boundary curves on R2 in [0, 1/3]. Each throws Domain outside its range.
double f_lb(double r2);      // lower border of all states
double f_ub(double r2);      // upper border of all states
double f_lb_sep(double r2);  // lower border of separable states
double f_ub_sep(double r2);  // upper border of separable states, R2 in [0, 1/9]
double f_lb_ent(double r2);  // lower border of entangled states
double f_ub_ent(double r2);  // upper border of entangled states

/// Sixth-moment border g(R2, R4) separating separable from entangled
/// Bell-diagonal states.
double g_separator(double r2, double r4);

enum class Verdict { Separable, Entangled, Inconclusive, OutsideWClass, NonPhysicalPoint };

std::string_view to_string(Verdict verdict);

/// `margin` is the slack of the tested inequality: negative beyond the
/// decision threshold, non-negative otherwise.
struct RegionVerdict {
  Verdict verdict = Verdict::Inconclusive;
  double margin = 0.0;
};

/// Entangled iff R4 < f_lb_sep(R2) or R2 > 1/9 (beyond tolerance). Sound for
/// every two-qubit state; never returns Separable. Points outside the
/// [f_lb, f_ub] band give NonPhysicalPoint.
RegionVerdict criterion_F(double r2, double r4);

/// Complete test for Bell-diagonal states: entangled iff R2 > 1/9 or
/// R6 > g(R2, R4), separable otherwise. Not meaningful for other states.
RegionVerdict criterion_R6(double r2, double r4, double r6);

/// Entangled iff R2 > 1/3^N or R4 > 1/5^N.
RegionVerdict simple_bounds(int nqubits, double r2, double r4);

struct DickeMoments {
  double r2 = 0.0;
  double r4 = 0.0;
};

/// Exact (R2, R4) of the two-body marginal of |D^N_k>.
DickeMoments dicke_marginal_moments(long long n, long long k);

/// criterion_F on the two-body marginal of |D^N_k>, 2 <= N <= 10^6.
RegionVerdict dicke_detect(long long n, long long k);

struct WClassCriterionParams {
  int nqubits = 0;
  double chi = 0.0;               // max R2 over pure W-class states
  double slope_m = 0.0;           // line through the R2 and R4 maximizers
  double intercept_btilde = 0.0;  // largest R4-intercept over the W-class
};

/// Constants for N in {3, 4, 5}; throws Unsupported otherwise.
WClassCriterionParams shipped_wclass_params(int nqubits);

/// Outside the mixed W-class iff R2 > chi.
RegionVerdict wclass_r2_criterion(const WClassCriterionParams& params, double r2);

/// Outside the mixed W-class iff R4 > m R2 + b~. Requires m < 0
/// (SlopeSignViolation) and N <= 6 (Unsupported).
RegionVerdict wclass_line_criterion(const WClassCriterionParams& params, double r2, double r4);

}  // namespace randcorr
