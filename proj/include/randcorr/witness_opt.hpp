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

// Multi-start Nelder-Mead over the N-qubit W-class standard form
// x_0|0..0> + sum_i x_i|0..1_i..0>, x >= 0, |x| = 1, plus the derived
// W-class constants, GHZ noise / amplitude thresholds and the brute-force
// Bell-diagonal boundary oracle.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "randcorr/criteria.hpp"
#include "randcorr/qcore.hpp"

namespace randcorr {

struct NelderMeadOptions {
  double initial_step = 0.25;
  double ftol = 1e-15;
  std::size_t max_evaluations = 20000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;  // minimum found
  std::size_t evaluations = 0;
};

/// Minimizes f from x0 with the standard simplex moves (reflection 1,
/// expansion 2, contraction 1/2, shrink 1/2).
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options = {});

struct OptResult {
  double value = 0.0;
  StandardFormParams argmax;
  int restarts = 0;
  double spread = 0.0;  // max - min over restart optima
  std::string warning;  // set when the restart count was doubled
};

/// Objective over the (R2, R4) moments of a pure W-class state.
using MomentObjective = std::function<double(double r2, double r4)>;

/// Maximizes `objective` over W-class standard forms on N qubits. Parameters
/// v in R^{N+1} map to x = |v| / |v|. Restarts run in parallel; each uses
/// Rng(seed).split(restart). A spread above 1e-5 doubles the restarts once.
OptResult maximize_wclass(int nqubits, const MomentObjective& objective, int restarts, std::uint64_t seed,
                          bool needs_r4 = true);

/// max R^(t) over the pure W-class, N in [3, 8], t in {2, 4}.
OptResult maximize_moment_wclass(int nqubits, int order, int restarts = 64, std::uint64_t seed = 1);

/// (R2, R4) of the W-class standard form with coefficients x.
std::pair<double, double> wclass_moments(int nqubits, std::span<const double> x);

/// chi, slope m and intercept b~ for N in [3, 6]. Throws SlopeSignViolation
/// if m >= 0.
WClassCriterionParams compute_line_params(int nqubits, std::uint64_t seed = 1, int restarts = 64);

/// Shipped constants for N in {3, 4, 5}, computed otherwise.
WClassCriterionParams wclass_params(int nqubits, std::uint64_t seed = 1);

enum class WClassCriterion { R2Only, Line };
enum class ThresholdMethod { Auto, ClosedForm, Bisection };

struct ThresholdResult {
  double threshold = 0.0;
  WClassCriterion criterion = WClassCriterion::R2Only;
  double bracket_width = 0.0;  // 0 for the closed form
};

/// Largest p such that p 1/2^N + (1-p)|GHZ><GHZ| is flagged outside the
/// mixed W-class. Uses R^(t)(p) = (1-p)^t R^(t)(GHZ). Throws NotDetected if
/// the pure GHZ state is not flagged.
ThresholdResult noise_threshold(const WClassCriterionParams& params, WClassCriterion criterion,
                                ThresholdMethod method = ThresholdMethod::Auto);

/// Smallest theta in [0, pi/4] above which cos|0..0> + sin|1..1> is flagged.
ThresholdResult amplitude_threshold(const WClassCriterionParams& params, WClassCriterion criterion);

/// Margin of the chosen W-class criterion (negative = flagged).
double wclass_margin(const WClassCriterionParams& params, WClassCriterion criterion, double r2, double r4);

// ---------------------------------------------------------------------------
// Bell-diagonal boundary oracle.

enum class BdSampleMode { All, Separable, Entangled };

struct BdSample {
  BellDiagonalParams c;
  double r2 = 0.0;
  double r4 = 0.0;
  bool separable = false;
};

/// `count` uniform physical Bell-diagonal states with their moments.
std::vector<BdSample> bd_samples(std::size_t count, std::uint64_t seed);

struct BoundaryCell {
  double r2_lo = 0.0;
  double r2_hi = 0.0;
  std::size_t count = 0;
  double r2_at_min = 0.0;
  double min_r4 = 0.0;
  double r2_at_max = 0.0;
  double max_r4 = 0.0;
};

/// Splits [0, 1/3] into `cells` bins and records the extreme R4 samples per
/// bin among `samples` random states filtered by `mode`.
std::vector<BoundaryCell> bd_boundary_bruteforce(std::size_t cells, std::size_t samples, BdSampleMode mode,
                                                 std::uint64_t seed);

}  // namespace randcorr
