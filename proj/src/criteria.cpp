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


#include "randcorr/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "randcorr/designs.hpp"
#include "randcorr/error.hpp"
#include "randcorr/moments.hpp"
#include "randcorr/qcore.hpp"

namespace randcorr {
namespace {

constexpr double kThird = 1.0 / 3.0;
constexpr double kNinth = 1.0 / 9.0;
constexpr double kBreakSep1 = 1.0 / 27.0;
constexpr double kBreakSep2 = 1.0 / 18.0;
constexpr double kDomainSlack = 1e-12;

constexpr double kLineSlope3 = -0.037333333333329707;
constexpr double kLineIntercept3 = 0.04414814814814768;
constexpr double kLineSlope4 = -0.050399999999995178;
constexpr double kLineIntercept4 = 0.010097119341563522;
constexpr double kLineSlope5 = -0.039859199999987535;
constexpr double kLineIntercept5 = 0.002164569547324865;

void require_domain(double r2, double hi, const char* name) {
  if (!(r2 >= -kDomainSlack && r2 <= hi + kDomainSlack)) {
    raise(ErrorKind::Domain, std::string(name) + ": R2 = " + std::to_string(r2) + " outside its domain");
  }
}

// (9/225)(2r + 54r^2 + sign (4 sqrt2 / 81)(27r - 1)^{3/2} - 7/81)
double circle_piece(double r2, double sign) {
  const double s = std::max(0.0, 27.0 * r2 - 1.0);
  return 9.0 / 225.0 * (2.0 * r2 + 54.0 * r2 * r2 + sign * 4.0 * std::numbers::sqrt2 / 81.0 * s * std::sqrt(s) - 7.0 / 81.0);
}

RegionVerdict decide(double margin, Verdict positive, Verdict otherwise) {
  return {margin < -kDecisionTol ? positive : otherwise, margin};
}

}  // namespace

double f_lb(double r2) {
  require_domain(r2, kThird, "f_lb");
  return 405.0 / 225.0 * r2 * r2;
}

double f_ub(double r2) {
  require_domain(r2, kThird, "f_ub");
  if (r2 <= kNinth) return 729.0 / 225.0 * r2 * r2;
  return 9.0 / 225.0 * (1.0 - 6.0 * r2 + 54.0 * r2 * r2);
}

double f_lb_sep(double r2) {
  require_domain(r2, kThird, "f_lb_sep");
  if (r2 <= kBreakSep1) return 405.0 / 225.0 * r2 * r2;
  if (r2 <= kBreakSep2) return circle_piece(r2, -1.0);
  return 9.0 / 225.0 * (54.0 * r2 * r2 + 6.0 * r2 - 1.0 / 3.0);
}

double f_ub_sep(double r2) {
  require_domain(r2, kNinth, "f_ub_sep");
  return f_ub(r2);
}

double f_lb_ent(double r2) {
  require_domain(r2, kThird, "f_lb_ent");
  return f_lb(r2);
}

double f_ub_ent(double r2) {
  require_domain(r2, kThird, "f_ub_ent");
  // No entangled Bell-diagonal state has R2 < 1/27; the curve follows f_lb
  // there so that it stays continuous.
  if (r2 <= kBreakSep1) return f_lb(r2);
  if (r2 <= kNinth) return circle_piece(r2, 1.0);
  return f_ub(r2);
}

double g_separator(double r2, double r4) {
  const double r2sq = r2 * r2;
  return (26244.0 * r2sq * r2sq - 17496.0 * r2sq * r2 - 24300.0 * r2sq * r4 + 13500.0 * r2 * r4 - 36.0 * r2 +
          5625.0 * r4 * r4 + 150.0 * r4 + 1.0) /
         1960.0;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Separable: return "separable";
    case Verdict::Entangled: return "entangled";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::OutsideWClass: return "outside-wclass";
    case Verdict::NonPhysicalPoint: return "nonphysical-point";
  }
  return "unknown";
}

RegionVerdict criterion_F(double r2, double r4) {
  require_domain(r2, kThird, "criterion_F");
  const double r2c = std::clamp(r2, 0.0, kThird);
  const double below = r4 - f_lb(r2c);
  const double above = f_ub(r2c) - r4;
  if (below < -kDecisionTol || above < -kDecisionTol) {
    return {Verdict::NonPhysicalPoint, std::min(below, above)};
  }
  return decide(std::min(r4 - f_lb_sep(r2c), kNinth - r2), Verdict::Entangled, Verdict::Inconclusive);
}

RegionVerdict criterion_R6(double r2, double r4, double r6) {
  require_domain(r2, kThird, "criterion_R6");
  // Every separable Bell-diagonal state has R2 <= 1/9; the Bell states sit
  // exactly on g, so the R2 test is needed to flag them.
  return decide(std::min(g_separator(r2, r4) - r6, kNinth - r2), Verdict::Entangled, Verdict::Separable);
}

RegionVerdict simple_bounds(int nqubits, double r2, double r4) {
  if (nqubits < 1) raise(ErrorKind::Domain, "simple_bounds needs N >= 1");
  const double b2 = std::pow(3.0, -nqubits);
  const double b4 = std::pow(5.0, -nqubits);
  return decide(std::min(b2 - r2, b4 - r4), Verdict::Entangled, Verdict::Inconclusive);
}

DickeMoments dicke_marginal_moments(long long n, long long k) {
  const CorrelationTensor t = dicke_marginal_tensor(n, k);
  return {moment_design(t, 2, octahedron_design()), moment_design(t, 4, icosahedron_design())};
}

RegionVerdict dicke_detect(long long n, long long k) {
  const auto m = dicke_marginal_moments(n, k);
  return criterion_F(m.r2, m.r4);
}

WClassCriterionParams shipped_wclass_params(int nqubits) {
  // chi is exact; slope and intercept were produced by compute_line_params
  // (64 restarts, seed 1) and frozen here.
  switch (nqubits) {
    case 3: return {3, 11.0 / 81.0, kLineSlope3, kLineIntercept3};
    case 4: return {4, 4.0 / 81.0, kLineSlope4, kLineIntercept4};
    case 5: return {5, 7.0 / 405.0, kLineSlope5, kLineIntercept5};
    default: break;
  }
  raise(ErrorKind::Unsupported, "no shipped W-class constants for N = " + std::to_string(nqubits));
}

RegionVerdict wclass_r2_criterion(const WClassCriterionParams& params, double r2) {
  return decide(params.chi - r2, Verdict::OutsideWClass, Verdict::Inconclusive);
}

RegionVerdict wclass_line_criterion(const WClassCriterionParams& params, double r2, double r4) {
  if (params.nqubits > 6) raise(ErrorKind::Unsupported, "the line criterion is established only for N <= 6");
  if (params.slope_m >= 0.0) raise(ErrorKind::SlopeSignViolation, "line criterion needs a negative slope");
  return decide(params.slope_m * r2 + params.intercept_btilde - r4, Verdict::OutsideWClass, Verdict::Inconclusive);
}

}  // namespace randcorr
