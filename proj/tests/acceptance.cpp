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


// Acceptance gate. Prints one PASS/FAIL line per criterion; with arguments,
// runs only the listed criteria. Exit status is non-zero if any selected
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "oracles.hpp"
#include "randcorr/criteria.hpp"
#include "randcorr/designs.hpp"
#include "randcorr/moments.hpp"
#include "randcorr/qcore.hpp"
#include "randcorr/rng.hpp"
#include "randcorr/witness_opt.hpp"

namespace {

using namespace randcorr;

// Pinned tolerances and budgets.
constexpr double kDesignTol = 1e-10;
constexpr double kEngineTol = 1e-10;
constexpr double kMcSigmas = 4.0;
constexpr std::size_t kMcSamples = 100000;
constexpr double kChiTol = 1e-6;
constexpr double kBdBand = 1e-8;
constexpr double kOneSidedTol = 1e-9;
constexpr double kApproachTol = 5e-3;
constexpr int kApproachPoints = 20;
constexpr std::size_t kBoundarySamples = 1000000;
constexpr double kThresholdTol = 1e-9;
constexpr double kInvarianceTol = 1e-9;
constexpr double kConvexityTol = 1e-12;
constexpr double kScalingTol = 1e-12;
constexpr double kMarginalTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<Outcome()> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

Outcome design_certification() {
  Outcome o;
  const auto oct = octahedron_design();
  o.check(verify_spherical_design(oct.points, 3, kDesignTol).passed, "octahedron fails t=3");
  o.check(!verify_spherical_design(oct.points, 4, kDesignTol).passed, "octahedron passes t=4");
  o.check(verify_spherical_design(icosahedron_design().points, 5, kDesignTol).passed, "icosahedron fails t=5");
  Sl2f5Report report;
  const UnitaryDesign sl2 = sl2f5_design(GeneratorTable::Corrected, &report);
  o.check(report.group_order == 120, fmt::format("group order {}", report.group_order));
  o.check(report.phase_classes == 60 && sl2.unitaries.size() == 60,
          fmt::format("phase classes {}", report.phase_classes));
  const SphericalDesign sphere = project_to_sphere(sl2);
  o.check(sphere.points.size() == 30, fmt::format("{} projected points", sphere.points.size()));
  o.check(verify_spherical_design(sphere.points, 5, kDesignTol).passed, "projection fails t=5");
  o.check(!verify_spherical_design(sphere.points, 6, kDesignTol).passed, "projection passes t=6");
  if (o.pass) o.detail = "120 -> 60 -> 30; t=5 passes, t=6 fails";
  return o;
}

std::vector<std::array<double, 3>> as_arrays(const SphericalDesign& d) {
  std::vector<std::array<double, 3>> out;
  for (const auto& p : d.points) out.push_back({p.x, p.y, p.z});
  return out;
}

Outcome engine_equivalence() {
  Outcome o;
  const auto oct = octahedron_design();
  const auto ico = icosahedron_design();
  const auto ico_pts = as_arrays(ico);
  double worst = 0.0;
  double worst_sigma = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int n = seed % 2 ? 2 : 3;
    const DensityMatrix rho = random_density_matrix(n, 1000 + seed);
    const auto t = correlation_tensor(rho);
    const std::vector<double> flat = oracle::correlation_tensor(rho.op(), n);
    for (int order : {2, 4}) {
      const double d = moment_design(t, order, order == 2 ? oct : ico);
      const double m = moment_monomial(t, order);
      const double b = oracle::design_moment(flat, n, ico_pts, order);
      worst = std::max({worst, std::abs(d - m), std::abs(d - b)});
      const McEstimate mc = moment_mc(t, order, kMcSamples, seed);
      const double z = std::abs(mc.value - m) / mc.standard_error;
      worst_sigma = std::max(worst_sigma, z);
      o.check(z <= kMcSigmas, fmt::format("MC off by {:.2f} sigma (seed {}, t={})", z, seed, order));
    }
  }
  Rng rng(2024);
  for (int i = 0; i < 50; ++i) {
    const BellDiagonalParams c = random_bd_params(rng);
    const MomentSet closed = bd_moments(c);
    const auto t = correlation_tensor(bell_diagonal(c));
    worst = std::max({worst, std::abs(closed.r2 - moment_design(t, 2, oct)),
                      std::abs(closed.r4 - moment_design(t, 4, ico)), std::abs(*closed.r6 - moment_monomial(t, 6))});
  }
  o.check(worst <= kEngineTol, fmt::format("engines differ by {:.3g}", worst));
  if (o.pass) o.detail = fmt::format("max engine gap {:.2g}, max MC deviation {:.2f} sigma", worst, worst_sigma);
  return o;
}

Outcome wclass_constants() {
  Outcome o;
  const std::array<double, 3> expected{11.0 / 81, 4.0 / 81, 7.0 / 405};
  std::string values;
  for (int n = 3; n <= 5; ++n) {
    const OptResult r = maximize_moment_wclass(n, 2, 64, 1);
    const double want = expected[static_cast<std::size_t>(n - 3)];
    o.check(std::abs(r.value - want) <= kChiTol, fmt::format("chi({}) = {:.12g}, want {:.12g}", n, r.value, want));
    values += fmt::format("{}chi({})={:.10f}", values.empty() ? "" : ", ", n, r.value);
  }
  if (o.pass) o.detail = values;
  return o;
}

Outcome bd_separability() {
  Outcome o;
  Rng rng(4);
  int compared = 0;
  int disagreements = 0;
  int false_flags = 0;
  for (int i = 0; i < 10000; ++i) {
    const BellDiagonalParams c = random_bd_params(rng);
    const MomentSet m = bd_moments(c);
    if (c.is_separable() && criterion_F(m.r2, m.r4).verdict == Verdict::Entangled) ++false_flags;
    if (std::abs(c.l1_norm() - 1.0) <= kBdBand) continue;
    ++compared;
    const bool entangled = criterion_R6(m.r2, m.r4, *m.r6).verdict == Verdict::Entangled;
    if (entangled == c.is_separable()) ++disagreements;
  }
  o.check(disagreements == 0, fmt::format("{} R6 disagreements", disagreements));
  o.check(false_flags == 0, fmt::format("criterion F flagged {} separable states", false_flags));
  if (o.pass) o.detail = fmt::format("{} states compared, 0 disagreements, 0 false flags", compared);
  return o;
}

Outcome dicke_detection() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    long long n, k;
    Verdict want;
  };
  const std::vector<Case> cases{{2, 1, Verdict::Entangled},   {3, 1, Verdict::Entangled},
                                {3, 2, Verdict::Entangled},   {4, 2, Verdict::Entangled},
                                {5, 2, Verdict::Entangled},   {6, 2, Verdict::Entangled},
                                {7, 2, Verdict::Entangled},   {4, 1, Verdict::Inconclusive},
                                {5, 1, Verdict::Inconclusive}};
  for (const Case& c : cases) {
    const RegionVerdict v = dicke_detect(c.n, c.k);
    o.check(v.verdict == c.want, fmt::format("D({},{}) -> {} (margin {:.3g}), want {}", c.n, c.k,
                                             to_string(v.verdict), v.margin, to_string(c.want)));
  }
  const double cases_time = seconds_since(t0);
  o.check(cases_time < 1.0, fmt::format("cases took {:.2f} s", cases_time));
  const auto t1 = std::chrono::steady_clock::now();
  int detected = 0;
  for (long long n = 2; n <= 200; ++n) {
    for (long long k = 1; k <= n / 2; ++k) {
      if (dicke_detect(n, k).verdict == Verdict::Entangled) ++detected;
    }
  }
  const double scan_time = seconds_since(t1);
  o.check(scan_time < 30.0, fmt::format("scan took {:.2f} s", scan_time));
  if (o.pass) o.detail = fmt::format("all cases match; scan to N=200 found {} detections", detected);
  return o;
}

Outcome boundary_oracle() {
  Outcome o;
  const std::vector<BdSample> samples = bd_samples(kBoundarySamples, 6);
  double worst_violation = 0.0;
  for (const BdSample& s : samples) {
    const double r2 = std::min(s.r2, 1.0 / 3);
    double v = std::max(f_lb(r2) - s.r4, s.r4 - f_ub(r2));
    if (s.separable) v = std::max(v, f_lb_sep(std::min(r2, 1.0 / 9)) - s.r4);
    if (!s.separable) v = std::max(v, s.r4 - f_ub_ent(r2));
    worst_violation = std::max(worst_violation, v);
  }
  o.check(worst_violation <= kOneSidedTol, fmt::format("sample crosses a curve by {:.3g}", worst_violation));

  // Closest sample to each curve within each of 20 equal cells of the curve's domain.
  struct Curve {
    const char* name;
    double lo, hi;
    BdSampleMode mode;
    bool lower;
    double (*f)(double);
  };
  const std::array<Curve, 4> curves{{{"f_lb", 0.0, 1.0 / 3, BdSampleMode::All, true, f_lb},
                                     {"f_ub", 0.0, 1.0 / 3, BdSampleMode::All, false, f_ub},
                                     {"f_lb_sep", 0.0, 1.0 / 9, BdSampleMode::Separable, true, f_lb_sep},
                                     {"f_ub_ent", 1.0 / 27, 1.0 / 3, BdSampleMode::Entangled, false, f_ub_ent}}};
  double worst_gap = 0.0;
  for (const Curve& c : curves) {
    const double width = (c.hi - c.lo) / kApproachPoints;
    std::vector<double> gap(kApproachPoints, 1.0);
    for (const BdSample& s : samples) {
      if (c.mode == BdSampleMode::Separable && !s.separable) continue;
      if (c.mode == BdSampleMode::Entangled && s.separable) continue;
      if (s.r2 < c.lo || s.r2 > c.hi) continue;
      const auto cell = std::min<std::size_t>(kApproachPoints - 1, static_cast<std::size_t>((s.r2 - c.lo) / width));
      const double d = c.lower ? s.r4 - c.f(s.r2) : c.f(s.r2) - s.r4;
      gap[cell] = std::min(gap[cell], d);
    }
    for (int i = 0; i < kApproachPoints; ++i) {
      worst_gap = std::max(worst_gap, gap[i]);
      o.check(gap[i] <= kApproachTol,
              fmt::format("{} not approached near r2 = {:.4f} (gap {:.3g})", c.name, c.lo + (i + 0.5) * width, gap[i]));
    }
  }
  if (o.pass) {
    o.detail = fmt::format("max crossing {:.2g}, max approach gap {:.2g} over 4 curves x {} points",
                           worst_violation, worst_gap, kApproachPoints);
  }
  return o;
}

Outcome thresholds() {
  Outcome o;
  const auto p3 = shipped_wclass_params(3);
  const double closed = noise_threshold(p3, WClassCriterion::R2Only, ThresholdMethod::ClosedForm).threshold;
  const double bisected = noise_threshold(p3, WClassCriterion::R2Only, ThresholdMethod::Bisection).threshold;
  const double exact = 1.0 - std::sqrt(11.0 / 12.0);
  o.check(std::abs(closed - exact) <= kThresholdTol, fmt::format("closed form p*(3) = {:.12g}", closed));
  o.check(std::abs(bisected - exact) <= kThresholdTol, fmt::format("bisection p*(3) = {:.12g}", bisected));

  std::vector<double> p_star;
  for (int n = 3; n <= 6; ++n) {
    WClassCriterionParams params{n, 0.0, 0.0, 0.0};
    params.chi = maximize_moment_wclass(n, 2, 64, 1).value;
    p_star.push_back(noise_threshold(params, WClassCriterion::R2Only).threshold);
  }
  for (std::size_t i = 1; i < p_star.size(); ++i) {
    o.check(p_star[i] > p_star[i - 1], fmt::format("p*({}) = {:.6f} <= p*({}) = {:.6f}", i + 3, p_star[i], i + 2,
                                                   p_star[i - 1]));
  }

  const WClassCriterionParams live = compute_line_params(3, 1, 64);
  const double line = noise_threshold(live, WClassCriterion::Line).threshold;
  o.check(line > p_star[0], fmt::format("line p*(3) = {:.6f} <= r2-only {:.6f}", line, p_star[0]));
  if (o.pass) {
    o.detail = fmt::format("p*(3..6) = {:.5f} {:.5f} {:.5f} {:.5f}; line p*(3) = {:.5f}", p_star[0], p_star[1],
                           p_star[2], p_star[3], line);
  }
  return o;
}

Outcome property_suites() {
  Outcome o;
  Rng rng(8);
  double lu = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const DensityMatrix rho = random_density_matrix(n, 8000 + seed);
    std::vector<Matrix2c> us;
    for (int q = 0; q < n; ++q) us.push_back(random_su2(rng));
    const auto a = correlation_tensor(rho);
    const auto b = correlation_tensor(apply_local_unitaries(rho, us));
    for (int order : {2, 4}) lu = std::max(lu, std::abs(moment_exact(a, order) - moment_exact(b, order)));
  }
  o.check(lu <= kInvarianceTol, fmt::format("LU invariance gap {:.3g}", lu));

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto t = correlation_tensor(random_density_matrix(2 + static_cast<int>(seed % 2), 8100 + seed));
    for (int order : {1, 3, 5}) {
      const McEstimate e = moment_mc(t, order, kMcSamples, seed);
      o.check(std::abs(e.value) <= kMcSigmas * e.standard_error,
              fmt::format("odd moment t={} is {:.3g} (se {:.3g})", order, e.value, e.standard_error));
    }
  }

  double convexity = -1.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const std::array<DensityMatrix, 2> states{random_density_matrix(n, 8200 + 2 * seed),
                                              random_density_matrix(n, 8201 + 2 * seed)};
    const double l = rng.uniform();
    const std::array<double, 2> w{l, 1.0 - l};
    const auto tm = correlation_tensor(mix(states, w));
    const auto t1 = correlation_tensor(states[0]);
    const auto t2 = correlation_tensor(states[1]);
    for (int order : {2, 4}) {
      const double excess = moment_exact(tm, order) - l * moment_exact(t1, order) - (1 - l) * moment_exact(t2, order);
      convexity = std::max(convexity, excess);
    }
  }
  o.check(convexity <= kConvexityTol, fmt::format("convexity violated by {:.3g}", convexity));

  double scaling = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto t = correlation_tensor(random_density_matrix(2 + static_cast<int>(seed % 2), 8400 + seed));
    const double s = rng.uniform();
    for (int order : {2, 4}) {
      scaling = std::max(scaling, std::abs(moment_exact(t.scaled(s), order) - std::pow(s, order) * moment_exact(t, order)));
    }
  }
  o.check(scaling <= kScalingTol, fmt::format("scaling law gap {:.3g}", scaling));

  double marginal = 0.0;
  for (int n = 2; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      const ComplexOperator closed = dicke_two_body_marginal(n, k).op();
      const oracle::Mat full = dicke_state(n, k).op();
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          marginal = std::max(marginal, (oracle::partial_trace_pair(full, n, a, b) - closed).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  o.check(marginal <= kMarginalTol, fmt::format("Dicke marginal gap {:.3g}", marginal));
  if (o.pass) {
    o.detail = fmt::format("LU {:.2g}, convexity excess {:.2g}, scaling {:.2g}, Dicke marginal {:.2g}", lu,
                           convexity, scaling, marginal);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "design certification", 10.0, design_certification},
      {2, "engine equivalence", 120.0, engine_equivalence},
      {3, "W-class R2 maxima", 300.0, wclass_constants},
      {4, "Bell-diagonal separability", 60.0, bd_separability},
      {5, "Dicke detection", 30.0, dicke_detection},
      {6, "boundary oracle", 120.0, boundary_oracle},
      {7, "GHZ thresholds", 600.0, thresholds},
      {8, "property suites", 600.0, property_suites},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(t0);
    o.check(elapsed < c.budget_seconds, fmt::format("runtime {:.1f} s over budget {:.0f} s", elapsed, c.budget_seconds));
    if (!o.pass) ++failures;
    fmt::print("{} [{}] {}: {} ({:.2f} s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail, elapsed);
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
