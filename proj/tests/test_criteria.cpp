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


#include <gtest/gtest.h>

#include <cmath>

#include "randcorr/criteria.hpp"
#include "randcorr/error.hpp"
#include "randcorr/moments.hpp"
#include "randcorr/qcore.hpp"
#include "randcorr/rng.hpp"

namespace randcorr {
namespace {

constexpr double kThird = 1.0 / 3.0;
constexpr double kNinth = 1.0 / 9.0;

std::pair<double, double> moments_of(const DensityMatrix& rho) {
  const auto t = correlation_tensor(rho);
  return {moment_exact(t, 2), moment_exact(t, 4)};
}

TEST(Boundaries, Corners) {
  EXPECT_NEAR(f_lb(kThird), 0.2, 1e-15);
  EXPECT_NEAR(f_ub(kThird), 0.2, 1e-15);
  EXPECT_NEAR(f_ub(kNinth), 1.0 / 25, 1e-15);
  EXPECT_NEAR(f_ub_sep(kNinth), 1.0 / 25, 1e-15);
  EXPECT_EQ(f_lb(0), 0.0);
  EXPECT_EQ(f_ub(0), 0.0);
  EXPECT_EQ(f_lb_sep(0), 0.0);
}

TEST(Boundaries, ContinuityAtBreakpoints) {
  const double eps = 1e-13;
  for (double b : {1.0 / 27, 1.0 / 18, kNinth}) {
    EXPECT_NEAR(f_lb_sep(b - eps), f_lb_sep(b + eps), 1e-12) << b;
    EXPECT_NEAR(f_ub_ent(b - eps), f_ub_ent(b + eps), 1e-12) << b;
    EXPECT_NEAR(f_ub(b - eps), f_ub(b + eps), 1e-12) << b;
  }
}

TEST(Boundaries, Sandwich) {
  for (int i = 0; i <= 1000; ++i) {
    const double r2 = kThird * i / 1000.0;
    EXPECT_LE(f_lb(r2), f_ub(r2) + 1e-15);
    EXPECT_LE(f_lb(r2), f_lb_ent(r2) + 1e-15);
    EXPECT_LE(f_ub_ent(r2), f_ub(r2) + 1e-15);
    EXPECT_LE(f_lb_ent(r2), f_ub_ent(r2) + 1e-15);
    if (r2 <= kNinth) {
      EXPECT_LE(f_lb(r2), f_lb_sep(r2) + 1e-15);
      EXPECT_LE(f_lb_sep(r2), f_ub_sep(r2) + 1e-15);
    }
  }
}

TEST(Boundaries, DomainErrors) {
  EXPECT_THROW(f_lb(-0.01), Error);
  EXPECT_THROW(f_ub(0.34), Error);
  EXPECT_THROW(f_ub_sep(0.12), Error);
  EXPECT_NO_THROW(f_ub_sep(kNinth));
}

TEST(CriterionF, Examples) {
  EXPECT_EQ(criterion_F(kThird, 0.2).verdict, Verdict::Entangled);
  EXPECT_EQ(criterion_F(kNinth, 1.0 / 25).verdict, Verdict::Inconclusive);
  EXPECT_EQ(criterion_F(0, 0).verdict, Verdict::Inconclusive);
  EXPECT_EQ(criterion_F(0.05, 0.5).verdict, Verdict::NonPhysicalPoint);
  EXPECT_EQ(criterion_F(0.05, 0.0).verdict, Verdict::NonPhysicalPoint);
  // A point strictly between f_lb and f_lb_sep.
  const double r2 = 0.08;
  const RegionVerdict v = criterion_F(r2, 0.5 * (f_lb(r2) + f_lb_sep(r2)));
  EXPECT_EQ(v.verdict, Verdict::Entangled);
  EXPECT_LT(v.margin, 0.0);
  EXPECT_THROW(criterion_F(0.5, 0.1), Error);
}

TEST(CriterionF, SoundOnSeparableStates) {
  int flagged = 0;
  for (std::uint64_t seed = 1; seed <= 100000; ++seed) {
    const int rank = 1 + static_cast<int>(seed % 4);
    const auto [r2, r4] = moments_of(random_separable_mixture(2, rank, seed));
    if (criterion_F(r2, r4).verdict == Verdict::Entangled) ++flagged;
  }
  EXPECT_EQ(flagged, 0);
}

TEST(CriterionF, NeverContradictsBdRule) {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const BellDiagonalParams c = random_bd_params(rng);
    const MomentSet m = bd_moments(c);
    if (criterion_F(m.r2, m.r4).verdict == Verdict::Entangled) {
      EXPECT_GT(c.l1_norm(), 1.0);
    }
  }
}

TEST(CriterionR6, Examples) {
  EXPECT_EQ(criterion_R6(kThird, 0.2, 1.0 / 7).verdict, Verdict::Entangled);
  const MomentSet edge = bd_moments({1, 0, 0});
  EXPECT_NEAR(edge.r2, kNinth, 1e-15);
  EXPECT_NEAR(edge.r4, 2.0 / 75 + 27.0 / 2025, 1e-15);
  EXPECT_EQ(criterion_R6(edge.r2, edge.r4, *edge.r6).verdict, Verdict::Separable);
  EXPECT_EQ(criterion_R6(0, 0, 0).verdict, Verdict::Separable);
}

TEST(CriterionR6, AgreesWithBdRule) {
  Rng rng(12);
  int compared = 0;
  for (int i = 0; i < 10000; ++i) {
    const BellDiagonalParams c = random_bd_params(rng);
    if (std::abs(c.l1_norm() - 1.0) < 1e-8) continue;
    const MomentSet m = bd_moments(c);
    const bool entangled = criterion_R6(m.r2, m.r4, *m.r6).verdict == Verdict::Entangled;
    EXPECT_EQ(entangled, !c.is_separable()) << c.c1 << ' ' << c.c2 << ' ' << c.c3;
    ++compared;
  }
  EXPECT_GT(compared, 9900);
}

TEST(SimpleBounds, Examples) {
  const auto [g2, g4] = moments_of(ghz(3));
  EXPECT_NEAR(g2, 4.0 / 27, 1e-14);
  EXPECT_EQ(simple_bounds(3, g2, g4).verdict, Verdict::Entangled);
  EXPECT_EQ(simple_bounds(3, 0, 0).verdict, Verdict::Inconclusive);
  const auto [w2, w4] = moments_of(w_state(3));
  EXPECT_NEAR(w2, 11.0 / 81, 1e-14);
  EXPECT_EQ(simple_bounds(3, w2, w4).verdict, Verdict::Entangled);
  const auto [p2, p4] = moments_of(random_product_state(3, 4));
  EXPECT_EQ(simple_bounds(3, p2, p4).verdict, Verdict::Inconclusive);
  EXPECT_THROW(simple_bounds(0, 0, 0), Error);
}

TEST(Dicke, Detection) {
  EXPECT_EQ(dicke_detect(2, 1).verdict, Verdict::Entangled);
  EXPECT_EQ(dicke_detect(3, 1).verdict, Verdict::Entangled);
  EXPECT_EQ(dicke_detect(4, 1).verdict, Verdict::Inconclusive);
  EXPECT_EQ(dicke_detect(5, 1).verdict, Verdict::Inconclusive);
  for (int n = 3; n <= 6; ++n) EXPECT_EQ(dicke_detect(n, 2).verdict, Verdict::Entangled) << n;
  // D^7_2 sits on the separable lower boundary to machine precision.
  EXPECT_NEAR(dicke_detect(7, 2).margin, 0.0, 1e-12);
}

TEST(Dicke, MarginalMomentsMatchPartialTrace) {
  for (int n = 2; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      const DickeMoments m = dicke_marginal_moments(n, k);
      const auto [r2, r4] = moments_of(partial_trace(dicke_state(n, k), {0, 1}));
      EXPECT_NEAR(m.r2, r2, 1e-12);
      EXPECT_NEAR(m.r4, r4, 1e-12);
    }
  }
}

TEST(Dicke, LargeScanIsFast) {
  for (long long n = 2; n <= 200; ++n) {
    for (long long k = 1; k <= n / 2; ++k) {
      const RegionVerdict v = dicke_detect(n, k);
      EXPECT_NE(v.verdict, Verdict::NonPhysicalPoint) << n << ',' << k;
    }
  }
}

TEST(WClass, ShippedParams) {
  EXPECT_NEAR(shipped_wclass_params(3).chi, 11.0 / 81, 1e-15);
  EXPECT_NEAR(shipped_wclass_params(4).chi, 4.0 / 81, 1e-15);
  EXPECT_NEAR(shipped_wclass_params(5).chi, 7.0 / 405, 1e-15);
  for (int n = 3; n <= 5; ++n) {
    const auto p = shipped_wclass_params(n);
    EXPECT_LT(p.slope_m, 0.0);
    EXPECT_GT(p.intercept_btilde, 0.0);
  }
  try {
    shipped_wclass_params(6);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}

TEST(WClass, Examples) {
  const auto p3 = shipped_wclass_params(3);
  const auto [g2, g4] = moments_of(ghz(3));
  EXPECT_EQ(wclass_r2_criterion(p3, g2).verdict, Verdict::OutsideWClass);
  EXPECT_EQ(wclass_line_criterion(p3, g2, g4).verdict, Verdict::OutsideWClass);
  const auto [w2, w4] = moments_of(w_state(3));
  EXPECT_EQ(wclass_r2_criterion(p3, w2).verdict, Verdict::Inconclusive);
  EXPECT_EQ(wclass_line_criterion(p3, w2, w4).verdict, Verdict::Inconclusive);
  EXPECT_EQ(wclass_r2_criterion(p3, 0).verdict, Verdict::Inconclusive);
  EXPECT_EQ(wclass_line_criterion(p3, 0, 0).verdict, Verdict::Inconclusive);
}

TEST(WClass, Guards) {
  WClassCriterionParams bad{3, 0.1, 0.01, 0.02};
  try {
    wclass_line_criterion(bad, 0, 0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SlopeSignViolation);
  }
  WClassCriterionParams big{7, 0.1, -0.01, 0.02};
  try {
    wclass_line_criterion(big, 0, 0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}

TEST(WClass, SoundOnWClassMixtures) {
  for (int n : {3, 4}) {
    const auto params = shipped_wclass_params(n);
    int flagged = 0;
    for (std::uint64_t seed = 1; seed <= 10000; ++seed) {
      const int count = 1 + static_cast<int>(seed % 3);
      const auto [r2, r4] = moments_of(random_mixed_wclass(n, count, seed));
      if (wclass_r2_criterion(params, r2).verdict == Verdict::OutsideWClass) ++flagged;
      if (wclass_line_criterion(params, r2, r4).verdict == Verdict::OutsideWClass) ++flagged;
    }
    EXPECT_EQ(flagged, 0) << "N = " << n;
  }
}

}  // namespace
}  // namespace randcorr
