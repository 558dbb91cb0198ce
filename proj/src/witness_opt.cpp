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


#include "randcorr/witness_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "randcorr/designs.hpp"
#include "randcorr/error.hpp"
#include "randcorr/moments.hpp"
#include "randcorr/parallel.hpp"

namespace randcorr {
namespace {

const SphericalDesign& octahedron() {
  static const SphericalDesign d = octahedron_design();
  return d;
}

const SphericalDesign& icosahedron() {
  static const SphericalDesign d = icosahedron_design();
  return d;
}

std::vector<double> to_simplex_point(std::span<const double> v) {
  std::vector<double> x(v.size());
  double norm2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    x[i] = std::abs(v[i]);
    norm2 += x[i] * x[i];
  }
  if (norm2 == 0.0) {
    x.assign(v.size(), 1.0 / std::sqrt(static_cast<double>(v.size())));
    return x;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& e : x) e *= inv;
  return x;
}

struct RestartOutcome {
  double value = 0.0;
  std::vector<double> x;
};

std::pair<double, double> state_moments(int nqubits, std::span<const double> x, bool needs_r4) {
  const CorrelationTensor t = correlation_tensor(wclass_vector(nqubits, x));
  const double r2 = moment_design(t, 2, octahedron());
  const double r4 = needs_r4 ? moment_design(t, 4, icosahedron()) : 0.0;
  return {r2, r4};
}

std::pair<double, double> ghz_moments(int nqubits) {
  const CorrelationTensor t = psi_theta_tensor(nqubits, std::numbers::pi / 4);
  return {moment_design(t, 2, octahedron()), moment_design(t, 4, icosahedron())};
}

constexpr double kBisectionWidth = 1e-10;

// Bisection on [lo, hi] where margin(lo) and margin(hi) have opposite
// "flagged" status; returns the midpoint of the final bracket.
ThresholdResult bisect(const std::function<bool(double)>& flagged, double lo, double hi, WClassCriterion criterion) {
  const bool flagged_lo = flagged(lo);
  while (hi - lo > kBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    if (flagged(mid) == flagged_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), criterion, hi - lo};
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) raise(ErrorKind::Domain, "Nelder-Mead needs at least one parameter");
  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(n + 1);
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point = [&](double coef, std::vector<double>& out, const std::vector<double>& worst) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + coef * (worst[j] - centroid[j]);
  };

  while (evals < options.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (std::abs(values[worst] - values[best]) <= options.ftol) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);
    }

    point(-1.0, trial, simplex[worst]);
    const double fr = eval(trial);
    if (fr < values[best]) {
      point(-2.0, trial2, simplex[worst]);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    // Contraction: outside if the reflection improved on the worst point.
    const bool outside = fr < values[worst];
    point(outside ? -0.5 : 0.5, trial2, simplex[worst]);
    const double fc = eval(trial2);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
      values[i] = eval(simplex[i]);
    }
  }
  const auto it = std::min_element(values.begin(), values.end());
  const auto k = static_cast<std::size_t>(it - values.begin());
  return {simplex[k], *it, evals};
}

std::pair<double, double> wclass_moments(int nqubits, std::span<const double> x) {
  return state_moments(nqubits, x, true);
}

OptResult maximize_wclass(int nqubits, const MomentObjective& objective, int restarts, std::uint64_t seed,
                          bool needs_r4) {
  if (nqubits < 3 || nqubits > 8) raise(ErrorKind::Domain, "W-class optimization supports 3 <= N <= 8");
  if (restarts < 1) raise(ErrorKind::Domain, "need at least one restart");
  const Rng root(seed);
  const std::size_t dim = static_cast<std::size_t>(nqubits) + 1;
  auto cost = [&](std::span<const double> v) {
    const auto x = to_simplex_point(v);
    const auto [r2, r4] = state_moments(nqubits, x, needs_r4);
    return -objective(r2, r4);
  };

  std::vector<RestartOutcome> outcomes;
  auto run_batch = [&](std::size_t first, std::size_t count) {
    std::vector<RestartOutcome> batch(count);
    parallel_for(count, [&](std::size_t i) {
      Rng rng = root.split(first + i);
      std::vector<double> v(dim);
      for (auto& e : v) e = std::abs(rng.normal());
      NelderMeadResult res = nelder_mead(cost, v);
      // Restarting from the optimum rebuilds a fresh simplex and escapes
      // premature collapse.
      for (int polish = 0; polish < 3; ++polish) {
        NelderMeadOptions opts;
        opts.initial_step = 0.05;
        NelderMeadResult again = nelder_mead(cost, to_simplex_point(res.x), opts);
        const bool improved = again.value < res.value - 1e-15;
        if (again.value <= res.value) res = std::move(again);
        if (!improved) break;
      }
      batch[i] = {-res.value, to_simplex_point(res.x)};
    });
    outcomes.insert(outcomes.end(), batch.begin(), batch.end());
  };

  OptResult result;
  run_batch(0, static_cast<std::size_t>(restarts));
  result.restarts = restarts;
  auto spread = [&] {
    const auto [lo, hi] = std::minmax_element(outcomes.begin(), outcomes.end(),
                                              [](const auto& a, const auto& b) { return a.value < b.value; });
    return hi->value - lo->value;
  };
  if (spread() > 1e-5) {
    run_batch(static_cast<std::size_t>(restarts), static_cast<std::size_t>(restarts));
    result.restarts = 2 * restarts;
    result.warning = "restart optima spread " + std::to_string(spread()) + " > 1e-5; restarts doubled to " +
                     std::to_string(result.restarts);
  }
  result.spread = spread();
  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (outcomes[i].value > outcomes[best].value) best = i;
  }
  result.value = outcomes[best].value;
  result.argmax = {outcomes[best].x, 0.0};
  return result;
}

OptResult maximize_moment_wclass(int nqubits, int order, int restarts, std::uint64_t seed) {
  if (order == 2) return maximize_wclass(nqubits, [](double r2, double) { return r2; }, restarts, seed, false);
  if (order == 4) return maximize_wclass(nqubits, [](double, double r4) { return r4; }, restarts, seed, true);
  raise(ErrorKind::Domain, "W-class maximization supports t = 2, 4");
}

WClassCriterionParams compute_line_params(int nqubits, std::uint64_t seed, int restarts) {
  if (nqubits < 3 || nqubits > 6) raise(ErrorKind::Unsupported, "line parameters are defined for 3 <= N <= 6");
  const OptResult o2 = maximize_moment_wclass(nqubits, 2, restarts, seed);
  const OptResult o4 = maximize_moment_wclass(nqubits, 4, restarts, seed);
  const auto [a2, a4] = wclass_moments(nqubits, o2.argmax.lambdas);
  const auto [b2, b4] = wclass_moments(nqubits, o4.argmax.lambdas);
  if (std::abs(a2 - b2) < 1e-12) raise(ErrorKind::SlopeSignViolation, "R2 and R4 maximizers coincide; slope undefined");
  const double m = (a4 - b4) / (a2 - b2);
  if (m >= 0.0) raise(ErrorKind::SlopeSignViolation, "slope m = " + std::to_string(m) + " is not negative");
  const OptResult ob = maximize_wclass(nqubits, [m](double r2, double r4) { return r4 - m * r2; }, restarts, seed);
  return {nqubits, o2.value, m, ob.value};
}

WClassCriterionParams wclass_params(int nqubits, std::uint64_t seed) {
  if (nqubits >= 3 && nqubits <= 5) return shipped_wclass_params(nqubits);
  return compute_line_params(nqubits, seed);
}

double wclass_margin(const WClassCriterionParams& params, WClassCriterion criterion, double r2, double r4) {
  return criterion == WClassCriterion::R2Only ? wclass_r2_criterion(params, r2).margin
                                              : wclass_line_criterion(params, r2, r4).margin;
}

ThresholdResult noise_threshold(const WClassCriterionParams& params, WClassCriterion criterion,
                                ThresholdMethod method) {
  const auto [g2, g4] = ghz_moments(params.nqubits);
  auto flagged = [&](double p) {
    const double s = (1.0 - p) * (1.0 - p);
    return wclass_margin(params, criterion, s * g2, s * s * g4) < 0.0;
  };
  if (!flagged(0.0)) raise(ErrorKind::NotDetected, "the GHZ state is not flagged by this criterion");
  if (method == ThresholdMethod::Auto) {
    method = criterion == WClassCriterion::R2Only ? ThresholdMethod::ClosedForm : ThresholdMethod::Bisection;
  }
  if (method == ThresholdMethod::ClosedForm) {
    if (criterion != WClassCriterion::R2Only) raise(ErrorKind::Unsupported, "closed form exists for r2-only only");
    return {1.0 - std::sqrt(params.chi / g2), criterion, 0.0};
  }
  return bisect(flagged, 0.0, 1.0, criterion);
}

ThresholdResult amplitude_threshold(const WClassCriterionParams& params, WClassCriterion criterion) {
  auto flagged = [&](double theta) {
    const CorrelationTensor t = psi_theta_tensor(params.nqubits, theta);
    const double r2 = moment_design(t, 2, octahedron());
    const double r4 = criterion == WClassCriterion::Line ? moment_design(t, 4, icosahedron()) : 0.0;
    return wclass_margin(params, criterion, r2, r4) < 0.0;
  };
  if (!flagged(std::numbers::pi / 4)) raise(ErrorKind::NotDetected, "the GHZ state is not flagged by this criterion");
  return bisect(flagged, 0.0, std::numbers::pi / 4, criterion);
}

// ---------------------------------------------------------------------------

std::vector<BdSample> bd_samples(std::size_t count, std::uint64_t seed) {
  constexpr std::size_t kChunk = 4096;
  const Rng root(seed);
  std::vector<BdSample> out(count);
  parallel_for((count + kChunk - 1) / kChunk, [&](std::size_t c) {
    Rng rng = root.split(c);
    const std::size_t end = std::min(count, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const BellDiagonalParams p = random_bd_params(rng);
      const MomentSet m = bd_moments(p);
      out[i] = {p, m.r2, m.r4, p.is_separable()};
    }
  });
  return out;
}

std::vector<BoundaryCell> bd_boundary_bruteforce(std::size_t cells, std::size_t samples, BdSampleMode mode,
                                                 std::uint64_t seed) {
  if (cells == 0) raise(ErrorKind::Domain, "need at least one cell");
  const double width = (1.0 / 3.0) / static_cast<double>(cells);
  std::vector<BoundaryCell> grid(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    grid[i].r2_lo = width * static_cast<double>(i);
    grid[i].r2_hi = width * static_cast<double>(i + 1);
  }
  for (const auto& s : bd_samples(samples, seed)) {
    if (mode == BdSampleMode::Separable && !s.separable) continue;
    if (mode == BdSampleMode::Entangled && s.separable) continue;
    const auto i = std::min(cells - 1, static_cast<std::size_t>(s.r2 / width));
    BoundaryCell& cell = grid[i];
    if (cell.count == 0 || s.r4 < cell.min_r4) {
      cell.min_r4 = s.r4;
      cell.r2_at_min = s.r2;
    }
    if (cell.count == 0 || s.r4 > cell.max_r4) {
      cell.max_r4 = s.r4;
      cell.r2_at_max = s.r2;
    }
    ++cell.count;
  }
  return grid;
}

}  // namespace randcorr
