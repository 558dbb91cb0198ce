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


#include "randcorr/moments.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "randcorr/error.hpp"
#include "randcorr/parallel.hpp"

namespace randcorr {
namespace {

double ipow(double x, int k) {
  double r = 1.0;
  for (; k > 0; k >>= 1, x *= x) {
    if (k & 1) r *= x;
  }
  return r;
}

// Contracts the leading index of `tensor` (size 3^n) with each design point
// in turn and recurses; leaves add E^t to `sum`.
struct DesignSum {
  const std::vector<BlochDirection>& points;
  int order;
  std::vector<std::vector<double>> buffers;  // buffers[n] holds a 3^n tensor

  double run(const double* tensor, int n) {
    if (n == 0) return ipow(tensor[0], order);
    if (n == 1) {
      double sum = 0.0;
      for (const auto& p : points) sum += ipow(p.x * tensor[0] + p.y * tensor[1] + p.z * tensor[2], order);
      return sum;
    }
    const std::size_t stride = pow3(n - 1);
    std::vector<double>& out = buffers[n - 1];
    double sum = 0.0;
    for (const auto& p : points) {
      for (std::size_t r = 0; r < stride; ++r) {
        out[r] = p.x * tensor[r] + p.y * tensor[stride + r] + p.z * tensor[2 * stride + r];
      }
      sum += run(out.data(), n - 1);
    }
    return sum;
  }
};

double contract(const CorrelationTensor& t, std::span<const BlochDirection> dirs) {
  std::vector<double> cur(t.entries().begin(), t.entries().end());
  for (const auto& u : dirs) {
    const std::size_t stride = cur.size() / 3;
    for (std::size_t r = 0; r < stride; ++r) {
      cur[r] = u.x * cur[r] + u.y * cur[stride + r] + u.z * cur[2 * stride + r];
    }
    cur.resize(stride);
  }
  return cur[0];
}

BlochDirection uniform_direction(Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

struct Running {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }
  void merge(const Running& o) {
    if (o.count == 0.0) return;
    const double n = count + o.count;
    const double d = o.mean - mean;
    mean += d * o.count / n;
    m2 += o.m2 + d * d * count * o.count / n;
    count = n;
  }
};

constexpr std::size_t kMcChunk = 1024;

std::vector<McEstimate> mc_powers(const CorrelationTensor& t, std::span<const int> orders, std::size_t nsamples,
                                  std::uint64_t seed) {
  if (nsamples < 100) raise(ErrorKind::Domain, "Monte Carlo needs at least 100 samples");
  const Rng root(seed);
  const std::size_t nchunks = (nsamples + kMcChunk - 1) / kMcChunk;
  std::vector<std::vector<Running>> partial(nchunks, std::vector<Running>(orders.size()));
  parallel_for(nchunks, [&](std::size_t c) {
    Rng rng = root.split(c);
    const std::size_t count = std::min(kMcChunk, nsamples - c * kMcChunk);
    std::vector<BlochDirection> dirs(static_cast<std::size_t>(t.nqubits()));
    for (std::size_t s = 0; s < count; ++s) {
      for (auto& d : dirs) d = uniform_direction(rng);
      const double e = contract(t, dirs);
      for (std::size_t k = 0; k < orders.size(); ++k) partial[c][k].add(ipow(e, orders[k]));
    }
  });
  std::vector<McEstimate> out(orders.size());
  for (std::size_t k = 0; k < orders.size(); ++k) {
    Running total;
    for (const auto& p : partial) total.merge(p[k]);
    const double var = total.m2 / (total.count - 1.0);
    out[k] = {total.mean, std::sqrt(var / total.count), nsamples};
  }
  return out;
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Enumerates multisets of nonzero tensor entries of size `order`; each
// multiset contributes t!/prod(m_j!) prod(T_j^m_j) prod_n <monomial_n>.
struct MonomialSum {
  int nqubits;
  int order;
  std::vector<double> values;
  std::vector<std::vector<int>> digits;  // axis per qubit for each entry
  std::vector<double> sphere;            // sphere[(a*(t+1)+b)*(t+1)+c]
  std::vector<int> exps;                 // exps[3*n + axis]
  double total = 0.0;

  double sphere_avg(int a, int b, int c) const {
    const int s = order + 1;
    return sphere[(static_cast<std::size_t>(a) * s + b) * s + c];
  }

  void leaf(double weight) {
    for (int n = 0; n < nqubits; ++n) {
      const int a = exps[3 * n], b = exps[3 * n + 1], c = exps[3 * n + 2];
      if ((a | b | c) & 1) return;
      weight *= sphere_avg(a, b, c);
    }
    total += weight;
  }

  void run(std::size_t j, int remaining, double weight) {
    if (remaining == 0) {
      leaf(weight);
      return;
    }
    if (j == values.size()) return;
    run(j + 1, remaining, weight);
    double w = weight;
    for (int m = 1; m <= remaining; ++m) {
      w *= values[j] / m;
      for (int n = 0; n < nqubits; ++n) ++exps[3 * n + digits[j][n]];
      run(j + 1, remaining - m, w);
    }
    for (int n = 0; n < nqubits; ++n) exps[3 * n + digits[j][n]] -= remaining;
  }
};

}  // namespace

std::string_view to_string(MomentEngine engine) {
  switch (engine) {
    case MomentEngine::Design: return "design";
    case MomentEngine::MonteCarlo: return "montecarlo";
    case MomentEngine::Monomial: return "monomial";
    case MomentEngine::BdClosedForm: return "bd-closed-form";
  }
  return "unknown";
}

double moment_design(const CorrelationTensor& t, int order, const SphericalDesign& design) {
  if (order < 0) raise(ErrorKind::Domain, "moment order must be non-negative");
  if (design.strength < order) {
    raise(ErrorKind::InsufficientStrength, "design '" + design.name + "' has strength " +
                                               std::to_string(design.strength) + " < " + std::to_string(order));
  }
  std::vector<BlochDirection> points = design.points;
  if (order % 2 == 0) {
    auto half = antipodal_half(points);
    if (!half.empty()) points = std::move(half);
  }
  const int n = t.nqubits();
  const double terms = std::pow(static_cast<double>(points.size()), n);
  if (terms > kMaxDesignTerms) {
    raise(ErrorKind::CostTooLarge, "design sum needs " + std::to_string(terms) + " terms; use Monte Carlo");
  }

  // One task per leading point, reduced in index order.
  const std::size_t stride = pow3(n - 1);
  std::vector<double> partial(points.size(), 0.0);
  parallel_for(points.size(), [&](std::size_t k) {
    const auto& p = points[k];
    const auto e = t.entries();
    std::vector<double> head(stride);
    for (std::size_t r = 0; r < stride; ++r) head[r] = p.x * e[r] + p.y * e[stride + r] + p.z * e[2 * stride + r];
    DesignSum sum{points, order, {}};
    for (int m = 0; m + 1 < n; ++m) sum.buffers.emplace_back(pow3(m));
    partial[k] = sum.run(head.data(), n - 1);
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total / terms;
}

McEstimate moment_mc(const CorrelationTensor& t, int order, std::size_t nsamples, std::uint64_t seed) {
  if (order < 0) raise(ErrorKind::Domain, "moment order must be non-negative");
  const int orders[] = {order};
  return mc_powers(t, orders, nsamples, seed)[0];
}

double moment_monomial(const CorrelationTensor& t, int order) {
  if (order != 2 && order != 4 && order != 6) raise(ErrorKind::Domain, "monomial engine supports t = 2, 4, 6");
  MonomialSum sum{t.nqubits(), order, {}, {}, {}, std::vector<int>(3 * static_cast<std::size_t>(t.nqubits()), 0)};
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    if (t[flat] == 0.0) continue;
    sum.values.push_back(t[flat]);
    std::vector<int> d(static_cast<std::size_t>(t.nqubits()));
    std::size_t rest = flat;
    for (int q = t.nqubits() - 1; q >= 0; --q, rest /= 3) d[q] = static_cast<int>(rest % 3);
    sum.digits.push_back(std::move(d));
  }
  if (sum.values.empty()) return 0.0;
  const double nnz = static_cast<double>(sum.values.size());
  if (log_binomial(nnz + order - 1, order) > std::log(kMaxMonomialTerms)) {
    raise(ErrorKind::ExpansionTooLarge, "multinomial expansion of E^" + std::to_string(order) + " over " +
                                            std::to_string(sum.values.size()) + " entries is too large");
  }
  const int s = order + 1;
  sum.sphere.resize(static_cast<std::size_t>(s) * s * s);
  for (int a = 0; a <= order; ++a)
    for (int b = 0; b <= order; ++b)
      for (int c = 0; c <= order; ++c) sum.sphere[(static_cast<std::size_t>(a) * s + b) * s + c] =
          a + b + c <= order ? sphere_monomial_average(a, b, c) : 0.0;
  sum.run(0, order, std::tgamma(order + 1.0));
  return sum.total;
}

MomentSet bd_moments(const BellDiagonalParams& c) {
  double s2 = 0.0, s4 = 0.0, s6 = 0.0;
  for (double v : c.c()) {
    const double v2 = v * v;
    s2 += v2;
    s4 += v2 * v2;
    s6 += v2 * v2 * v2;
  }
  MomentSet m;
  m.engine = MomentEngine::BdClosedForm;
  m.r2 = s2 / 9.0;
  m.r4 = 2.0 / 75.0 * s4 + 27.0 / 25.0 * m.r2 * m.r2;
  m.r6 = 8.0 / 735.0 * s6 - 486.0 / 245.0 * m.r2 * m.r2 * m.r2 + 135.0 / 49.0 * m.r2 * m.r4;
  return m;
}

double two_body_moment(const DensityMatrix& rho, int alpha, int beta, int order) {
  return moment_exact(two_body_correlation_tensor(rho, alpha, beta), order);
}

double moment_exact(const CorrelationTensor& t, int order) {
  if (order < 0) raise(ErrorKind::Domain, "moment order must be non-negative");
  if (order % 2 == 1) return 0.0;
  if (order <= 3) return moment_design(t, order, octahedron_design());
  if (order <= 5) return moment_design(t, order, icosahedron_design());
  if (order == 6) return moment_monomial(t, order);
  raise(ErrorKind::Unsupported, "exact moments are available for t <= 6");
}

MomentSet compute_moments(const CorrelationTensor& t, MomentEngine engine, const MomentOptions& options) {
  MomentSet m;
  m.engine = engine;
  switch (engine) {
    case MomentEngine::Design:
      m.r2 = moment_design(t, 2, octahedron_design());
      m.r4 = moment_design(t, 4, icosahedron_design());
      if (options.with_r6) {
        if (options.design6 == nullptr) {
          raise(ErrorKind::InsufficientStrength, "no shipped design has strength 6; load one or use the monomial engine");
        }
        m.r6 = moment_design(t, 6, *options.design6);
      }
      break;
    case MomentEngine::MonteCarlo: {
      std::vector<int> orders{2, 4};
      if (options.with_r6) orders.push_back(6);
      const auto est = mc_powers(t, orders, options.nsamples, options.seed);
      m.r2 = est[0].value;
      m.r4 = est[1].value;
      McInfo info{options.nsamples, est[0].standard_error, est[1].standard_error, std::nullopt};
      if (options.with_r6) {
        m.r6 = est[2].value;
        info.se_r6 = est[2].standard_error;
      }
      m.mc = info;
      break;
    }
    case MomentEngine::Monomial:
      m.r2 = moment_monomial(t, 2);
      m.r4 = moment_monomial(t, 4);
      if (options.with_r6) m.r6 = moment_monomial(t, 6);
      break;
    case MomentEngine::BdClosedForm:
      raise(ErrorKind::Unsupported, "the closed-form engine takes Bell-diagonal parameters");
  }
  return m;
}

}  // namespace randcorr
