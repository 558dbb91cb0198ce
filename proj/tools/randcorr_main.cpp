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


#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "randcorr/criteria.hpp"
#include "randcorr/designs.hpp"
#include "randcorr/error.hpp"
#include "randcorr/moments.hpp"
#include "randcorr/parallel.hpp"
#include "randcorr/qcore.hpp"
#include "randcorr/serialize.hpp"
#include "randcorr/witness_opt.hpp"
#include "state_spec.hpp"

#ifndef RANDCORR_VERSION
#define RANDCORR_VERSION "0.0.0"
#endif

namespace {

using namespace randcorr;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Context {
  std::string command_line;
  std::uint64_t seed = 1;
  std::string out;
};

// Writes `content` to --out (plus a manifest next to it) or to stdout.
void emit(const Context& ctx, const std::string& content) {
  if (ctx.out.empty()) {
    std::cout << content;
    return;
  }
  {
    std::ofstream f(ctx.out, std::ios::binary);
    if (!f) raise(ErrorKind::Parse, "cannot write " + ctx.out);
    f << content;
  }
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  json manifest{{"command", ctx.command_line},
                {"seed", ctx.seed},
                {"version", RANDCORR_VERSION},
                {"timestamp_unix", secs},
                {"outputs", json::array({{{"path", ctx.out}, {"fnv1a64", fmt::format("{:016x}", fnv1a64(content))}}})}};
  std::ofstream m(ctx.out + ".manifest.json");
  m << manifest.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// design

AnyDesign named_design(const std::string& name, bool as_printed) {
  if (name == "octahedron") return octahedron_design();
  if (name == "icosahedron") return icosahedron_design();
  if (name == "clifford") return clifford_group_1q();
  if (name == "sl2f5") return sl2f5_design(as_printed ? GeneratorTable::AsPrinted : GeneratorTable::Corrected);
  raise(ErrorKind::Parse, "unknown design '" + name + "' (octahedron, icosahedron, clifford, sl2f5)");
}

AnyDesign design_source(const std::string& name, const std::string& file, bool as_printed) {
  if (!file.empty()) return design_from_json(json::parse(std::ifstream(file)));
  if (name.empty()) raise(ErrorKind::Parse, "give a design name or --file");
  return named_design(name, as_printed);
}

std::string design_json(const AnyDesign& d) {
  return std::visit([](const auto& x) { return to_json(x); }, d).dump(2) + "\n";
}

int cmd_design_build(const Context& ctx, const std::string& name, bool as_printed) {
  if (name == "sl2f5") {
    Sl2f5Report rep;
    try {
      const auto d = sl2f5_design(as_printed ? GeneratorTable::AsPrinted : GeneratorTable::Corrected, &rep);
      std::cerr << fmt::format("sl2f5: {} → {}  (group elements → phase classes; min eig P = {}, "
                               "max unitarity error = {})\n",
                               rep.group_order, rep.phase_classes, num(rep.min_p_eigenvalue),
                               num(rep.max_unitarity_error));
      emit(ctx, design_json(d));
    } catch (const Error& e) {
      std::cerr << fmt::format("sl2f5: construction failed: {}\n", e.what());
      return kExitFailure;
    }
    return kExitOk;
  }
  const AnyDesign d = named_design(name, false);
  std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, UnitaryDesign>) {
          std::cerr << fmt::format("{}: {} elements\n", x.name, x.unitaries.size());
        } else {
          std::cerr << fmt::format("{}: {} points\n", x.name, x.points.size());
        }
      },
      d);
  emit(ctx, design_json(d));
  return kExitOk;
}

int cmd_design_verify(const Context& ctx, const std::string& name, const std::string& file, int strength) {
  const AnyDesign d = design_source(name, file, false);
  SphericalDesign s = as_spherical(d);
  if (strength < 0) strength = s.strength;
  const DesignCheck check = verify_spherical_design(s.points, strength);
  json out{{"design", s.name},
           {"points", s.points.size()},
           {"strength", strength},
           {"passed", check.passed},
           {"max_deviation", check.max_deviation},
           {"worst_monomial", check.worst_monomial}};
  emit(ctx, out.dump(2) + "\n");
  return check.passed ? kExitOk : kExitFailure;
}

int cmd_design_project(const Context& ctx, const std::string& name, const std::string& file) {
  const AnyDesign d = design_source(name, file, false);
  const SphericalDesign s = as_spherical(d);
  std::cerr << fmt::format("{}: {} points\n", s.name, s.points.size());
  emit(ctx, to_json(s).dump(2) + "\n");
  return kExitOk;
}

int cmd_design_show(const Context& ctx, const std::string& name, const std::string& file) {
  emit(ctx, design_json(design_source(name, file, false)));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// moments

int cmd_moments(const Context& ctx, const std::string& state, const std::string& engine, const std::vector<int>& ts,
                std::size_t samples, const std::string& design6_file) {
  bool with_r6 = false;
  for (int t : ts) {
    if (t != 2 && t != 4 && t != 6) raise(ErrorKind::Parse, "--t accepts 2, 4, 6");
    with_r6 = with_r6 || t == 6;
  }
  const cli::ParsedState parsed = cli::parse_state_spec(state);
  MomentSet m;
  if (engine == "bd") {
    const BellDiagonalParams c = parsed.bd ? *parsed.bd : bd_project(parsed.rho);
    m = bd_moments(c);
    if (!with_r6) m.r6.reset();
  } else {
    MomentOptions opt;
    opt.with_r6 = with_r6;
    opt.nsamples = samples;
    opt.seed = ctx.seed;
    std::optional<SphericalDesign> d6;
    if (!design6_file.empty()) {
      d6 = as_spherical(load_design(design6_file));
      opt.design6 = &*d6;
    }
    const CorrelationTensor t = correlation_tensor(parsed.rho);
    if (engine == "design") {
      m = compute_moments(t, MomentEngine::Design, opt);
    } else if (engine == "mc") {
      m = compute_moments(t, MomentEngine::MonteCarlo, opt);
    } else if (engine == "monomial") {
      m = compute_moments(t, MomentEngine::Monomial, opt);
    } else {
      raise(ErrorKind::Parse, "unknown engine '" + engine + "'");
    }
  }
  json out{{"state", state},
           {"nqubits", parsed.rho.nqubits()},
           {"engine", std::string(to_string(m.engine))},
           {"r2", m.r2},
           {"r4", m.r4}};
  if (m.r6) out["r6"] = *m.r6;
  if (m.mc) {
    out["nsamples"] = m.mc->nsamples;
    out["seed"] = ctx.seed;
    json se{{"r2", m.mc->se_r2}, {"r4", m.mc->se_r4}};
    if (m.mc->se_r6) se["r6"] = *m.mc->se_r6;
    out["stderr"] = se;
  }
  emit(ctx, out.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// figure data

std::string opt_num(double r2, double hi, double (*f)(double)) { return r2 <= hi ? num(f(r2)) : ""; }

std::string fig2a_row(const std::string& label, double r2, const std::string& r4) {
  return fmt::format("{},{},{},{},{},{},{},{}\n", label, num(r2), r4, num(f_lb(r2)), num(f_ub(r2)), num(f_lb_sep(r2)),
                     opt_num(r2, 1.0 / 9.0, f_ub_sep), num(f_ub_ent(r2)));
}

int cmd_fig2a(const Context& ctx, int points) {
  if (points < 2) raise(ErrorKind::Parse, "--points must be >= 2");
  std::string csv = "label,r2,r4,f_lb,f_ub,f_lb_sep,f_ub_sep,f_ub_ent\n";
  for (int i = 0; i < points; ++i) {
    const double r2 = (1.0 / 3.0) * i / (points - 1);
    csv += fig2a_row("curve", std::min(r2, 1.0 / 3.0), "");
  }
  auto point = [&](const std::string& label, const CorrelationTensor& t) {
    const double r2 = moment_exact(t, 2);
    csv += fig2a_row(label, std::clamp(r2, 0.0, 1.0 / 3.0), num(moment_exact(t, 4)));
  };
  point("A", correlation_tensor(DensityMatrix::maximally_mixed(2)));
  point("B", correlation_tensor(random_product_state(2, ctx.seed)));
  point("C", correlation_tensor(bell_diagonal({1.0, 1.0, -1.0})));
  for (int n = 3; n <= 7; ++n) point(fmt::format("D{}", n - 2), dicke_marginal_tensor(n, 2));
  emit(ctx, csv);
  return kExitOk;
}

int cmd_fig2b(const Context& ctx, int nmax) {
  if (nmax < 2) raise(ErrorKind::Parse, "--nmax must be >= 2");
  std::string csv = "n,k,r2,r4,margin,detected\n";
  std::size_t detected = 0;
  for (int n = 2; n <= nmax; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      const auto m = dicke_marginal_moments(n, k);
      const RegionVerdict v = criterion_F(m.r2, m.r4);
      const bool hit = v.verdict == Verdict::Entangled;
      detected += hit;
      csv += fmt::format("{},{},{},{},{},{}\n", n, k, num(m.r2), num(m.r4), num(v.margin), hit ? 1 : 0);
    }
  }
  std::cerr << fmt::format("fig2b: {} detected (N <= {})\n", detected, nmax);
  emit(ctx, csv);
  return kExitOk;
}

int cmd_fig3a(const Context& ctx, std::size_t count, const std::string& cls, int nqubits) {
  if (cls != "mixed" && cls != "fullysep" && cls != "wclass") raise(ErrorKind::Parse, "--class: mixed|fullysep|wclass");
  if (nqubits < 2 || nqubits > 8) raise(ErrorKind::Parse, "--nqubits must be in [2, 8]");
  const Rng root(ctx.seed);
  std::vector<std::pair<double, double>> rows(count);
  parallel_for(count, [&](std::size_t i) {
    Rng rng = root.split(i);
    const std::uint64_t s = rng.split(0).seed();
    const int k = 1 + static_cast<int>(rng.uniform_index(std::size_t{1} << nqubits));
    DensityMatrix rho = cls == "mixed"      ? random_density_matrix(nqubits, s)
                        : cls == "fullysep" ? random_separable_mixture(nqubits, k, s)
                                            : random_mixed_wclass(nqubits, k, s);
    const CorrelationTensor t = correlation_tensor(rho);
    rows[i] = {moment_exact(t, 2), moment_exact(t, 4)};
  });
  std::string csv = "label,r2,r4\n";
  for (const auto& [r2, r4] : rows) csv += fmt::format("{},{},{}\n", cls, num(r2), num(r4));
  auto anchor = [&](const std::string& label, const DensityMatrix& rho) {
    const CorrelationTensor t = correlation_tensor(rho);
    csv += fmt::format("{},{},{}\n", label, num(moment_exact(t, 2)), num(moment_exact(t, 4)));
  };
  anchor("A", DensityMatrix::maximally_mixed(nqubits));
  StateVector product = StateVector::Zero(Eigen::Index{1} << nqubits);
  product(0) = 1.0;
  anchor("B", DensityMatrix::from_pure(product));
  // |0..0>|Psi+> on the last two qubits.
  StateVector bi = StateVector::Zero(Eigen::Index{1} << nqubits);
  bi(1) = bi(2) = 1.0 / std::numbers::sqrt2;
  anchor("C", DensityMatrix::from_pure(bi));
  anchor("D", w_state(nqubits));
  anchor("E", ghz(nqubits));
  emit(ctx, csv);
  return kExitOk;
}

int cmd_fig3b(const Context& ctx, int nmax) {
  if (nmax < 3 || nmax > 8) raise(ErrorKind::Parse, "--nmax must be in [3, 8]");
  std::string csv = "n,chi,slope_m,intercept_btilde,p_r2,p_line,theta_r2,theta_line\n";
  for (int n = 3; n <= nmax; ++n) {
    WClassCriterionParams p;
    const bool line = n <= 6;
    if (line) {
      p = wclass_params(n, ctx.seed);
    } else {
      const OptResult o = maximize_moment_wclass(n, 2, 64, ctx.seed);
      if (!o.warning.empty()) std::cerr << "warning: " << o.warning << '\n';
      p = {n, o.value, 0.0, 0.0};
    }
    auto threshold = [&](auto fn, WClassCriterion c) -> std::string {
      try {
        return num(fn(p, c).threshold);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotDetected) throw;
        return "";
      }
    };
    auto noise = [](const WClassCriterionParams& q, WClassCriterion c) { return noise_threshold(q, c); };
    auto amp = [](const WClassCriterionParams& q, WClassCriterion c) { return amplitude_threshold(q, c); };
    csv += fmt::format("{},{},{},{},{},{},{},{}\n", n, num(p.chi), line ? num(p.slope_m) : "",
                       line ? num(p.intercept_btilde) : "", threshold(noise, WClassCriterion::R2Only),
                       line ? threshold(noise, WClassCriterion::Line) : "", threshold(amp, WClassCriterion::R2Only),
                       line ? threshold(amp, WClassCriterion::Line) : "");
  }
  emit(ctx, csv);
  return kExitOk;
}

int cmd_scan_bd(const Context& ctx, std::size_t count) {
  constexpr double kBand = 1e-8;
  std::size_t conf[2][2] = {{0, 0}, {0, 0}};  // [exact entangled][R6 entangled]
  std::size_t band = 0, f_detected = 0, f_false = 0, entangled = 0;
  for (const BdSample& s : bd_samples(count, ctx.seed)) {
    const bool ent = !s.separable;
    entangled += ent;
    const auto m = bd_moments(s.c);
    const bool f_ent = criterion_F(std::min(m.r2, 1.0 / 3.0), m.r4).verdict == Verdict::Entangled;
    f_detected += f_ent && ent;
    f_false += f_ent && !ent;
    if (std::abs(s.c.l1_norm() - 1.0) <= kBand) {
      ++band;
      continue;
    }
    const bool r6_ent = criterion_R6(std::min(m.r2, 1.0 / 3.0), m.r4, *m.r6).verdict == Verdict::Entangled;
    ++conf[ent][r6_ent];
  }
  const bool sound = f_false == 0 && conf[0][1] == 0 && conf[1][0] == 0;
  json out{{"count", count},
           {"seed", ctx.seed},
           {"entangled", entangled},
           {"boundary_band", band},
           {"criterion_R6",
            {{"separable_as_separable", conf[0][0]},
             {"separable_as_entangled", conf[0][1]},
             {"entangled_as_separable", conf[1][0]},
             {"entangled_as_entangled", conf[1][1]}}},
           {"criterion_F", {{"entangled_detected", f_detected}, {"separable_flagged", f_false}}},
           {"sound", sound}};
  emit(ctx, out.dump(2) + "\n");
  return sound ? kExitOk : kExitFailure;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::VerificationFailure:
    case ErrorKind::ClosureSizeMismatch:
    case ErrorKind::DedupSizeMismatch:
    case ErrorKind::NonUnitaryResult:
    case ErrorKind::NotPositiveDefinite:
    case ErrorKind::SlopeSignViolation:
    case ErrorKind::NotDetected:
      return kExitFailure;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments of randomized local correlation measurements"};
  app.set_version_flag("--version", RANDCORR_VERSION);
  app.require_subcommand(1);

  Context ctx;
  for (int i = 0; i < argc; ++i) ctx.command_line += (i ? " " : "") + std::string(argv[i]);
  unsigned threads = 0;
  app.add_option("--seed", ctx.seed, "Seed for every stochastic step")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (default: RANDCORR_THREADS or 1)");
  app.add_option("--out", ctx.out, "Output file (a .manifest.json is written next to it)");

  // design
  auto* design = app.add_subcommand("design", "Build, verify, project and show designs");
  design->require_subcommand(1);
  std::string dname, dfile;
  bool as_printed = false;
  int dstrength = -1;
  auto* dbuild = design->add_subcommand("build", "Construct a shipped design");
  dbuild->add_option("name", dname, "octahedron | icosahedron | clifford | sl2f5")->required();
  dbuild->add_flag("--as-printed", as_printed, "sl2f5: use the generator table exactly as published");
  auto* dverify = design->add_subcommand("verify", "Check the spherical design property");
  dverify->add_option("name", dname, "Shipped design name");
  dverify->add_option("--file", dfile, "Design JSON file");
  dverify->add_option("--strength", dstrength, "Strength to test (default: declared)");
  auto* dproject = design->add_subcommand("project", "Bloch directions of U sigma_z U^dagger");
  dproject->add_option("name", dname, "Shipped design name");
  dproject->add_option("--file", dfile, "Design JSON file");
  auto* dshow = design->add_subcommand("show", "Print a design as JSON");
  dshow->add_option("name", dname, "Shipped design name");
  dshow->add_option("--file", dfile, "Design JSON file");

  // moments
  auto* moments = app.add_subcommand("moments", "Moments R2, R4 (and R6) of a state");
  std::string state, engine = "design", design6;
  std::vector<int> ts{2, 4};
  std::size_t samples = 100000;
  moments->add_option("--state", state,
                      "bell | ghz:N | w:N | dicke:N,k | bd:c1,c2,c3 | noisyghz:N,p | psitheta:N,theta | mixed[:N] | "
                      "file:path.json")
      ->required();
  moments->add_option("--engine", engine, "design | mc | monomial | bd")->capture_default_str();
  moments->add_option("--t", ts, "Orders, e.g. 2,4,6")->delimiter(',');
  moments->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
  moments->add_option("--design6", design6, "Design file of strength >= 6 for R6 with the design engine");

  auto* fig2a = app.add_subcommand("fig2a", "Two-qubit boundary curves and labeled points (CSV)");
  int points = 201;
  fig2a->add_option("--points", points, "Grid points on [0, 1/3]")->capture_default_str();

  auto* fig2b = app.add_subcommand("fig2b", "Dicke detection mask from two-body marginals (CSV)");
  int nmax2b = 200;
  fig2b->add_option("--nmax", nmax2b, "Largest N")->capture_default_str();

  auto* fig3a = app.add_subcommand("fig3a", "Random-state (R2, R4) scatter with anchors A-E (CSV)");
  std::size_t count3a = 1000;
  std::string cls = "mixed";
  int nq3a = 3;
  fig3a->add_option("--count", count3a, "Number of random states")->capture_default_str();
  fig3a->add_option("--class", cls, "mixed | fullysep | wclass")->capture_default_str();
  fig3a->add_option("--nqubits", nq3a, "Number of qubits")->capture_default_str();

  auto* fig3b = app.add_subcommand("fig3b", "GHZ noise and amplitude thresholds per N (CSV)");
  int nmax3b = 6;
  fig3b->add_option("--nmax", nmax3b, "Largest N")->capture_default_str();

  auto* scanbd = app.add_subcommand("scan-bd", "Criterion verdicts on random Bell-diagonal states (JSON)");
  std::size_t countbd = 10000;
  scanbd->add_option("--count", countbd, "Number of states")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (threads > 0) set_thread_count(threads);

  try {
    if (*dbuild) return cmd_design_build(ctx, dname, as_printed);
    if (*dverify) return cmd_design_verify(ctx, dname, dfile, dstrength);
    if (*dproject) return cmd_design_project(ctx, dname, dfile);
    if (*dshow) return cmd_design_show(ctx, dname, dfile);
    if (*moments) return cmd_moments(ctx, state, engine, ts, samples, design6);
    if (*fig2a) return cmd_fig2a(ctx, points);
    if (*fig2b) return cmd_fig2b(ctx, nmax2b);
    if (*fig3a) return cmd_fig3a(ctx, count3a, cls, nq3a);
    if (*fig3b) return cmd_fig3b(ctx, nmax3b);
    if (*scanbd) return cmd_scan_bd(ctx, countbd);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
