// Copyright 2026 The edplab Authors.
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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "edplab/cli.hpp"
#include "edplab/edplab.hpp"

namespace {

using edplab::RngStream;

constexpr std::uint64_t kSeed = 20240501;

int g_failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void note(const std::string& text) {
  std::printf("     %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

void detection_power() {
  bool ok = true;
  std::string detail;
  const RngStream root(kSeed, 1);
  for (std::size_t da : {2u, 4u, 8u, 16u}) {
    const std::size_t d = da * da;
    const std::size_t n = 100000;
    const auto c = edplab::sample_detection_frequency(d, n, root.substream(d));
    const double p = edplab::detection_power_closed_form(d);
    const double f = static_cast<double>(c.hits) / static_cast<double>(n);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    const double z = (f - p) / se;
    ok = ok && std::abs(z) <= 4.0;
    detail += fmt("d_A=%zu %.5f vs %.5f (z=%+.2f) ", da, f, p, z);
  }
  report("1 witness detection power", ok, detail);
}

void swap_moments() {
  bool ok = true;
  std::string detail;
  auto rng = RngStream(kSeed, 2);
  for (std::size_t d : {4u, 16u, 64u}) {
    const auto r = edplab::check_swap_moments(d, 100000, rng);
    ok = ok && r.passed();
    detail += fmt("d=%zu mean %.5f/%.5f var %.5f/%.5f ", d, r.mean.observed, r.mean.expected,
                  r.variance.observed, r.variance.expected);
  }
  report("2 swap-operator moments", ok, detail);
}

void page_purity() {
  bool ok = true;
  std::string detail;
  std::vector<std::string> exact;
  auto rng = RngStream(kSeed, 3);
  for (std::size_t d : {16u, 64u, 256u}) {
    const auto r = edplab::check_page_purity(d, 100000, rng);
    ok = ok && r.stated.passed();
    detail += fmt("d=%zu mean %.5f vs (sqrt d+1)/(d+1)=%.5f (%.0f sigma) ", d, r.stated.observed,
                  r.stated.expected, r.stated.deviation() / r.stated.stderr_observed);
    exact.push_back(fmt("d=%zu: against 2 sqrt(d)/(d+1)=%.5f the deviation is %+.2f sigma", d,
                        r.exact.expected, r.exact.deviation() / r.exact.stderr_observed));
  }
  report("3 mean subsystem purity", ok, detail);
  for (const auto& e : exact) note(e);
}

void estimator() {
  auto rng = RngStream(kSeed, 4);
  const auto shape = edplab::SubsystemShape::bipartite(2, 2);
  edplab::ComplexVector amp = edplab::ComplexVector::Zero(4);
  amp(0) = amp(3) = 1.0 / std::sqrt(2.0);
  const auto bell = edplab::StateVector(amp, shape);
  const auto rho_a = edplab::reduced_state(bell, {0});
  const std::size_t nu = edplab::kDefaultUnitaries;
  const std::size_t nm = edplab::default_measurements_per_unitary(2);
  edplab::RunningMoments m;
  auto run_rng = rng.substream(0);
  for (int r = 0; r < 4000; ++r) {
    const auto rec = edplab::draw_randomized_measurements(rho_a, nu, nm, run_rng);
    m.add(edplab::purity_estimator_from_shots(rec, 2));
  }
  const auto e = m.estimate();
  auto grid_rng = rng.substream(1);
  const auto fit = edplab::estimator_variance_grid(grid_rng);
  bool unbiased_grid = true;
  for (const auto& p : fit.points) unbiased_grid = unbiased_grid && p.estimate.agrees_with(p.purity);
  const bool ok = e.agrees_with(0.5) && fit.c1 <= 10.0 && fit.c2 <= 10.0;
  report("4 randomized-measurement estimator", ok,
         fmt("Bell mean %.5f +- %.5f over 4000 runs (N_U=%zu, N_M=%zu); C1=%.3f C2=%.3f over %zu "
             "grid points; grid means unbiased: %s",
             e.mean, e.stderr_mean, nu, nm, fit.c1, fit.c2, fit.points.size(),
             unbiased_grid ? "yes" : "no"));
  const edplab::VarianceGridPoint* worst = nullptr;
  double worst_ratio = 0.0;
  for (const auto& p : fit.points) {
    const double nm = static_cast<double>(p.measurements);
    const double ratio = p.spread.variance * static_cast<double>(p.unitaries) /
                         (static_cast<double>(p.d_a) / (nm * nm) + p.cubic / nm);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = &p;
    }
  }
  if (worst) {
    note(fmt("largest var / (d_A/N_M^2 + Tr(rho^3)/N_M): %.3f at %s d_A=%zu N_M=%zu "
             "(var %.4f +- %.4f)",
             worst_ratio, worst->state.c_str(), worst->d_a, worst->measurements,
             worst->spread.variance, worst->spread.stderr_variance));
  }
}

void twirl() {
  bool ok = true;
  std::string detail;
  auto rng = RngStream(kSeed, 5);
  for (std::size_t da : {2u, 3u}) {
    auto sub = rng.substream(da);
    const auto r = edplab::check_twirl_identities(da, 100000, sub);
    ok = ok && r.passed();
    detail += fmt("d_A=%zu swap dev %.4f, second moment %.4f/%.4f, estimator %.4f/%.4f ", da,
                  r.swap_max_deviation, r.second_moment.mean, r.second_moment_expected,
                  r.estimator.mean, r.purity);
  }
  report("5 twirl identities", ok, detail);
}

void lemmas() {
  bool ok = true;
  std::string detail;
  auto rng = RngStream(kSeed, 6);
  for (auto [d, t] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 3}}) {
    const std::size_t n = 1000000;
    const auto r = edplab::check_haar_moment_lemma(d, t, n, rng);
    const double tol = edplab::haar_moment_tolerance(t, n);
    ok = ok && r.max_deviation < tol;
    detail += fmt("haar(d=%zu,T=%zu) dev %.2e<%.0e ", d, t, r.max_deviation, tol);
  }
  for (std::size_t t : {2u, 3u}) {
    const auto r = edplab::check_product_state_lemma(4, t, 1000, rng);
    ok = ok && r.passed();
    detail += fmt("PURE(T=%zu) min %.4f ", t, r.min_value);
  }
  const auto mixed = edplab::check_product_state_lemma(
      4, 2, 1000, rng, {edplab::ProductLemmaVariant::MixedSingle, 2});
  ok = ok && mixed.passed();
  detail += fmt("MIXED(k=2,T=2) min %.4f bound %.1f", mixed.min_value, mixed.bound);
  report("6 lemma suites", ok, detail);
}

void scaling() {
  struct Window {
    edplab::ProtocolId p;
    double lo, hi;
  };
  const Window windows[] = {{edplab::ProtocolId::RandMeas, 0.1, 0.4},
                            {edplab::ProtocolId::Witness, 0.7, 1.3},
                            {edplab::ProtocolId::SwapTest, -0.15, 0.15}};
  edplab::SearchOptions opts;
  opts.trials = 2000;
  for (const auto& w : windows) {
    std::vector<edplab::ScalingPoint> pts;
    std::string budgets;
    for (std::size_t d : {16u, 64u, 256u, 1024u}) {
      auto pt = edplab::find_min_budget({d, 1, 2}, w.p, {}, edplab::cli::scaling_stream(kSeed, w.p, d),
                                        opts);
      budgets += pt.attained ? fmt("d=%zu:%llu ", d, static_cast<unsigned long long>(pt.budget))
                             : fmt("d=%zu:unattained ", d);
      pts.push_back(std::move(pt));
    }
    const std::string id = "7 scaling slope " + std::string(edplab::to_string(w.p));
    try {
      const auto fit = edplab::fit_scaling_exponent(pts);
      report(id, fit.slope >= w.lo && fit.slope <= w.hi,
             fmt("slope %.3f +- %.3f, window [%.2f, %.2f]; budgets ", fit.slope, fit.stderr_slope,
                 w.lo, w.hi) + budgets);
    } catch (const std::invalid_argument& e) {
      report(id, false, std::string("no fit (") + e.what() + "); budgets " + budgets);
    }
  }
}

void bounds() {
  const double tv = edplab::tv_upper_bound(16, 2).tv_upper;
  bool ok = std::abs(tv - 0.41882) <= 1e-5;
  for (std::size_t d : {2u, 4u, 16u, 256u, 4096u, 1u << 20}) {
    ok = ok && edplab::tv_upper_bound(d, 1).tv_upper == 0.0;
  }
  std::string detail = fmt("tv(16,2)=%.6f ", tv);
  for (std::size_t d : {16u, 256u, 4096u}) {
    std::size_t first = 0;
    for (std::size_t t = 1; t < 100000; ++t) {
      if (edplab::tv_upper_bound(d, t).le_cam_success >= 2.0 / 3.0) {
        first = t;
        break;
      }
    }
    const double bound = edplab::min_copies_lower_bound(d);
    ok = ok && first > 0 && static_cast<double>(first) >= bound;
    detail += fmt("d=%zu first T with success>=2/3: %zu >= %.4f ", d, first, bound);
  }
  report("8 bound calculators", ok, detail);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "edplab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  return edplab::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
}

void reproducibility() {
  namespace fs = std::filesystem;
  const auto base = fs::temp_directory_path() / "edplab_acceptance_repro";
  fs::remove_all(base);
  const std::vector<std::vector<std::string>> commands{
      {"fig2", "--d=4,16,64", "--samples=20000", "--seed=7"},
      {"scaling", "--protocols=SWAP_TEST,RAND_MEAS", "--d=64,256,1024", "--trials=300", "--seed=7"},
      {"bounds", "--variant=MIXED", "--k=4", "--d=64,256", "--T=1..6"},
      {"verify", "--suite=all", "--samples=4000", "--seed=7", "--format=json"}};
  bool ok = true;
  std::string detail;
  for (const auto& cmd : commands) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      const auto dir = base / std::to_string(rep);
      auto args = cmd;
      args.push_back("--out=" + dir.string());
      const int rc = run_cli(args);
      const auto file = dir / (cmd[0] + (cmd.back() == "--format=json" ? ".json" : ".csv"));
      const auto bytes = slurp(file);
      if (rc == edplab::cli::kExitUsage || bytes.empty()) ok = false;
      if (rep == 0) {
        first = bytes;
      } else {
        const bool same = bytes == first;
        ok = ok && same;
        detail += cmd[0] + (same ? " identical " : " DIFFERS ");
      }
    }
  }
  fs::remove_all(base);
  report("9 reproducibility", ok, detail);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  auto timed = [](void (*f)()) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    std::printf("     (%.1f s)\n", dt.count());
  };
  timed(detection_power);
  timed(swap_moments);
  timed(page_purity);
  timed(estimator);
  timed(twirl);
  timed(lemmas);
  timed(scaling);
  timed(bounds);
  timed(reproducibility);
  const std::chrono::duration<double> total = std::chrono::steady_clock::now() - start;
  std::printf("%d failing line(s); total %.1f s\n", g_failures, total.count());
  return g_failures == 0 ? 0 : 1;
}
