// Acceptance gate: runs every criterion and prints one PASS/FAIL line each.
//
//   acceptance            all criteria
//   acceptance 1 3 8      a subset
//
// Exit status is nonzero if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hallmhd/checkpoint.hpp"
#include "hallmhd/config.hpp"
#include "hallmhd/diagnostics.hpp"
#include "hallmhd/diophantine.hpp"
#include "hallmhd/integrator.hpp"
#include "hallmhd/mhd_operators.hpp"
#include "hallmhd/simulation.hpp"
#include "hallmhd/spectral.hpp"
#include "oracles.hpp"

using namespace hallmhd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Parameters shared by the long runs.
RunConfig small_data_config() {
  RunConfig c;
  c.n_grid = 32;
  c.epsilon = 1e-2;
  c.r = 2.5;
  c.N = 17.0;
  c.spectrum_slope = 30.0;
  c.background_amplitude = 1.0;
  c.seed = 1;
  c.sample_every = 10;
  c.decay_verdicts = true;
  return c;
}

Outcome identities() {
  double worst = 0.0;
  std::string where;
  int states = 0;
  for (int grid : {16, 32}) {
    const Lattice lat(grid);
    std::mt19937_64 rng(1000 + grid);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 50; ++trial) {
      DiophantineVector dv;
      dv.n = {normal(rng), normal(rng), normal(rng)};
      SimState s(lat, 1.0, dv);
      s.u = random_solenoidal(lat, rng, grid / 2.0, 1.0);
      s.b = random_solenoidal(lat, rng, grid / 2.0, 1.0);
      for (const auto& [name, value] : identity_suite(s, lat)) {
        if (!(value <= worst)) {
          worst = value;
          where = name + " at " + std::to_string(grid) + "^3";
        }
      }
      ++states;
    }
  }
  return {worst <= 1e-11, std::to_string(states) + " states, max residual " +
                              fmt("%.3g", worst) + " (" + where + ")"};
}

Outcome poincare() {
  const Lattice lat(32);
  const int K = covering_radius(lat);
  const auto bg = suggest_background(2.5, K, 1.0);
  if (!bg.accepted) return {false, "no background accepted"};
  std::mt19937_64 rng(2024);
  int violations = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_scalar(lat, rng, 100.0, trial % 4);
    for (double s : {0.0, 3.0}) {
      const auto check = verify_poincare(f, lat, bg.dv, s);
      worst = std::max(worst, check.ratio);
      if (check.ratio > 1.0) ++violations;
    }
  }
  return {violations == 0,
          bg.candidate + " K=" + std::to_string(K) + fmt(" c_est=%.6g", bg.dv.c_est) +
              ", 200 checks, violations " + std::to_string(violations) +
              fmt(", max ratio %.4f", worst)};
}

Outcome oracle_equivalence() {
  const Lattice lat(8);
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_solenoidal(lat, rng, 8.0, 0.0);
    const auto b = random_solenoidal(lat, rng, 8.0, 0.0);
    worst = std::max({worst,
                      oracle::rel_diff(alias_free_product(u[0], b[1], lat),
                                       oracle::convolve(u[0], b[1], lat)),
                      oracle::rel_diff(advect(u, b, lat), oracle::advect(u, b, lat)),
                      oracle::rel_diff(lorentz(b, lat), oracle::lorentz(b, lat)),
                      oracle::rel_diff(hall_term(b, lat), oracle::hall(b, lat)),
                      oracle::rel_diff(induction_term(u, b, lat), oracle::induction(u, b, lat))});
  }
  return {worst <= 1e-12, "20 trials on 8^3, max relative deviation " + fmt("%.3g", worst)};
}

Outcome linear_decay() {
  const Lattice lat(16);
  const double tol = 4 * std::numeric_limits<double>::epsilon();
  double worst = 0.0;
  for (double gamma : {1.0, 0.75}) {
    std::mt19937_64 rng(4);
    DiophantineVector dv;
    dv.n = {0.5, 0.6, 0.7};
    SimState s(lat, gamma, dv);
    s.u = random_solenoidal(lat, rng, 8.0, 0.0);
    s.b = random_solenoidal(lat, rng, 8.0, 0.0);
    const double dt = 0.01;
    for (int n = 0; n < 5; ++n) {
      const SimState next = step(s, lat, dt, Terms::diffusion_only());
      // Per vector mode: a single component can be pure roundoff residue left
      // by the projection, and the closing re-projection rounds each mode.
      for (std::size_t i = 0; i < lat.size(); ++i) {
        const double factor = std::exp(-std::pow(lat.k_squared()[i], gamma) * dt);
        double num = 0.0, den = 0.0;
        for (int c = 0; c < 3; ++c) {
          num += std::norm(next.b[c][i] - factor * s.b[c][i]);
          den += std::norm(factor * s.b[c][i]);
        }
        if (den == 0.0) continue;
        worst = std::max(worst, std::sqrt(num / den));
      }
      s = next;
    }
  }
  return {worst <= tol, "gamma in {1, 0.75}, max relative deviation " + fmt("%.3g", worst) +
                            fmt(" (tolerance %.3g)", tol)};
}

Outcome energy_law() {
  // Fixed steps: dt and dt/2, samples every 10 steps.
  RunConfig c = small_data_config();
  c.t_end = 5.0;
  c.decay_verdicts = false;
  const auto residual_at = [&](double dt) {
    RunConfig run = c;
    run.dt_min = run.dt_max = dt;
    const auto res = simulate(run, {false, false, {}});
    const auto law = basic_energy_law(res.series);
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < law.size(); ++i) {
      if (!std::isnan(law[i])) out.emplace_back(res.series[i].t, law[i]);
    }
    return out;
  };
  const double dt = 0.02;
  const auto coarse = residual_at(dt);
  const auto fine = residual_at(dt / 2);
  // Compare on the sample times both runs share.
  double e1 = 0.0, e2 = 0.0;
  for (const auto& [t, r] : coarse) {
    for (const auto& [tf, rf] : fine) {
      if (std::abs(tf - t) < 1e-9) {
        e1 = std::max(e1, std::abs(r));
        e2 = std::max(e2, std::abs(rf));
      }
    }
  }
  const double ratio = e1 / e2;
  return {ratio >= 8.0, fmt("max residual %.3g at dt=%.3g, %.3g at dt/2, ratio %.2f", e1, dt, e2, ratio) +
                            fmt(" (order %.2f)", std::log2(ratio))};
}

struct LongRun {
  bool done = false;
  RunResult result;
};

LongRun& long_run() {
  static LongRun run;
  if (!run.done) {
    RunConfig c = small_data_config();
    c.t_end = 50.0;
    c.output_dir = (fs::temp_directory_path() / "hallmhd_acceptance_long").string();
    run.result = simulate(c, {true, false, {}});
    run.done = true;
  }
  return run;
}

Outcome lyapunov() {
  const auto& res = long_run().result;
  if (res.blew_up) return {false, "blow-up: " + res.blowup_detail};
  const double E0 = res.series.front().E;
  const double tol = 1e-6 * E0;
  double worst = -std::numeric_limits<double>::infinity();
  int above = 0, increases = 0;
  for (std::size_t i = 0; i < res.series.size(); ++i) {
    const double r = res.series[i].lyap_residual;
    if (std::isnan(r)) continue;
    worst = std::max(worst, r);
    if (r > tol) ++above;
  }
  for (std::size_t i = 1; i < res.series.size(); ++i) {
    if (res.series[i].E > res.series[i - 1].E) ++increases;
  }
  std::string fits;
  bool decay_ok = false;
  for (const auto& f : res.decay) {
    fits += fmt(" beta=%.4g fitted %.3f predicted %.3f", f.beta, f.fitted_alpha, f.predicted_alpha);
    if (f.below_floor) fits += " (below floor)";
    if (f.beta == res.config.r + 4.0) decay_ok = f.pass;
  }
  const bool pass = above == 0 && increases == 0 && decay_ok;
  return {pass, std::to_string(res.series.size()) + " samples, " + std::to_string(res.steps) +
                    " steps; max dE/dt + D/2 = " + fmt("%.3g", worst) +
                    fmt(" (tolerance %.3g)", tol) + ", E increases " + std::to_string(increases) +
                    ";" + fits};
}

Outcome preservation() {
  const auto& res = long_run().result;
  double mean = 0.0, div = 0.0;
  for (const auto& r : res.series) {
    mean = std::max(mean, r.mean_max);
    div = std::max(div, r.div_max);
  }
  return {!res.blew_up && mean <= 1e-10 && div <= 1e-10,
          fmt("over t in [0, %.0f]: max |mean mode| %.3g, max |k.v(k)| %.3g",
              res.final_state.t, mean, div)};
}

Outcome diophantine_controls() {
  const auto a = min_product({1.0, 0.0, 0.0}, 2.5, 16);
  const auto b = min_product({1.0, 1.0, 1.0}, 2.5, 16);
  const bool a_ok = a.c_est == 0.0 && a.argmin.k1 == 0 && a.argmin.k2 == 1 && a.argmin.k3 == 0;
  const bool b_ok = b.c_est == 0.0 && b.argmin.k1 == 1 && b.argmin.k2 == -1 && b.argmin.k3 == 0;

  const Lattice lat(32);
  const int K = covering_radius(lat);
  const auto base = suggest_background(2.5, K, 1.0).dv;
  // Powers of two scale exactly; the others round s*n and exercise the
  // conditioning of n.k at the minimizer.
  double worst = 0.0;
  for (double s : {2.0, 0.5, 0.25, 8.0, 1.0 / 1024, 3.0, 0.1, 1.0 / 3.0, 7.3, 1e-3}) {
    const Vec3 sn{s * base.n[0], s * base.n[1], s * base.n[2]};
    const double cs = min_product(sn, 2.5, K).c_est;
    worst = std::max(worst, std::abs(cs - s * base.c_est) / (s * base.c_est));
  }
  return {a_ok && b_ok && worst <= 1e-14,
          "(1,0,0) -> c_est " + fmt("%g", a.c_est) + " at " + to_string(a.argmin) +
              "; (1,1,1) -> c_est " + fmt("%g", b.c_est) + " at " + to_string(b.argmin) +
              fmt("; scaling law max relative error %.3g", worst)};
}

Outcome determinism() {
  // Checkpoint bit equality on a random 32^3 state.
  const Lattice lat(32);
  std::mt19937_64 rng(9);
  SimState s(lat, 1.0, suggest_background(2.5, covering_radius(lat), 1.0).dv);
  s.u = random_solenoidal(lat, rng, 16.0, 1.0);
  s.b = random_solenoidal(lat, rng, 16.0, 1.0);
  s.t = 0.1;
  std::stringstream buf;
  save_checkpoint(buf, s, lat);
  const auto loaded = load_checkpoint(buf);
  const bool ck = bit_equal(loaded.state.u, s.u) && bit_equal(loaded.state.b, s.b) &&
                  loaded.state.t == s.t;

  RunConfig c = small_data_config();
  c.n_grid = 16;
  c.t_end = 0.5;
  c.sample_every = 2;
  c.decay_verdicts = false;
  const auto csv = [&](const std::string& tag) {
    c.output_dir = (fs::temp_directory_path() / ("hallmhd_acceptance_det_" + tag)).string();
    fs::remove_all(c.output_dir);
    simulate(c);
    std::ifstream is(fs::path(c.output_dir) / "series.csv", std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  const std::string a = csv("a");
  const std::string b = csv("b");
  const bool same = !a.empty() && a == b;
  return {ck && same, std::string("checkpoint round trip ") + (ck ? "bit-equal" : "DIFFERS") +
                          ", CSV of two seeded runs " + (same ? "identical" : "DIFFER") + " (" +
                          std::to_string(a.size()) + " bytes)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"identity suite", identities},
      {"small-denominator inequality", poincare},
      {"convolution oracle equivalence", oracle_equivalence},
      {"linear decay exactness", linear_decay},
      {"energy law convergence", energy_law},
      {"Lyapunov property and decay rate", lyapunov},
      {"mean and divergence preservation", preservation},
      {"Diophantine negative controls", diophantine_controls},
      {"round-trip determinism", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
