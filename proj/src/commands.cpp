#include "hallmhd/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>

#include <json.hpp>

#include "hallmhd/diagnostics.hpp"
#include "hallmhd/simulation.hpp"
#include "hallmhd/spectral.hpp"

namespace hallmhd {

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

int fail(std::ostream& err, const std::string& detail) {
  write_verdict(err, "FAIL", detail);
  return kExitFail;
}

int error(std::ostream& err, const std::string& detail) {
  write_verdict(err, "ERROR", detail);
  return kExitError;
}

}  // namespace

void write_verdict(std::ostream& os, const std::string& verdict,
                   const std::string& detail) {
  os << nlohmann::json{{"verdict", verdict}, {"detail", detail}}.dump() << '\n';
  os.flush();
}

int cmd_simulate(RunConfig cfg, std::ostream& out, std::ostream& err) {
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) cfg.output_dir = dir;
  RunResult res;
  try {
    res = simulate(cfg);
  } catch (const ConfigError& e) {
    return error(err, e.what());
  } catch (const std::exception& e) {
    return error(err, std::string("simulate: ") + e.what());
  }

  out << "background " << res.background << " n = (" << res.dv.n[0] << ", "
      << res.dv.n[1] << ", " << res.dv.n[2] << ") c_est = " << res.dv.c_est
      << " A = " << res.A << '\n'
      << "steps " << res.steps << " samples " << res.series.size() << " t = "
      << res.final_state.t << '\n';
  if (res.clamped_steps > 0) {
    err << "warning: " << res.clamped_steps << " steps clamped to dt_min\n";
  }
  if (res.lyapunov) {
    out << "lyapunov max residual " << res.lyapunov->max_residual << " flagged "
        << res.lyapunov->flagged.size() << '\n';
  }
  std::string failed;
  for (const auto& f : res.decay) {
    out << "decay beta = " << f.beta << " fitted " << f.fitted_alpha
        << " predicted " << f.predicted_alpha << (f.pass ? " PASS" : " FAIL") << '\n';
    if (!f.pass) {
      failed += (failed.empty() ? "" : "; ") + std::string("beta = ") +
                format_order(f.beta) + " fitted alpha " + std::to_string(f.fitted_alpha) +
                " < predicted " + std::to_string(f.predicted_alpha) + " - margin";
    }
  }
  out << "output " << res.output_dir.string() << '\n';
  if (res.blew_up) return fail(err, "blow-up: " + res.blowup_detail);
  if (!failed.empty()) return fail(err, "decay: " + failed);
  return 0;
}

int cmd_check_diophantine(const Vec3& n, double r, int K, std::optional<double> c,
                          std::ostream& out, std::ostream& err) {
  DiophantineVector dv;
  try {
    dv = make_diophantine(n, r, K);
  } catch (const std::exception& e) {
    return error(err, e.what());
  }
  nlohmann::json j{{"n", dv.n},
                   {"r", dv.r},
                   {"K", dv.K},
                   {"c_est", dv.c_est},
                   {"argmin", {dv.argmin.k1, dv.argmin.k2, dv.argmin.k3}}};
  std::optional<ConditionReport> report;
  if (c) {
    report = check_condition(dv, *c);
    j["c"] = *c;
    j["holds"] = report->holds;
    j["tightest_shell"] = report->tightest_shell;
  }
  out << j.dump() << '\n';
  if (!(dv.c_est > 0.0)) {
    return fail(err, "c_est = 0: n.k vanishes at k = " + to_string(dv.argmin));
  }
  if (report && !report->holds) {
    return fail(err, "condition fails on shell " +
                         std::to_string(report->tightest_shell) + " at k = " +
                         to_string(report->tightest_k));
  }
  return 0;
}

int cmd_verify_identities(int n_grid, std::uint64_t seed, int trials, double tol,
                          std::ostream& out, std::ostream& err) {
  if (trials < 1) return error(err, "trials must be >= 1");
  std::optional<Lattice> lattice;
  try {
    lattice.emplace(n_grid);
  } catch (const std::exception& e) {
    return error(err, e.what());
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> worst(identity_names().size(), 0.0);
  for (int trial = 0; trial < trials; ++trial) {
    DiophantineVector dv;
    dv.n = {normal(rng), normal(rng), normal(rng)};
    SimState state(*lattice, 1.0, dv);
    state.u = random_solenoidal(*lattice, rng, n_grid / 2.0, 1.0);
    state.b = random_solenoidal(*lattice, rng, n_grid / 2.0, 1.0);
    const auto residuals = identity_suite(state, *lattice);
    for (std::size_t i = 0; i < residuals.size(); ++i) {
      worst[i] = std::max(worst[i], residuals[i].second);
    }
  }
  double overall = 0.0;
  std::string name;
  for (std::size_t i = 0; i < worst.size(); ++i) {
    out << identity_names()[i] << ' ' << worst[i] << '\n';
    if (worst[i] > overall) {
      overall = worst[i];
      name = identity_names()[i];
    }
  }
  out << "max residual " << overall << " over " << trials << " trials\n";
  if (!(overall <= tol)) {
    return fail(err, "identity " + name + " residual " + std::to_string(overall) +
                         " exceeds tolerance");
  }
  return 0;
}

int cmd_analyze_decay(const std::filesystem::path& csv, double beta, double N,
                      double r, double margin, std::ostream& out,
                      std::ostream& err) {
  std::ifstream is(csv);
  if (!is) return error(err, "cannot open " + csv.string());
  DecayFit fit;
  try {
    const CsvTable table = read_csv(is);
    const std::string s = format_order(beta);
    const auto t = table.values("t");
    const auto u = table.values("hs_u_" + s);
    const auto b = table.values("hs_b_" + s);
    if (t.empty()) return error(err, "no samples in " + csv.string());
    std::vector<double> norm(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) norm[i] = u[i] + b[i];
    fit = decay_fit(t, norm, beta, N, r, log_time_tail(t.front(), t.back()), margin);
  } catch (const std::out_of_range& e) {
    return error(err, std::string("missing column: ") + e.what());
  } catch (const std::exception& e) {
    return error(err, e.what());
  }
  out << nlohmann::json{{"beta", fit.beta},
                        {"window", {fit.window.t_start, fit.window.t_end}},
                        {"fitted_alpha", fit.fitted_alpha},
                        {"predicted_alpha", fit.predicted_alpha},
                        {"r_squared", fit.r_squared},
                        {"points", fit.points},
                        {"below_floor", fit.below_floor},
                        {"verdict", fit.pass ? "PASS" : "FAIL"}}
             .dump()
      << '\n';
  if (!fit.pass) {
    return fail(err, "fitted alpha " + std::to_string(fit.fitted_alpha) +
                         " below predicted " + std::to_string(fit.predicted_alpha) +
                         " minus margin " + std::to_string(margin));
  }
  return 0;
}

}  // namespace hallmhd
