#include "hallmhd/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "hallmhd/checkpoint.hpp"
#include "hallmhd/spectral.hpp"

namespace hallmhd {

namespace {

double h3_size(const SimState& s, const Lattice& lattice) {
  return sobolev_norm(s.u, lattice, 3.0) + sobolev_norm(s.b, lattice, 3.0);
}

nlohmann::json summary_json(const RunResult& res) {
  using nlohmann::json;
  json j;
  j["seed"] = res.config.seed;
  j["config"] = print_config(res.config);
  j["background"] = {{"name", res.background},
                     {"n", res.dv.n},
                     {"r", res.dv.r},
                     {"K", res.dv.K},
                     {"c_est", res.dv.c_est},
                     {"argmin", to_string(res.dv.argmin)}};
  j["A"] = res.A;
  j["steps"] = res.steps;
  j["clamped_steps"] = res.clamped_steps;
  j["samples"] = res.series.size();
  j["t_final"] = res.final_state.t;
  j["blew_up"] = res.blew_up;
  if (res.blew_up) j["blowup_detail"] = res.blowup_detail;
  if (res.lyapunov) {
    j["lyapunov"] = {{"max_residual", res.lyapunov->max_residual},
                     {"flagged", res.lyapunov->flagged.size()}};
  }
  json fits = json::array();
  for (const auto& f : res.decay) {
    fits.push_back({{"beta", f.beta},
                    {"window", {f.window.t_start, f.window.t_end}},
                    {"fitted_alpha", f.fitted_alpha},
                    {"predicted_alpha", f.predicted_alpha},
                    {"r_squared", f.r_squared},
                    {"points", f.points},
                    {"below_floor", f.below_floor},
                    {"verdict", f.pass ? "PASS" : "FAIL"}});
  }
  j["decay"] = fits;
  return j;
}

}  // namespace

DiophantineVector resolve_background(const RunConfig& cfg, const Lattice& lattice,
                                     std::string* name) {
  const int K = cfg.K > 0 ? cfg.K : covering_radius(lattice);
  DiophantineVector dv;
  std::string label = "explicit";
  if (cfg.n) {
    dv = make_diophantine(*cfg.n, cfg.r, K);
  } else {
    auto s = suggest_background(cfg.r, K, cfg.background_amplitude);
    dv = s.dv;
    label = s.candidate;
  }
  if (!dv.usable()) {
    throw ConfigError("n: background fails the Diophantine condition (c_est = " +
                      std::to_string(dv.c_est) + " at k = " + to_string(dv.argmin) +
                      ", K = " + std::to_string(K) + ")");
  }
  if (name) *name = label;
  return dv;
}

void write_series(const std::filesystem::path& path, const RunResult& result) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(os, result.series);
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

RunResult simulate(const RunConfig& cfg, const SimulateOptions& opts) {
  const Lattice lattice(cfg.n_grid, cfg.pad_factor);

  RunResult res;
  res.config = cfg;
  res.dv = resolve_background(cfg, lattice, &res.background);
  res.A = choose_A(res.dv);
  res.hs = effective_hs(cfg);

  if (opts.write_outputs) {
    res.output_dir = cfg.output_dir.empty() ? "." : cfg.output_dir;
    std::filesystem::create_directories(res.output_dir);
  }

  SimState state(lattice, cfg.gamma, res.dv);
  std::tie(state.u, state.b) =
      make_initial_data(cfg.seed, cfg.spectrum_slope, cfg.epsilon, lattice, cfg.N);

  const ReportOptions ropts{res.A, res.hs, opts.identities};
  const auto sample = [&](double dt) {
    res.series.push_back(make_report(state, lattice, dt, ropts));
    if (opts.on_sample) opts.on_sample(res.series.back());
  };
  sample(0.0);

  const StepControl ctrl{cfg.dt_max, cfg.cfl_adv, cfg.cfl_hall, cfg.dt_min, cfg.dt_max};
  const bool fixed_dt = cfg.dt_min == cfg.dt_max;
  const double threshold = 1e3 * h3_size(state, lattice);

  double last_dt = 0.0;
  bool sampled_last = true;
  while (state.t < cfg.t_end) {
    const StepChoice choice = choose_dt(state, lattice, ctrl);
    if (choice.clamped && !fixed_dt) ++res.clamped_steps;
    double dt = choice.dt;
    const double remaining = cfg.t_end - state.t;
    // Avoid a sliver of a final step.
    const bool last = dt >= remaining * (1.0 - 1e-9);
    if (last) dt = remaining;

    try {
      state = step(state, lattice, dt);
    } catch (const BlowUpError& e) {
      res.blew_up = true;
      res.blowup_detail = e.what();
      break;
    }
    if (last) state.t = cfg.t_end;
    ++res.steps;
    last_dt = dt;
    sampled_last = false;

    const double size = h3_size(state, lattice);
    if (threshold > 0.0 && size > threshold) {
      res.blew_up = true;
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "||u||_H3 + ||b||_H3 = %.6g exceeds 1e3 x initial at t = %.6g",
                    size, state.t);
      res.blowup_detail = buf;
      sample(dt);
      sampled_last = true;
      break;
    }
    if (res.steps % static_cast<std::size_t>(cfg.sample_every) == 0 || last) {
      sample(dt);
      sampled_last = true;
    }
    if (opts.write_outputs && cfg.checkpoint_every > 0 &&
        res.steps % static_cast<std::size_t>(cfg.checkpoint_every) == 0) {
      char name[48];
      std::snprintf(name, sizeof name, "checkpoint_%06zu.hmhd", res.steps);
      save_checkpoint(res.output_dir / name, state, lattice);
    }
  }
  if (!sampled_last && !res.blew_up) sample(last_dt);

  if (res.series.size() >= 3) {
    std::vector<double> t, E, D;
    for (const auto& r : res.series) {
      t.push_back(r.t);
      E.push_back(r.E);
      D.push_back(r.D);
    }
    res.lyapunov = lyapunov_monitor(t, E, D, 1e-6 * res.series.front().E);
    for (std::size_t i = 0; i < res.series.size(); ++i) {
      res.series[i].lyap_residual = res.lyapunov->residuals[i];
    }
  }

  if (cfg.decay_verdicts && !res.series.empty()) {
    std::vector<double> t;
    for (const auto& r : res.series) t.push_back(r.t);
    const DecayWindow window = log_time_tail(t.front(), t.back());
    for (double beta : decay_orders(cfg)) {
      std::vector<double> norm;
      for (const auto& r : res.series) {
        const auto it = std::find_if(r.hs.begin(), r.hs.end(),
                                     [&](const HsNorms& h) { return h.s == beta; });
        norm.push_back(it->u + it->b);
      }
      res.decay.push_back(
          decay_fit(t, norm, beta, cfg.N, cfg.r, window, cfg.decay_margin));
    }
  }

  res.final_state = std::move(state);

  if (opts.write_outputs) {
    write_series(res.output_dir / "series.csv", res);
    save_checkpoint(res.output_dir / "final.hmhd", res.final_state, lattice);
    std::ofstream js(res.output_dir / "summary.json", std::ios::trunc);
    js << summary_json(res).dump(2) << '\n';
  }
  return res;
}

}  // namespace hallmhd
