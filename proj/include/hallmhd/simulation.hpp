#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hallmhd/config.hpp"
#include "hallmhd/diagnostics.hpp"
#include "hallmhd/integrator.hpp"

namespace hallmhd {

struct SimulateOptions {
  /// Write series.csv, summary.json and checkpoints under the output dir.
  bool write_outputs = true;
  /// Evaluate the identity suite at every sample.
  bool identities = true;
  /// Called after each sample is taken.
  std::function<void(const EnergyReport&)> on_sample;
};

struct RunResult {
  RunConfig config;
  DiophantineVector dv;
  /// Name of the suggested background, or "explicit".
  std::string background;
  double A = 1.0;
  std::vector<double> hs;
  std::vector<EnergyReport> series;
  SimState final_state;
  std::size_t steps = 0;
  /// Steps whose CFL estimate was clamped up to dt_min.
  std::size_t clamped_steps = 0;
  bool blew_up = false;
  std::string blowup_detail;
  /// Lyapunov residuals with tolerance 1e-6 E(0); empty below 3 samples.
  std::optional<LyapunovCheck> lyapunov;
  std::vector<DecayFit> decay;
  std::filesystem::path output_dir;
};

/// Resolves the background field of a config: the explicit n, or the
/// suggested one. Throws ConfigError when c_est is not positive.
DiophantineVector resolve_background(const RunConfig& cfg, const Lattice& lattice,
                                     std::string* name = nullptr);

/// Runs the perturbed system from t = 0 to t_end.
///
/// Samples are taken at step 0, every sample_every steps and at t_end.
/// With dt_min == dt_max the step is fixed (the last one shortened to land
/// on t_end). Blow-up (non-finite values, or ||u||_{H^3} + ||b||_{H^3} above
/// 1e3 times its initial value) stops the run early with blew_up set.
RunResult simulate(const RunConfig& cfg, const SimulateOptions& opts = {});

/// Writes series.csv for a result.
void write_series(const std::filesystem::path& path, const RunResult& result);

}  // namespace hallmhd
