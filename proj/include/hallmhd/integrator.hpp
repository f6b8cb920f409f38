#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "hallmhd/diophantine.hpp"
#include "hallmhd/field.hpp"
#include "hallmhd/lattice.hpp"
#include "hallmhd/mhd_operators.hpp"

namespace hallmhd {

/// Spectral state of the perturbation system.
struct SimState {
  VectorField u;
  VectorField b;
  double t = 0.0;
  double gamma = 1.0;
  DiophantineVector dv;

  SimState() = default;
  SimState(const Lattice& lattice, double gamma_, DiophantineVector dv_)
      : u(lattice), b(lattice), gamma(gamma_), dv(std::move(dv_)) {}
};

/// Raised when the solution stops being finite or grows past the blow-up
/// threshold.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double t, double max_norm)
      : std::runtime_error(what), time(t), norm(max_norm) {}
  double time;
  double norm;
};

struct StepControl {
  double dt = 0.0;
  double cfl_adv = 0.5;
  double cfl_hall = 0.5;
  double dt_min = 1e-6;
  double dt_max = 5e-2;
};

enum class StepLimiter { kMaximum, kAdvective, kHall, kMinimum };
const char* to_string(StepLimiter l);

struct StepChoice {
  double dt = 0.0;
  StepLimiter limiter = StepLimiter::kMaximum;
  /// The CFL estimate fell below dt_min and was clamped up to it.
  bool clamped = false;
};

/// dt = min(dt_max, cfl_adv h / V, cfl_hall h^2 / B) with h = 2pi/n_grid,
/// V = max|u| + |n| and B = max|b| + |n| sampled on the lattice grid,
/// clamped below at dt_min.
StepChoice choose_dt(const SimState& state, const Lattice& lattice,
                     const StepControl& ctrl);

/// One integrating-factor RK4 step. The diffusion multiplier is applied
/// exactly through exp(-|k|^(2 gamma) t); all other enabled terms are
/// explicit. u and b are re-projected onto divergence-free fields at the end.
/// Throws BlowUpError on non-finite output.
SimState step(const SimState& state, const Lattice& lattice, double dt,
              const Terms& terms = Terms::all());

/// Random-phase solenoidal mean-zero (u0, b0) supported on |k| <= n_grid/4
/// with coefficient magnitudes ~ (1 + |k|^2)^(-slope/2), scaled so that
/// ||u0||_{H^N} + ||b0||_{H^N} = epsilon.
std::pair<VectorField, VectorField> make_initial_data(std::uint64_t seed,
                                                      double spectrum_slope,
                                                      double epsilon,
                                                      const Lattice& lattice,
                                                      double regularity_N);

}  // namespace hallmhd
