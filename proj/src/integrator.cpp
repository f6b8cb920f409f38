#include "hallmhd/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hallmhd/spectral.hpp"
#include "hallmhd/transform.hpp"

namespace hallmhd {

namespace {

double max_magnitude(const VectorField& v, const Lattice& lattice) {
  const int m = lattice.n_grid();
  const auto p = to_physical(v, lattice, m);
  double worst = 0.0;
  for (std::size_t i = 0; i < p[0].size(); ++i) {
    const double s = p[0][i] * p[0][i] + p[1][i] * p[1][i] + p[2][i] * p[2][i];
    worst = std::max(worst, s);
  }
  return std::sqrt(worst);
}

// b <- factor(k) * b, mode by mode.
void scale_modes(VectorField& b, const std::vector<double>& factor) {
  for (int c = 0; c < 3; ++c) {
    auto coeffs = b[c].coeffs();
    for (std::size_t i = 0; i < factor.size(); ++i) coeffs[i] *= factor[i];
  }
}

}  // namespace

const char* to_string(StepLimiter l) {
  switch (l) {
    case StepLimiter::kMaximum: return "dt_max";
    case StepLimiter::kAdvective: return "advective";
    case StepLimiter::kHall: return "hall";
    case StepLimiter::kMinimum: return "dt_min";
  }
  return "unknown";
}

StepChoice choose_dt(const SimState& state, const Lattice& lattice,
                     const StepControl& ctrl) {
  const double h = 2.0 * std::numbers::pi / lattice.n_grid();
  const double n_mag = state.dv.norm();
  const double speed = max_magnitude(state.u, lattice) + n_mag;
  const double field = max_magnitude(state.b, lattice) + n_mag;

  StepChoice choice{ctrl.dt_max, StepLimiter::kMaximum, false};
  if (speed > 0.0) {
    const double adv = ctrl.cfl_adv * h / speed;
    if (adv < choice.dt) choice = {adv, StepLimiter::kAdvective, false};
  }
  if (field > 0.0) {
    const double hall = ctrl.cfl_hall * h * h / field;
    if (hall < choice.dt) choice = {hall, StepLimiter::kHall, false};
  }
  if (choice.dt < ctrl.dt_min) {
    choice = {ctrl.dt_min, StepLimiter::kMinimum, true};
  }
  return choice;
}

SimState step(const SimState& state, const Lattice& lattice, double dt,
              const Terms& terms) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");

  // Diffusion is handled by the integrating factor, the rest explicitly.
  Terms explicit_terms = terms;
  explicit_terms.diffusion = false;
  const auto& n = state.dv.n;
  const double gamma = state.gamma;

  const auto& k2 = lattice.k_squared();
  std::vector<double> half(k2.size(), 1.0);
  std::vector<double> full(k2.size(), 1.0);
  if (terms.diffusion) {
    for (std::size_t i = 0; i < k2.size(); ++i) {
      const double rate = gamma == 1.0 ? k2[i] : std::pow(k2[i], gamma);
      half[i] = std::exp(-0.5 * rate * dt);
      full[i] = std::exp(-rate * dt);
    }
  }

  const auto rhs = [&](const VectorField& u, const VectorField& b) {
    return perturbed_terms(u, b, lattice, n, gamma, explicit_terms);
  };

  const Tendency k1 = rhs(state.u, state.b);

  VectorField u2 = state.u;
  u2.axpy(0.5 * dt, k1.du);
  VectorField b2 = state.b;
  b2.axpy(0.5 * dt, k1.db);
  scale_modes(b2, half);
  const Tendency k2t = rhs(u2, b2);

  VectorField b_half = state.b;
  scale_modes(b_half, half);
  VectorField u3 = state.u;
  u3.axpy(0.5 * dt, k2t.du);
  VectorField b3 = b_half;
  b3.axpy(0.5 * dt, k2t.db);
  const Tendency k3 = rhs(u3, b3);

  VectorField b_full = state.b;
  scale_modes(b_full, full);
  VectorField k3b_half = k3.db;
  scale_modes(k3b_half, half);
  VectorField u4 = state.u;
  u4.axpy(dt, k3.du);
  VectorField b4 = b_full;
  b4.axpy(dt, k3b_half);
  const Tendency k4 = rhs(u4, b4);

  SimState next = state;
  next.u.axpy(dt / 6.0, k1.du);
  next.u.axpy(dt / 3.0, k2t.du);
  next.u.axpy(dt / 3.0, k3.du);
  next.u.axpy(dt / 6.0, k4.du);

  // b_{n+1} = F b + dt/6 (F k1 + 2 H (k2 + k3) + k4), F = full, H = half.
  VectorField k1b = k1.db;
  scale_modes(k1b, full);
  VectorField mid = k2t.db;
  mid += k3.db;
  scale_modes(mid, half);
  next.b = std::move(b_full);
  next.b.axpy(dt / 6.0, k1b);
  next.b.axpy(dt / 3.0, mid);
  next.b.axpy(dt / 6.0, k4.db);

  next.u = leray_project(next.u, lattice);
  next.b = leray_project(next.b, lattice);
  next.t = state.t + dt;

  if (!all_finite(next.u) || !all_finite(next.b)) {
    throw BlowUpError("non-finite coefficients at t = " + std::to_string(next.t),
                      next.t, std::max(max_abs(state.u), max_abs(state.b)));
  }
  return next;
}

std::pair<VectorField, VectorField> make_initial_data(std::uint64_t seed,
                                                      double spectrum_slope,
                                                      double epsilon,
                                                      const Lattice& lattice,
                                                      double regularity_N) {
  if (epsilon < 0.0) throw ConfigError("epsilon must be >= 0");
  std::mt19937_64 rng(seed);
  const double kmax = lattice.n_grid() / 4.0;
  VectorField u = random_solenoidal(lattice, rng, kmax, spectrum_slope);
  VectorField b = random_solenoidal(lattice, rng, kmax, spectrum_slope);
  if (epsilon == 0.0) {
    u.set_zero();
    b.set_zero();
    return {u, b};
  }
  const double size = sobolev_norm(u, lattice, regularity_N) +
                      sobolev_norm(b, lattice, regularity_N);
  u *= epsilon / size;
  b *= epsilon / size;
  return {u, b};
}

}  // namespace hallmhd
