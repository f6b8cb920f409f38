#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hallmhd/integrator.hpp"
#include "hallmhd/lattice.hpp"

namespace hallmhd {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Named residual in the fixed column order used by the CSV output.
using ResidualMap = std::vector<std::pair<std::string, double>>;

/// Identity residual names, in CSV column order.
const std::vector<std::string>& identity_names();

struct HsNorms {
  double s = 0.0;
  double u = 0.0;
  double b = 0.0;
};

/// One time sample of a run.
struct EnergyReport {
  double t = 0.0;
  double dt = 0.0;
  double l2_u = 0.0;
  double l2_b = 0.0;
  /// ||(-Laplacian)^(gamma/2) b||_{L2}; equals ||grad b||_{L2} for gamma = 1.
  double grad_b_l2 = 0.0;
  std::vector<HsNorms> hs;  // ascending s
  double E = 0.0;
  double D = 0.0;
  double lyap_residual = kNaN;
  double div_max = 0.0;
  double mean_max = 0.0;
  ResidualMap identity_residuals;
};

/// Integer orders s = 0, ..., floor(r + 3) of the cross term in E.
int cross_term_top(double r);

/// A = 1 + (floor(r + 3) + 1) |n|.
double choose_A(const DiophantineVector& dv);

/// sum_{s=0}^{floor(r+3)} <Lambda^s b, Lambda^s (n.grad u)>.
double cross_term(const SimState& state, const Lattice& lattice);

/// E = A (||u||^2_{H^{r+4}} + ||b||^2_{H^{r+4}}) - cross_term.
double energy_E(const SimState& state, const Lattice& lattice, double A);

/// D = A ||grad b||^2_{H^{r+4}} + ||n.grad u||^2_{H^{r+3}}.
double dissipation_D(const SimState& state, const Lattice& lattice, double A);

struct LyapunovCheck {
  /// dE/dt + D/2 per sample (NaN at the two end points).
  std::vector<double> residuals;
  /// Samples whose residual exceeds the tolerance.
  std::vector<std::size_t> flagged;
  double max_residual = kNaN;
};

/// Centered (three-point, non-uniform) finite difference of E plus D/2.
/// Throws std::invalid_argument for fewer than three samples.
LyapunovCheck lyapunov_monitor(std::span<const double> t,
                               std::span<const double> E,
                               std::span<const double> D, double tol = 0.0);

/// First derivative at interior samples from the five-point Lagrange
/// stencil (three-point when fewer than five samples). Entries without a
/// full stencil are NaN.
std::vector<double> finite_difference(std::span<const double> t,
                                      std::span<const double> y);

/// Residual of d/dt (||u||^2 + ||b||^2)/2 + ||(-Laplacian)^(gamma/2) b||^2
/// at interior samples (NaN elsewhere).
std::vector<double> basic_energy_law(std::span<const EnergyReport> series);

struct DecayWindow {
  double t_start = 0.0;
  double t_end = 0.0;
};

/// Final `fraction` of [t_first, t_last] measured in log(1 + t).
DecayWindow log_time_tail(double t_first, double t_last, double fraction = 0.5);

struct DecayFit {
  double beta = 0.0;
  DecayWindow window;
  double fitted_alpha = kNaN;
  double predicted_alpha = 0.0;
  double r_squared = kNaN;
  std::size_t points = 0;
  /// Last windowed norm fell below the floor.
  bool below_floor = false;
  bool pass = false;
};

/// 3 (N - beta) / (2 (N - r - 4)).
double predicted_decay_exponent(double beta, double N, double r);

/// Least-squares slope of log(norm) against log(1 + t) on the window.
/// pass = fitted_alpha >= predicted - margin, or the last windowed norm is
/// below `floor`. Throws ConfigError unless r + 4 <= beta < N.
DecayFit decay_fit(std::span<const double> t, std::span<const double> norm,
                   double beta, double N, double r, DecayWindow window,
                   double margin = 0.15, double floor = 1e-13);

/// Cancellation residuals for the current fields, each normalized by a
/// bound on the magnitude of the terms involved. Order matches
/// identity_names():
///   adv_u_u            <u.grad u, u>
///   adv_u_b            <u.grad b, b>
///   lorentz_pair       <b.grad b, u> + <b.grad u, b>
///   background_pair    <n.grad b, u> + <n.grad u, b>
///   hall_b             <curl((curl b) x b), b>
///   lorentz_pointwise  max_x |((curl b) x b) . curl b|
///   pressure           <Lambda^s (n.grad b), Lambda^s grad p>, s = r + 3
///   hall_expanded      hall term against b.grad(curl b) - (curl b).grad b
ResidualMap identity_suite(const SimState& state, const Lattice& lattice);

/// Largest entry of a residual map.
double max_residual(const ResidualMap& residuals);

struct ReportOptions {
  double A = 1.0;
  std::vector<double> hs;  // Sobolev orders to record
  bool identities = true;
};

EnergyReport make_report(const SimState& state, const Lattice& lattice,
                         double dt, const ReportOptions& opts);

/// Column label for a Sobolev order ("6.5", "17").
std::string format_order(double s);

/// CSV with columns t, dt, l2_u, l2_b, grad_b_l2, hs_u_<s>, hs_b_<s> (per s
/// ascending), E, D, lyap_residual, div_max, mean_max, then the identity
/// residuals. Values use 17 significant digits.
void write_csv(std::ostream& os, std::span<const EnergyReport> series);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of the named column; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
};

CsvTable read_csv(std::istream& is);

}  // namespace hallmhd
