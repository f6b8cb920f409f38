#include "hallmhd/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hallmhd/mhd_operators.hpp"
#include "hallmhd/spectral.hpp"
#include "hallmhd/transform.hpp"

namespace hallmhd {

namespace {

double safe_ratio(double value, double scale) {
  const double a = std::abs(value);
  if (scale == 0.0) return a == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return a / scale;
}

double max_norm(const std::array<RealGrid, 3>& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < v[0].size(); ++i) {
    m = std::max(m, v[0][i] * v[0][i] + v[1][i] * v[1][i] + v[2][i] * v[2][i]);
  }
  return std::sqrt(m);
}

// Lagrange derivative weights at nodes x[c] for the stencil x[lo..hi].
double stencil_derivative(std::span<const double> x, std::span<const double> y,
                          std::size_t c, std::size_t lo, std::size_t hi) {
  double d = 0.0;
  for (std::size_t j = lo; j <= hi; ++j) {
    double w;
    if (j == c) {
      w = 0.0;
      for (std::size_t m = lo; m <= hi; ++m) {
        if (m != c) w += 1.0 / (x[c] - x[m]);
      }
    } else {
      double num = 1.0;
      double den = 1.0;
      for (std::size_t m = lo; m <= hi; ++m) {
        if (m != j) den *= x[j] - x[m];
        if (m != j && m != c) num *= x[c] - x[m];
      }
      w = num / den;
    }
    d += w * y[j];
  }
  return d;
}

}  // namespace

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = {
      "adv_u_u",   "adv_u_b",           "lorentz_pair", "background_pair",
      "hall_b",    "lorentz_pointwise", "pressure",     "hall_expanded"};
  return names;
}

int cross_term_top(double r) { return static_cast<int>(std::floor(r + 3.0)); }

double choose_A(const DiophantineVector& dv) {
  return 1.0 + (cross_term_top(dv.r) + 1) * dv.norm();
}

double cross_term(const SimState& state, const Lattice& lattice) {
  const auto& n = state.dv.n;
  const auto& k1 = lattice.k(0);
  const auto& k2 = lattice.k(1);
  const auto& k3 = lattice.k(2);
  const auto& ksq = lattice.k_squared();
  const int top = cross_term_top(state.dv.r);
  double acc = 0.0;
  for (std::size_t i = 0; i < ksq.size(); ++i) {
    const double nk = n[0] * k1[i] + n[1] * k2[i] + n[2] * k3[i];
    if (nk == 0.0) continue;
    // sum_{s=0}^{top} (1 + |k|^2)^s
    double w = 0.0;
    double p = 1.0;
    for (int s = 0; s <= top; ++s) {
      w += p;
      p *= 1.0 + ksq[i];
    }
    // Re[ b(k) . conj(i nk u(k)) ] = nk * Im[ b . conj(u) ] summed over comps.
    double im = 0.0;
    for (int c = 0; c < 3; ++c) {
      im += state.b[c][i].imag() * state.u[c][i].real() -
            state.b[c][i].real() * state.u[c][i].imag();
    }
    acc += w * nk * im;
  }
  return kTorusVolume * acc;
}

double energy_E(const SimState& state, const Lattice& lattice, double A) {
  const double s = state.dv.r + 4.0;
  const double u = sobolev_norm(state.u, lattice, s);
  const double b = sobolev_norm(state.b, lattice, s);
  return A * (u * u + b * b) - cross_term(state, lattice);
}

double dissipation_D(const SimState& state, const Lattice& lattice, double A) {
  const double gb = gradient_norm(state.b, lattice, state.dv.r + 4.0);
  const double nu =
      sobolev_norm(directional_derivative(state.u, lattice, state.dv.n), lattice,
                   state.dv.r + 3.0);
  return A * gb * gb + nu * nu;
}

LyapunovCheck lyapunov_monitor(std::span<const double> t,
                               std::span<const double> E,
                               std::span<const double> D, double tol) {
  const std::size_t n = t.size();
  if (n < 3 || E.size() != n || D.size() != n) {
    throw std::invalid_argument("lyapunov_monitor needs >= 3 aligned samples");
  }
  LyapunovCheck out;
  out.residuals.assign(n, kNaN);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dEdt = stencil_derivative(t, E, i, i - 1, i + 1);
    const double r = dEdt + 0.5 * D[i];
    out.residuals[i] = r;
    if (std::isnan(out.max_residual) || r > out.max_residual) out.max_residual = r;
    if (r > tol) out.flagged.push_back(i);
  }
  return out;
}

std::vector<double> finite_difference(std::span<const double> t,
                                      std::span<const double> y) {
  const std::size_t n = t.size();
  std::vector<double> d(n, kNaN);
  if (n >= 5) {
    for (std::size_t i = 2; i + 2 < n; ++i) d[i] = stencil_derivative(t, y, i, i - 2, i + 2);
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = stencil_derivative(t, y, i, i - 1, i + 1);
  }
  return d;
}

std::vector<double> basic_energy_law(std::span<const EnergyReport> series) {
  if (series.size() < 3) {
    throw std::invalid_argument("basic_energy_law needs >= 3 samples");
  }
  std::vector<double> t, half_energy;
  for (const auto& r : series) {
    t.push_back(r.t);
    half_energy.push_back(0.5 * (r.l2_u * r.l2_u + r.l2_b * r.l2_b));
  }
  std::vector<double> d = finite_difference(t, half_energy);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!std::isnan(d[i])) d[i] += series[i].grad_b_l2 * series[i].grad_b_l2;
  }
  return d;
}

DecayWindow log_time_tail(double t_first, double t_last, double fraction) {
  const double a = std::log1p(t_first);
  const double b = std::log1p(t_last);
  return {std::expm1(b - fraction * (b - a)), t_last};
}

double predicted_decay_exponent(double beta, double N, double r) {
  return 3.0 * (N - beta) / (2.0 * (N - r - 4.0));
}

DecayFit decay_fit(std::span<const double> t, std::span<const double> norm,
                   double beta, double N, double r, DecayWindow window,
                   double margin, double floor) {
  if (!(beta >= r + 4.0 && beta < N)) {
    throw ConfigError("decay_fit: beta must satisfy r + 4 <= beta < N");
  }
  if (t.size() != norm.size()) {
    throw std::invalid_argument("decay_fit: series lengths differ");
  }
  DecayFit fit;
  fit.beta = beta;
  fit.window = window;
  fit.predicted_alpha = predicted_decay_exponent(beta, N, r);

  std::vector<double> xs, ys;
  double last = kNaN;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.t_start || t[i] > window.t_end) continue;
    last = norm[i];
    if (!(norm[i] > 0.0)) continue;
    xs.push_back(std::log1p(t[i]));
    ys.push_back(std::log(norm[i]));
  }
  fit.points = xs.size();
  fit.below_floor = !std::isnan(last) && last < floor;
  if (xs.size() >= 2) {
    const double cnt = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= cnt;
    my /= cnt;
    double vxx = 0.0, vxy = 0.0, vyy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double dx = xs[i] - mx;
      const double dy = ys[i] - my;
      vxx += dx * dx;
      vxy += dx * dy;
      vyy += dy * dy;
    }
    if (vxx > 0.0) {
      fit.fitted_alpha = -vxy / vxx;
      fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
    }
  }
  fit.pass = fit.below_floor ||
             (!std::isnan(fit.fitted_alpha) &&
              fit.fitted_alpha >= fit.predicted_alpha - margin);
  return fit;
}

ResidualMap identity_suite(const SimState& state, const Lattice& lattice) {
  const VectorField& u = state.u;
  const VectorField& b = state.b;
  const auto& n = state.dv.n;

  const double u_l2 = sobolev_norm(u, lattice, 0.0);
  const double b_l2 = sobolev_norm(b, lattice, 0.0);
  const double gu = gradient_norm(u, lattice, 0.0);
  const double gb = gradient_norm(b, lattice, 0.0);
  const double u_w = wiener_norm(u);
  const double b_w = wiener_norm(b);

  ResidualMap out;
  out.reserve(8);

  const VectorField uu = advect(u, u, lattice);
  out.emplace_back("adv_u_u", safe_ratio(inner(uu, u), u_w * gu * u_l2));

  out.emplace_back("adv_u_b", safe_ratio(inner(advect(u, b, lattice), b), u_w * gb * b_l2));

  const double pair = inner(advect(b, b, lattice), u) + inner(advect(b, u, lattice), b);
  out.emplace_back("lorentz_pair", safe_ratio(pair, b_w * (gb * u_l2 + gu * b_l2)));

  const double n_mag = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  const double bg = inner(directional_derivative(b, lattice, n), u) +
                    inner(directional_derivative(u, lattice, n), b);
  out.emplace_back("background_pair", safe_ratio(bg, n_mag * (gb * u_l2 + gu * b_l2)));

  const VectorField j = curl(b, lattice);
  const double j_l2 = sobolev_norm(j, lattice, 0.0);
  const VectorField hall = hall_term(b, lattice);
  out.emplace_back("hall_b", safe_ratio(inner(hall, b), b_w * j_l2 * j_l2));

  {
    const auto jp = to_physical(j, lattice);
    const auto bp = to_physical(b, lattice);
    double worst = 0.0;
    for (std::size_t i = 0; i < jp[0].size(); ++i) {
      const double l0 = jp[1][i] * bp[2][i] - jp[2][i] * bp[1][i];
      const double l1 = jp[2][i] * bp[0][i] - jp[0][i] * bp[2][i];
      const double l2 = jp[0][i] * bp[1][i] - jp[1][i] * bp[0][i];
      worst = std::max(worst, std::abs(l0 * jp[0][i] + l1 * jp[1][i] + l2 * jp[2][i]));
    }
    const double jm = max_norm(jp);
    out.emplace_back("lorentz_pointwise", safe_ratio(worst, jm * jm * max_norm(bp)));
  }

  {
    // Pressure from the momentum forcing, reusing u.grad u.
    VectorField force = lorentz(b, lattice);
    force -= uu;
    const VectorField nb = directional_derivative(b, lattice, n);
    force += nb;
    const auto& k1 = lattice.k(0);
    const auto& k2 = lattice.k(1);
    const auto& k3 = lattice.k(2);
    const auto& ksq = lattice.k_squared();
    ScalarField p(lattice);
    for (std::size_t i = 0; i < ksq.size(); ++i) {
      if (ksq[i] == 0.0) continue;
      const Complex kf = k1[i] * force[0][i] + k2[i] * force[1][i] + k3[i] * force[2][i];
      p[i] = Complex(0.0, -1.0) * kf / ksq[i];
    }
    const VectorField gp = gradient(p, lattice);
    const double s = state.dv.r + 3.0;
    out.emplace_back("pressure",
                     safe_ratio(inner_hs(nb, gp, lattice, s),
                                sobolev_norm(nb, lattice, s) * sobolev_norm(gp, lattice, s)));
  }

  {
    VectorField expanded = advect(b, j, lattice);
    expanded -= advect(j, b, lattice);
    const VectorField diff = hall - expanded;
    const double scale =
        b_w * gradient_norm(j, lattice, 0.0) + wiener_norm(j) * gb;
    out.emplace_back("hall_expanded", safe_ratio(sobolev_norm(diff, lattice, 0.0), scale));
  }
  return out;
}

double max_residual(const ResidualMap& residuals) {
  double m = 0.0;
  for (const auto& [name, v] : residuals) m = std::max(m, v);
  return m;
}

EnergyReport make_report(const SimState& state, const Lattice& lattice,
                         double dt, const ReportOptions& opts) {
  EnergyReport r;
  r.t = state.t;
  r.dt = dt;
  r.l2_u = sobolev_norm(state.u, lattice, 0.0);
  r.l2_b = sobolev_norm(state.b, lattice, 0.0);
  if (state.gamma == 1.0) {
    r.grad_b_l2 = gradient_norm(state.b, lattice, 0.0);
  } else {
    // ||(-Laplacian)^(gamma/2) b||^2 = <(-Laplacian)^gamma b, b>.
    r.grad_b_l2 = std::sqrt(std::max(
        0.0, inner(fractional_laplacian(state.b, lattice, state.gamma), state.b)));
  }
  std::vector<double> orders = opts.hs;
  std::sort(orders.begin(), orders.end());
  for (double s : orders) {
    r.hs.push_back({s, sobolev_norm(state.u, lattice, s), sobolev_norm(state.b, lattice, s)});
  }
  r.E = energy_E(state, lattice, opts.A);
  r.D = dissipation_D(state, lattice, opts.A);
  r.div_max = std::max(max_divergence(state.u, lattice), max_divergence(state.b, lattice));
  r.mean_max = 0.0;
  for (int c = 0; c < 3; ++c) {
    r.mean_max = std::max({r.mean_max, std::abs(state.u[c][0]), std::abs(state.b[c][0])});
  }
  if (opts.identities) r.identity_residuals = identity_suite(state, lattice);
  return r;
}

std::string format_order(double s) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, s);
  return std::string(buf, res.ptr);
}

namespace {

void put(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

void write_csv(std::ostream& os, std::span<const EnergyReport> series) {
  const EnergyReport* first = series.empty() ? nullptr : &series.front();
  os << "t,dt,l2_u,l2_b,grad_b_l2";
  if (first) {
    for (const auto& h : first->hs) {
      os << ",hs_u_" << format_order(h.s) << ",hs_b_" << format_order(h.s);
    }
  }
  os << ",E,D,lyap_residual,div_max,mean_max";
  const bool with_ids = first && !first->identity_residuals.empty();
  if (with_ids) {
    for (const auto& name : identity_names()) os << ',' << name;
  }
  os << '\n';
  for (const auto& r : series) {
    put(os, r.t);
    for (double v : {r.dt, r.l2_u, r.l2_b, r.grad_b_l2}) {
      os << ',';
      put(os, v);
    }
    for (const auto& h : r.hs) {
      os << ',';
      put(os, h.u);
      os << ',';
      put(os, h.b);
    }
    for (double v : {r.E, r.D, r.lyap_residual, r.div_max, r.mean_max}) {
      os << ',';
      put(os, v);
    }
    if (with_ids) {
      for (const auto& [name, v] : r.identity_residuals) {
        os << ',';
        put(os, v);
      }
    }
    os << '\n';
  }
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no CSV column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> CsvTable::values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& row : rows) v.push_back(row.at(c));
  return v;
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty CSV input");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw std::runtime_error("bad CSV value '" + cell + "'");
      row.push_back(v);
    }
    if (row.size() != table.header.size()) {
      throw std::runtime_error("CSV row has " + std::to_string(row.size()) +
                               " fields, header has " +
                               std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace hallmhd
