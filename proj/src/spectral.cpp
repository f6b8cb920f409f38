#include "hallmhd/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace hallmhd {

namespace {

constexpr Complex kI(0.0, 1.0);

void check_lattice(const ScalarField& f, const Lattice& lattice) {
  if (f.n_grid() != lattice.n_grid()) {
    throw std::invalid_argument("field does not match lattice");
  }
}

// (1 + |k|^2)^s, with the common integer cases kept exact.
inline double weight(double k2, double s) {
  if (s == 0.0) return 1.0;
  if (s == 1.0) return 1.0 + k2;
  return std::pow(1.0 + k2, s);
}

}  // namespace

ScalarField derivative(const ScalarField& f, const Lattice& lattice, int axis) {
  if (axis < 1 || axis > 3) {
    throw std::invalid_argument("derivative axis must be 1, 2 or 3");
  }
  check_lattice(f, lattice);
  const auto& k = lattice.k(axis - 1);
  ScalarField out(lattice);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = kI * k[i] * f[i];
  return out;
}

VectorField gradient(const ScalarField& f, const Lattice& lattice) {
  VectorField g(lattice);
  for (int a = 0; a < 3; ++a) g[a] = derivative(f, lattice, a + 1);
  return g;
}

ScalarField divergence(const VectorField& v, const Lattice& lattice) {
  check_lattice(v[0], lattice);
  ScalarField out(lattice);
  const auto& k1 = lattice.k(0);
  const auto& k2 = lattice.k(1);
  const auto& k3 = lattice.k(2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = kI * (k1[i] * v[0][i] + k2[i] * v[1][i] + k3[i] * v[2][i]);
  }
  return out;
}

ScalarField directional_derivative(const ScalarField& f, const Lattice& lattice,
                                   const std::array<double, 3>& n) {
  check_lattice(f, lattice);
  const auto& k1 = lattice.k(0);
  const auto& k2 = lattice.k(1);
  const auto& k3 = lattice.k(2);
  ScalarField out(lattice);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double nk = n[0] * k1[i] + n[1] * k2[i] + n[2] * k3[i];
    out[i] = kI * nk * f[i];
  }
  return out;
}

VectorField directional_derivative(const VectorField& v, const Lattice& lattice,
                                   const std::array<double, 3>& n) {
  VectorField out(lattice);
  for (int a = 0; a < 3; ++a) out[a] = directional_derivative(v[a], lattice, n);
  return out;
}

VectorField fractional_laplacian(const VectorField& v, const Lattice& lattice,
                                 double gamma) {
  check_lattice(v[0], lattice);
  const auto& k2 = lattice.k_squared();
  VectorField out(lattice);
  for (std::size_t i = 0; i < k2.size(); ++i) {
    const double m = gamma == 1.0 ? k2[i] : std::pow(k2[i], gamma);
    for (int a = 0; a < 3; ++a) out[a][i] = m * v[a][i];
  }
  return out;
}

double inner(const ScalarField& f, const ScalarField& g) {
  if (f.n_grid() != g.n_grid()) {
    throw std::invalid_argument("fields live on different lattices");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc += f[i].real() * g[i].real() + f[i].imag() * g[i].imag();
  }
  return kTorusVolume * acc;
}

double inner(const VectorField& f, const VectorField& g) {
  return inner(f[0], g[0]) + inner(f[1], g[1]) + inner(f[2], g[2]);
}

double inner_hs(const ScalarField& f, const ScalarField& g,
                const Lattice& lattice, double s) {
  check_lattice(f, lattice);
  check_lattice(g, lattice);
  const auto& k2 = lattice.k_squared();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc += weight(k2[i], s) *
           (f[i].real() * g[i].real() + f[i].imag() * g[i].imag());
  }
  return kTorusVolume * acc;
}

double inner_hs(const VectorField& f, const VectorField& g,
                const Lattice& lattice, double s) {
  return inner_hs(f[0], g[0], lattice, s) + inner_hs(f[1], g[1], lattice, s) +
         inner_hs(f[2], g[2], lattice, s);
}

double sobolev_norm(const ScalarField& f, const Lattice& lattice, double s) {
  check_lattice(f, lattice);
  const auto& k2 = lattice.k_squared();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc += weight(k2[i], s) * std::norm(f[i]);
  }
  return std::sqrt(kTorusVolume * acc);
}

double sobolev_norm(const VectorField& v, const Lattice& lattice, double s) {
  const double a = sobolev_norm(v[0], lattice, s);
  const double b = sobolev_norm(v[1], lattice, s);
  const double c = sobolev_norm(v[2], lattice, s);
  return std::sqrt(a * a + b * b + c * c);
}

double gradient_norm(const VectorField& v, const Lattice& lattice, double s) {
  check_lattice(v[0], lattice);
  const auto& k2 = lattice.k_squared();
  double acc = 0.0;
  for (std::size_t i = 0; i < k2.size(); ++i) {
    const double m = k2[i] * weight(k2[i], s);
    acc += m * (std::norm(v[0][i]) + std::norm(v[1][i]) + std::norm(v[2][i]));
  }
  return std::sqrt(kTorusVolume * acc);
}

double wiener_norm(const ScalarField& f) {
  double acc = 0.0;
  for (const auto& z : f.coeffs()) acc += std::abs(z);
  return acc;
}

double wiener_norm(const VectorField& v) {
  // sum_k |v(k)| with the Euclidean norm of the coefficient vector.
  double acc = 0.0;
  for (std::size_t i = 0; i < v[0].size(); ++i) {
    acc += std::sqrt(std::norm(v[0][i]) + std::norm(v[1][i]) + std::norm(v[2][i]));
  }
  return acc;
}

VectorField leray_project(const VectorField& v, const Lattice& lattice) {
  check_lattice(v[0], lattice);
  const auto& k1 = lattice.k(0);
  const auto& k2 = lattice.k(1);
  const auto& k3 = lattice.k(2);
  const auto& ksq = lattice.k_squared();
  VectorField out = v;
  for (std::size_t i = 0; i < ksq.size(); ++i) {
    if (ksq[i] == 0.0) continue;
    const Complex kv = (k1[i] * v[0][i] + k2[i] * v[1][i] + k3[i] * v[2][i]) / ksq[i];
    out[0][i] -= k1[i] * kv;
    out[1][i] -= k2[i] * kv;
    out[2][i] -= k3[i] * kv;
  }
  return out;
}

double max_divergence_ratio(const VectorField& v, const Lattice& lattice) {
  check_lattice(v[0], lattice);
  const auto& k1 = lattice.k(0);
  const auto& k2 = lattice.k(1);
  const auto& k3 = lattice.k(2);
  const auto& ksq = lattice.k_squared();
  double worst = 0.0;
  for (std::size_t i = 0; i < ksq.size(); ++i) {
    const double mag = std::sqrt(std::norm(v[0][i]) + std::norm(v[1][i]) +
                                 std::norm(v[2][i]));
    if (mag == 0.0 || ksq[i] == 0.0) continue;
    const Complex kv = k1[i] * v[0][i] + k2[i] * v[1][i] + k3[i] * v[2][i];
    worst = std::max(worst, std::abs(kv) / (std::sqrt(ksq[i]) * mag));
  }
  return worst;
}

double max_divergence(const VectorField& v, const Lattice& lattice) {
  check_lattice(v[0], lattice);
  const auto& k1 = lattice.k(0);
  const auto& k2 = lattice.k(1);
  const auto& k3 = lattice.k(2);
  double worst = 0.0;
  for (std::size_t i = 0; i < k1.size(); ++i) {
    const Complex kv = k1[i] * v[0][i] + k2[i] * v[1][i] + k3[i] * v[2][i];
    worst = std::max(worst, std::abs(kv));
  }
  return worst;
}

ScalarField product_to_spectral(const RealGrid& a, const RealGrid& b,
                                const Lattice& lattice) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("physical grids differ in size");
  }
  RealGrid p(a.points_per_axis());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a[i] * b[i];
  return to_spectral(p, lattice);
}

VectorField cross_to_spectral(const std::array<RealGrid, 3>& a,
                              const std::array<RealGrid, 3>& b,
                              const Lattice& lattice) {
  const int m = a[0].points_per_axis();
  std::array<RealGrid, 3> c{RealGrid(m), RealGrid(m), RealGrid(m)};
  const std::size_t size = c[0].size();
  for (std::size_t i = 0; i < size; ++i) {
    c[0][i] = a[1][i] * b[2][i] - a[2][i] * b[1][i];
    c[1][i] = a[2][i] * b[0][i] - a[0][i] * b[2][i];
    c[2][i] = a[0][i] * b[1][i] - a[1][i] * b[0][i];
  }
  VectorField out(lattice);
  for (int k = 0; k < 3; ++k) out[k] = to_spectral(c[k], lattice);
  return out;
}

ScalarField alias_free_product(const ScalarField& f, const ScalarField& g,
                               const Lattice& lattice) {
  if (f.n_grid() != g.n_grid()) {
    throw std::invalid_argument("alias_free_product: mismatched lattices");
  }
  check_lattice(f, lattice);
  return product_to_spectral(to_physical(f, lattice), to_physical(g, lattice),
                             lattice);
}

}  // namespace hallmhd
