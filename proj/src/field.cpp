#include "hallmhd/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hallmhd/spectral.hpp"

namespace hallmhd {

namespace {

void require_same(const ScalarField& a, const ScalarField& b) {
  if (a.n_grid() != b.n_grid()) {
    throw std::invalid_argument("fields live on different lattices");
  }
}

}  // namespace

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double a) {
  for (auto& z : c_) z *= a;
  return *this;
}

ScalarField& ScalarField::axpy(double a, const ScalarField& x) {
  require_same(*this, x);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += a * x.c_[i];
  return *this;
}

void ScalarField::set_zero() { std::fill(c_.begin(), c_.end(), Complex{}); }

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int i = 0; i < 3; ++i) c[i] += o.c[i];
  return *this;
}
VectorField& VectorField::operator-=(const VectorField& o) {
  for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
  return *this;
}
VectorField& VectorField::operator*=(double a) {
  for (auto& f : c) f *= a;
  return *this;
}
VectorField& VectorField::axpy(double a, const VectorField& x) {
  for (int i = 0; i < 3; ++i) c[i].axpy(a, x.c[i]);
  return *this;
}
void VectorField::set_zero() {
  for (auto& f : c) f.set_zero();
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

ScalarField constant_field(const Lattice& lattice, double value) {
  ScalarField f(lattice);
  f[0] = value;
  return f;
}

VectorField constant_field(const Lattice& lattice,
                           const std::array<double, 3>& value) {
  VectorField v(lattice);
  for (int i = 0; i < 3; ++i) v[i][0] = value[i];
  return v;
}

void set_mode(ScalarField& f, const Lattice& lattice, const WaveVector& k,
              Complex a) {
  if (!lattice.contains(k)) {
    throw std::out_of_range("wavevector " + to_string(k) + " not on lattice");
  }
  const std::size_t idx = lattice.flat(k);
  if (!lattice.retained(idx)) {
    throw std::out_of_range("wavevector " + to_string(k) +
                            " is a Nyquist mode");
  }
  const std::size_t neg = lattice.negated(idx);
  if (neg == idx) {
    f[idx] = a.real();
    return;
  }
  f[idx] = a;
  f[neg] = std::conj(a);
}

double hermitian_defect(const ScalarField& f, const Lattice& lattice) {
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!lattice.retained(i)) {
      worst = std::max(worst, std::abs(f[i]));
      continue;
    }
    worst = std::max(worst, std::abs(f[i] - std::conj(f[lattice.negated(i)])));
  }
  return worst;
}

double hermitian_defect(const VectorField& v, const Lattice& lattice) {
  double worst = 0.0;
  for (const auto& f : v.c) worst = std::max(worst, hermitian_defect(f, lattice));
  return worst;
}

void enforce_hermitian(ScalarField& f, const Lattice& lattice) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!lattice.retained(i)) {
      f[i] = 0.0;
      continue;
    }
    const std::size_t j = lattice.negated(i);
    if (j < i) continue;
    if (j == i) {
      f[i] = f[i].real();
      continue;
    }
    const Complex avg = 0.5 * (f[i] + std::conj(f[j]));
    f[i] = avg;
    f[j] = std::conj(avg);
  }
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (const auto& z : f.coeffs()) m = std::max(m, std::abs(z));
  return m;
}

double max_abs(const VectorField& v) {
  return std::max({max_abs(v[0]), max_abs(v[1]), max_abs(v[2])});
}

bool all_finite(const ScalarField& f) {
  return std::all_of(f.coeffs().begin(), f.coeffs().end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

bool all_finite(const VectorField& v) {
  return all_finite(v[0]) && all_finite(v[1]) && all_finite(v[2]);
}

ScalarField random_scalar(const Lattice& lattice, std::mt19937_64& rng,
                          double kmax, double slope) {
  ScalarField f(lattice);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto& k2 = lattice.k_squared();
  const double kmax2 = kmax * kmax;
  // Visit each +/- pair once, at its first occurrence in storage order, so
  // the draw sequence depends only on the lattice.
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!lattice.retained(i) || k2[i] == 0.0) continue;
    const std::size_t j = lattice.negated(i);
    if (j < i) continue;
    const double re = normal(rng);
    const double im = normal(rng);
    if (k2[i] > kmax2) continue;
    const double amp = std::pow(1.0 + k2[i], -0.5 * slope);
    f[i] = amp * Complex(re, im);
    f[j] = std::conj(f[i]);
  }
  return f;
}

VectorField random_solenoidal(const Lattice& lattice, std::mt19937_64& rng,
                              double kmax, double slope) {
  VectorField v(lattice);
  for (int c = 0; c < 3; ++c) v[c] = random_scalar(lattice, rng, kmax, slope);
  return leray_project(v, lattice);
}

}  // namespace hallmhd
