#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "hallmhd/lattice.hpp"

namespace hallmhd {

using Complex = std::complex<double>;

/// Fourier coefficients of a real periodic scalar field on the full lattice.
/// f(x) = sum_k coeff(k) exp(i k.x).
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const Lattice& lattice)
      : n_(lattice.n_grid()), c_(lattice.size()) {}

  int n_grid() const { return n_; }
  std::size_t size() const { return c_.size(); }

  Complex& operator[](std::size_t i) { return c_[i]; }
  const Complex& operator[](std::size_t i) const { return c_[i]; }
  std::span<Complex> coeffs() { return c_; }
  std::span<const Complex> coeffs() const { return c_; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double a);
  /// this += a * x
  ScalarField& axpy(double a, const ScalarField& x);
  void set_zero();

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  int n_ = 0;
  std::vector<Complex> c_;
};

/// Three scalar components of a real vector field.
struct VectorField {
  std::array<ScalarField, 3> c;

  VectorField() = default;
  explicit VectorField(const Lattice& lattice)
      : c{ScalarField(lattice), ScalarField(lattice), ScalarField(lattice)} {}

  ScalarField& operator[](int i) { return c[i]; }
  const ScalarField& operator[](int i) const { return c[i]; }
  int n_grid() const { return c[0].n_grid(); }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double a);
  VectorField& axpy(double a, const VectorField& x);
  void set_zero();

  friend bool operator==(const VectorField&, const VectorField&) = default;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Field equal to the constant value (only the k = 0 mode is set).
ScalarField constant_field(const Lattice& lattice, double value);
VectorField constant_field(const Lattice& lattice,
                           const std::array<double, 3>& value);

/// Sets a real Fourier pair: coeff(k) = a, coeff(-k) = conj(a).
void set_mode(ScalarField& f, const Lattice& lattice, const WaveVector& k,
              Complex a);

/// Largest violation of coeff(-k) = conj(coeff(k)) plus any nonzero
/// Nyquist coefficient.
double hermitian_defect(const ScalarField& f, const Lattice& lattice);
double hermitian_defect(const VectorField& v, const Lattice& lattice);

/// Restores exact Hermitian symmetry (averaging each pair) and zeroes the
/// Nyquist planes.
void enforce_hermitian(ScalarField& f, const Lattice& lattice);

/// Largest |coeff| over all modes.
double max_abs(const ScalarField& f);
double max_abs(const VectorField& v);
bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& v);

/// Random real field with independent complex Gaussian coefficients scaled
/// by (1 + |k|^2)^(-slope/2) on modes with 0 < |k| <= kmax. The mean is zero.
ScalarField random_scalar(const Lattice& lattice, std::mt19937_64& rng,
                          double kmax, double slope);
/// Leray-projected random vector field; solenoidal and mean-zero.
VectorField random_solenoidal(const Lattice& lattice, std::mt19937_64& rng,
                              double kmax, double slope);

}  // namespace hallmhd
