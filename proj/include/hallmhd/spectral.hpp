#pragma once

#include <array>
#include <numbers>

#include "hallmhd/field.hpp"
#include "hallmhd/lattice.hpp"
#include "hallmhd/transform.hpp"

namespace hallmhd {

/// (2pi)^3, the volume of the torus.
inline constexpr double kTorusVolume =
    8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;

/// Multiplies coeff(k) by i*k_axis; axis is 1, 2 or 3.
ScalarField derivative(const ScalarField& f, const Lattice& lattice, int axis);
VectorField gradient(const ScalarField& f, const Lattice& lattice);
ScalarField divergence(const VectorField& v, const Lattice& lattice);
/// Directional derivative n . grad f.
ScalarField directional_derivative(const ScalarField& f, const Lattice& lattice,
                                   const std::array<double, 3>& n);
VectorField directional_derivative(const VectorField& v, const Lattice& lattice,
                                   const std::array<double, 3>& n);

/// Applies the fractional Laplacian multiplier |k|^(2 gamma).
VectorField fractional_laplacian(const VectorField& v, const Lattice& lattice,
                                 double gamma);

/// Discrete L2 inner product (2pi)^3 sum_k f(k) conj(g(k)), real part.
double inner(const ScalarField& f, const ScalarField& g);
double inner(const VectorField& f, const VectorField& g);

/// Inner product with the multiplier (1 + |k|^2)^s applied, i.e.
/// <Lambda^s f, Lambda^s g>.
double inner_hs(const ScalarField& f, const ScalarField& g,
                const Lattice& lattice, double s);
double inner_hs(const VectorField& f, const VectorField& g,
                const Lattice& lattice, double s);

/// sqrt( (2pi)^3 sum_k (1 + |k|^2)^s |f(k)|^2 ); root-sum-square over
/// vector components.
double sobolev_norm(const ScalarField& f, const Lattice& lattice, double s);
double sobolev_norm(const VectorField& v, const Lattice& lattice, double s);

/// Sobolev norm of the full gradient tensor, ||grad v||_{H^s}.
double gradient_norm(const VectorField& v, const Lattice& lattice, double s);

/// Wiener algebra norm sum_k |f(k)|, an upper bound for the sup norm.
double wiener_norm(const ScalarField& f);
double wiener_norm(const VectorField& v);

/// Orthogonal projection onto divergence-free fields; k = 0 untouched.
VectorField leray_project(const VectorField& v, const Lattice& lattice);

/// Largest |k . v(k)| / |v(k)| over modes with nonzero coefficient.
double max_divergence_ratio(const VectorField& v, const Lattice& lattice);
/// Largest |k . v(k)| over all modes.
double max_divergence(const VectorField& v, const Lattice& lattice);

/// Truncation to the lattice of the exact product f*g, computed on the
/// padded grid. Aliasing-free iff lattice.alias_free().
ScalarField alias_free_product(const ScalarField& f, const ScalarField& g,
                               const Lattice& lattice);

/// Pointwise products of physical samples, transformed back to the lattice.
ScalarField product_to_spectral(const RealGrid& a, const RealGrid& b,
                                const Lattice& lattice);
/// (a x b) computed pointwise on the grid and truncated to the lattice.
VectorField cross_to_spectral(const std::array<RealGrid, 3>& a,
                              const std::array<RealGrid, 3>& b,
                              const Lattice& lattice);

}  // namespace hallmhd
