#pragma once

#include <array>
#include <stdexcept>

#include "hallmhd/field.hpp"
#include "hallmhd/lattice.hpp"

namespace hallmhd {

/// Raised when an operator that assumes divergence-free input receives a
/// field whose |k.v(k)|/(|k||v(k)|) exceeds the tolerance.
class SolenoidalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kDefaultTolDiv = 1e-9;

/// Velocity and magnetic tendencies of the Hall-MHD system.
struct Tendency {
  VectorField du;
  VectorField db;
};

/// Switches for the individual right-hand-side contributions.
struct Terms {
  bool advection = true;            // -u.grad u
  bool lorentz = true;              // (curl b) x b in the momentum equation
  bool induction = true;            // curl(u x b)
  bool hall = true;                 // -curl((curl b) x b)
  bool background_coupling = true;  // n.grad b and n.grad u
  bool background_hall = true;      // -n.grad(curl b)
  bool diffusion = true;            // -(-Laplacian)^gamma b

  static Terms all() { return {}; }
  /// Constant-coefficient terms only (quadratic terms dropped).
  static Terms linear() {
    Terms t;
    t.advection = t.lorentz = t.induction = t.hall = false;
    return t;
  }
  /// Diffusion alone.
  static Terms diffusion_only() {
    return {false, false, false, false, false, false, true};
  }
  bool any_quadratic() const { return advection || lorentz || induction || hall; }
};

/// Spectral curl i k x v.
VectorField curl(const VectorField& v, const Lattice& lattice);

/// (curl b) x b, alias-free.
VectorField lorentz(const VectorField& b, const Lattice& lattice);

/// curl((curl b) x b), evaluated as curl(lorentz(b)).
VectorField hall_term(const VectorField& b, const Lattice& lattice);

/// curl(u x b), alias-free.
VectorField induction_term(const VectorField& u, const VectorField& b,
                           const Lattice& lattice);

/// sum_j u_j d_j f, alias-free.
VectorField advect(const VectorField& u, const VectorField& f,
                   const Lattice& lattice);

/// Original system around b with no background:
///   du = P[-u.grad u + (curl b) x b]
///   db = -(-Laplacian)^gamma b + curl(u x b) - curl((curl b) x b)
Tendency rhs_original(const VectorField& u, const VectorField& b,
                      const Lattice& lattice, double gamma = 1.0,
                      double tol_div = kDefaultTolDiv);

/// Perturbation system around the constant background n:
///   du = P[-u.grad u + n.grad b + (curl b) x b]
///   db = -(-Laplacian)^gamma b + curl(u x b) + n.grad u - n.grad(curl b)
///        - curl((curl b) x b)
Tendency rhs_perturbed(const VectorField& u, const VectorField& b,
                       const Lattice& lattice, const std::array<double, 3>& n,
                       double gamma = 1.0, double tol_div = kDefaultTolDiv);

/// Selected contributions of the perturbed right-hand side. Diffusion is
/// included only if terms.diffusion is set. No solenoidality check.
///
/// The advective term enters as the Leray projection of -(curl u) x u, which
/// differs from -u.grad u by the gradient of |u|^2/2 and so agrees exactly
/// after projection.
Tendency perturbed_terms(const VectorField& u, const VectorField& b,
                         const Lattice& lattice,
                         const std::array<double, 3>& n, double gamma,
                         const Terms& terms);

/// Pressure recovered from |k|^2 p(k) = -i k.F(k), with F the momentum
/// forcing -u.grad u + n.grad b + (curl b) x b. Mean pressure is zero.
ScalarField pressure(const VectorField& u, const VectorField& b,
                     const Lattice& lattice, const std::array<double, 3>& n);

/// Throws SolenoidalError if v is not divergence-free within tol.
void require_solenoidal(const VectorField& v, const Lattice& lattice,
                        double tol, const char* name);

}  // namespace hallmhd
