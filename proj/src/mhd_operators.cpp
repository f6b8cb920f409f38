#include "hallmhd/mhd_operators.hpp"

#include <optional>
#include <string>

#include "hallmhd/spectral.hpp"
#include "hallmhd/transform.hpp"

namespace hallmhd {

namespace {

constexpr Complex kI(0.0, 1.0);

bool is_zero(const std::array<double, 3>& n) {
  return n[0] == 0.0 && n[1] == 0.0 && n[2] == 0.0;
}

}  // namespace

void require_solenoidal(const VectorField& v, const Lattice& lattice,
                        double tol, const char* name) {
  const double ratio = max_divergence_ratio(v, lattice);
  if (ratio > tol) {
    throw SolenoidalError(std::string(name) +
                          " is not divergence-free (|k.v|/(|k||v|) = " +
                          std::to_string(ratio) + ")");
  }
}

VectorField curl(const VectorField& v, const Lattice& lattice) {
  const auto& k1 = lattice.k(0);
  const auto& k2 = lattice.k(1);
  const auto& k3 = lattice.k(2);
  VectorField w(lattice);
  for (std::size_t i = 0; i < k1.size(); ++i) {
    w[0][i] = kI * (k2[i] * v[2][i] - k3[i] * v[1][i]);
    w[1][i] = kI * (k3[i] * v[0][i] - k1[i] * v[2][i]);
    w[2][i] = kI * (k1[i] * v[1][i] - k2[i] * v[0][i]);
  }
  return w;
}

VectorField lorentz(const VectorField& b, const Lattice& lattice) {
  return cross_to_spectral(to_physical(curl(b, lattice), lattice),
                           to_physical(b, lattice), lattice);
}

VectorField hall_term(const VectorField& b, const Lattice& lattice) {
  return curl(lorentz(b, lattice), lattice);
}

VectorField induction_term(const VectorField& u, const VectorField& b,
                           const Lattice& lattice) {
  return curl(cross_to_spectral(to_physical(u, lattice),
                                to_physical(b, lattice), lattice),
              lattice);
}

VectorField advect(const VectorField& u, const VectorField& f,
                   const Lattice& lattice) {
  const auto up = to_physical(u, lattice);
  const int m = lattice.padded_grid();
  VectorField out(lattice);
  for (int c = 0; c < 3; ++c) {
    RealGrid acc(m);
    for (int j = 0; j < 3; ++j) {
      const RealGrid d = to_physical(derivative(f[c], lattice, j + 1), lattice);
      for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += up[j][p] * d[p];
    }
    out[c] = to_spectral(acc, lattice);
  }
  return out;
}

Tendency perturbed_terms(const VectorField& u, const VectorField& b,
                         const Lattice& lattice,
                         const std::array<double, 3>& n, double gamma,
                         const Terms& terms) {
  Tendency t{VectorField(lattice), VectorField(lattice)};
  const bool background = !is_zero(n);

  VectorField j;
  if (terms.lorentz || terms.hall || (terms.background_hall && background)) {
    j = curl(b, lattice);
  }

  if (terms.any_quadratic()) {
    std::optional<std::array<RealGrid, 3>> up;
    std::optional<std::array<RealGrid, 3>> bp;
    if (terms.advection || terms.induction) up = to_physical(u, lattice);
    if (terms.lorentz || terms.hall || terms.induction) bp = to_physical(b, lattice);

    if (terms.lorentz || terms.hall) {
      const VectorField jxb =
          cross_to_spectral(to_physical(j, lattice), *bp, lattice);
      if (terms.lorentz) t.du += jxb;
      if (terms.hall) t.db -= curl(jxb, lattice);
    }
    if (terms.advection) {
      const auto wp = to_physical(curl(u, lattice), lattice);
      t.du -= cross_to_spectral(wp, *up, lattice);
    }
    if (terms.induction) {
      t.db += curl(cross_to_spectral(*up, *bp, lattice), lattice);
    }
  }

  if (background) {
    if (terms.background_coupling) {
      t.du += directional_derivative(b, lattice, n);
      t.db += directional_derivative(u, lattice, n);
    }
    if (terms.background_hall) t.db -= directional_derivative(j, lattice, n);
  }

  t.du = leray_project(t.du, lattice);

  if (terms.diffusion) t.db -= fractional_laplacian(b, lattice, gamma);
  return t;
}

Tendency rhs_original(const VectorField& u, const VectorField& b,
                      const Lattice& lattice, double gamma, double tol_div) {
  return rhs_perturbed(u, b, lattice, {0.0, 0.0, 0.0}, gamma, tol_div);
}

Tendency rhs_perturbed(const VectorField& u, const VectorField& b,
                       const Lattice& lattice, const std::array<double, 3>& n,
                       double gamma, double tol_div) {
  require_solenoidal(u, lattice, tol_div, "u");
  require_solenoidal(b, lattice, tol_div, "b");
  return perturbed_terms(u, b, lattice, n, gamma, Terms::all());
}

ScalarField pressure(const VectorField& u, const VectorField& b,
                     const Lattice& lattice, const std::array<double, 3>& n) {
  VectorField force = lorentz(b, lattice);
  force -= advect(u, u, lattice);
  force += directional_derivative(b, lattice, n);
  const auto& k1 = lattice.k(0);
  const auto& k2 = lattice.k(1);
  const auto& k3 = lattice.k(2);
  const auto& ksq = lattice.k_squared();
  ScalarField p(lattice);
  for (std::size_t i = 0; i < ksq.size(); ++i) {
    if (ksq[i] == 0.0) continue;
    const Complex kf = k1[i] * force[0][i] + k2[i] * force[1][i] + k3[i] * force[2][i];
    p[i] = -kI * kf / ksq[i];
  }
  return p;
}

}  // namespace hallmhd
