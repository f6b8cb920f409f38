#include "hallmhd/transform.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "fft_plans.hpp"

namespace hallmhd {

namespace detail {
void FftwFree::operator()(void* p) const { fftw_free(p); }
}  // namespace detail

namespace {

using HalfSpectrum = std::unique_ptr<fftw_complex[], detail::FftwFree>;

HalfSpectrum alloc_half(int m) {
  const std::size_t n = static_cast<std::size_t>(m) * m * (m / 2 + 1);
  HalfSpectrum h(fftw_alloc_complex(n));
  if (!h) throw std::bad_alloc();
  return h;
}

int grid_size(const Lattice& lattice, int m) {
  if (m == 0) return lattice.padded_grid();
  if (m < lattice.n_grid() || m % 2 != 0) {
    throw std::invalid_argument("physical grid must be even and >= n_grid");
  }
  return m;
}

inline std::size_t half_index(int m, int a, int b, int c) {
  // a, b wrapped into [0, m); c >= 0.
  const int ia = a >= 0 ? a : a + m;
  const int ib = b >= 0 ? b : b + m;
  return (static_cast<std::size_t>(ia) * m + ib) * (m / 2 + 1) + c;
}

// Whether k is the stored representative of its +/- pair in the r2c
// half-spectrum (third component positive, or the k3 = 0 plane's upper half).
inline bool canonical(int a, int b, int c) {
  if (c != 0) return c > 0;
  if (b != 0) return b > 0;
  return a > 0;
}

}  // namespace

RealGrid::RealGrid(int m)
    : m_(m),
      size_(static_cast<std::size_t>(m) * m * m),
      data_(fftw_alloc_real(size_)) {
  if (!data_) throw std::bad_alloc();
  std::fill_n(data_.get(), size_, 0.0);
}

RealGrid::RealGrid(const RealGrid& o) : RealGrid(o.m_) {
  std::copy_n(o.data_.get(), size_, data_.get());
}

RealGrid& RealGrid::operator=(const RealGrid& o) {
  if (this != &o) {
    RealGrid tmp(o);
    *this = std::move(tmp);
  }
  return *this;
}

RealGrid to_physical(const ScalarField& f, const Lattice& lattice, int m) {
  if (f.n_grid() != lattice.n_grid()) {
    throw std::invalid_argument("field does not match lattice");
  }
  m = grid_size(lattice, m);
  const auto plans = lattice.plans().get(m);
  HalfSpectrum spec = alloc_half(m);
  std::memset(spec.get(), 0,
              sizeof(fftw_complex) * static_cast<std::size_t>(m) * m * (m / 2 + 1));
  const int n = lattice.n_grid();
  for (int i1 = 0; i1 < n; ++i1) {
    const int a = lattice.wavenumber(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const int b = lattice.wavenumber(i2);
      for (int i3 = 0; i3 <= n / 2; ++i3) {
        const std::size_t idx = lattice.flat(i1, i2, i3);
        if (!lattice.retained(idx)) continue;
        const std::size_t h = half_index(m, a, b, i3);
        spec[h][0] = f[idx].real();
        spec[h][1] = f[idx].imag();
      }
    }
  }
  RealGrid g(m);
  fftw_execute_dft_c2r(plans.backward, spec.get(), g.data());
  return g;
}

std::array<RealGrid, 3> to_physical(const VectorField& v,
                                    const Lattice& lattice, int m) {
  return {to_physical(v[0], lattice, m), to_physical(v[1], lattice, m),
          to_physical(v[2], lattice, m)};
}

ScalarField to_spectral(const RealGrid& g, const Lattice& lattice) {
  const int m = g.points_per_axis();
  if (m < lattice.n_grid()) {
    throw std::invalid_argument("physical grid coarser than lattice");
  }
  const auto plans = lattice.plans().get(m);
  HalfSpectrum spec = alloc_half(m);
  // Out-of-place r2c preserves its input by default.
  fftw_execute_dft_r2c(plans.forward, const_cast<double*>(g.data()), spec.get());

  const double scale = 1.0 / static_cast<double>(g.size());
  ScalarField f(lattice);
  const int n = lattice.n_grid();
  for (int i1 = 0; i1 < n; ++i1) {
    const int a = lattice.wavenumber(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const int b = lattice.wavenumber(i2);
      for (int i3 = 0; i3 < n; ++i3) {
        const int c = lattice.wavenumber(i3);
        const std::size_t idx = lattice.flat(i1, i2, i3);
        if (!lattice.retained(idx) || !canonical(a, b, c)) continue;
        const std::size_t h = half_index(m, a, b, c);
        const Complex z(spec[h][0] * scale, spec[h][1] * scale);
        f[idx] = z;
        f[lattice.negated(idx)] = std::conj(z);
      }
    }
  }
  f[0] = spec[0][0] * scale;
  return f;
}

ScalarField transform_roundtrip(const ScalarField& f, const Lattice& lattice,
                                int m) {
  return to_spectral(to_physical(f, lattice, m), lattice);
}

}  // namespace hallmhd
