#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "hallmhd/field.hpp"
#include "hallmhd/lattice.hpp"

namespace hallmhd {

namespace detail {
struct FftwFree {
  void operator()(void* p) const;
};
}  // namespace detail

/// Real samples of a field on a uniform m^3 grid over [0, 2pi)^3, row-major
/// with the third axis fastest. Storage is SIMD-aligned for FFTW.
class RealGrid {
 public:
  explicit RealGrid(int m);
  RealGrid(const RealGrid& o);
  RealGrid& operator=(const RealGrid& o);
  RealGrid(RealGrid&&) noexcept = default;
  RealGrid& operator=(RealGrid&&) noexcept = default;

  int points_per_axis() const { return m_; }
  std::size_t size() const { return size_; }
  double* data() { return data_.get(); }
  const double* data() const { return data_.get(); }
  std::span<double> values() { return {data_.get(), size_}; }
  std::span<const double> values() const { return {data_.get(), size_}; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

 private:
  int m_;
  std::size_t size_;
  std::unique_ptr<double[], detail::FftwFree> data_;
};

/// Samples f on an m^3 grid (m >= n_grid). Defaults to the padded product
/// grid of the lattice.
RealGrid to_physical(const ScalarField& f, const Lattice& lattice, int m = 0);
std::array<RealGrid, 3> to_physical(const VectorField& v,
                                    const Lattice& lattice, int m = 0);

/// Forward transform of grid samples, truncated to the lattice; Nyquist
/// modes are zeroed and the result is exactly Hermitian.
ScalarField to_spectral(const RealGrid& g, const Lattice& lattice);

/// Forward-then-inverse round trip through the m^3 grid.
ScalarField transform_roundtrip(const ScalarField& f, const Lattice& lattice,
                                int m = 0);

}  // namespace hallmhd
