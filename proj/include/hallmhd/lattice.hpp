#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hallmhd {

/// Raised for invalid lattice, run or command-line configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integer wavevector on the 3-torus [0, 2pi)^3.
struct WaveVector {
  int k1 = 0;
  int k2 = 0;
  int k3 = 0;

  friend bool operator==(const WaveVector&, const WaveVector&) = default;
  int norm_squared() const { return k1 * k1 + k2 * k2 + k3 * k3; }
  WaveVector operator-() const { return {-k1, -k2, -k3}; }
};

std::string to_string(const WaveVector& k);

/// Padding ratio for quadratic products, kept as a rational so that grid
/// sizes are exact integers.
struct PadFactor {
  int num = 3;
  int den = 2;

  double value() const { return static_cast<double>(num) / den; }
  friend bool operator==(const PadFactor&, const PadFactor&) = default;
};

/// Parses "3/2", "2" or "1.5" style pad factors.
PadFactor parse_pad_factor(const std::string& text);
std::string to_string(const PadFactor& pad);

namespace detail {
class FftPlanCache;
}

/// Truncated integer-wavevector grid with n_grid points per axis.
///
/// Storage order is the usual FFT order: axis index i maps to wavenumber
/// i for i <= n/2 and i - n otherwise, so components lie in (-n/2, n/2].
/// The flat index is row-major with the third axis fastest. Modes with any
/// component equal to n/2 (the unpaired Nyquist planes) are masked out.
class Lattice {
 public:
  Lattice(int n_grid, PadFactor pad = {});

  int n_grid() const { return n_; }
  PadFactor pad_factor() const { return pad_; }
  /// Points per axis of the product grid (smallest even integer >= pad*n).
  int padded_grid() const { return padded_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

  /// True when products truncated back to this lattice carry no aliasing.
  /// With Nyquist modes removed this needs a product grid of at least
  /// 3n/2 - 2 points per axis.
  bool alias_free() const { return padded_ >= 3 * n_ / 2 - 2; }

  int wavenumber(int axis_index) const {
    return axis_index <= n_ / 2 ? axis_index : axis_index - n_;
  }
  int axis_index(int wavenumber) const {
    return wavenumber >= 0 ? wavenumber : wavenumber + n_;
  }
  std::size_t flat(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * n_ + i2) * n_ + i3;
  }
  std::size_t flat(const WaveVector& k) const {
    return flat(axis_index(k.k1), axis_index(k.k2), axis_index(k.k3));
  }
  /// Whether k lies on the lattice (Nyquist planes included).
  bool contains(const WaveVector& k) const;
  WaveVector wavevector(std::size_t idx) const;
  /// Flat index of -k for the mode at idx (only meaningful for retained modes).
  std::size_t negated(std::size_t idx) const { return neg_[idx]; }

  /// Per-mode wavevector components and |k|^2, indexed by flat index.
  const std::vector<double>& k(int axis) const { return kcomp_[axis]; }
  const std::vector<double>& k_squared() const { return k2_; }
  /// Dealias mask: true for retained (non-Nyquist) modes.
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  bool retained(std::size_t idx) const { return mask_[idx] != 0; }

  /// Largest |k| over retained modes.
  double max_wavenumber() const;

  /// Same grid size; padding may differ.
  bool same_grid(const Lattice& other) const { return n_ == other.n_; }
  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.n_ == b.n_ && a.pad_ == b.pad_;
  }

  detail::FftPlanCache& plans() const { return *plans_; }

 private:
  int n_;
  PadFactor pad_;
  int padded_;
  std::array<std::vector<double>, 3> kcomp_;
  std::vector<double> k2_;
  std::vector<std::uint8_t> mask_;
  std::vector<std::size_t> neg_;
  std::shared_ptr<detail::FftPlanCache> plans_;
};

Lattice make_lattice(int n_grid, PadFactor pad = {});

}  // namespace hallmhd
