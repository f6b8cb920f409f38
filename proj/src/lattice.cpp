#include "hallmhd/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "fft_plans.hpp"

namespace hallmhd {

std::string to_string(const WaveVector& k) {
  std::ostringstream os;
  os << '(' << k.k1 << ',' << k.k2 << ',' << k.k3 << ')';
  return os.str();
}

PadFactor parse_pad_factor(const std::string& text) {
  PadFactor pad;
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used = 0;
      pad.num = std::stoi(text.substr(0, slash), &used);
      pad.den = std::stoi(text.substr(slash + 1));
    } else if (text.find('.') != std::string::npos) {
      // Decimal form: interpret with a denominator of 1000.
      const double v = std::stod(text);
      pad.num = static_cast<int>(std::lround(v * 1000.0));
      pad.den = 1000;
    } else {
      pad.num = std::stoi(text);
      pad.den = 1;
    }
  } catch (const std::exception&) {
    throw ConfigError("pad_factor: cannot parse '" + text + "'");
  }
  if (pad.den <= 0 || pad.num <= 0) {
    throw ConfigError("pad_factor: must be a positive rational");
  }
  const int g = std::gcd(pad.num, pad.den);
  pad.num /= g;
  pad.den /= g;
  return pad;
}

std::string to_string(const PadFactor& pad) {
  if (pad.den == 1) return std::to_string(pad.num);
  return std::to_string(pad.num) + "/" + std::to_string(pad.den);
}

Lattice::Lattice(int n_grid, PadFactor pad) : n_(n_grid), pad_(pad) {
  if (n_grid < 8 || n_grid % 2 != 0) {
    throw ConfigError("n_grid must be an even integer >= 8 (got " +
                      std::to_string(n_grid) + ")");
  }
  if (pad.den <= 0 || pad.num < pad.den) {
    throw ConfigError("pad_factor must be >= 1 (got " + to_string(pad) + ")");
  }
  // Smallest even m with m >= n * num / den.
  const long long scaled = static_cast<long long>(n_grid) * pad.num;
  int m = static_cast<int>((scaled + pad.den - 1) / pad.den);
  if (m % 2 != 0) ++m;
  padded_ = m;

  const std::size_t total = size();
  for (auto& comp : kcomp_) comp.resize(total);
  k2_.resize(total);
  mask_.resize(total);
  neg_.resize(total);
  const int nyq = n_ / 2;
  for (int i1 = 0; i1 < n_; ++i1) {
    const int a = wavenumber(i1);
    for (int i2 = 0; i2 < n_; ++i2) {
      const int b = wavenumber(i2);
      for (int i3 = 0; i3 < n_; ++i3) {
        const int c = wavenumber(i3);
        const std::size_t idx = flat(i1, i2, i3);
        kcomp_[0][idx] = a;
        kcomp_[1][idx] = b;
        kcomp_[2][idx] = c;
        k2_[idx] = static_cast<double>(a * a + b * b + c * c);
        const bool nyquist = a == nyq || b == nyq || c == nyq;
        mask_[idx] = nyquist ? 0 : 1;
        // Nyquist components map onto themselves; those modes are masked.
        const auto flip = [nyq](int w) { return w == nyq ? w : -w; };
        neg_[idx] = flat(axis_index(flip(a)), axis_index(flip(b)),
                         axis_index(flip(c)));
      }
    }
  }
  plans_ = std::make_shared<detail::FftPlanCache>();
}

bool Lattice::contains(const WaveVector& k) const {
  const auto in = [this](int c) { return c > -n_ / 2 && c <= n_ / 2; };
  return in(k.k1) && in(k.k2) && in(k.k3);
}

WaveVector Lattice::wavevector(std::size_t idx) const {
  const int i3 = static_cast<int>(idx % n_);
  const int i2 = static_cast<int>((idx / n_) % n_);
  const int i1 = static_cast<int>(idx / (static_cast<std::size_t>(n_) * n_));
  return {wavenumber(i1), wavenumber(i2), wavenumber(i3)};
}

double Lattice::max_wavenumber() const {
  const double kmax = n_ / 2 - 1;
  return std::sqrt(3.0) * kmax;
}

Lattice make_lattice(int n_grid, PadFactor pad) { return Lattice(n_grid, pad); }

namespace detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

FftPlanCache::~FftPlanCache() {
  std::lock_guard lock(fftw_planner_mutex());
  for (auto& [m, p] : plans_) {
    fftw_destroy_plan(p.forward);
    fftw_destroy_plan(p.backward);
  }
}

FftPlanCache::Plans FftPlanCache::get(int m) {
  std::lock_guard lock(mutex_);
  if (auto it = plans_.find(m); it != plans_.end()) return it->second;

  std::lock_guard planner(fftw_planner_mutex());
  const std::size_t real_size = static_cast<std::size_t>(m) * m * m;
  const std::size_t half_size = static_cast<std::size_t>(m) * m * (m / 2 + 1);
  auto* r = fftw_alloc_real(real_size);
  auto* c = fftw_alloc_complex(half_size);
  Plans p;
  p.forward = fftw_plan_dft_r2c_3d(m, m, m, r, c, FFTW_ESTIMATE);
  p.backward = fftw_plan_dft_c2r_3d(m, m, m, c, r, FFTW_ESTIMATE);
  fftw_free(r);
  fftw_free(c);
  plans_.emplace(m, p);
  return p;
}

}  // namespace detail

}  // namespace hallmhd
