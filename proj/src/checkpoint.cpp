#include "hallmhd/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace hallmhd {

namespace {

constexpr char kMagic[4] = {'H', 'M', 'H', 'D'};

template <typename U>
void put_le(std::ostream& os, U v) {
  std::array<char, sizeof(U)> bytes;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  }
  os.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& os, double x) {
  put_le(os, std::bit_cast<std::uint64_t>(x));
}

template <typename U>
U get_le(std::istream& is) {
  std::array<unsigned char, sizeof(U)> bytes;
  is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!is) throw CheckpointError("checkpoint truncated");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) {
  return std::bit_cast<double>(get_le<std::uint64_t>(is));
}

// Flat storage indices in ascending-k order.
std::vector<std::size_t> ascending_order(const Lattice& lattice) {
  const int n = lattice.n_grid();
  std::vector<std::size_t> order;
  order.reserve(lattice.size());
  for (int k1 = -n / 2 + 1; k1 <= n / 2; ++k1)
    for (int k2 = -n / 2 + 1; k2 <= n / 2; ++k2)
      for (int k3 = -n / 2 + 1; k3 <= n / 2; ++k3)
        order.push_back(lattice.flat(WaveVector{k1, k2, k3}));
  return order;
}

}  // namespace

void save_checkpoint(std::ostream& os, const SimState& state,
                     const Lattice& lattice) {
  if (state.u.n_grid() != lattice.n_grid() || state.b.n_grid() != lattice.n_grid()) {
    throw std::invalid_argument("save_checkpoint: state does not match lattice");
  }
  os.write(kMagic, sizeof kMagic);
  put_le<std::uint32_t>(os, kCheckpointVersion);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(lattice.n_grid()));
  put_f64(os, state.gamma);
  put_f64(os, state.dv.r);
  for (double x : state.dv.n) put_f64(os, x);
  put_f64(os, state.t);

  const auto order = ascending_order(lattice);
  for (const VectorField* v : {&state.u, &state.b}) {
    for (int c = 0; c < 3; ++c) {
      const auto coeffs = (*v)[c].coeffs();
      for (std::size_t idx : order) {
        put_f64(os, coeffs[idx].real());
        put_f64(os, coeffs[idx].imag());
      }
    }
  }
  if (!os) throw CheckpointError("checkpoint write failed");
}

void save_checkpoint(const std::filesystem::path& path, const SimState& state,
                     const Lattice& lattice) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw CheckpointError("cannot open " + path.string() + " for writing");
  save_checkpoint(os, state, lattice);
}

LoadedCheckpoint load_checkpoint(std::istream& is, PadFactor pad, int K) {
  char magic[4];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw CheckpointError("not a checkpoint (bad magic)");
  }
  const auto version = get_le<std::uint32_t>(is);
  if (version != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  }
  const auto n_grid = get_le<std::uint32_t>(is);
  if (n_grid < 8 || n_grid > 4096 || n_grid % 2 != 0) {
    throw CheckpointError("implausible n_grid " + std::to_string(n_grid));
  }
  const double gamma = get_f64(is);
  const double r = get_f64(is);
  Vec3 n{};
  for (double& x : n) x = get_f64(is);
  const double t = get_f64(is);

  Lattice lattice(static_cast<int>(n_grid), pad);
  const int radius = K > 0 ? K : covering_radius(lattice);
  SimState state(lattice, gamma, make_diophantine(n, r, radius));
  state.t = t;

  const auto order = ascending_order(lattice);
  for (VectorField* v : {&state.u, &state.b}) {
    for (int c = 0; c < 3; ++c) {
      auto coeffs = (*v)[c].coeffs();
      for (std::size_t idx : order) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        coeffs[idx] = Complex(re, im);
      }
    }
  }
  return {std::move(lattice), std::move(state)};
}

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path, PadFactor pad,
                                 int K) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CheckpointError("cannot open " + path.string());
  return load_checkpoint(is, pad, K);
}

bool bit_equal(const VectorField& a, const VectorField& b) {
  for (int c = 0; c < 3; ++c) {
    const auto x = a[c].coeffs();
    const auto y = b[c].coeffs();
    if (x.size() != y.size()) return false;
    if (!x.empty() && std::memcmp(x.data(), y.data(), x.size_bytes()) != 0) return false;
  }
  return true;
}

}  // namespace hallmhd
