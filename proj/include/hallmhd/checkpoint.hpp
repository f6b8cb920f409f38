#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "hallmhd/integrator.hpp"
#include "hallmhd/lattice.hpp"

namespace hallmhd {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Malformed or truncated checkpoint data.
class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary layout, all little-endian:
///   "HMHD"                 4 bytes
///   version                u32
///   n_grid                 u32
///   gamma, r, n1, n2, n3, t    f64 each
///   u1 u2 u3 b1 b2 b3      n_grid^3 (re, im) f64 pairs per component,
///                          k1, k2, k3 each ascending over -n/2+1 .. n/2,
///                          k3 fastest
void save_checkpoint(std::ostream& os, const SimState& state,
                     const Lattice& lattice);
void save_checkpoint(const std::filesystem::path& path, const SimState& state,
                     const Lattice& lattice);

struct LoadedCheckpoint {
  Lattice lattice;
  SimState state;
};

/// Reads a checkpoint. The Diophantine constant is recomputed with
/// K = covering radius of the stored lattice (or `K` when positive).
LoadedCheckpoint load_checkpoint(std::istream& is, PadFactor pad = {}, int K = 0);
LoadedCheckpoint load_checkpoint(const std::filesystem::path& path,
                                 PadFactor pad = {}, int K = 0);

/// Coefficient-wise bitwise equality (distinguishes -0.0 from 0.0).
bool bit_equal(const VectorField& a, const VectorField& b);

}  // namespace hallmhd
