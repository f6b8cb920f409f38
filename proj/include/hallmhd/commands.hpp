#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "hallmhd/config.hpp"
#include "hallmhd/diophantine.hpp"

namespace hallmhd {

/// Environment variable that overrides output_dir for cmd_simulate.
inline constexpr const char* kOutputDirEnv = "HALLMHD_OUTPUT_DIR";

/// Writes {"verdict": verdict, "detail": detail} as one line.
void write_verdict(std::ostream& os, const std::string& verdict,
                   const std::string& detail);

// Each command returns the process exit status: 0 on success, nonzero with
// a verdict line as the last line written to `err` otherwise.

int cmd_simulate(RunConfig cfg, std::ostream& out, std::ostream& err);

/// `c`, when given, is checked shell by shell in addition to c_est > 0.
int cmd_check_diophantine(const Vec3& n, double r, int K, std::optional<double> c,
                          std::ostream& out, std::ostream& err);

int cmd_verify_identities(int n_grid, std::uint64_t seed, int trials, double tol,
                          std::ostream& out, std::ostream& err);

/// Fits hs_u_<beta> + hs_b_<beta> from a series CSV over the final half of
/// the run in log time.
int cmd_analyze_decay(const std::filesystem::path& csv, double beta, double N,
                      double r, double margin, std::ostream& out,
                      std::ostream& err);

}  // namespace hallmhd
