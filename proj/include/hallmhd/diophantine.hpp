#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hallmhd/field.hpp"
#include "hallmhd/lattice.hpp"

namespace hallmhd {

using Vec3 = std::array<double, 3>;

/// Background field n together with its small-denominator exponent r and
/// the certified constant c_est = min_{0<|k|<=K} |n.k| |k|^r.
struct DiophantineVector {
  Vec3 n{0.0, 0.0, 0.0};
  double r = 2.5;
  double c_est = 0.0;
  int K = 0;
  WaveVector argmin{};

  double norm() const;
  /// Usable as a simulation background.
  bool usable() const { return c_est > 0.0 && r > 2.0; }
};

struct MinProduct {
  double c_est = 0.0;
  WaveVector argmin{};
};

/// n.k accumulated with error-free transformations (Dot2), so that the
/// result is as accurate as if computed in twice the working precision.
double compensated_dot(const Vec3& n, const WaveVector& k);

/// Exhaustive minimum of |n.k| |k|^r over integer 0 < |k| <= K.
///
/// Only one of each +/-k pair is visited. Ties are broken by smaller |k|,
/// then by lexicographically larger (|k1|, |k2|, |k3|), then larger k; the
/// reported representative has its first nonzero component positive.
MinProduct min_product(const Vec3& n, double r, int K);

/// min_product packaged as a DiophantineVector. Throws ConfigError unless
/// r > 0 and K >= 1.
DiophantineVector make_diophantine(const Vec3& n, double r, int K);

struct ShellVerdict {
  int shell = 0;          // integer radius m: m-1 < |k| <= m
  double min_value = 0.0; // min |n.k||k|^r on the shell
  bool holds = true;      // min_value >= c
};

struct ConditionReport {
  double c = 0.0;
  bool holds = true;
  std::vector<ShellVerdict> shells;
  int tightest_shell = 0;
  WaveVector tightest_k{};
};

/// Per-shell check of |n.k||k|^r >= c for all 0 < |k| <= dv.K.
ConditionReport check_condition(const DiophantineVector& dv, double c);

struct PoincareCheck {
  double lhs = 0.0;    // ||f||_{H^s}
  double rhs = 0.0;    // ||n.grad f||_{H^{s+r}} / c_est
  double ratio = 0.0;  // lhs / rhs, 0 when both vanish
};

/// Raised when a precondition of the small-denominator estimate fails.
class PoincareError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// ||f||_{H^s} <= (1/c_est) ||n.grad f||_{H^{s+r}} for mean-zero f.
/// Requires f(0) = 0 (within mean_tol), c_est > 0 and a lattice whose
/// largest retained |k| is covered by dv.K.
PoincareCheck verify_poincare(const ScalarField& f, const Lattice& lattice,
                              const DiophantineVector& dv, double s,
                              double mean_tol = 1e-14);

struct BackgroundSuggestion {
  DiophantineVector dv;
  std::string candidate;
  bool accepted = false;
};

/// Picks, from a fixed list of directions whose components are rationally
/// independent algebraic irrationals, the one with the largest c_est, scaled
/// to |n| = amplitude. Rejected when c_est <= floor.
BackgroundSuggestion suggest_background(double r, int K, double amplitude,
                                        double floor = 1e-12);

/// Smallest K whose ball covers every retained mode of the lattice.
int covering_radius(const Lattice& lattice);

}  // namespace hallmhd
