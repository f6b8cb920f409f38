#include "hallmhd/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "hallmhd/spectral.hpp"

namespace hallmhd {

namespace {

struct TwoTerm {
  double hi;
  double lo;
};

inline TwoTerm two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline TwoTerm two_product(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// Representative of {k, -k} whose first nonzero component is positive.
bool canonical(int a, int b, int c) {
  if (a != 0) return a > 0;
  if (b != 0) return b > 0;
  return c > 0;
}

// True if candidate k should replace the incumbent at an equal value.
bool preferred(const WaveVector& k, const WaveVector& best) {
  const int nk = k.norm_squared();
  const int nb = best.norm_squared();
  if (nk != nb) return nk < nb;
  const auto abs_k = std::make_tuple(std::abs(k.k1), std::abs(k.k2), std::abs(k.k3));
  const auto abs_b =
      std::make_tuple(std::abs(best.k1), std::abs(best.k2), std::abs(best.k3));
  if (abs_k != abs_b) return abs_k > abs_b;
  return std::make_tuple(k.k1, k.k2, k.k3) > std::make_tuple(best.k1, best.k2, best.k3);
}

inline double product_value(const Vec3& n, const WaveVector& k, double r) {
  const double k2 = static_cast<double>(k.norm_squared());
  return std::abs(compensated_dot(n, k)) * std::pow(k2, 0.5 * r);
}

template <class Visit>
void for_each_half_ball(int K, Visit&& visit) {
  const int K2 = K * K;
  for (int a = 0; a <= K; ++a) {
    for (int b = -K; b <= K; ++b) {
      const int ab = a * a + b * b;
      if (ab > K2) continue;
      for (int c = -K; c <= K; ++c) {
        if (ab + c * c > K2 || !canonical(a, b, c)) continue;
        visit(WaveVector{a, b, c});
      }
    }
  }
}

}  // namespace

double DiophantineVector::norm() const {
  return std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
}

double compensated_dot(const Vec3& n, const WaveVector& k) {
  const double kk[3] = {static_cast<double>(k.k1), static_cast<double>(k.k2),
                        static_cast<double>(k.k3)};
  TwoTerm p = two_product(n[0], kk[0]);
  double s = p.hi;
  double err = p.lo;
  for (int i = 1; i < 3; ++i) {
    const TwoTerm q = two_product(n[i], kk[i]);
    const TwoTerm t = two_sum(s, q.hi);
    s = t.hi;
    err += t.lo + q.lo;
  }
  return s + err;
}

MinProduct min_product(const Vec3& n, double r, int K) {
  MinProduct best{std::numeric_limits<double>::infinity(), {}};
  bool found = false;
  for_each_half_ball(K, [&](const WaveVector& k) {
    const double v = product_value(n, k, r);
    if (!found || v < best.c_est || (v == best.c_est && preferred(k, best.argmin))) {
      best = {v, k};
      found = true;
    }
  });
  if (!found) best.c_est = 0.0;
  return best;
}

DiophantineVector make_diophantine(const Vec3& n, double r, int K) {
  if (K < 1) throw ConfigError("K must be >= 1");
  if (!(r > 0.0)) throw ConfigError("r must be positive");
  for (double c : n) {
    if (!std::isfinite(c)) throw ConfigError("background n must be finite");
  }
  const MinProduct mp = min_product(n, r, K);
  DiophantineVector dv;
  dv.n = n;
  dv.r = r;
  dv.K = K;
  dv.c_est = mp.c_est;
  dv.argmin = mp.argmin;
  return dv;
}

ConditionReport check_condition(const DiophantineVector& dv, double c) {
  ConditionReport rep;
  rep.c = c;
  rep.shells.resize(dv.K);
  for (int m = 1; m <= dv.K; ++m) {
    rep.shells[m - 1] = {m, std::numeric_limits<double>::infinity(), true};
  }
  std::vector<WaveVector> shell_arg(dv.K);
  for_each_half_ball(dv.K, [&](const WaveVector& k) {
    const double v = product_value(dv.n, k, dv.r);
    const int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k.norm_squared()))));
    auto& sh = rep.shells[m - 1];
    if (v < sh.min_value ||
        (v == sh.min_value && preferred(k, shell_arg[m - 1]))) {
      sh.min_value = v;
      shell_arg[m - 1] = k;
    }
  });
  double tight = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= dv.K; ++m) {
    auto& sh = rep.shells[m - 1];
    sh.holds = sh.min_value >= c;
    rep.holds = rep.holds && sh.holds;
    if (sh.min_value < tight) {
      tight = sh.min_value;
      rep.tightest_shell = m;
      rep.tightest_k = shell_arg[m - 1];
    }
  }
  return rep;
}

PoincareCheck verify_poincare(const ScalarField& f, const Lattice& lattice,
                              const DiophantineVector& dv, double s,
                              double mean_tol) {
  if (!(dv.c_est > 0.0)) {
    throw PoincareError("Diophantine constant is zero: condition fails");
  }
  if (lattice.max_wavenumber() > dv.K) {
    throw PoincareError("search radius K = " + std::to_string(dv.K) +
                        " does not cover the lattice (max |k| = " +
                        std::to_string(lattice.max_wavenumber()) + ")");
  }
  const double scale = std::max(1.0, max_abs(f));
  if (std::abs(f[0]) > mean_tol * scale) {
    throw PoincareError("field is not mean-zero");
  }
  PoincareCheck out;
  out.lhs = sobolev_norm(f, lattice, s);
  out.rhs = sobolev_norm(directional_derivative(f, lattice, dv.n), lattice, s + dv.r) /
            dv.c_est;
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

BackgroundSuggestion suggest_background(double r, int K, double amplitude,
                                        double floor) {
  if (!(r > 2.0)) throw ConfigError("r must be > 2 for a background field");
  struct Candidate {
    const char* name;
    Vec3 dir;
  };
  const Candidate candidates[] = {
      {"cubic-2", {1.0, std::cbrt(2.0), std::cbrt(4.0)}},
      {"cubic-3", {1.0, std::cbrt(3.0), std::cbrt(9.0)}},
      {"sqrt-2-3", {1.0, std::sqrt(2.0), std::sqrt(3.0)}},
      {"sqrt-3-5", {1.0, std::sqrt(3.0), std::sqrt(5.0)}},
  };
  BackgroundSuggestion best;
  best.dv.r = r;
  best.dv.K = K;
  bool have = false;
  for (const auto& cand : candidates) {
    const double len = std::sqrt(cand.dir[0] * cand.dir[0] + cand.dir[1] * cand.dir[1] +
                                 cand.dir[2] * cand.dir[2]);
    const Vec3 n{amplitude * cand.dir[0] / len, amplitude * cand.dir[1] / len,
                 amplitude * cand.dir[2] / len};
    const DiophantineVector dv = make_diophantine(n, r, K);
    if (!have || dv.c_est > best.dv.c_est) {
      best.dv = dv;
      best.candidate = cand.name;
      have = true;
    }
  }
  best.accepted = best.dv.c_est > floor;
  return best;
}

int covering_radius(const Lattice& lattice) {
  return static_cast<int>(std::ceil(lattice.max_wavenumber()));
}

}  // namespace hallmhd
