#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "hallmhd/checkpoint.hpp"
#include "hallmhd/commands.hpp"
#include "hallmhd/config.hpp"
#include "hallmhd/simulation.hpp"
#include "hallmhd/spectral.hpp"

using namespace hallmhd;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hallmhd_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string last_line(const std::string& text) {
  std::istringstream is(text);
  std::string line, last;
  while (std::getline(is, line)) {
    if (!line.empty()) last = line;
  }
  return last;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

const char* kMinimal = "n_grid = 16\nepsilon = 1e-2\nt_end = 0.2\n";

}  // namespace

TEST_CASE("config defaults and validation") {
  const std::string defaults =
      "# acceptance defaults\n"
      "n_grid = 32\n"
      "epsilon = 0.01\n"
      "t_end = 50   # long run\n"
      "spectrum_slope = 30\n";
  const RunConfig c = parse_config("", defaults);
  CHECK(c.n_grid == 32);
  CHECK(c.t_end == 50.0);
  CHECK(c.spectrum_slope == 30.0);
  CHECK(c.r == 2.5);
  CHECK(c.N == 17.0);
  CHECK(c.pad_factor == PadFactor{3, 2});

  const RunConfig o = parse_config("t_end = 5\n", defaults);
  CHECK(o.t_end == 5.0);
  CHECK(o.n_grid == 32);

  CHECK(error_of("epsilon = 1\nt_end = 1\n").find("n_grid") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "bogus = 3\n").find("bogus") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "n_grid = 8\n").find("duplicate") != std::string::npos);
  CHECK(error_of("n_grid = 7\nepsilon = 1\nt_end = 1\n").find("n_grid") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "epsilon_x\n").find("line 4") != std::string::npos);

  const std::string r_err = error_of(std::string(kMinimal) + "r = 1.5\ndecay_verdicts = true\n");
  CHECK(r_err.find("r > 2") != std::string::npos);
  const std::string n_err = error_of(std::string(kMinimal) + "N = 10\ndecay_verdicts = true\n");
  CHECK(n_err.find("N >= 4r+7 = 17") != std::string::npos);
  // Without decay verdicts N is only a rescaling order.
  CHECK(parse_config(std::string(kMinimal) + "N = 10\n").N == 10.0);
  CHECK(error_of("n_grid = 16\nt_end = 1\nepsilon = -1\n").find("epsilon") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "n = 1, 2\n").find("three") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "dt_min = 1\ndt_max = 0.5\n").find("dt_max") !=
        std::string::npos);
}

TEST_CASE("config parse-print-parse fixed point") {
  const RunConfig a = parse_config(
      "n_grid = 24\npad_factor = 2\ngamma = 0.75\nr = 2.25\nn = 0.1, 0.2, 0.30000000000000004\n"
      "K = 40\nN = 17\nepsilon = 0.0123\nseed = 18446744073709551615\nspectrum_slope = 7.5\n"
      "t_end = 1.5\ndt_max = 0.01\ndt_min = 1e-7\ncfl_adv = 0.3\ncfl_hall = 0.2\n"
      "sample_every = 3\ncheckpoint_every = 9\noutput_dir = out/run 1\nhs = 3, 6.5, 0.1\n"
      "decay_verdicts = true\ndecay_margin = 0.2\n");
  CHECK(a.seed == 18446744073709551615ULL);
  CHECK(a.output_dir == "out/run 1");
  const RunConfig b = parse_config(print_config(a));
  CHECK(a == b);
  CHECK(print_config(b) == print_config(a));

  const RunConfig d = parse_config(kMinimal);
  CHECK(parse_config(print_config(d)) == d);

  CHECK(effective_hs(a) == std::vector<double>{0.1, 3.0, 6.25, 6.5, 11.625});
}

TEST_CASE("checkpoint round trip") {
  const Lattice lat(8);
  std::mt19937_64 rng(71);
  DiophantineVector dv = make_diophantine({0.5, 0.6, std::sqrt(0.39)}, 2.5, covering_radius(lat));
  SimState s(lat, 0.75, dv);
  s.u = random_solenoidal(lat, rng, 8.0, 0.0);
  s.b = random_solenoidal(lat, rng, 8.0, 0.0);
  s.u[0][3] = Complex(-0.0, 0.0);
  s.t = 1.0 / 3.0;

  std::stringstream buf;
  save_checkpoint(buf, s, lat);
  const std::string bytes = buf.str();
  CHECK(bytes.size() == 4 + 4 + 4 + 6 * 8 + 6 * 512 * 16);
  CHECK(bytes.substr(0, 4) == "HMHD");
  CHECK(static_cast<unsigned char>(bytes[4]) == 1);
  CHECK(static_cast<unsigned char>(bytes[8]) == 8);

  // First coefficient is u1 at k = (-3, -3, -3).
  double first_re = 0.0;
  std::uint64_t raw = 0;
  for (int i = 0; i < 8; ++i) raw |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[60 + i])) << (8 * i);
  std::memcpy(&first_re, &raw, 8);
  CHECK(first_re == s.u[0][lat.flat(WaveVector{-3, -3, -3})].real());

  std::stringstream in(bytes);
  const auto loaded = load_checkpoint(in);
  CHECK(bit_equal(loaded.state.u, s.u));
  CHECK(bit_equal(loaded.state.b, s.b));
  CHECK(loaded.state.t == s.t);
  CHECK(loaded.state.gamma == s.gamma);
  CHECK(loaded.state.dv.n == s.dv.n);
  CHECK(loaded.state.dv.c_est == s.dv.c_est);

  std::stringstream again;
  save_checkpoint(again, loaded.state, loaded.lattice);
  CHECK(again.str() == bytes);

  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(load_checkpoint(truncated), CheckpointError);
  std::stringstream garbage("HMHX0000");
  CHECK_THROWS_AS(load_checkpoint(garbage), CheckpointError);
}

TEST_CASE("simulate") {
  RunConfig cfg = parse_config(kMinimal);
  cfg.spectrum_slope = 4.0;
  cfg.sample_every = 2;

  SUBCASE("t_end = 0 gives initial diagnostics only") {
    cfg.t_end = 0.0;
    cfg.output_dir = scratch("t0").string();
    const auto res = simulate(cfg);
    CHECK(res.steps == 0);
    CHECK(res.series.size() == 1);
    CHECK(res.series[0].t == 0.0);
    CHECK(fs::exists(fs::path(cfg.output_dir) / "series.csv"));
  }

  SUBCASE("zero data gives an all-zero series") {
    cfg.epsilon = 0.0;
    const auto res = simulate(cfg, {false, true, {}});
    CHECK(res.series.size() >= 3);
    for (const auto& r : res.series) {
      CHECK(r.l2_u == 0.0);
      CHECK(r.l2_b == 0.0);
      CHECK(r.E == 0.0);
      CHECK(r.D == 0.0);
    }
  }

  SUBCASE("small data run") {
    cfg.output_dir = scratch("small").string();
    cfg.checkpoint_every = 4;
    const auto res = simulate(cfg);
    CHECK_FALSE(res.blew_up);
    CHECK(res.final_state.t == cfg.t_end);
    CHECK(res.series.back().t == cfg.t_end);
    REQUIRE(res.lyapunov);
    CHECK(res.lyapunov->flagged.empty());
    for (std::size_t i = 1; i < res.series.size(); ++i) CHECK(res.series[i].E <= res.series[i - 1].E);
    CHECK(fs::exists(fs::path(cfg.output_dir) / "checkpoint_000004.hmhd"));
    const auto summary = nlohmann::json::parse(slurp(fs::path(cfg.output_dir) / "summary.json"));
    CHECK(summary["seed"] == cfg.seed);
    const auto ck = load_checkpoint(fs::path(cfg.output_dir) / "final.hmhd");
    CHECK(bit_equal(ck.state.u, res.final_state.u));
  }

  SUBCASE("identical seeds give identical CSV") {
    cfg.output_dir = scratch("det_a").string();
    simulate(cfg);
    const std::string a = slurp(fs::path(cfg.output_dir) / "series.csv");
    cfg.output_dir = scratch("det_b").string();
    simulate(cfg);
    const std::string b = slurp(fs::path(cfg.output_dir) / "series.csv");
    CHECK(a == b);
    cfg.seed = 2;
    cfg.output_dir = scratch("det_c").string();
    simulate(cfg);
    CHECK(slurp(fs::path(cfg.output_dir) / "series.csv") != a);
  }

  SUBCASE("degenerate background rejected") {
    cfg.n = Vec3{1.0, 0.0, 0.0};
    CHECK_THROWS_AS(simulate(cfg, {false, false, {}}), ConfigError);
  }
}

TEST_CASE("commands") {
  std::ostringstream out, err;

  SUBCASE("check-diophantine on a rational direction") {
    CHECK(cmd_check_diophantine({1, 0, 0}, 2.5, 16, std::nullopt, out, err) != 0);
    const auto report = nlohmann::json::parse(last_line(out.str()));
    CHECK(report["c_est"] == 0.0);
    const auto verdict = nlohmann::json::parse(last_line(err.str()));
    CHECK(verdict["verdict"] == "FAIL");
    CHECK(verdict.contains("detail"));
  }

  SUBCASE("check-diophantine on an irrational direction") {
    CHECK(cmd_check_diophantine({1, std::cbrt(2.0), std::cbrt(4.0)}, 2.5, 16, 0.0, out, err) == 0);
    CHECK(nlohmann::json::parse(last_line(out.str()))["c_est"] > 0.0);
  }

  SUBCASE("verify-identities") {
    CHECK(cmd_verify_identities(16, 1, 20, 1e-11, out, err) == 0);
    CHECK(out.str().find("max residual") != std::string::npos);
  }

  SUBCASE("analyze-decay on synthetic data") {
    const fs::path dir = scratch("decay");
    std::ofstream csv(dir / "series.csv");
    csv << "t,hs_u_6.5,hs_b_6.5\n";
    for (int i = 0; i <= 100; ++i) {
      const double t = 0.5 * i;
      csv << t << ',' << 0.5 * std::pow(1 + t, -2.0) << ',' << 0.5 * std::pow(1 + t, -2.0) << '\n';
    }
    csv.close();
    CHECK(cmd_analyze_decay(dir / "series.csv", 6.5, 17, 2.5, 0.15, out, err) == 0);
    const auto fit = nlohmann::json::parse(last_line(out.str()));
    CHECK(fit["verdict"] == "PASS");
    CHECK(fit["fitted_alpha"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));

    std::ostringstream err2;
    CHECK(cmd_analyze_decay(dir / "series.csv", 11.75, 17, 2.5, 0.15, out, err2) != 0);
    CHECK(nlohmann::json::parse(last_line(err2.str()))["verdict"] == "ERROR");
  }

  SUBCASE("simulate honors the output directory override") {
    const fs::path dir = scratch("env");
    ::setenv(kOutputDirEnv, dir.c_str(), 1);
    RunConfig cfg = parse_config(kMinimal);
    cfg.t_end = 0.0;
    cfg.output_dir = "should_not_be_used";
    CHECK(cmd_simulate(cfg, out, err) == 0);
    ::unsetenv(kOutputDirEnv);
    CHECK(fs::exists(dir / "series.csv"));
    CHECK_FALSE(fs::exists("should_not_be_used"));
  }

  SUBCASE("simulate reports config errors") {
    RunConfig cfg = parse_config(kMinimal);
    cfg.n = Vec3{1.0, 1.0, 1.0};
    CHECK(cmd_simulate(cfg, out, err) == 2);
    CHECK(nlohmann::json::parse(last_line(err.str()))["verdict"] == "ERROR");
  }
}
