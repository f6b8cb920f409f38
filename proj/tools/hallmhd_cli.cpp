// hallmhd: command-line driver.
//
//   hallmhd simulate --config run.cfg [--t_end 5 ...]
//   hallmhd check-diophantine --n 1,0,0 --r 2.5 --K 16
//   hallmhd verify-identities --n_grid 16 --seed 1 --trials 20
//   hallmhd analyze-decay --csv out/series.csv --beta 6.5 --N 17 --r 2.5

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "hallmhd/commands.hpp"
#include "hallmhd/config.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw hallmhd::ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

hallmhd::Vec3 parse_vec3(const std::string& text) {
  hallmhd::Vec3 v{};
  std::stringstream ss(text);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i == 3) throw CLI::ValidationError("--n", "expected three components");
    v[i++] = std::stod(item);
  }
  if (i != 3) throw CLI::ValidationError("--n", "expected three components");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral Hall-MHD solver on the 3-torus"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run the perturbed system and write series.csv");
  std::string config_path, defaults_path;
  bool print_only = false;
  sim->add_option("--config", config_path, "key = value config file");
  sim->add_option("--defaults", defaults_path, "config file applied underneath --config");
  sim->add_flag("--print-config", print_only, "Print the resolved config and exit");
  std::map<std::string, std::string> overrides;
  for (const auto& key : hallmhd::config_keys()) {
    sim->add_option_function<std::string>(
        "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; },
        "Config key " + key);
  }

  // check-diophantine
  auto* dio = app.add_subcommand("check-diophantine", "Estimate c for |n.k| >= c/|k|^r");
  std::string n_text;
  double dio_r = 2.5;
  int dio_K = 16;
  std::optional<double> dio_c;
  dio->add_option("--n", n_text, "Background field n1,n2,n3")->required();
  dio->add_option("--r", dio_r, "Exponent r")->capture_default_str();
  dio->add_option("--K", dio_K, "Search radius")->capture_default_str();
  dio->add_option("--c", dio_c, "Also check the condition with this c");

  // verify-identities
  auto* ids = app.add_subcommand("verify-identities", "Cancellation identities on random states");
  int id_grid = 16, id_trials = 20;
  std::uint64_t id_seed = 1;
  double id_tol = 1e-11;
  ids->add_option("--n_grid", id_grid)->capture_default_str();
  ids->add_option("--seed", id_seed)->capture_default_str();
  ids->add_option("--trials", id_trials)->capture_default_str();
  ids->add_option("--tol", id_tol)->capture_default_str();

  // analyze-decay
  auto* dec = app.add_subcommand("analyze-decay", "Fit the decay exponent from series.csv");
  std::string csv_path;
  double beta = 6.5, dec_N = 17.0, dec_r = 2.5, margin = 0.15;
  dec->add_option("--csv", csv_path)->required();
  dec->add_option("--beta", beta)->capture_default_str();
  dec->add_option("--N", dec_N)->capture_default_str();
  dec->add_option("--r", dec_r)->capture_default_str();
  dec->add_option("--margin", margin)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*sim) {
    hallmhd::RunConfig cfg;
    try {
      hallmhd::KeyValues kv;
      if (!defaults_path.empty()) kv = hallmhd::parse_key_values(slurp(defaults_path));
      if (!config_path.empty()) {
        for (auto& [k, v] : hallmhd::parse_key_values(slurp(config_path))) kv[k] = v;
      }
      for (auto& [k, v] : overrides) kv[k] = v;
      cfg = hallmhd::build_config(kv);
    } catch (const std::exception& e) {
      hallmhd::write_verdict(std::cerr, "ERROR", e.what());
      return 2;
    }
    if (print_only) {
      std::cout << hallmhd::print_config(cfg);
      return 0;
    }
    return hallmhd::cmd_simulate(cfg, std::cout, std::cerr);
  }
  if (*dio) {
    hallmhd::Vec3 n;
    try {
      n = parse_vec3(n_text);
    } catch (const std::exception& e) {
      hallmhd::write_verdict(std::cerr, "ERROR", std::string("--n: ") + e.what());
      return 2;
    }
    return hallmhd::cmd_check_diophantine(n, dio_r, dio_K, dio_c, std::cout, std::cerr);
  }
  if (*ids) {
    return hallmhd::cmd_verify_identities(id_grid, id_seed, id_trials, id_tol,
                                          std::cout, std::cerr);
  }
  return hallmhd::cmd_analyze_decay(csv_path, beta, dec_N, dec_r, margin, std::cout,
                                    std::cerr);
}
