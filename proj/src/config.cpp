#include "hallmhd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hallmhd {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError(key + ": expected a finite number, got '" + value + "'");
  }
  return out;
}

long long to_integer(const std::string& key, const std::string& value) {
  long long out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  return out;
}

std::uint64_t to_seed(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key + ": expected an unsigned 64-bit integer, got '" +
                      value + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(to_double(key, item));
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "n_grid",         "pad_factor",     "gamma",        "r",
      "n",              "background_amplitude", "K",      "N",
      "epsilon",        "seed",           "spectrum_slope", "t_end",
      "dt_max",         "dt_min",         "cfl_adv",      "cfl_hall",
      "sample_every",   "checkpoint_every", "output_dir", "hs",
      "decay_verdicts", "decay_margin"};
  return keys;
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  const auto& keys = config_keys();
  while (std::getline(ss, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("unknown key '" + key + "' on line " +
                        std::to_string(lineno));
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("duplicate key '" + key + "' on line " +
                        std::to_string(lineno));
    }
  }
  return kv;
}

RunConfig build_config(const KeyValues& kv) {
  for (const char* key : {"n_grid", "epsilon", "t_end"}) {
    if (!kv.count(key)) throw ConfigError(std::string("missing required key '") + key + "'");
  }
  for (const auto& [key, value] : kv) {
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  RunConfig c;
  const auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  const auto read_int = [&](const char* key, int& out) {
    if (const auto* v = get(key)) {
      const long long x = to_integer(key, *v);
      require(x >= -2147483647LL && x <= 2147483647LL,
              std::string(key) + ": out of range");
      out = static_cast<int>(x);
    }
  };
  const auto read_double = [&](const char* key, double& out) {
    if (const auto* v = get(key)) out = to_double(key, *v);
  };

  read_int("n_grid", c.n_grid);
  if (const auto* v = get("pad_factor")) c.pad_factor = parse_pad_factor(*v);
  read_double("gamma", c.gamma);
  read_double("r", c.r);
  if (const auto* v = get("n")) {
    const auto xs = to_list("n", *v);
    require(xs.size() == 3, "n: expected three comma-separated components");
    c.n = Vec3{xs[0], xs[1], xs[2]};
  }
  read_double("background_amplitude", c.background_amplitude);
  read_int("K", c.K);
  read_double("N", c.N);
  read_double("epsilon", c.epsilon);
  if (const auto* v = get("seed")) c.seed = to_seed("seed", *v);
  read_double("spectrum_slope", c.spectrum_slope);
  read_double("t_end", c.t_end);
  read_double("dt_max", c.dt_max);
  read_double("dt_min", c.dt_min);
  read_double("cfl_adv", c.cfl_adv);
  read_double("cfl_hall", c.cfl_hall);
  read_int("sample_every", c.sample_every);
  read_int("checkpoint_every", c.checkpoint_every);
  if (const auto* v = get("output_dir")) c.output_dir = *v;
  if (const auto* v = get("hs")) c.hs = to_list("hs", *v);
  if (const auto* v = get("decay_verdicts")) c.decay_verdicts = to_bool("decay_verdicts", *v);
  read_double("decay_margin", c.decay_margin);

  require(c.n_grid >= 8 && c.n_grid % 2 == 0, "n_grid: must be even and >= 8");
  require(c.gamma > 0.5 && c.gamma <= 2.0, "gamma: must lie in (1/2, 2]");
  require(c.r > 2.0, "r: requires r > 2, got " + fmt(c.r));
  if (c.decay_verdicts) {
    const double bound = 4.0 * c.r + 7.0;
    require(c.N >= bound, "N: decay verdicts require N >= 4r+7 = " + fmt(bound) +
                              ", got " + fmt(c.N));
  }
  require(c.N > 0.0, "N: must be positive");
  require(c.epsilon >= 0.0, "epsilon: must be >= 0");
  require(c.background_amplitude > 0.0, "background_amplitude: must be positive");
  require(c.K >= 0, "K: must be >= 1, or 0 for the lattice covering radius");
  require(c.spectrum_slope >= 0.0, "spectrum_slope: must be >= 0");
  require(c.t_end >= 0.0, "t_end: must be >= 0");
  require(c.dt_min > 0.0, "dt_min: must be positive");
  require(c.dt_min <= c.dt_max, "dt_max: must be >= dt_min");
  require(c.cfl_adv > 0.0 && c.cfl_adv <= 1.0, "cfl_adv: must lie in (0, 1]");
  require(c.cfl_hall > 0.0 && c.cfl_hall <= 1.0, "cfl_hall: must lie in (0, 1]");
  require(c.sample_every >= 1, "sample_every: must be >= 1");
  require(c.checkpoint_every >= 0, "checkpoint_every: must be >= 0");
  require(c.decay_margin >= 0.0, "decay_margin: must be >= 0");
  for (double s : c.hs) require(s >= 0.0, "hs: orders must be >= 0");
  return c;
}

RunConfig parse_config(const std::string& text) {
  return build_config(parse_key_values(text));
}

RunConfig parse_config(const std::string& text, const std::string& defaults) {
  KeyValues merged = parse_key_values(defaults);
  for (auto& [key, value] : parse_key_values(text)) merged[key] = value;
  return build_config(merged);
}

std::string print_config(const RunConfig& c) {
  std::ostringstream os;
  os << "n_grid = " << c.n_grid << '\n'
     << "pad_factor = " << to_string(c.pad_factor) << '\n'
     << "gamma = " << fmt(c.gamma) << '\n'
     << "r = " << fmt(c.r) << '\n';
  if (c.n) {
    os << "n = " << fmt((*c.n)[0]) << ", " << fmt((*c.n)[1]) << ", "
       << fmt((*c.n)[2]) << '\n';
  }
  os << "background_amplitude = " << fmt(c.background_amplitude) << '\n'
     << "K = " << c.K << '\n'
     << "N = " << fmt(c.N) << '\n'
     << "epsilon = " << fmt(c.epsilon) << '\n'
     << "seed = " << c.seed << '\n'
     << "spectrum_slope = " << fmt(c.spectrum_slope) << '\n'
     << "t_end = " << fmt(c.t_end) << '\n'
     << "dt_max = " << fmt(c.dt_max) << '\n'
     << "dt_min = " << fmt(c.dt_min) << '\n'
     << "cfl_adv = " << fmt(c.cfl_adv) << '\n'
     << "cfl_hall = " << fmt(c.cfl_hall) << '\n'
     << "sample_every = " << c.sample_every << '\n'
     << "checkpoint_every = " << c.checkpoint_every << '\n'
     << "output_dir = " << c.output_dir << '\n'
     << "hs = ";
  for (std::size_t i = 0; i < c.hs.size(); ++i) {
    os << (i ? ", " : "") << fmt(c.hs[i]);
  }
  os << '\n'
     << "decay_verdicts = " << (c.decay_verdicts ? "true" : "false") << '\n'
     << "decay_margin = " << fmt(c.decay_margin) << '\n';
  return os.str();
}

std::vector<double> decay_orders(const RunConfig& c) {
  const double low = c.r + 4.0;
  return {low, 0.5 * (low + c.N)};
}

std::vector<double> effective_hs(const RunConfig& c) {
  std::vector<double> out = c.hs;
  if (c.decay_verdicts) {
    for (double s : decay_orders(c)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hallmhd
