#include "rifscatter/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rifscatter/table.hpp"

namespace rif {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) {
    return "";
  }
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ValidationError(key + ": cannot parse '" + value + "' as a number");
  }
  if (pos != value.size()) {
    throw ValidationError(key + ": trailing characters in '" + value + "'");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  const double x = parse_double(key, value);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x) {
    throw ValidationError(key + ": expected an integer, got '" + value + "'");
  }
  return i;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(parse_double(key, item));
    }
  }
  if (out.empty()) {
    throw ValidationError(key + ": empty list");
  }
  return out;
}

std::string join_list(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) {
      s += ',';
    }
    s += format_g17(xs[i]);
  }
  return s;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "medium.resonance1_nm", "medium.resonance2_nm", "medium.resonance3_nm",
      "medium.kappa1",        "medium.kappa2",        "medium.kappa3",
      "medium.n_ref",         "front.u",              "step.delta_n",
      "sweep.delta_n",        "grid.omega_points",    "grid.lab_points",
      "grid.lab_min_nm",      "grid.lab_max_nm",      "run.length_mm",
      "run.omega_prime",      "run.out_dir",          "run.jobs",
      "solver.guard_band",    "solver.eps_prop",      "solver.eps_edge",
      "solver.condition_max", "fit.low_min",          "fit.low_max",
      "fit.high_min",
  };
  return keys;
}

std::map<std::string, std::string> config_to_map(const RunConfig& cfg) {
  std::map<std::string, std::string> m;
  m["medium.resonance1_nm"] = format_g17(cfg.resonance_nm[0]);
  m["medium.resonance2_nm"] = format_g17(cfg.resonance_nm[1]);
  m["medium.resonance3_nm"] = format_g17(cfg.resonance_nm[2]);
  m["medium.kappa1"] = format_g17(cfg.kappa[0]);
  m["medium.kappa2"] = format_g17(cfg.kappa[1]);
  m["medium.kappa3"] = format_g17(cfg.kappa[2]);
  m["medium.n_ref"] = format_g17(cfg.n_ref);
  m["front.u"] = format_g17(cfg.u);
  m["step.delta_n"] = format_g17(cfg.delta_n);
  m["sweep.delta_n"] = join_list(cfg.sweep_delta_n);
  m["grid.omega_points"] = std::to_string(cfg.omega_points);
  m["grid.lab_points"] = std::to_string(cfg.lab_points);
  m["grid.lab_min_nm"] = format_g17(cfg.lab_min_nm);
  m["grid.lab_max_nm"] = format_g17(cfg.lab_max_nm);
  m["run.length_mm"] = format_g17(cfg.length_mm);
  m["run.omega_prime"] = format_g17(cfg.omega_prime);
  m["run.out_dir"] = cfg.out_dir;
  m["run.jobs"] = std::to_string(cfg.jobs);
  m["solver.guard_band"] = format_g17(cfg.guard_band);
  m["solver.eps_prop"] = format_g17(cfg.eps_prop);
  m["solver.eps_edge"] = format_g17(cfg.eps_edge);
  m["solver.condition_max"] = format_g17(cfg.condition_max);
  m["fit.low_min"] = format_g17(cfg.fit_low_min);
  m["fit.low_max"] = format_g17(cfg.fit_low_max);
  m["fit.high_min"] = format_g17(cfg.fit_high_min);
  return m;
}

void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "medium.resonance1_nm") {
    cfg.resonance_nm[0] = parse_double(key, value);
  } else if (key == "medium.resonance2_nm") {
    cfg.resonance_nm[1] = parse_double(key, value);
  } else if (key == "medium.resonance3_nm") {
    cfg.resonance_nm[2] = parse_double(key, value);
  } else if (key == "medium.kappa1") {
    cfg.kappa[0] = parse_double(key, value);
  } else if (key == "medium.kappa2") {
    cfg.kappa[1] = parse_double(key, value);
  } else if (key == "medium.kappa3") {
    cfg.kappa[2] = parse_double(key, value);
  } else if (key == "medium.n_ref") {
    cfg.n_ref = parse_double(key, value);
  } else if (key == "front.u") {
    cfg.u = parse_double(key, value);
  } else if (key == "step.delta_n") {
    cfg.delta_n = parse_double(key, value);
  } else if (key == "sweep.delta_n") {
    cfg.sweep_delta_n = parse_list(key, value);
  } else if (key == "grid.omega_points") {
    cfg.omega_points = parse_int(key, value);
  } else if (key == "grid.lab_points") {
    cfg.lab_points = parse_int(key, value);
  } else if (key == "grid.lab_min_nm") {
    cfg.lab_min_nm = parse_double(key, value);
  } else if (key == "grid.lab_max_nm") {
    cfg.lab_max_nm = parse_double(key, value);
  } else if (key == "run.length_mm") {
    cfg.length_mm = parse_double(key, value);
  } else if (key == "run.omega_prime") {
    cfg.omega_prime = parse_double(key, value);
  } else if (key == "run.out_dir") {
    cfg.out_dir = value;
  } else if (key == "run.jobs") {
    cfg.jobs = parse_int(key, value);
  } else if (key == "solver.guard_band") {
    cfg.guard_band = parse_double(key, value);
  } else if (key == "solver.eps_prop") {
    cfg.eps_prop = parse_double(key, value);
  } else if (key == "solver.eps_edge") {
    cfg.eps_edge = parse_double(key, value);
  } else if (key == "solver.condition_max") {
    cfg.condition_max = parse_double(key, value);
  } else if (key == "fit.low_min") {
    cfg.fit_low_min = parse_double(key, value);
  } else if (key == "fit.low_max") {
    cfg.fit_low_max = parse_double(key, value);
  } else if (key == "fit.high_min") {
    cfg.fit_high_min = parse_double(key, value);
  } else {
    throw ValidationError("unknown config key '" + key + "'");
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw ValidationError("cannot open config file " + path);
  }
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": expected key=value, got '" + line + "'");
    }
    apply_key_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_environment(RunConfig& cfg) {
  for (const auto& key : config_keys()) {
    std::string name = "RIFSCATTER_";
    for (char c : key) {
      name += c == '.' ? '_' : static_cast<char>(std::toupper(c));
    }
    if (const char* value = std::getenv(name.c_str())) {
      apply_key_value(cfg, key, value);
    }
  }
}

void validate(const RunConfig& cfg) {
  for (int i = 0; i < 3; ++i) {
    if (!(cfg.resonance_nm[i] > 0.0)) {
      throw ValidationError("medium resonances must be positive");
    }
    if (!(cfg.kappa[i] > 0.0)) {
      throw ValidationError("medium elastic constants must be positive");
    }
  }
  if (!(cfg.resonance_nm[0] > cfg.resonance_nm[1] &&
        cfg.resonance_nm[1] > cfg.resonance_nm[2])) {
    throw ValidationError("medium resonances must be strictly decreasing");
  }
  if (!(cfg.u > 0.0 && cfg.u < 1.0)) {
    throw ValidationError("front.u must lie strictly between 0 and 1");
  }
  if (!(cfg.delta_n >= 0.0)) {
    throw ValidationError("step.delta_n must be nonnegative");
  }
  for (double d : cfg.sweep_delta_n) {
    if (!(d >= 0.0)) {
      throw ValidationError("sweep.delta_n entries must be nonnegative");
    }
  }
  if (cfg.omega_points < 16 || cfg.omega_points > 100000) {
    throw ValidationError("grid.omega_points out of range");
  }
  if (cfg.lab_points < 2 || cfg.lab_points > 1000000) {
    throw ValidationError("grid.lab_points out of range");
  }
  if (!(cfg.lab_min_nm > 0.0 && cfg.lab_max_nm > cfg.lab_min_nm)) {
    throw ValidationError("lab wavelength window must be increasing and positive");
  }
  if (!(cfg.length_mm > 0.0)) {
    throw ValidationError("run.length_mm must be positive");
  }
  if (cfg.jobs < 1 || cfg.jobs > 256) {
    throw ValidationError("run.jobs out of range");
  }
  if (!(cfg.guard_band > 0.0 && cfg.guard_band < 0.1)) {
    throw ValidationError("solver.guard_band out of range");
  }
  if (!(cfg.eps_prop > 0.0 && cfg.eps_prop < 1e-3)) {
    throw ValidationError("solver.eps_prop out of range");
  }
  if (!(cfg.eps_edge > 0.0 && cfg.eps_edge < 1e-3)) {
    throw ValidationError("solver.eps_edge out of range");
  }
  if (!(cfg.condition_max > 1.0)) {
    throw ValidationError("solver.condition_max must exceed 1");
  }
  if (!(cfg.fit_low_min > 0.0 && cfg.fit_low_max > cfg.fit_low_min)) {
    throw ValidationError("fit.low range must be increasing and positive");
  }
  if (!(cfg.fit_high_min > 0.0)) {
    throw ValidationError("fit.high_min must be positive");
  }
}

std::uint64_t config_hash(const RunConfig& cfg) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [key, value] : config_to_map(cfg)) {
    // Output location and worker count do not affect the numbers, so two
    // runs that differ only there stamp the same hash.
    if (key == "run.out_dir" || key == "run.jobs") {
      continue;
    }
    mix(key);
    mix("=");
    mix(value);
    mix("\n");
  }
  return h;
}

std::string config_hash_hex(const RunConfig& cfg) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  return buf;
}

SellmeierMedium make_medium(const RunConfig& cfg) {
  return SellmeierMedium(
      {cfg.resonance_nm[0] * 1e-9, cfg.resonance_nm[1] * 1e-9, cfg.resonance_nm[2] * 1e-9},
      cfg.kappa);
}

FrontFrame make_front(const RunConfig& cfg) { return FrontFrame(cfg.u); }

IndexStep make_step(const RunConfig& cfg) { return make_step(cfg, cfg.delta_n); }

IndexStep make_step(const RunConfig& cfg, double delta_n) {
  return scale_medium(make_medium(cfg), delta_n, cfg.n_ref);
}

ScatterOptions make_scatter_options(const RunConfig& cfg) {
  ScatterOptions opt;
  opt.solve.guard_band = cfg.guard_band;
  opt.solve.eps_prop = cfg.eps_prop;
  opt.eps_edge_rel = cfg.eps_edge;
  opt.condition_max = cfg.condition_max;
  return opt;
}

StepContext make_context(const RunConfig& cfg) { return make_context(cfg, cfg.delta_n); }

StepContext make_context(const RunConfig& cfg, double delta_n) {
  return make_context(make_step(cfg, delta_n), make_front(cfg), make_scatter_options(cfg));
}

}  // namespace rif
