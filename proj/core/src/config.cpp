#include "peridyn/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "peridyn/errors.hpp"

namespace peridyn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"material", {"E", "nu", "rho", "G0", "thickness"}},
      {"model",
       {"type", "sigma_ratio", "delta_ratio", "chi2", "correction", "micromodulus",
        "critical_stretch"}},
      {"grid", {"N"}},
      {"run",
       {"dt", "steps", "tolerance", "max_iterations", "snapshot_every", "impact_velocity",
        "damage_threshold", "angle_window", "output_dir"}},
  };
  return keys;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<std::size_t> to_count(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<std::size_t> parse_levels(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const auto n = to_count(item);
    if (!n) throw ConfigError("bad node count '" + std::string(trim(item)) + "'");
    out.push_back(*n);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

ScenarioConfig parse_config_text(std::string_view text, const std::string& scenario) {
  ScenarioConfig c = ScenarioConfig::defaults(scenario);
  std::vector<std::string> problems;
  std::map<std::string, std::string> values;  // "section.key" -> raw value

  std::istringstream in{std::string(text)};
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') {
        problems.push_back(where + ": malformed section header");
        continue;
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().count(section)) problems.push_back(where + ": unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back(where + ": expected key = value");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (const auto hash = value.find('#'); hash != std::string_view::npos) {
      value = trim(value.substr(0, hash));
    }
    const auto sec = known_keys().find(section);
    if (sec == known_keys().end()) {
      if (section.empty()) problems.push_back(where + ": key '" + key + "' outside any section");
      continue;
    }
    if (!sec->second.count(key)) {
      problems.push_back("unknown key " + section + "." + key);
      continue;
    }
    const std::string full = section + "." + key;
    if (values.count(full)) problems.push_back("duplicate key " + full);
    values[full] = std::string(value);
  }

  for (const char* required : {"model.type", "grid.N"}) {
    if (!values.count(required)) problems.push_back(std::string("missing required key ") + required);
  }

  auto number = [&](const std::string& key, auto setter) {
    const auto it = values.find(key);
    if (it == values.end()) return;
    const auto v = to_double(it->second);
    if (!v) {
      problems.push_back(key + " = '" + it->second + "' is not a plain SI number");
      return;
    }
    setter(*v);
  };
  auto count = [&](const std::string& key, std::size_t& target) {
    const auto it = values.find(key);
    if (it == values.end()) return;
    const auto v = to_count(it->second);
    if (!v) {
      problems.push_back(key + " = '" + it->second + "' is not a non-negative integer");
      return;
    }
    target = *v;
  };

  number("material.E", [&](double v) { c.youngs_modulus = v; });
  number("material.nu", [&](double v) { c.poisson_ratio = v; });
  number("material.rho", [&](double v) { c.density = v; });
  number("material.G0", [&](double v) { c.energy_release_rate = v; });
  number("material.thickness", [&](double v) { c.thickness = v; });

  if (const auto it = values.find("model.type"); it != values.end()) {
    if (const auto k = parse_model_kind(it->second)) {
      c.model = *k;
    } else {
      problems.push_back("model.type = '" + it->second + "' is not a known model");
    }
  }
  const bool has_sigma = values.count("model.sigma_ratio") > 0;
  const bool has_delta = values.count("model.delta_ratio") > 0;
  if (has_sigma && has_delta) {
    problems.push_back("model.sigma_ratio and model.delta_ratio are mutually exclusive");
  }
  if (has_sigma || has_delta) {
    c.sigma_ratio.reset();
    c.delta_ratio.reset();
  } else if (c.model == ModelKind::classical_linear || c.model == ModelKind::classical_nonlinear) {
    problems.push_back("missing required key model.delta_ratio for a bounded-horizon model");
  }
  number("model.sigma_ratio", [&](double v) { c.sigma_ratio = v; });
  number("model.delta_ratio", [&](double v) { c.delta_ratio = v; });
  number("model.chi2", [&](double v) { c.chi2 = v; });
  number("model.critical_stretch", [&](double v) { c.critical_stretch = v; });
  if (const auto it = values.find("model.correction"); it != values.end()) {
    if (const auto m = parse_correction_method(it->second)) {
      c.correction = *m;
    } else {
      problems.push_back("model.correction = '" + it->second + "' is not one of none, fa, lammps, qwj");
    }
  }
  if (const auto it = values.find("model.micromodulus"); it != values.end()) {
    if (const auto m = parse_micromodulus_kind(it->second)) {
      c.micromodulus = *m;
    } else {
      problems.push_back("model.micromodulus = '" + it->second + "' is not constant or conical");
    }
  }

  if (const auto it = values.find("grid.N"); it != values.end()) {
    try {
      c.levels = parse_levels(it->second);
    } catch (const ConfigError& e) {
      problems.push_back(std::string("grid.N: ") + e.what());
    }
  }

  number("run.dt", [&](double v) { c.dt = v; });
  count("run.steps", c.steps);
  number("run.tolerance", [&](double v) { c.tolerance = v; });
  count("run.max_iterations", c.max_iterations);
  count("run.snapshot_every", c.snapshot_every);
  number("run.impact_velocity", [&](double v) { c.impact_velocity = v; });
  number("run.damage_threshold", [&](double v) { c.damage_threshold = v; });
  number("run.angle_window", [&](double v) { c.angle_window = v; });
  if (const auto it = values.find("run.output_dir"); it != values.end()) c.output_dir = it->second;

  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
  return c;
}

ScenarioConfig parse_config_file(const std::filesystem::path& path, const std::string& scenario) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), scenario);
}

void apply_overrides(ScenarioConfig& c, const ConfigOverrides& o) {
  if (o.levels) c.levels = *o.levels;
  if (o.model) {
    const auto k = parse_model_kind(*o.model);
    if (!k) throw ConfigError("--model '" + *o.model + "' is not a known model");
    c.model = *k;
  }
  if (o.sigma_ratio && o.delta_ratio) {
    throw ConfigError("--sigma-ratio and --delta-ratio are mutually exclusive");
  }
  if (o.sigma_ratio) {
    c.sigma_ratio = *o.sigma_ratio;
    c.delta_ratio.reset();
  }
  if (o.delta_ratio) {
    c.delta_ratio = *o.delta_ratio;
    c.sigma_ratio.reset();
  }
  if (o.chi2) c.chi2 = *o.chi2;
  if (o.steps) c.steps = *o.steps;
  if (o.dt) c.dt = *o.dt;
  if (o.output_dir) c.output_dir = *o.output_dir;
}

}  // namespace peridyn
