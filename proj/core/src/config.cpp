#include "clipflow/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace clipflow {

namespace {

struct RawEntry {
  std::string value;
  int line = 0;
  bool used = false;
};

using RawMap = std::map<std::string, RawEntry>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

RawMap tokenize(std::string_view text, std::string_view origin) {
  RawMap map;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(origin) + ": expected 'key = value'", std::string(line),
                        line_no);
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) {
      throw ConfigError(std::string(origin) + ": empty key", std::string(line), line_no);
    }
    if (std::count(key.begin(), key.end(), '.') > 1) {
      throw ConfigError(std::string(origin) + ": keys nest at most one dot deep", key, line_no);
    }
    if (map.count(key) != 0) {
      throw ConfigError(std::string(origin) + ": duplicate key", key, line_no);
    }
    map[key] = RawEntry{value, line_no, false};
  }
  return map;
}

class ConfigReader {
 public:
  ConfigReader(RawMap map, std::string origin) : map_(std::move(map)), origin_(std::move(origin)) {}

  bool has(const std::string& key) const { return map_.count(key) != 0; }

  std::string require_string(const std::string& key) {
    auto it = map_.find(key);
    if (it == map_.end()) {
      throw ConfigError(origin_ + ": missing required key", key, 0);
    }
    it->second.used = true;
    return it->second.value;
  }

  std::string string_or(const std::string& key, const std::string& fallback) {
    return has(key) ? require_string(key) : fallback;
  }

  double require_double(const std::string& key) { return parse_double(key, require_string(key)); }

  double double_or(const std::string& key, double fallback) {
    return has(key) ? require_double(key) : fallback;
  }

  long require_long(const std::string& key) {
    const std::string raw = require_string(key);
    long v = 0;
    const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (ec != std::errc{} || p != raw.data() + raw.size()) {
      throw ConfigError(origin_ + ": expected an integer, got '" + raw + "'", key, line_of(key));
    }
    return v;
  }

  long long_or(const std::string& key, long fallback) {
    return has(key) ? require_long(key) : fallback;
  }

  std::uint64_t u64_or(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const std::string raw = require_string(key);
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (ec != std::errc{} || p != raw.data() + raw.size()) {
      throw ConfigError(origin_ + ": expected an unsigned integer, got '" + raw + "'", key,
                        line_of(key));
    }
    return v;
  }

  bool bool_or(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string raw = require_string(key);
    if (raw == "true" || raw == "1") return true;
    if (raw == "false" || raw == "0") return false;
    throw ConfigError(origin_ + ": expected true/false, got '" + raw + "'", key, line_of(key));
  }

  std::vector<double> require_double_list(const std::string& key) {
    const std::string raw = require_string(key);
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= raw.size()) {
      std::size_t comma = raw.find(',', start);
      if (comma == std::string::npos) comma = raw.size();
      const std::string item{trim(std::string_view(raw).substr(start, comma - start))};
      if (item.empty()) {
        throw ConfigError(origin_ + ": empty list element", key, line_of(key));
      }
      out.push_back(parse_double(key, item));
      start = comma + 1;
      if (comma == raw.size()) break;
    }
    return out;
  }

  int line_of(const std::string& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? 0 : it->second.line;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ConfigError(origin_ + ": " + message, key, line_of(key));
  }

  void reject_unknown() const {
    for (const auto& [key, entry] : map_) {
      if (!entry.used) {
        throw ConfigError(origin_ + ": unknown key", key, entry.line);
      }
    }
  }

 private:
  double parse_double(const std::string& key, const std::string& raw) {
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (end != raw.c_str() + raw.size() || raw.empty()) {
      throw ConfigError(origin_ + ": expected a number, got '" + raw + "'", key, line_of(key));
    }
    return v;
  }

  RawMap map_;
  std::string origin_;
};

ModelKind parse_model(ConfigReader& r) {
  const std::string m = r.require_string("model");
  if (m == "lenia") return ModelKind::lenia;
  if (m == "asymptotic") return ModelKind::asymptotic;
  if (m == "gol") return ModelKind::gol;
  if (m == "food") return ModelKind::food;
  if (m == "depleting_food") return ModelKind::depleting_food;
  if (m == "predator_prey") return ModelKind::predator_prey;
  if (m == "ecosystem") return ModelKind::ecosystem;
  r.fail("model", "unknown model '" + m + "'");
}

KernelSpec parse_kernel(ConfigReader& r, const std::string& section) {
  KernelSpec spec;
  const std::string type_key = section + ".type";
  const std::string type = r.require_string(type_key);
  if (type == "gol") {
    spec.shape = GolKernel{};
  } else if (type == "exp_bump") {
    spec.shape = ExpBumpKernel{r.double_or(section + ".scale", 1.0)};
  } else if (type == "ring_sum") {
    RingSumKernel k;
    k.scale = r.double_or(section + ".scale", 1.0);
    k.centers = r.require_double_list(section + ".ring_centers");
    k.amplitudes = r.require_double_list(section + ".ring_amplitudes");
    k.widths = r.require_double_list(section + ".ring_widths");
    spec.shape = std::move(k);
  } else if (type == "table") {
    TableKernel k;
    k.radius = static_cast<int>(r.require_long(section + ".radius"));
    k.weights = r.require_double_list(section + ".weights");
    spec.shape = std::move(k);
  } else {
    r.fail(type_key, "unknown kernel type '" + type + "'");
  }
  spec.normalize = r.bool_or(section + ".normalize", false);
  return spec;
}

GrowthSpec parse_growth(ConfigReader& r, const std::string& section) {
  const std::string type = r.require_string(section + ".type");
  if (type == "gol") return GrowthSpec{GolGrowth{}};
  if (type == "gaussian") {
    GaussianBumpGrowth g;
    g.mu = r.double_or(section + ".mu", 0.15);
    g.sigma = r.double_or(section + ".sigma", 0.015);
    if (!(g.sigma > 0.0)) r.fail(section + ".sigma", "sigma must be positive");
    return GrowthSpec{g};
  }
  if (type == "constant") return GrowthSpec{ConstantGrowth{r.double_or(section + ".value", 0.0)}};
  if (type == "rectifier") return GrowthSpec{RectifierGrowth{}};
  if (type == "table") {
    TableGrowth t;
    t.inputs = r.require_double_list(section + ".inputs");
    t.outputs = r.require_double_list(section + ".outputs");
    if (t.inputs.size() != t.outputs.size()) {
      r.fail(section + ".outputs", "inputs and outputs must have equal length");
    }
    return GrowthSpec{std::move(t)};
  }
  r.fail(section + ".type", "unknown growth type '" + type + "'");
}

InitSpec parse_init(ConfigReader& r, const std::string& section, const GridShape& grid) {
  InitSpec init;
  const std::string type = r.string_or(section + ".type", "random");
  if (type == "blob") {
    init.kind = InitSpec::Kind::blob;
    init.has_blob_center = r.has(section + ".cx") || r.has(section + ".cy");
    init.cx = r.double_or(section + ".cx", 0.5 * grid.width * grid.dx);
    init.cy = r.double_or(section + ".cy", 0.5 * grid.height * grid.dx);
    init.radius = r.double_or(section + ".radius", 1.0);
    init.peak = r.double_or(section + ".peak", 1.0);
    if (!(init.radius > 0.0)) r.fail(section + ".radius", "blob radius must be positive");
  } else if (type == "random") {
    init.kind = InitSpec::Kind::random;
  } else if (type == "single_cell") {
    init.kind = InitSpec::Kind::single_cell;
    init.has_cell_pos = r.has(section + ".cell_x") || r.has(section + ".cell_y");
    init.cell_x = static_cast<int>(r.long_or(section + ".cell_x", grid.width / 2));
    init.cell_y = static_cast<int>(r.long_or(section + ".cell_y", grid.height / 2));
    init.cell_value = r.double_or(section + ".value", 1.0);
  } else if (type == "file") {
    init.kind = InitSpec::Kind::file;
    init.path = r.require_string(section + ".path");
  } else {
    r.fail(section + ".type", "unknown initial-condition type '" + type + "'");
  }
  return init;
}

FoodSpec parse_food(ConfigReader& r, const GridShape& grid, bool bounds_required) {
  FoodSpec food;
  if (bounds_required && (!r.has("food.lower") || !r.has("food.upper"))) {
    r.fail("food.lower", "this model needs explicit food bounds food.lower / food.upper");
  }
  food.lower = r.double_or("food.lower", 0.0);
  food.upper = r.double_or("food.upper", 1.0);
  if (!(food.lower < food.upper)) {
    r.fail("food.upper", "food bounds need lower < upper");
  }
  const std::string type = r.string_or("food.type", "constant");
  if (type == "constant") {
    food.kind = FoodSpec::Kind::constant;
    food.has_value = r.has("food.value");
    food.value = r.double_or("food.value", food.upper);
  } else if (type == "blob") {
    food.kind = FoodSpec::Kind::blob;
    food.has_blob_center = r.has("food.cx") || r.has("food.cy");
    food.cx = r.double_or("food.cx", 0.5 * grid.width * grid.dx);
    food.cy = r.double_or("food.cy", 0.5 * grid.height * grid.dx);
    food.radius = r.double_or("food.radius", 1.0);
    food.peak = r.double_or("food.peak", food.upper);
  } else if (type == "file") {
    food.kind = FoodSpec::Kind::file;
    food.path = r.require_string("food.path");
  } else {
    r.fail("food.type", "unknown food type '" + type + "'");
  }
  return food;
}

SimConfig build(ConfigReader& r) {
  SimConfig cfg;
  cfg.model = parse_model(r);

  cfg.grid.width = static_cast<int>(r.require_long("grid.width"));
  cfg.grid.height = static_cast<int>(r.require_long("grid.height"));
  cfg.grid.dx = r.double_or("grid.dx", 1.0);
  if (cfg.grid.width < 1 || cfg.grid.height < 1) {
    r.fail("grid.width", "grid dimensions must be >= 1");
  }
  if (!(cfg.grid.dx > 0.0)) r.fail("grid.dx", "dx must be positive");

  cfg.t_step = r.require_double("t_step");
  if (!(cfg.t_step > 0.0 && cfg.t_step <= 1.0)) {
    r.fail("t_step", "t_step must lie in (0, 1], the arc field's time domain [0, 1]");
  }
  cfg.steps = r.require_long("steps");
  if (cfg.steps < 1) r.fail("steps", "steps must be >= 1");
  cfg.seed = r.u64_or("seed", 0);

  cfg.bounds.lower = r.double_or("bounds.lower", 0.0);
  cfg.bounds.upper = r.double_or("bounds.upper", 1.0);
  if (!(cfg.bounds.lower < cfg.bounds.upper)) {
    r.fail("bounds.upper", "bounds need lower < upper");
  }

  cfg.kernel = parse_kernel(r, "kernel");
  cfg.growth = parse_growth(r, "growth");

  const bool two_species =
      cfg.model == ModelKind::predator_prey || cfg.model == ModelKind::ecosystem;
  if (two_species) {
    if (!r.has("kernel2.type")) {
      r.fail("kernel2.type", "model '" + std::string(model_name(cfg.model)) +
                                 "' needs a prey kernel (kernel2.*)");
    }
    if (!r.has("growth2.type")) {
      r.fail("growth2.type", "model '" + std::string(model_name(cfg.model)) +
                                 "' needs a prey growth (growth2.*)");
    }
    cfg.kernel2 = parse_kernel(r, "kernel2");
    cfg.growth2 = parse_growth(r, "growth2");
    cfg.has_kernel2 = true;
    cfg.has_growth2 = true;
    cfg.init2 = parse_init(r, "init2", cfg.grid);
    cfg.has_init2 = true;
  }

  const bool wants_food = cfg.model == ModelKind::food ||
                          cfg.model == ModelKind::depleting_food ||
                          cfg.model == ModelKind::ecosystem;
  if (wants_food) {
    const bool bounds_required =
        cfg.model == ModelKind::depleting_food || cfg.model == ModelKind::ecosystem;
    cfg.food = parse_food(r, cfg.grid, bounds_required);
    cfg.has_food_bounds = true;
  }

  cfg.init = parse_init(r, "init", cfg.grid);

  cfg.output.frames_every = r.long_or("output.frames_every", 0);
  if (cfg.output.frames_every < 0) r.fail("output.frames_every", "must be >= 0");
  cfg.output.frame_dir = r.string_or("output.frame_dir", "frames");
  cfg.output.metrics_path = r.string_or("output.metrics_path", "metrics.csv");

  r.reject_unknown();
  return cfg;
}

}  // namespace

std::string_view model_name(ModelKind m) {
  switch (m) {
    case ModelKind::lenia: return "lenia";
    case ModelKind::asymptotic: return "asymptotic";
    case ModelKind::gol: return "gol";
    case ModelKind::food: return "food";
    case ModelKind::depleting_food: return "depleting_food";
    case ModelKind::predator_prey: return "predator_prey";
    case ModelKind::ecosystem: return "ecosystem";
  }
  return "?";
}

SimConfig parse_config_text(std::string_view text, std::string_view origin) {
  ConfigReader reader(tokenize(text, origin), std::string(origin));
  return build(reader);
}

SimConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

}  // namespace clipflow
