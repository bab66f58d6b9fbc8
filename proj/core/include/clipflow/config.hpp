#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "clipflow/field.hpp"
#include "clipflow/growth.hpp"
#include "clipflow/kernel.hpp"

namespace clipflow {

enum class ModelKind { lenia, asymptotic, gol, food, depleting_food, predator_prey, ecosystem };

std::string_view model_name(ModelKind m);

/// Initial condition: a named seeded generator or a field file.
struct InitSpec {
  enum class Kind { blob, random, single_cell, file };
  Kind kind = Kind::random;
  // blob
  double cx = 0.0, cy = 0.0, radius = 1.0, peak = 1.0;
  bool has_blob_center = false;
  // single_cell
  int cell_x = 0, cell_y = 0;
  double cell_value = 1.0;
  bool has_cell_pos = false;
  // file
  std::string path;
};

/// Static or depleting food channel: bounds [lower, upper] plus its initial
/// content.
struct FoodSpec {
  double lower = 0.0;
  double upper = 1.0;
  enum class Kind { constant, blob, file };
  Kind kind = Kind::constant;
  double value = 0.0;  // constant fill; defaults to upper when unset
  bool has_value = false;
  double cx = 0.0, cy = 0.0, radius = 1.0, peak = 1.0;
  bool has_blob_center = false;
  std::string path;
};

struct OutputSpec {
  long frames_every = 0;  // 0 = no frames
  std::string frame_dir = "frames";
  std::string metrics_path = "metrics.csv";
};

/// Parsed and validated simulation configuration. Grammar: flat
/// `key = value` lines, dotted section keys one level deep, `#` comments.
/// Unknown keys are hard errors.
struct SimConfig {
  GridShape grid{64, 64, 1.0};
  ModelKind model = ModelKind::lenia;
  KernelSpec kernel;
  KernelSpec kernel2;
  bool has_kernel2 = false;
  GrowthSpec growth{ConstantGrowth{0.0}};
  GrowthSpec growth2{ConstantGrowth{0.0}};
  bool has_growth2 = false;
  ClipBounds bounds = ClipBounds::unit();
  FoodSpec food;
  bool has_food_bounds = false;
  double t_step = 0.1;
  long steps = 1;
  std::uint64_t seed = 0;
  InitSpec init;
  InitSpec init2;
  bool has_init2 = false;
  OutputSpec output;
};

/// Required keys: model, grid.width, grid.height, kernel.type, growth.type,
/// t_step, steps. Everything else has documented defaults.
SimConfig parse_config(const std::string& path);

/// Same grammar from an in-memory string; `origin` labels error messages.
SimConfig parse_config_text(std::string_view text, std::string_view origin);

}  // namespace clipflow
