#include "clipflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "clipflow/parallel.hpp"

namespace clipflow {

namespace {

int wrap_index(int i, int n) {
  int m = i % n;
  if (m < 0) m += n;
  return m;
}

void require_same_shape(const ScalarField& f, const ScalarField& g, const char* op) {
  if (!f.same_shape(g)) {
    throw DimensionError(std::string(op) + ": shape mismatch, " + std::to_string(f.width()) + "x" +
                         std::to_string(f.height()) + " dx=" + std::to_string(f.dx()) + " vs " +
                         std::to_string(g.width()) + "x" + std::to_string(g.height()) +
                         " dx=" + std::to_string(g.dx()));
  }
}

}  // namespace

ScalarField::ScalarField(int width, int height, double dx, ClipBounds bounds, double fill)
    : width_(width), height_(height), dx_(dx), bounds_(bounds) {
  if (width <= 0 || height <= 0) {
    throw DimensionError("ScalarField: dimensions must be positive, got " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
  if (!(dx > 0.0)) {
    throw DimensionError("ScalarField: dx must be positive, got " + std::to_string(dx));
  }
  if (!bounds.valid()) {
    throw BoundsError("ScalarField: invalid bounds [" + std::to_string(bounds.lower) + ", " +
                      std::to_string(bounds.upper) + "]");
  }
  values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ScalarField ScalarField::like(const ScalarField& other, double fill) {
  return ScalarField(other.width_, other.height_, other.dx_, other.bounds_, fill);
}

double ScalarField::at_wrapped(int y, int x) const {
  return values_[index(wrap_index(y, height_), wrap_index(x, width_))];
}

bool ScalarField::same_shape(const ScalarField& other) const {
  return width_ == other.width_ && height_ == other.height_ && dx_ == other.dx_;
}

void ScalarField::validate() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (std::isnan(v) || v < bounds_.lower || v > bounds_.upper) {
      const int y = static_cast<int>(i) / width_;
      const int x = static_cast<int>(i) % width_;
      throw BoundsError("ScalarField: value " + std::to_string(v) + " at cell (" +
                        std::to_string(y) + ", " + std::to_string(x) + ") outside bounds [" +
                        std::to_string(bounds_.lower) + ", " + std::to_string(bounds_.upper) + "]");
    }
  }
}

bool MultiField::same_shape(const MultiField& other) const {
  if (channels.size() != other.channels.size()) return false;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (!channels[i].same_shape(other.channels[i])) return false;
  }
  return true;
}

void MultiField::validate() const {
  if (channels.empty()) throw DimensionError("MultiField: no channels");
  double min_spread = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < channels.size(); ++i) {
    if (!channels[i].same_shape(channels[0])) {
      throw DimensionError("MultiField: channel " + std::to_string(i) +
                           " shape differs from channel 0");
    }
  }
  for (const auto& ch : channels) {
    min_spread = std::min(min_spread, ch.bounds().width());
    ch.validate();
  }
  if (!(min_spread > 0.0)) {
    throw BoundsError("MultiField: minimum channel bound spread must be > 0, got " +
                      std::to_string(min_spread));
  }
}

double sup_distance(const ScalarField& f, const ScalarField& g) {
  require_same_shape(f, g, "sup_distance");
  const auto fv = f.values();
  const auto gv = g.values();
  const int rows = f.height();
  const int cols = f.width();
  std::vector<double> row_max(static_cast<std::size_t>(rows), 0.0);
  par::for_range(rows, [&](std::int64_t r0, std::int64_t r1) {
    for (std::int64_t r = r0; r < r1; ++r) {
      double m = 0.0;
      const std::size_t base = static_cast<std::size_t>(r) * static_cast<std::size_t>(cols);
      for (int c = 0; c < cols; ++c) {
        m = std::max(m, std::abs(fv[base + c] - gv[base + c]));
      }
      row_max[static_cast<std::size_t>(r)] = m;
    }
  });
  double m = 0.0;
  for (double v : row_max) m = std::max(m, v);
  return m;
}

double sup_distance(const MultiField& f, const MultiField& g) {
  if (f.channels.size() != g.channels.size()) {
    throw DimensionError("sup_distance: channel count mismatch, " +
                         std::to_string(f.channels.size()) + " vs " +
                         std::to_string(g.channels.size()));
  }
  double m = 0.0;
  for (std::size_t i = 0; i < f.channels.size(); ++i) {
    m = std::max(m, sup_distance(f.channels[i], g.channels[i]));
  }
  return m;
}

double mass(const ScalarField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return f.dx() * f.dx() * sum;
}

double min_value(const ScalarField& f) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : f.values()) m = std::min(m, v);
  return m;
}

double max_value(const ScalarField& f) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : f.values()) m = std::max(m, v);
  return m;
}

bool is_identically_zero(const ScalarField& f) {
  for (double v : f.values()) {
    if (v != 0.0) return false;
  }
  return true;
}

ScalarField support_distance_map(const ScalarField& f) {
  const int w = f.width();
  const int h = f.height();
  ScalarField out(w, h, f.dx(), ClipBounds{0.0, std::numeric_limits<double>::infinity()},
                  std::numeric_limits<double>::infinity());

  // Support cells as (y, x) pairs; distances use the wrapped metric per axis.
  std::vector<int> sy, sx;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (f.at(y, x) > 0.0) {
        sy.push_back(y);
        sx.push_back(x);
      }
    }
  }
  if (sy.empty()) return out;

  const double dx = f.dx();
  auto outv = out.values();
  par::for_range(h, [&](std::int64_t r0, std::int64_t r1) {
    for (std::int64_t y = r0; y < r1; ++y) {
      for (int x = 0; x < w; ++x) {
        if (f.at(static_cast<int>(y), x) > 0.0) {
          outv[f.index(static_cast<int>(y), x)] = 0.0;
          continue;
        }
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < sy.size(); ++k) {
          int dyc = std::abs(static_cast<int>(y) - sy[k]);
          dyc = std::min(dyc, h - dyc);
          int dxc = std::abs(x - sx[k]);
          dxc = std::min(dxc, w - dxc);
          const double d2 = static_cast<double>(dyc) * dyc + static_cast<double>(dxc) * dxc;
          best = std::min(best, d2);
        }
        outv[f.index(static_cast<int>(y), x)] = std::sqrt(best) * dx;
      }
    }
  });
  return out;
}

}  // namespace clipflow
