#include "clipflow/field_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

namespace clipflow {

namespace {

constexpr char kMagic[4] = {'L', 'E', 'N', 'F'};
constexpr std::uint16_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "field container serialization assumes a little-endian host");

template <class T>
void put(std::vector<std::byte>& buf, T v) {
  const std::size_t at = buf.size();
  buf.resize(at + sizeof(T));
  std::memcpy(buf.data() + at, &v, sizeof(T));
}

class Reader {
 public:
  Reader(const std::byte* data, std::size_t size) : data_(data), size_(size) {}

  template <class T>
  T take(const char* section) {
    if (pos_ + sizeof(T) > size_) {
      throw FormatError(std::string("field file truncated, missing ") + section, pos_);
    }
    T v;
    std::memcpy(&v, data_ + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }

  std::uint64_t pos() const { return pos_; }
  std::size_t remaining() const { return size_ - pos_; }

 private:
  const std::byte* data_;
  std::size_t size_;
  std::uint64_t pos_ = 0;
};

}  // namespace

void write_field_file(const MultiField& f, const std::string& path) {
  f.validate();
  const auto& c0 = f.channels[0];
  std::vector<std::byte> buf;
  buf.reserve(32 + f.channels.size() * (16 + c0.cell_count() * 8));
  for (char c : kMagic) put(buf, c);
  put(buf, kVersion);
  put(buf, static_cast<std::uint16_t>(f.channels.size()));
  put(buf, static_cast<std::uint32_t>(c0.width()));
  put(buf, static_cast<std::uint32_t>(c0.height()));
  put(buf, c0.dx());
  for (const auto& ch : f.channels) {
    put(buf, ch.bounds().lower);
    put(buf, ch.bounds().upper);
  }
  for (const auto& ch : f.channels) {
    const std::size_t at = buf.size();
    buf.resize(at + ch.cell_count() * sizeof(double));
    std::memcpy(buf.data() + at, ch.values().data(), ch.cell_count() * sizeof(double));
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_field_file(const ScalarField& f, const std::string& path) {
  MultiField m;
  m.channels.push_back(f);
  write_field_file(m, path);
}

MultiField read_field_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Reader r(reinterpret_cast<const std::byte*>(buf.data()), buf.size());

  for (std::size_t i = 0; i < 4; ++i) {
    const char c = r.take<char>("magic");
    if (c != kMagic[i]) {
      throw FormatError("bad magic, expected \"LENF\"", r.pos() - 1);
    }
  }
  const auto version = r.take<std::uint16_t>("version");
  if (version != kVersion) {
    throw FormatError("unsupported version " + std::to_string(version), r.pos() - 2);
  }
  const auto channels = r.take<std::uint16_t>("channel count");
  if (channels == 0) throw FormatError("channel count is zero", r.pos() - 2);
  const auto width = r.take<std::uint32_t>("width");
  const auto height = r.take<std::uint32_t>("height");
  constexpr std::uint32_t kMaxDim = 1u << 20;
  if (width == 0 || height == 0 || width > kMaxDim || height > kMaxDim) {
    throw FormatError("dimensions out of range: " + std::to_string(width) + "x" +
                          std::to_string(height),
                      r.pos() - 8);
  }
  const std::uint64_t cells = std::uint64_t{width} * height;
  const std::uint64_t payload = cells * channels * 8;
  if (payload > (std::uint64_t{1} << 34)) {
    throw FormatError("dimension overflow: payload would be " + std::to_string(payload) + " bytes",
                      r.pos() - 8);
  }
  const double dx = r.take<double>("dx");
  if (!(dx > 0.0) || !std::isfinite(dx)) {
    throw FormatError("dx must be positive and finite", r.pos() - 8);
  }

  std::vector<ClipBounds> bounds(channels);
  for (std::uint16_t c = 0; c < channels; ++c) {
    bounds[c].lower = r.take<double>("channel lower bound");
    bounds[c].upper = r.take<double>("channel upper bound");
    if (std::isnan(bounds[c].lower) || std::isnan(bounds[c].upper) ||
        bounds[c].lower > bounds[c].upper) {
      throw BoundsError("field file channel " + std::to_string(c) + " has lower > upper bounds");
    }
  }

  MultiField out;
  out.channels.reserve(channels);
  for (std::uint16_t c = 0; c < channels; ++c) {
    ScalarField ch(static_cast<int>(width), static_cast<int>(height), dx, bounds[c]);
    if (r.remaining() < cells * 8) {
      throw FormatError("field file truncated, missing values for channel " + std::to_string(c),
                        r.pos());
    }
    auto dst = ch.values();
    for (std::uint64_t i = 0; i < cells; ++i) {
      dst[i] = r.take<double>("values");
    }
    out.channels.push_back(std::move(ch));
  }
  out.validate();
  return out;
}

ScalarField read_scalar_field_file(const std::string& path) {
  MultiField m = read_field_file(path);
  if (m.channels.size() != 1) {
    throw DimensionError("expected a single-channel field file, got " +
                         std::to_string(m.channels.size()) + " channels");
  }
  return std::move(m.channels[0]);
}

void render_pgm(const ScalarField& f, const std::string& path) {
  const ClipBounds b = f.bounds();
  if (!b.is_finite()) {
    throw BoundsError("render_pgm: bounds must be finite, got [" + std::to_string(b.lower) + ", " +
                      std::to_string(b.upper) + "]");
  }
  const double span = b.width();
  std::string header = "P5\n" + std::to_string(f.width()) + " " + std::to_string(f.height()) +
                       "\n255\n";
  std::vector<unsigned char> pixels(f.cell_count());
  const auto v = f.values();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const double unit = span > 0.0 ? (v[i] - b.lower) / span : 0.0;
    // std::round ties away from zero, as required.
    double p = std::round(unit * 255.0);
    p = std::min(std::max(p, 0.0), 255.0);
    pixels[i] = static_cast<unsigned char>(p);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace clipflow
