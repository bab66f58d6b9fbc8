#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace clipflow {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid clip bounds (lower > upper) or a field value outside its bounds.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Mismatched grid shapes, kernel larger than grid, wrong channel count.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Step size outside the arc field's time domain [0, 1].
class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// Input outside an operation's domain (e.g. non-binary board for gol_step).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Kernel discretization produced a degenerate (empty or zero) kernel.
class KernelError : public Error {
 public:
  using Error::Error;
};

/// Operation requires a Lipschitz growth function and got one that is not.
class UnsupportedGrowthError : public Error {
 public:
  using Error::Error;
};

/// A verifier's mathematical hypotheses are unsatisfiable for this system.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Malformed field container file; carries the byte offset of the defect.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::uint64_t byte_offset)
      : Error(what + " (at byte offset " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::uint64_t byte_offset() const { return byte_offset_; }

 private:
  std::uint64_t byte_offset_ = 0;
};

/// Filesystem-level failure (open, read, write).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Config file problem; message names the offending key and line.
class ConfigError : public Error {
 public:
  using Error::Error;
  ConfigError(const std::string& what, const std::string& key, int line)
      : Error(what + " (key '" + key + "', line " + std::to_string(line) + ")") {}
};

}  // namespace clipflow
