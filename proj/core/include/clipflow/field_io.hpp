#pragma once

#include <string>

#include "clipflow/field.hpp"

namespace clipflow {

/// Field container, binary little-endian:
///   magic "LENF" (4 bytes), version u16 = 1, channels u16,
///   width u32, height u32, dx f64,
///   per channel: lower f64, upper f64,
///   then channels x height x width f64 row-major values.
/// Round-trips are bit-exact.
void write_field_file(const MultiField& f, const std::string& path);
void write_field_file(const ScalarField& f, const std::string& path);

MultiField read_field_file(const std::string& path);
ScalarField read_scalar_field_file(const std::string& path);

/// Binary PGM (P5, maxval 255). pixel = round((v - lower)/(upper - lower)*255)
/// with ties rounded half away from zero. Requires finite bounds.
void render_pgm(const ScalarField& f, const std::string& path);

}  // namespace clipflow
