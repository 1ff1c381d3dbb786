#pragma once

#include <string>

#include "patchflow/frame.hpp"

namespace patchflow {

// Reads a binary PGM (P5, maxval 255) into a Frame. Header comments
// ('#' to end of line) and arbitrary whitespace between header fields are
// accepted. Throws std::runtime_error with a distinct message for each
// failure: unopenable file, wrong magic, malformed header fields,
// unsupported maxval, truncated pixel payload.
Frame read_pgm(const std::string& path);

// Writes the frame as binary PGM with the exact header
// "P5\n<width> <height>\n255\n" followed by row-major pixel bytes.
// Throws std::runtime_error on any I/O failure.
void write_pgm(const Frame& frame, const std::string& path);

}  // namespace patchflow
