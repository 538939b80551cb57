#pragma once

#include "wnav/image.hpp"

#include <string>

namespace wnav {

// Binary Netpbm readers/writers. Writers emit the canonical header
// "P6\n<w> <h>\n255\n" (P5 analogue); readers additionally accept standard
// Netpbm whitespace and '#' comments. Maxval must be 255. Errors carry the
// byte offset of the offending datum.

RgbImage read_ppm(const std::string& path);
void write_ppm(const std::string& path, const RgbImage& image);

GrayImage read_pgm(const std::string& path);
void write_pgm(const std::string& path, const GrayImage& image);

}  // namespace wnav
