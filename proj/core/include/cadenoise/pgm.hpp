#pragma once

#include <filesystem>

#include "cadenoise/image.hpp"

namespace cadenoise {

// Binary PGM (P5), maxval 255. Comments are tolerated in the header on read;
// the writer always emits "P5\n<w> <h>\n255\n".
GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

}  // namespace cadenoise
