#pragma once

#include <string>

#include "cadenoise/image.hpp"

namespace cadenoise {

double mse(const GrayImage& ref, const GrayImage& approx);

/// 10 log10(255^2 / mse); +infinity when the images are identical.
double psnr(const GrayImage& ref, const GrayImage& approx);
double psnr_from_mse(double mse_value);

/// Four decimals, or "inf".
std::string format_psnr(double db);

}  // namespace cadenoise
