#pragma once

#include "cadenoise/image.hpp"
#include "cadenoise/recombine.hpp"
#include "cadenoise/thresholds.hpp"

namespace cadenoise {

// Direct minimizer of the masked recombination objective, used to check the
// iterative fit. Normal equations are accumulated pixel by pixel (dense, no
// bit packing) and solved by Gaussian elimination with partial pivoting.
// With nonneg, an active-set loop clamps negative coordinates to zero and
// re-solves the free subproblem until the KKT conditions hold.
//
// Throws SingularSystemError when a pivot is numerically zero, which happens
// with ridge == 0 whenever two planes coincide on the masked pixels.
WeightVector solve_least_squares_oracle(const BinaryStack& stack, const GrayImage& noisy,
                                        const PixelMask& mask, bool nonneg, double ridge);

}  // namespace cadenoise
