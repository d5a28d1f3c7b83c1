#pragma once

#include "cadenoise/recombine.hpp"

namespace cadenoise {

struct WeightStats {
  double mean = 0.0;
  double median = 0.0;  // lower middle element for even counts
  double std = 0.0;     // population standard deviation
  double min = 0.0;
  double max = 0.0;
  double sum = 0.0;
};

WeightStats weight_stats(const WeightVector& w);

}  // namespace cadenoise
