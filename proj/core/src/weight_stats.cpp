#include "cadenoise/weight_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cadenoise {

WeightStats weight_stats(const WeightVector& w) {
  if (w.weights.empty()) throw std::invalid_argument("weight_stats: empty weight vector");
  const auto n = static_cast<double>(w.size());

  WeightStats s;
  for (double v : w.weights) s.sum += v;
  s.mean = s.sum / n;

  double var = 0.0;
  for (double v : w.weights) var += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(var / n);

  std::vector<double> sorted = w.weights;
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.median = sorted[(sorted.size() - 1) / 2];
  return s;
}

}  // namespace cadenoise
