#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cadenoise/error.hpp"
#include "cadenoise/fit.hpp"
#include "cadenoise/lsq_oracle.hpp"
#include "cadenoise/normal_system.hpp"
#include "cadenoise/recombine.hpp"
#include "cadenoise/weight_stats.hpp"
#include "support/instances.hpp"
#include "support/test_util.hpp"

namespace cadenoise {
namespace {

BinaryStack single_plane(BinaryImage plane) {
  BinaryStack s{ThresholdSet({1}), {}};
  s.planes.push_back(std::move(plane));
  return s;
}

TEST(Recombine, ExamplesAndClamping) {
  const GrayImage img = testing::random_image(17, 11, 1);
  const BinaryStack s = decompose(img, thresholds_full());
  EXPECT_EQ(recombine(s, unit_weights(255)), img);
  EXPECT_EQ(recombine(s, WeightVector{std::vector<double>(255, 0.0)}), GrayImage(17, 11, 0));

  const BinaryStack ones = single_plane(BinaryImage(3, 2, true));
  EXPECT_EQ(recombine(ones, WeightVector{{300.0}}), GrayImage(3, 2, 255));
  EXPECT_EQ(recombine(ones, WeightVector{{-4.0}}), GrayImage(3, 2, 0));
  EXPECT_EQ(recombine_unclamped(ones, WeightVector{{300.0}}).values, std::vector<double>(6, 300.0));
  EXPECT_THROW(recombine(ones, WeightVector{{1.0, 2.0}}), std::invalid_argument);
}

TEST(Recombine, RoundsHalfAwayFromZero) {
  const BinaryStack ones = single_plane(BinaryImage(1, 1, true));
  EXPECT_EQ(recombine(ones, WeightVector{{10.5}})[0], 11);
  EXPECT_EQ(recombine(ones, WeightVector{{10.49}})[0], 10);
  EXPECT_EQ(recombine(ones, WeightVector{{254.5}})[0], 255);
}

TEST(Recombine, ClampedOutputAlwaysInRange) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> wd(-500.0, 500.0);
  const BinaryStack s = decompose(testing::random_image(8, 8, 2), thresholds_stride(16));
  for (int trial = 0; trial < 20; ++trial) {
    WeightVector w{std::vector<double>(s.depth())};
    for (double& v : w.weights) v = wd(rng);
    const GrayImage out = recombine(s, w);
    const RealImage raw = recombine_unclamped(s, w);
    for (std::size_t i = 0; i < out.size(); ++i) {
      ASSERT_EQ(out[i], static_cast<int>(std::round(std::clamp(raw.values[i], 0.0, 255.0))));
    }
  }
}

TEST(InitWeights, Examples) {
  EXPECT_EQ(init_weights(255, 0.0, 1).weights, std::vector<double>(255, 1.0));
  EXPECT_EQ(init_weights(8, 0.0, 1).weights, std::vector<double>(8, 31.875));
  const WeightVector w = init_weights(255, 0.05, 3);
  for (double v : w.weights) {
    EXPECT_GE(v, 0.95);
    EXPECT_LE(v, 1.05);
  }
  EXPECT_EQ(init_weights(255, 0.05, 3), w);
  EXPECT_NE(init_weights(255, 0.05, 4), w);
  EXPECT_THROW(init_weights(0, 0.0, 0), std::invalid_argument);
  EXPECT_THROW(init_weights(3, 1.0, 0), std::invalid_argument);
}

TEST(Objective, Examples) {
  const GrayImage img = testing::random_image(10, 10, 4, 1, 254);
  const BinaryStack s = decompose(img, thresholds_full());
  EXPECT_EQ(objective(s, unit_weights(255), img, PixelMask(10, 10, true)), 0.0);

  const BinaryStack ones = single_plane(BinaryImage(2, 2, true));
  EXPECT_EQ(objective(ones, WeightVector{{90.0}}, GrayImage(2, 2, 100), PixelMask(2, 2, true)), 400.0);

  // Only masked pixels count.
  PixelMask one(2, 2);
  one.set(1, 1, true);
  EXPECT_EQ(objective(ones, WeightVector{{90.0}}, GrayImage(2, 2, 100), one), 100.0);
  EXPECT_THROW(objective(ones, WeightVector{{90.0}}, GrayImage(2, 2, 100), PixelMask(2, 2)),
               std::invalid_argument);
}

TEST(NormalSystem, AgreesWithPixelObjective) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = testing::random_instance(6, 23, 19, seed);
    const NormalSystem sys = build_normal_system(inst.stack, inst.target, inst.mask);
    EXPECT_EQ(sys.samples, inst.mask.count());
    const WeightVector w = init_weights(6, 0.5, seed);
    const double direct = objective(inst.stack, w, inst.target, inst.mask);
    EXPECT_NEAR(system_objective(sys, w.weights), direct, 1e-9 * direct);
  }
}

TEST(NormalSystem, GradientMatchesCentralDifferences) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = testing::random_instance(1 + seed % 8, 20, 20, seed + 50);
    const NormalSystem sys = build_normal_system(inst.stack, inst.target, inst.mask);
    const double ridge = seed % 2 ? 0.0 : 3.5;
    WeightVector w = init_weights(sys.depth, 0.5, seed);
    std::vector<double> grad;
    system_gradient(sys, w.weights, ridge, grad);

    for (std::size_t k = 0; k < sys.depth; ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(w.weights[k]));
      WeightVector up = w, down = w;
      up.weights[k] += h;
      down.weights[k] -= h;
      auto f = [&](const WeightVector& v) {
        double norm = 0.0;
        for (double x : v.weights) norm += x * x;
        return objective(inst.stack, v, inst.target, inst.mask) + ridge * norm;
      };
      const double fd = (f(up) - f(down)) / (2.0 * h);
      EXPECT_NEAR(grad[k], fd, 1e-5 * std::max(1.0, std::abs(fd))) << "seed " << seed << " k " << k;
    }
  }
}

TEST(Objective, ConvexAlongSegments) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = testing::random_instance(5, 15, 15, seed);
    const WeightVector a = init_weights(5, 0.9, seed);
    const WeightVector b = init_weights(5, 0.9, seed + 99);
    const double fa = objective(inst.stack, a, inst.target, inst.mask);
    const double fb = objective(inst.stack, b, inst.target, inst.mask);
    for (int i = 0; i < 5; ++i) {
      const double lam = u(rng);
      WeightVector m{std::vector<double>(5)};
      for (int k = 0; k < 5; ++k) m.weights[k] = lam * a.weights[k] + (1 - lam) * b.weights[k];
      EXPECT_LE(objective(inst.stack, m, inst.target, inst.mask),
                lam * fa + (1 - lam) * fb + 1e-9 * (fa + fb));
    }
  }
}

TEST(FitWeights, ScalarMeanMinimizer) {
  const BinaryStack ones = single_plane(BinaryImage(6, 5, true));
  const GrayImage target(6, 5, 137);
  OptimizerConfig cfg;
  cfg.epochs = 200;
  cfg.seed = 3;
  const FitResult r = fit_weights(ones, target, PixelMask(6, 5, true), cfg);
  EXPECT_NEAR(r.weights.weights[0], 137.0, 1e-6);
  EXPECT_EQ(r.sampled_pixel_count, 30u);
  EXPECT_EQ(r.objective_history.size(), 200u);

  const WeightVector oracle = solve_least_squares_oracle(ones, target, PixelMask(6, 5, true), false, 0.0);
  EXPECT_DOUBLE_EQ(oracle.weights[0], 137.0);
}

TEST(FitWeights, DisjointPlanesConvergeToPlaneMeans) {
  // Left half plane A, right half plane B. Normal equations are diagonal:
  //   [nA 0; 0 nB] w = [sum_A y; sum_B y]  ->  w = (mean_A, mean_B).
  BinaryImage left(4, 2), right(4, 2);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 4; ++x) (x < 2 ? left : right).set(x, y, true);
  }
  BinaryStack s{ThresholdSet({1, 2}), {left, right}};
  const GrayImage target(4, 2, {10, 20, 100, 110, 30, 40, 120, 130});
  const double mean_a = (10 + 20 + 30 + 40) / 4.0;
  const double mean_b = (100 + 110 + 120 + 130) / 4.0;

  OptimizerConfig cfg;
  cfg.epochs = 500;
  const FitResult r = fit_weights(s, target, PixelMask(4, 2, true), cfg);
  EXPECT_NEAR(r.weights.weights[0], mean_a, 1e-6);
  EXPECT_NEAR(r.weights.weights[1], mean_b, 1e-6);

  // Overlapping planes: A everywhere, B on the right half. Hand-solved
  // [[8,4],[4,4]] w = [560,460] gives w = (25, 90).
  BinaryStack o{ThresholdSet({1, 2}), {BinaryImage(4, 2, true), right}};
  const WeightVector exact = solve_least_squares_oracle(o, target, PixelMask(4, 2, true), false, 0.0);
  EXPECT_NEAR(exact.weights[0], 25.0, 1e-9);
  EXPECT_NEAR(exact.weights[1], 90.0, 1e-9);
  const FitResult ro = fit_weights(o, target, PixelMask(4, 2, true), cfg);
  EXPECT_NEAR(ro.weights.weights[0], 25.0, 1e-6);
  EXPECT_NEAR(ro.weights.weights[1], 90.0, 1e-6);
}

TEST(FitWeights, HistoryNonIncreasingAndNeverWorseThanInit) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = testing::random_instance(8, 20, 20, seed);
    OptimizerConfig cfg;
    cfg.epochs = 300;
    cfg.seed = seed;
    cfg.step_size = 0.05;  // far too large; the optimizer must halve it
    const FitResult r = fit_weights(inst.stack, inst.target, inst.mask, cfg);
    for (std::size_t e = 1; e < r.objective_history.size(); ++e) {
      ASSERT_LE(r.objective_history[e], r.objective_history[e - 1]);
    }
    EXPECT_LE(r.objective_history.back(), r.initial_objective);
    EXPECT_LT(r.final_step_size, 0.05);
    const double f_init = objective(inst.stack, init_weights(8, cfg.epsilon_init, seed),
                                    inst.target, inst.mask);
    EXPECT_LE(r.objective_history.back(), f_init);
  }
}

TEST(FitWeights, MatchesOracleOnWellConditionedInstances) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = testing::random_instance(8, 20, 20, seed + 200);
    OptimizerConfig cfg;
    cfg.epochs = 3000;
    cfg.seed = seed;
    const FitResult r = fit_weights(inst.stack, inst.target, inst.mask, cfg);
    const WeightVector w = solve_least_squares_oracle(inst.stack, inst.target, inst.mask, false, 0.0);
    const double best = objective(inst.stack, w, inst.target, inst.mask);
    EXPECT_LE(r.objective_history.back(), best * (1 + 1e-6)) << "seed " << seed;
  }
}

TEST(FitWeights, NonnegativeProjection) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = testing::random_instance(6, 20, 20, seed + 300);
    const WeightVector free_w = solve_least_squares_oracle(inst.stack, inst.target, inst.mask, false, 0.0);
    OptimizerConfig cfg;
    cfg.epochs = 4000;
    cfg.seed = seed;
    cfg.nonneg = true;
    bool all_nonneg = true;
    const FitResult r = fit_weights(inst.stack, inst.target, inst.mask, cfg,
                                    [&](int, std::span<const double> w, double) {
                                      for (double v : w) all_nonneg = all_nonneg && v >= 0.0;
                                    });
    EXPECT_TRUE(all_nonneg);
    EXPECT_TRUE(r.weights.nonneg_constrained);

    const WeightVector nn = solve_least_squares_oracle(inst.stack, inst.target, inst.mask, true, 0.0);
    for (double v : nn.weights) EXPECT_GE(v, 0.0);
    const double f_nn = objective(inst.stack, nn, inst.target, inst.mask);
    const double f_free = objective(inst.stack, free_w, inst.target, inst.mask);
    EXPECT_GE(f_nn, f_free * (1 - 1e-12));
    EXPECT_NEAR(r.objective_history.back(), f_nn, 1e-6 * f_nn) << "seed " << seed;
  }
}

TEST(FitWeights, Errors) {
  const auto inst = testing::random_instance(3, 8, 8, 1);
  OptimizerConfig cfg;
  EXPECT_THROW(fit_weights(inst.stack, inst.target, PixelMask(8, 8), cfg), std::invalid_argument);
  cfg.epochs = 0;
  EXPECT_THROW(fit_weights(inst.stack, inst.target, inst.mask, cfg), std::invalid_argument);
  cfg.epochs = 5;
  cfg.step_size = 1e300;
  EXPECT_THROW(fit_weights(inst.stack, inst.target, inst.mask, cfg), DivergenceError);
}

TEST(Oracle, RankDeficiencyNeedsRidge) {
  const BinaryImage plane = testing::random_binary(10, 10, 3);
  BinaryStack dup{ThresholdSet({1, 2}), {plane, plane}};
  const GrayImage target = testing::random_image(10, 10, 4, 1, 254);
  const PixelMask all(10, 10, true);
  EXPECT_THROW(solve_least_squares_oracle(dup, target, all, false, 0.0), SingularSystemError);
  const WeightVector w = solve_least_squares_oracle(dup, target, all, false, 1e-3);
  EXPECT_NEAR(w.weights[0], w.weights[1], 1e-9);
}

TEST(WeightStats, Examples) {
  const WeightStats s = weight_stats(WeightVector{{1.0, 2.0, 3.0}});
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_DOUBLE_EQ(s.median, 2.0);
  EXPECT_NEAR(s.std, std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(s.std, 0.8165, 1e-4);
  EXPECT_EQ(s.min, 1.0);
  EXPECT_EQ(s.max, 3.0);
  EXPECT_EQ(s.sum, 6.0);

  const WeightStats c = weight_stats(WeightVector{{5.0, 5.0, 5.0, 5.0}});
  EXPECT_EQ(c.std, 0.0);
  EXPECT_EQ(c.sum, 20.0);
  EXPECT_EQ(weight_stats(WeightVector{{4.0, 1.0, 3.0, 2.0}}).median, 2.0);
  EXPECT_THROW(weight_stats(WeightVector{}), std::invalid_argument);
}

TEST(WeightStats, OrderingInvariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const WeightVector w = init_weights(1 + seed % 40, 0.9, seed);
    const WeightStats s = weight_stats(w);
    EXPECT_LE(s.min, s.median);
    EXPECT_LE(s.median, s.max);
    EXPECT_LE(s.min, s.mean);
    EXPECT_LE(s.mean, s.max);
    EXPECT_DOUBLE_EQ(s.sum, s.mean * static_cast<double>(w.size()));
  }
}

}  // namespace
}  // namespace cadenoise
