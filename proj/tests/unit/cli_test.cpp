#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cadenoise/metrics.hpp"
#include "cadenoise/pgm.hpp"
#include "cadenoise/synthetic.hpp"
#include "cadenoise/weights_io.hpp"
#include "cli.hpp"
#include "support/test_util.hpp"

namespace cadenoise {
namespace {

using testing::TempDir;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    clean_ = (dir_ / "clean.pgm").string();
    save_pgm(synthetic_natural_image(40, 32, 3), clean_);
  }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  TempDir dir_;
  std::string clean_;
};

TEST_F(CliTest, PsnrOfIdenticalImagesIsInf) {
  const CliRun r = run({"psnr", clean_, clean_});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "inf\n");
}

TEST_F(CliTest, AddNoiseIsDeterministic) {
  ASSERT_EQ(run({"add-noise", "--p", "0.1", "--seed", "7", clean_, path("a.pgm")}).code, 0);
  ASSERT_EQ(run({"add-noise", "--p", "0.1", "--seed", "7", clean_, path("b.pgm")}).code, 0);
  ASSERT_EQ(run({"add-noise", "--p", "0.1", "--seed", "8", clean_, path("c.pgm")}).code, 0);
  EXPECT_EQ(slurp(path("a.pgm")), slurp(path("b.pgm")));
  EXPECT_NE(slurp(path("a.pgm")), slurp(path("c.pgm")));
}

TEST_F(CliTest, DenoiseWritesImageAndFitLog) {
  ASSERT_EQ(run({"add-noise", "--p", "0.1", "--seed", "7", clean_, path("n.pgm")}).code, 0);
  const CliRun r = run({"denoise", "--thresholds", "full", "--rule", "majority", "--eta", "0.1",
                     "--seed", "7", path("n.pgm"), path("o.pgm")});
  ASSERT_EQ(r.code, 0) << r.err;
  const GrayImage out = load_pgm(path("o.pgm"));
  EXPECT_GT(psnr(load_pgm(clean_), out), psnr(load_pgm(clean_), load_pgm(path("n.pgm"))));
  const std::string log = slurp(path("o.pgm.fit.log"));
  EXPECT_NE(log.find("epoch,objective"), std::string::npos);
  EXPECT_NE(log.find("\n200,"), std::string::npos);
}

TEST_F(CliTest, FitThenApplyWeightsMatchesDenoise) {
  ASSERT_EQ(run({"add-noise", "--p", "0.1", "--seed", "1", clean_, path("n.pgm")}).code, 0);
  const std::vector<std::string> common{"--thresholds", "stride:4", "--epochs", "50", "--seed", "3"};
  auto with = [&](std::vector<std::string> head, std::vector<std::string> tail) {
    head.insert(head.end(), common.begin(), common.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };
  ASSERT_EQ(run(with({"fit-weights", "--noise-p", "0.1"}, {path("n.pgm"), path("w.txt")})).code, 0);
  EXPECT_EQ(load_weights(path("w.txt")).provenance.noise_p, 0.1);
  ASSERT_EQ(run(with({"apply-weights"}, {path("w.txt"), path("n.pgm"), path("a.pgm")})).code, 0);
  ASSERT_EQ(run(with({"denoise"}, {path("n.pgm"), path("d.pgm")})).code, 0);
  EXPECT_EQ(load_pgm(path("a.pgm")), load_pgm(path("d.pgm")));

  const CliRun mismatch = run({"apply-weights", "--thresholds", "bitplane", path("w.txt"),
                            path("n.pgm"), path("x.pgm")});
  EXPECT_EQ(mismatch.code, 1);
  EXPECT_NE(mismatch.err.find("error"), std::string::npos);
}

TEST_F(CliTest, HarnessCsvOutputs) {
  const CliRun t1 = run({"table1", "--p", "0.1", "--seeds", "1", "--thresholds", "stride:8",
                      "--epochs", "20", clean_});
  ASSERT_EQ(t1.code, 0) << t1.err;
  EXPECT_EQ(t1.out.rfind("image,p,method,eta,seed,psnr_db,wall_ms\n", 0), 0u);
  EXPECT_EQ(std::count(t1.out.begin(), t1.out.end(), '\n'), 5);

  ASSERT_EQ(run({"eta-sweep", "--factors", "1,2", "--seeds", "1", "--thresholds", "stride:8",
                 "--epochs", "20", "--out", path("sweep.csv"), clean_})
                .code,
            0);
  const std::string sweep = slurp(path("sweep.csv"));
  EXPECT_EQ(std::count(sweep.begin(), sweep.end(), '\n'), 5);

  const CliRun ws = run({"weight-stats", "--epochs", "20", "--thresholds", "stride:8", clean_});
  ASSERT_EQ(ws.code, 0) << ws.err;
  EXPECT_EQ(std::count(ws.out.begin(), ws.out.end(), '\n'), 4);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  const CliRun unknown = run({"sharpen", clean_});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);

  const CliRun flag = run({"psnr", "--bogus", clean_, clean_});
  EXPECT_EQ(flag.code, 2);
  EXPECT_NE(flag.err.find("Usage"), std::string::npos);

  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"add-noise", clean_}).code, 2);
  EXPECT_EQ(run({"add-noise", "--p", "1.5", clean_, path("x.pgm")}).code, 2);
}

TEST_F(CliTest, HelpPerSubcommand) {
  for (const char* sub : {"add-noise", "denoise", "psnr", "median", "table1", "eta-sweep",
                          "weight-stats", "fit-weights", "apply-weights", "synth"}) {
    const CliRun r = run({sub, "--help"});
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_NE(r.out.find("Usage"), std::string::npos) << sub;
  }
}

TEST_F(CliTest, RuntimeErrorsAreReported) {
  const CliRun r = run({"psnr", path("missing.pgm"), clean_});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("missing.pgm"), std::string::npos);
  save_pgm(GrayImage(8, 8, 0), path("small.pgm"));
  EXPECT_EQ(run({"psnr", clean_, path("small.pgm")}).code, 1);
  EXPECT_EQ(run({"median", "--window", "4", clean_, path("m.pgm")}).code, 1);
}

}  // namespace
}  // namespace cadenoise
