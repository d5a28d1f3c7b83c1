#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

#include "cadenoise/error.hpp"
#include "cadenoise/experiments.hpp"
#include "cadenoise/fit.hpp"
#include "cadenoise/median.hpp"
#include "cadenoise/metrics.hpp"
#include "cadenoise/noise.hpp"
#include "cadenoise/pgm.hpp"
#include "cadenoise/pipeline.hpp"
#include "cadenoise/synthetic.hpp"
#include "cadenoise/weights_io.hpp"

namespace cadenoise::cli {
namespace {

// Pipeline flags shared by denoise, fit-weights, apply-weights and the harnesses.
struct PipelineFlags {
  std::string thresholds = "full";
  std::string rule = "majority";
  std::string neighborhood = "moore";
  int radius = 1;
  int ca_steps = 1;
  double eta = 1.0;
  std::string sample = "random";
  int epochs = kDefaultEpochs;
  std::optional<double> step;
  double epsilon = 0.05;
  double ridge = 0.0;
  bool nonneg = false;
  std::uint64_t seed = 0;

  void attach(CLI::App& app, bool with_eta = true) {
    app.add_option("--thresholds", thresholds, "full | full0 | stride:<s> | bitplane | otsu:<g>")
        ->capture_default_str();
    app.add_option("--rule", rule, "majority | identity")->capture_default_str();
    app.add_option("--neighborhood", neighborhood, "moore | vonneumann")->capture_default_str();
    app.add_option("--radius", radius, "Neighborhood radius")->capture_default_str();
    app.add_option("--ca-steps", ca_steps, "CA steps per plane")->capture_default_str();
    if (with_eta) {
      app.add_option("--eta", eta, "Fraction of uncorrupted pixels used for the fit")
          ->capture_default_str();
      app.add_option("--sample", sample, "random | grid:<k>")->capture_default_str();
    }
    app.add_option("--epochs", epochs, "Gradient descent epochs")->capture_default_str();
    app.add_option("--step", step, "Fixed step size (default: from the curvature bound)");
    app.add_option("--epsilon", epsilon, "Relative spread of the initial weights")
        ->capture_default_str();
    app.add_option("--ridge", ridge, "Ridge penalty")->capture_default_str();
    app.add_flag("--nonneg", nonneg, "Constrain weights to be >= 0");
    app.add_option("--seed", seed, "Seed for weight init and sampling")->capture_default_str();
  }

  PipelineConfig config() const {
    PipelineConfig cfg;
    cfg.thresholds = parse_threshold_strategy(thresholds);
    cfg.rule = parse_rule(rule);
    if (neighborhood == "moore") {
      cfg.neighborhood.kind = NeighborhoodKind::kMoore;
    } else if (neighborhood == "vonneumann") {
      cfg.neighborhood.kind = NeighborhoodKind::kVonNeumann;
    } else {
      throw std::invalid_argument("unknown neighborhood '" + neighborhood + "'");
    }
    cfg.neighborhood.radius = radius;
    cfg.ca_steps = ca_steps;
    cfg.eta = eta;
    cfg.sample_mode = parse_sample_mode(sample);
    cfg.optimizer.epochs = epochs;
    cfg.optimizer.step_size = step;
    cfg.optimizer.epsilon_init = epsilon;
    cfg.optimizer.ridge = ridge;
    cfg.optimizer.nonneg = nonneg;
    cfg.optimizer.seed = seed;
    cfg.validate();
    return cfg;
  }
};

void write_fit_log(const std::filesystem::path& path, const DenoiseResult& r,
                   const PipelineConfig& cfg) {
  std::ofstream log(path);
  if (!log) throw Error("cannot write fit log " + path.string());
  log << "# thresholds=" << to_string(cfg.thresholds) << " t=" << r.thresholds.size()
      << " rule=" << rule_name(cfg.rule) << " eta=" << cfg.eta
      << " sample=" << to_string(cfg.sample_mode) << " seed=" << cfg.optimizer.seed << '\n';
  if (!r.fit) {
    log << "# weights not fitted\n";
    return;
  }
  char buf[64];
  log << "# samples=" << r.fit->sampled_pixel_count << " final_step=" << r.fit->final_step_size
      << '\n';
  std::snprintf(buf, sizeof buf, "%.10g", r.fit->initial_objective);
  log << "epoch,objective\n0," << buf << '\n';
  for (std::size_t i = 0; i < r.fit->objective_history.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10g", r.fit->objective_history[i]);
    log << i + 1 << ',' << buf << '\n';
  }
}

// Runs `emit` against --out when given, stdout otherwise.
void with_output(const std::string& path, std::ostream& out,
                 const std::function<void(std::ostream&)>& emit) {
  if (path.empty()) {
    emit(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error("cannot write " + path);
  emit(file);
  if (!file) throw Error("write failed for " + path);
}

std::string image_id(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cellular-automaton salt-and-pepper denoiser"};
  app.name("cadenoise");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  // Every subcommand installs its action here; it runs after a clean parse.
  std::function<void()> action;

  // synth
  struct {
    int width = 128, height = 128;
    std::uint64_t seed = 1;
    std::string out;
  } synth;
  auto* s_synth = app.add_subcommand("synth", "Write the synthetic natural-statistics test image");
  s_synth->add_option("--width", synth.width)->capture_default_str();
  s_synth->add_option("--height", synth.height)->capture_default_str();
  s_synth->add_option("--seed", synth.seed)->capture_default_str();
  s_synth->add_option("output", synth.out, "Output PGM")->required();
  s_synth->callback([&] {
    action = [&] { save_pgm(synthetic_natural_image(synth.width, synth.height, synth.seed), synth.out); };
  });

  // add-noise
  struct {
    double p = 0.1;
    std::uint64_t seed = 0;
    std::string in, out;
  } noise;
  auto* s_noise = app.add_subcommand("add-noise", "Inject salt-and-pepper noise");
  s_noise->add_option("--p", noise.p, "Corruption probability")->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  s_noise->add_option("--seed", noise.seed)->capture_default_str();
  s_noise->add_option("input", noise.in)->required();
  s_noise->add_option("output", noise.out)->required();
  s_noise->callback([&] {
    action = [&] { save_pgm(inject_spn(load_pgm(noise.in), {noise.p, noise.seed}), noise.out); };
  });

  // psnr
  std::string psnr_a, psnr_b;
  auto* s_psnr = app.add_subcommand("psnr", "Print the PSNR in dB between two images");
  s_psnr->add_option("reference", psnr_a)->required();
  s_psnr->add_option("test", psnr_b)->required();
  s_psnr->callback([&] {
    action = [&] { out << format_psnr(psnr(load_pgm(psnr_a), load_pgm(psnr_b))) << '\n'; };
  });

  // median
  struct {
    int window = 3;
    std::string in, out;
  } med;
  auto* s_median = app.add_subcommand("median", "Median filter with replicated borders");
  s_median->add_option("--window", med.window, "Odd window size")->capture_default_str();
  s_median->add_option("input", med.in)->required();
  s_median->add_option("output", med.out)->required();
  s_median->callback([&] {
    action = [&] { save_pgm(median_filter(load_pgm(med.in), med.window), med.out); };
  });

  // denoise
  PipelineFlags dn_flags;
  struct {
    std::string in, out, log, weights_in, weights_out;
    bool unit = false;
  } dn;
  auto* s_denoise = app.add_subcommand("denoise", "Denoise an image and write a fit log");
  dn_flags.attach(*s_denoise);
  s_denoise->add_flag("--unit-weights", dn.unit, "Skip the fit and use unit weights");
  s_denoise->add_option("--weights-in", dn.weights_in, "Use weights from this file");
  s_denoise->add_option("--weights-out", dn.weights_out, "Save the fitted weights");
  s_denoise->add_option("--log", dn.log, "Fit log path (default: <output>.fit.log)");
  s_denoise->add_option("input", dn.in)->required();
  s_denoise->add_option("output", dn.out)->required();
  s_denoise->callback([&] {
    action = [&] {
      PipelineConfig cfg = dn_flags.config();
      cfg.force_unit_weights = dn.unit;
      if (!dn.weights_in.empty()) cfg.weights_in = dn.weights_in;
      if (!dn.weights_out.empty()) cfg.weights_out = dn.weights_out;
      const DenoiseResult r = denoise_pipeline(load_pgm(dn.in), cfg);
      save_pgm(r.image, dn.out);
      write_fit_log(dn.log.empty() ? dn.out + ".fit.log" : dn.log, r, cfg);
    };
  });

  // fit-weights
  PipelineFlags fw_flags;
  struct {
    std::string in, weights;
    std::optional<double> p_hint;
  } fw;
  auto* s_fit = app.add_subcommand("fit-weights", "Fit recombination weights and save them");
  fw_flags.attach(*s_fit);
  s_fit->add_option("--noise-p", fw.p_hint, "Noise level recorded in the weight file");
  s_fit->add_option("input", fw.in, "Noisy PGM")->required();
  s_fit->add_option("weights", fw.weights, "Output weight file")->required();
  s_fit->callback([&] {
    action = [&] {
      PipelineConfig cfg = fw_flags.config();
      cfg.weights_out = fw.weights;
      cfg.noise_p_hint = fw.p_hint;
      const DenoiseResult r = denoise_pipeline(load_pgm(fw.in), cfg);
      out << "fitted " << r.weights.size() << " weights on " << r.fit->sampled_pixel_count
          << " pixels, objective " << r.fit->objective_history.back() << '\n';
    };
  });

  // apply-weights
  PipelineFlags aw_flags;
  struct {
    std::string weights, in, out;
  } aw;
  auto* s_apply = app.add_subcommand("apply-weights", "Denoise with precomputed weights");
  aw_flags.attach(*s_apply, false);
  s_apply->add_option("weights", aw.weights, "Weight file")->required();
  s_apply->add_option("input", aw.in)->required();
  s_apply->add_option("output", aw.out)->required();
  s_apply->callback([&] {
    action = [&] {
      PipelineConfig cfg = aw_flags.config();
      cfg.weights_in = aw.weights;
      save_pgm(denoise_pipeline(load_pgm(aw.in), cfg).image, aw.out);
    };
  });

  // table1
  PipelineFlags t1_flags;
  struct {
    std::string image, out;
    std::vector<double> ps{0.06, 0.08, 0.10, 0.12, 0.14};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    bool timing = false;
  } t1;
  auto* s_t1 = app.add_subcommand("table1", "Median, unit-weight and fitted PSNR per noise level");
  t1_flags.attach(*s_t1, false);
  s_t1->add_option("--p", t1.ps, "Noise levels")->capture_default_str()->delimiter(',');
  s_t1->add_option("--seeds", t1.seeds, "Realization seeds")->capture_default_str()->delimiter(',');
  s_t1->add_option("--out", t1.out, "CSV path (default: stdout)");
  s_t1->add_flag("--timing", t1.timing, "Fill the wall_ms column");
  s_t1->add_option("image", t1.image, "Clean PGM")->required();
  s_t1->callback([&] {
    action = [&] {
      const auto rows = run_noise_table(image_id(t1.image), load_pgm(t1.image), t1.ps, t1.seeds,
                                        t1_flags.config(), {t1.timing});
      with_output(t1.out, out, [&](std::ostream& os) { write_noise_table_csv(os, rows); });
    };
  });

  // eta-sweep
  PipelineFlags es_flags;
  struct {
    std::string image, out;
    std::vector<int> factors{1, 2, 4, 6, 8, 10};
    double p = 0.1;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    bool timing = false;
  } es;
  auto* s_es = app.add_subcommand("eta-sweep", "PSNR against the grid segmentation factor");
  es_flags.attach(*s_es, false);
  s_es->add_option("--factors", es.factors)->capture_default_str()->delimiter(',');
  s_es->add_option("--p", es.p)->capture_default_str();
  s_es->add_option("--seeds", es.seeds)->capture_default_str()->delimiter(',');
  s_es->add_option("--out", es.out, "CSV path (default: stdout)");
  s_es->add_flag("--timing", es.timing, "Fill the wall_ms column");
  s_es->add_option("image", es.image, "Clean PGM")->required();
  s_es->callback([&] {
    action = [&] {
      const auto rows = run_eta_sweep(image_id(es.image), load_pgm(es.image), es.factors, es.p,
                                      es.seeds, es_flags.config(), {es.timing});
      with_output(es.out, out, [&](std::ostream& os) { write_eta_sweep_csv(os, rows); });
    };
  });

  // weight-stats
  PipelineFlags ws_flags;
  ws_flags.epochs = kStabilityEpochs;
  ws_flags.eta = 0.1;
  struct {
    std::string image, out;
    std::vector<double> ps{0.09, 0.10, 0.11};
    std::vector<std::uint64_t> seeds{1};
  } ws;
  auto* s_ws = app.add_subcommand("weight-stats", "Summary statistics of independently fitted weights");
  ws_flags.attach(*s_ws);
  s_ws->add_option("--p", ws.ps)->capture_default_str()->delimiter(',');
  s_ws->add_option("--seeds", ws.seeds)->capture_default_str()->delimiter(',');
  s_ws->add_option("--out", ws.out, "CSV path (default: stdout)");
  s_ws->add_option("image", ws.image, "Clean PGM")->required();
  s_ws->callback([&] {
    action = [&] {
      const auto rows = run_weight_stability(image_id(ws.image), load_pgm(ws.image), ws.ps,
                                             ws.seeds, ws_flags.config());
      with_output(ws.out, out, [&](std::ostream& os) { write_weight_stats_csv(os, rows); });
    };
  });

  if (!args.empty() && !args[0].starts_with('-') && app.get_subcommand_no_throw(args[0]) == nullptr) {
    err << "cadenoise: unknown subcommand '" << args[0] << "'\n" << app.help();
    return 2;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    const CLI::App* failed = &app;
    for (const CLI::App* sub : app.get_subcommands()) failed = sub;
    err << failed->help();
    return 2;
  }

  try {
    if (action) action();
  } catch (const std::exception& e) {
    err << "cadenoise: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace cadenoise::cli
