#include "warmflow/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <optional>
#include <sstream>

#include "warmflow/dimacs.hpp"
#include "warmflow/file_io.hpp"
#include "warmflow/oracle.hpp"
#include "warmflow/prediction_error.hpp"
#include "warmflow/push_relabel.hpp"
#include "warmflow/random_network.hpp"
#include "warmflow/segmentation.hpp"
#include "warmflow/warm_start.hpp"

namespace fs = std::filesystem;

namespace warmflow {

namespace {

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  sink->set_pattern("[%l] %v");
  auto log = std::make_shared<spdlog::logger>("warmflow", sink);
  const char* env = std::getenv("WARMFLOW_LOG");
  const std::string level = env ? env : "off";
  if (level == "debug") {
    log->set_level(spdlog::level::debug);
  } else if (level == "info") {
    log->set_level(spdlog::level::info);
  } else {
    log->set_level(spdlog::level::off);
  }
  return log;
}

std::string csv_versioned(const std::string& header, const std::string& rows) {
  return "# warmflow-csv v1\n" + header + '\n' + rows;
}

SolverStats untimed(SolverStats s, bool timing) {
  if (!timing) s.elapsed_ns = 0;
  return s;
}

std::string frame_name(std::size_t i, const char* ext) {
  std::ostringstream name;
  name << "frame_";
  name.width(3);
  name.fill('0');
  name << i << ext;
  return name.str();
}

struct Common {
  std::string network;
  std::string prediction;
  std::string csv_out;
  bool cut_only = false;
  bool timing = false;
};

EngineOptions engine_with(bool no_global_relabel) {
  EngineOptions e;
  e.global_relabel = !no_global_relabel;
  return e;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  const auto log = make_logger(err);

  CLI::App app{"Warm-started push-relabel max-flow / min-cut", "warmflow"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "warmflow 1.0");

  bool no_global_relabel = false;
  app.add_flag("--no-global-relabel", no_global_relabel,
               "Disable periodic global relabeling");

  Common solve_args;
  auto* solve = app.add_subcommand("solve", "Cold push-relabel on a DIMACS network");
  solve->add_option("network", solve_args.network, "DIMACS max-flow file")->required();
  solve->add_flag("--cut-only", solve_args.cut_only, "Stop once the min cut is known");
  solve->add_option("--csv-out", solve_args.csv_out, "Write solver stats as CSV");
  solve->add_flag("--timing", solve_args.timing, "Keep wall times in CSV output");

  Common warm_args;
  std::optional<FlowUnits> eta;
  bool eta_unknown = false;
  bool early = false;
  auto* warm = app.add_subcommand("warm-solve", "Warm-started solve from a predicted flow");
  warm->add_option("network", warm_args.network, "DIMACS max-flow file")->required();
  warm->add_option("--prediction", warm_args.prediction, "Prediction file")->required();
  auto* eta_opt = warm->add_option("--eta", eta, "Known prediction error")
                      ->check(CLI::NonNegativeNumber);
  auto* eta_unknown_opt =
      warm->add_flag("--eta-unknown", eta_unknown, "Search for the error by doubling");
  eta_opt->excludes(eta_unknown_opt);
  warm->add_flag("--early-termination", early,
                 "Auxiliary solves stop at their min cut");
  warm->add_flag("--cut-only", warm_args.cut_only, "Skip the final flow restoration");
  warm->add_option("--csv-out", warm_args.csv_out, "Write per-phase CSV");
  warm->add_flag("--timing", warm_args.timing, "Keep wall times in CSV output");

  Common error_args;
  bool with_l1 = false;
  auto* error = app.add_subcommand("error", "Prediction error of a predicted flow");
  error->add_option("network", error_args.network, "DIMACS max-flow file")->required();
  error->add_option("--prediction", error_args.prediction, "Prediction file")->required();
  error->add_flag("--l1", with_l1, "Also report the l1 distance to a max-flow");
  error->add_option("--csv-out", error_args.csv_out, "Write the report as CSV");

  std::vector<std::string> frame_paths;
  std::string seeds_path;
  std::string bench_mode = "warm";
  std::string bench_csv;
  std::string overlay_dir;
  int jobs = 1;
  bool bench_timing = false;
  bool seed_residual = false;
  SegmentationConfig seg_config;
  std::optional<FlowUnits> terminal_cap;
  auto* bench = app.add_subcommand("bench-seq", "Segment a PGM sequence, cold or warm");
  bench->add_option("frames", frame_paths, "PGM frames in order")->required();
  bench->add_option("--seeds", seeds_path, "Seed file (o/b row col lines)")->required();
  bench->add_option("--mode", bench_mode, "cold or warm")
      ->check(CLI::IsMember({"cold", "warm"}));
  bench->add_option("--csv-out", bench_csv, "Write the per-frame CSV");
  bench->add_option("--overlay-out", overlay_dir, "Directory for PPM cut overlays");
  bench->add_option("--jobs", jobs, "Worker threads for cold mode")
      ->check(CLI::PositiveNumber);
  bench->add_flag("--timing", bench_timing, "Keep wall times in CSV output");
  bench->add_flag("--seed-residual", seed_residual,
                  "Warm frames seed with a residual max-flow instead of the previous cut");
  bench->add_option("--c", seg_config.c, "Neighbour penalty scale")
      ->check(CLI::PositiveNumber);
  bench->add_option("--sigma", seg_config.sigma, "Intensity noise scale")
      ->check(CLI::PositiveNumber);
  bench->add_option("--terminal-capacity", terminal_cap, "Seed arc capacity")
      ->check(CLI::PositiveNumber);

  std::uint64_t seed = 1;
  std::string random_out;
  std::string random_prediction;
  int perturb_k = 0;
  auto* gen_random = app.add_subcommand("gen-random", "Random DIMACS network");
  gen_random->add_option("--seed", seed, "Generator seed");
  gen_random->add_option("-o,--out", random_out, "Output file (default stdout)");
  gen_random->add_option("--prediction-out", random_prediction,
                         "Also write a perturbed max-flow as a prediction");
  gen_random->add_option("--perturb", perturb_k, "Unit edits for --prediction-out")
      ->check(CLI::NonNegativeNumber);

  std::string seq_dir;
  SyntheticSpec seq_spec;
  auto* gen_seq = app.add_subcommand("gen-seq", "Synthetic moving-square PGM sequence");
  gen_seq->add_option("outdir", seq_dir, "Output directory")->required();
  gen_seq->add_option("--frames", seq_spec.frames, "Frame count");
  gen_seq->add_option("--size", seq_spec.size, "Image side in pixels");
  gen_seq->add_option("--square", seq_spec.square_size, "Square side in pixels");
  gen_seq->add_option("--step", seq_spec.step, "Pixels moved per frame");
  gen_seq->add_option("--seed", seq_spec.noise_seed, "Noise seed");
  gen_seq->add_option("--noise", seq_spec.noise, "Noise amplitude");

  std::string convert_in;
  std::string convert_out;
  std::string convert_to;
  std::string convert_network;
  auto* convert = app.add_subcommand("convert", "Rewrite a file in canonical form");
  convert->add_option("input", convert_in, "DIMACS, PGM or prediction file")->required();
  convert->add_option("output", convert_out, "Output file")->required();
  convert->add_option("--to", convert_to, "dimacs, p2, p5 or prediction")
      ->check(CLI::IsMember({"dimacs", "p2", "p5", "prediction"}));
  convert->add_option("--network", convert_network,
                      "Network the prediction refers to");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const EngineOptions engine = engine_with(no_global_relabel);

    if (solve->parsed()) {
      const Network net = parse_dimacs(read_file(solve_args.network));
      log->info("network: {} nodes, {} arcs", net.node_count(), net.arc_count());
      const GapResult r = solve_cold(
          net, {solve_args.cut_only ? SolveMode::cut_only : SolveMode::full_flow,
                engine});
      if (solve_args.cut_only) {
        out << "cut " << r.cut.capacity << '\n';
      } else {
        const FlowUnits value = flow_accounting(net, r.flow).value;
        if (value != r.cut.capacity)
          throw InvariantViolation("flow value differs from cut capacity");
        out << "flow " << value << '\n';
      }
      log->info("ops {} (pushes {}, relabels {})", r.stats.operations(),
                r.stats.pushes_saturating + r.stats.pushes_nonsaturating,
                r.stats.relabels);
      if (!solve_args.csv_out.empty()) {
        SolverStats s = untimed(r.stats, solve_args.timing);
        s.phase = "cold";
        write_file(solve_args.csv_out,
                   csv_versioned(stats_csv_header(), to_csv_row(s) + '\n'));
      }
      return 0;
    }

    if (warm->parsed()) {
      const Network net = parse_dimacs(read_file(warm_args.network));
      const std::vector<FlowUnits> raw =
          parse_prediction(read_file(warm_args.prediction), net);
      WarmStartOptions options;
      options.eta = eta;
      options.mode = warm_args.cut_only ? SolveMode::cut_only : SolveMode::full_flow;
      options.early_termination = early;
      options.engine = engine;
      Solution sol = warm_start_solve(net, raw, options);
      if (warm_args.cut_only) {
        out << "cut " << sol.value() << '\n';
      } else {
        out << "flow " << flow_accounting(net, sol.flow).value << '\n';
      }
      log->info("{}", summary(sol));
      if (!warm_args.csv_out.empty()) {
        for (auto& p : sol.phases) p.stats = untimed(p.stats, warm_args.timing);
        write_file(warm_args.csv_out,
                   csv_versioned(phase_csv_header(), to_csv_rows(sol)));
      }
      return 0;
    }

    if (error->parsed()) {
      const Network net = parse_dimacs(read_file(error_args.network));
      const PseudoFlow pred = cap_prediction(
          net, parse_prediction(read_file(error_args.prediction), net));
      const PredictionErrorReport rep =
          with_l1 ? prediction_error(net, pred, reference_maxflow(net).flow)
                  : prediction_error(net, pred);
      out << "eta " << rep.eta << " sigma " << rep.sigma << " imbalance "
          << rep.imbalance;
      if (rep.l1_to_reference) out << " l1 " << *rep.l1_to_reference;
      out << '\n';
      if (!error_args.csv_out.empty())
        write_file(error_args.csv_out,
                   csv_versioned(error_csv_header(), to_csv_row(rep) + '\n'));
      return 0;
    }

    if (bench->parsed()) {
      seg_config.m = terminal_cap;
      const SeedSets seeds = parse_seeds(read_file(seeds_path));
      std::vector<Frame> frames;
      for (const auto& path : frame_paths) frames.push_back({load_pgm(path), seeds});
      SequenceOptions options;
      options.config = seg_config;
      options.seed_with_previous_cut = !seed_residual;
      options.jobs = jobs;
      options.engine = engine;
      const BenchMode mode = bench_mode == "cold" ? BenchMode::cold : BenchMode::warm;
      const SequenceReport report = run_sequence(frames, mode, options);
      std::int64_t total = 0;
      for (std::size_t i = 0; i < frames.size(); ++i) {
        out << "frame " << i << " cut " << report.cuts[i].capacity << " ops "
            << report.frame_operations[i] << '\n';
        total += report.frame_operations[i];
        if (report.cuts[i].capacity >= report.terminal_capacity[i])
          log->warn("frame {}: cut uses a seed arc; seeds may be inconsistent", i);
      }
      out << "total ops " << total << '\n';
      if (!bench_csv.empty()) write_file(bench_csv, sequence_csv(report, bench_timing));
      if (!overlay_dir.empty()) {
        fs::create_directories(overlay_dir);
        for (std::size_t i = 0; i < frames.size(); ++i)
          write_file(fs::path(overlay_dir) / frame_name(i, ".ppm"),
                     encode_overlay_ppm(frames[i].image, report.cuts[i]));
      }
      return 0;
    }

    if (gen_random->parsed()) {
      const Network net = random_network({}, seed);
      const std::string text = emit_dimacs(net);
      if (random_out.empty()) {
        out << text;
      } else {
        write_file(random_out, text);
      }
      if (!random_prediction.empty()) {
        const PseudoFlow exact = reference_maxflow(net).flow;
        const PseudoFlow pred = perturb_flow(net, exact, perturb_k, seed);
        write_file(random_prediction, emit_prediction(net, pred.values()));
      }
      return 0;
    }

    if (gen_seq->parsed()) {
      const std::vector<Frame> frames = generate_synthetic_sequence(seq_spec);
      fs::create_directories(seq_dir);
      for (std::size_t i = 0; i < frames.size(); ++i)
        write_file(fs::path(seq_dir) / frame_name(i, ".pgm"),
                   encode_pgm(frames[i].image, true));
      write_file(fs::path(seq_dir) / "seeds.txt", encode_seeds(frames[0].seeds));
      out << "wrote " << frames.size() << " frames to " << seq_dir << '\n';
      return 0;
    }

    if (convert->parsed()) {
      const std::string text = read_file(convert_in);
      std::string kind = convert_to;
      const bool is_pgm = text.rfind("P2", 0) == 0 || text.rfind("P5", 0) == 0;
      if (kind.empty()) {
        if (!convert_network.empty()) {
          kind = "prediction";
        } else if (is_pgm) {
          kind = text.rfind("P5", 0) == 0 ? "p5" : "p2";
        } else {
          kind = "dimacs";
        }
      }
      if (kind == "dimacs") {
        write_file(convert_out, emit_dimacs(parse_dimacs(text)));
      } else if (kind == "p2" || kind == "p5") {
        write_file(convert_out, encode_pgm(parse_pgm(text), kind == "p5"));
      } else {
        if (convert_network.empty())
          throw InputError("converting a prediction needs --network");
        const Network net = parse_dimacs(read_file(convert_network));
        write_file(convert_out, emit_prediction(net, parse_prediction(text, net)));
      }
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace warmflow
