#include "warmflow/segmentation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "warmflow/file_io.hpp"
#include "warmflow/prediction_error.hpp"
#include "warmflow/warm_start.hpp"

namespace warmflow {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::string token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() &&
           !std::isspace(static_cast<unsigned char>(bytes_[pos_])) &&
           bytes_[pos_] != '#')
      ++pos_;
    if (start == pos_) throw InputError("PGM: truncated header");
    return std::string(bytes_.substr(start, pos_ - start));
  }

  int number(const char* what) {
    const std::string t = token();
    int value = 0;
    for (const char ch : t) {
      if (!std::isdigit(static_cast<unsigned char>(ch)) || value > 1'000'000)
        throw InputError(std::string("PGM: bad ") + what + " '" + t + "'");
      value = value * 10 + (ch - '0');
    }
    return value;
  }

  // P5: exactly one whitespace byte separates maxval from the raster.
  void single_space() {
    if (pos_ >= bytes_.size() ||
        !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
      throw InputError("PGM: missing separator before raster");
    ++pos_;
  }

  std::string_view rest() const { return bytes_.substr(pos_); }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image parse_pgm(std::string_view bytes) {
  HeaderReader reader(bytes);
  const std::string magic = reader.token();
  if (magic != "P2" && magic != "P5")
    throw InputError("unsupported image format '" + magic + "'");
  Image img;
  img.width = reader.number("width");
  img.height = reader.number("height");
  img.maxval = reader.number("maxval");
  if (img.width <= 0 || img.height <= 0)
    throw InputError("PGM: dimensions must be positive");
  if (img.maxval < 1 || img.maxval > 255)
    throw InputError("PGM: maxval must be in 1..255");
  const std::size_t count =
      static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  img.pixels.resize(count);
  if (magic == "P5") {
    reader.single_space();
    const std::string_view raster = reader.rest();
    if (raster.size() < count) throw InputError("PGM: truncated raster");
    for (std::size_t i = 0; i < count; ++i) {
      img.pixels[i] = static_cast<std::uint8_t>(raster[i]);
      if (img.pixels[i] > img.maxval)
        throw InputError("PGM: pixel above maxval");
    }
    return img;
  }
  for (std::size_t i = 0; i < count; ++i) {
    int v = 0;
    try {
      v = reader.number("pixel");
    } catch (const InputError&) {
      throw InputError("PGM: truncated or malformed raster at pixel " +
                       std::to_string(i));
    }
    if (v > img.maxval) throw InputError("PGM: pixel above maxval");
    img.pixels[i] = static_cast<std::uint8_t>(v);
  }
  return img;
}

Image load_pgm(const std::filesystem::path& path) {
  return parse_pgm(read_file(path));
}

std::string encode_pgm(const Image& img, bool binary) {
  std::string out = (binary ? "P5\n" : "P2\n") + std::to_string(img.width) +
                    ' ' + std::to_string(img.height) + '\n' +
                    std::to_string(img.maxval) + '\n';
  if (binary) {
    out.append(img.pixels.begin(), img.pixels.end());
    return out;
  }
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      if (c > 0) out += ' ';
      out += std::to_string(img.at(r, c));
    }
    out += '\n';
  }
  return out;
}

SeedSets parse_seeds(std::string_view text) {
  SeedSets seeds;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind) || kind == "c") continue;
    Pixel p;
    std::string extra;
    if ((kind != "o" && kind != "b") || !(fields >> p.row >> p.col) ||
        (fields >> extra))
      throw InputError("malformed seed line at line " + std::to_string(number));
    (kind == "o" ? seeds.object : seeds.background).push_back(p);
  }
  return seeds;
}

std::string encode_seeds(const SeedSets& seeds) {
  std::string out;
  for (const Pixel& p : seeds.object)
    out += "o " + std::to_string(p.row) + ' ' + std::to_string(p.col) + '\n';
  for (const Pixel& p : seeds.background)
    out += "b " + std::to_string(p.row) + ' ' + std::to_string(p.col) + '\n';
  return out;
}

FlowUnits pair_penalty(int ip, int iq, const SegmentationConfig& config) {
  const double d = ip - iq;
  return static_cast<FlowUnits>(std::floor(
      static_cast<double>(config.c) *
      std::exp(-(d * d) / (2.0 * config.sigma * config.sigma))));
}

FlowUnits terminal_capacity(const Image& img, const SegmentationConfig& config) {
  if (config.m) return *config.m;
  const FlowUnits v = static_cast<FlowUnits>(img.width) * img.height + 2;
  return config.c * v * v;
}

Network build_seg_network(const Image& img, const SeedSets& seeds,
                          const SegmentationConfig& config) {
  if (config.c < 1 || !(config.sigma > 0))
    throw InputError("segmentation needs c >= 1 and sigma > 0");
  if (seeds.object.empty() || seeds.background.empty())
    throw InputError("both seed sets must be nonempty");
  const int w = img.width;
  const int h = img.height;
  const auto id = [w](int r, int c) { return r * w + c; };
  const auto check = [&](const Pixel& p) {
    if (p.row < 0 || p.row >= h || p.col < 0 || p.col >= w)
      throw InputError("seed (" + std::to_string(p.row) + ", " +
                       std::to_string(p.col) + ") outside the image");
  };
  for (const Pixel& p : seeds.object) check(p);
  for (const Pixel& p : seeds.background) {
    check(p);
    for (const Pixel& q : seeds.object)
      if (p == q) throw InputError("a pixel cannot seed both sides");
  }
  const FlowUnits m = terminal_capacity(img, config);
  const NodeId s = w * h;
  const NodeId t = w * h + 1;

  std::vector<ArcSpec> arcs;
  arcs.reserve(4 * static_cast<std::size_t>(w) * h + seeds.object.size() +
               seeds.background.size());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (c + 1 < w) {
        const FlowUnits beta = pair_penalty(img.at(r, c), img.at(r, c + 1), config);
        arcs.push_back({id(r, c), id(r, c + 1), beta});
        arcs.push_back({id(r, c + 1), id(r, c), beta});
      }
      if (r + 1 < h) {
        const FlowUnits beta = pair_penalty(img.at(r, c), img.at(r + 1, c), config);
        arcs.push_back({id(r, c), id(r + 1, c), beta});
        arcs.push_back({id(r + 1, c), id(r, c), beta});
      }
    }
  }
  for (const Pixel& p : seeds.object) arcs.push_back({s, id(p.row, p.col), m});
  for (const Pixel& p : seeds.background)
    arcs.push_back({id(p.row, p.col), t, m});
  return Network::build(w * h + 2, arcs, s, t);
}

PseudoFlow project_flow(const Network& old_net, const PseudoFlow& old_flow,
                        const Network& new_net) {
  if (old_net.node_count() != new_net.node_count() ||
      old_net.arc_count() != new_net.arc_count() ||
      old_net.source() != new_net.source() || old_net.sink() != new_net.sink())
    throw InputError("projected networks differ in topology");
  check_capacities(old_net, old_flow);
  PseudoFlow f(new_net.arc_count());
  for (ArcId a = 0; a < new_net.arc_count(); ++a) {
    const ArcSpec& before = old_net.arc(a);
    const ArcSpec& after = new_net.arc(a);
    if (before.tail != after.tail || before.head != after.head)
      throw InputError("projected networks differ at arc " + std::to_string(a));
    f[a] = std::min(old_flow[a], after.capacity);
  }
  return f;
}

std::string encode_overlay_ppm(const Image& img, const CutPartition& cut) {
  const int w = img.width;
  const int h = img.height;
  if (cut.side.size() != static_cast<std::size_t>(w) * h + 2)
    throw InputError("cut does not match the image");
  std::string out = "P6\n" + std::to_string(w) + ' ' + std::to_string(h) +
                    "\n255\n";
  const auto sink = [&](int r, int c) {
    return cut.side[r * w + c] == Side::sink_side;
  };
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      bool boundary = false;
      if (!sink(r, c)) {
        boundary = (r > 0 && sink(r - 1, c)) || (r + 1 < h && sink(r + 1, c)) ||
                   (c > 0 && sink(r, c - 1)) || (c + 1 < w && sink(r, c + 1));
      }
      const auto g = static_cast<char>(img.at(r, c) * 255 / img.maxval);
      if (boundary) {
        out += static_cast<char>(255);
        out += '\0';
        out += '\0';
      } else {
        out += g;
        out += g;
        out += g;
      }
    }
  }
  return out;
}

std::vector<Frame> generate_synthetic_sequence(const SyntheticSpec& spec) {
  if (spec.frames < 1 || spec.size < 2 || spec.square_size < 1 ||
      spec.step < 0 || spec.noise < 0)
    throw InputError("synthetic sequence needs frames >= 1, size >= 2, "
                     "square >= 1, step >= 0");
  const int sweep = spec.square_size + spec.step * (spec.frames - 1);
  if (sweep > spec.size || spec.square_size > spec.size)
    throw InputError("square does not stay inside the image");
  const int top = (spec.size - spec.square_size) / 2;
  const int left = (spec.size - sweep) / 2;

  SeedSets seeds;
  seeds.object.push_back({top + spec.square_size / 2, left + sweep / 2});
  const int last = spec.size - 1;
  seeds.background = {{0, 0}, {0, last}, {last, 0}, {last, last}};

  std::mt19937_64 rng(spec.noise_seed);
  std::vector<Frame> frames;
  for (int f = 0; f < spec.frames; ++f) {
    Frame frame;
    frame.seeds = seeds;
    Image& img = frame.image;
    img.width = img.height = spec.size;
    img.pixels.resize(static_cast<std::size_t>(spec.size) * spec.size);
    const int col0 = left + f * spec.step;
    for (int r = 0; r < spec.size; ++r) {
      for (int c = 0; c < spec.size; ++c) {
        const bool inside = r >= top && r < top + spec.square_size &&
                            c >= col0 && c < col0 + spec.square_size;
        const int noise =
            static_cast<int>(rng() % (2 * spec.noise + 1)) - spec.noise;
        const int value =
            (inside ? spec.object_intensity : spec.background_intensity) + noise;
        img.pixels[r * spec.size + c] =
            static_cast<std::uint8_t>(std::clamp(value, 0, 255));
      }
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

const char* to_string(BenchMode m) {
  return m == BenchMode::cold ? "cold" : "warm";
}

namespace {

struct ColdFrame {
  Network net;
  GapResult result;
  PredictionErrorReport error;
};

ColdFrame solve_cold_frame(const Frame& frame, const SequenceOptions& options) {
  ColdFrame out;
  out.net = build_seg_network(frame.image, frame.seeds, options.config);
  out.result = solve_cold(out.net, {SolveMode::full_flow, options.engine});
  out.error = prediction_error(out.net, PseudoFlow::zero(out.net));
  return out;
}

FrameRow cold_row(int index, BenchMode mode, const ColdFrame& cf) {
  FrameRow row;
  row.frame = index;
  row.mode = mode;
  row.eta = cf.error.eta;
  row.sigma = cf.error.sigma;
  row.imbalance = cf.error.imbalance;
  row.flow_value = flow_accounting(cf.net, cf.result.flow).value;
  row.cut_capacity = cf.result.cut.capacity;
  row.stats = cf.result.stats;
  row.stats.phase = "cold";
  return row;
}

}  // namespace

SequenceReport run_sequence(const std::vector<Frame>& frames, BenchMode mode,
                            const SequenceOptions& options) {
  if (frames.empty()) throw InputError("empty frame sequence");
  SequenceReport report;
  report.mode = mode;
  const auto n = frames.size();

  if (mode == BenchMode::cold) {
    std::vector<ColdFrame> solved(n);
    const auto jobs = static_cast<std::size_t>(std::max(1, options.jobs));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (std::size_t j = 0; j < jobs; ++j) {
      pool.emplace_back([&, j] {
        try {
          for (std::size_t i = j; i < n; i += jobs)
            solved[i] = solve_cold_frame(frames[i], options);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (std::size_t i = 0; i < n; ++i) {
      report.rows.push_back(cold_row(static_cast<int>(i), mode, solved[i]));
      report.cuts.push_back(solved[i].result.cut);
      report.terminal_capacity.push_back(
          terminal_capacity(frames[i].image, options.config));
      report.frame_operations.push_back(solved[i].result.stats.operations());
    }
    return report;
  }

  const ColdFrame first = solve_cold_frame(frames[0], options);
  report.rows.push_back(cold_row(0, mode, first));
  report.cuts.push_back(first.result.cut);
  report.terminal_capacity.push_back(
      terminal_capacity(frames[0].image, options.config));
  report.frame_operations.push_back(first.result.stats.operations());

  Network prev_net = first.net;
  PseudoFlow prev_flow = remove_flow_cycles(first.net, first.result.flow);
  CutPartition prev_cut = first.result.cut;
  for (std::size_t i = 1; i < n; ++i) {
    const Network net =
        build_seg_network(frames[i].image, frames[i].seeds, options.config);
    const PseudoFlow prediction = project_flow(prev_net, prev_flow, net);
    const PredictionErrorReport error = prediction_error(net, prediction);

    WarmStartOptions wo;
    wo.engine = options.engine;
    if (options.seed_with_previous_cut) {
      wo.strategy = SeedStrategy::saturate_predicted_cut;
      wo.predicted_cut = prev_cut.side;
    }
    const Solution sol = warm_start_solve(net, prediction.values(), wo);
    const FlowUnits value = flow_accounting(net, sol.flow).value;
    const auto row_for = [&](const SolverStats& stats) {
      FrameRow row;
      row.frame = static_cast<int>(i);
      row.mode = mode;
      row.eta = error.eta;
      row.sigma = error.sigma;
      row.imbalance = error.imbalance;
      row.flow_value = value;
      row.cut_capacity = sol.cut.capacity;
      row.stats = stats;
      return row;
    };
    for (const auto& phase : sol.phases) report.rows.push_back(row_for(phase.stats));
    const SolverStats total = sol.total_stats();
    report.rows.push_back(row_for(total));
    report.cuts.push_back(sol.cut);
    report.terminal_capacity.push_back(
        terminal_capacity(frames[i].image, options.config));
    report.frame_operations.push_back(total.operations());

    prev_net = net;
    prev_flow = remove_flow_cycles(net, sol.flow);
    prev_cut = sol.cut;
  }
  return report;
}

std::string sequence_csv_header() {
  return "frame,mode,eta,sigma,imbalance,flow_value,cut_capacity,pushes_sat,"
         "pushes_unsat,relabels,gap_events,global_relabels,phase,elapsed_ns";
}

std::string sequence_csv(const SequenceReport& report, bool timing) {
  std::ostringstream out;
  out << "# warmflow-csv v1\n" << sequence_csv_header() << '\n';
  for (const FrameRow& r : report.rows) {
    out << r.frame << ',' << to_string(r.mode) << ',' << r.eta << ','
        << r.sigma << ',' << r.imbalance << ',' << r.flow_value << ','
        << r.cut_capacity << ',' << r.stats.pushes_saturating << ','
        << r.stats.pushes_nonsaturating << ',' << r.stats.relabels << ','
        << r.stats.gap_events << ',' << r.stats.global_relabels << ','
        << r.stats.phase << ',' << (timing ? r.stats.elapsed_ns : 0) << '\n';
  }
  return out.str();
}

}  // namespace warmflow
