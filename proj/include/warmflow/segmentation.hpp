#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "warmflow/flow.hpp"
#include "warmflow/network.hpp"
#include "warmflow/push_relabel.hpp"

namespace warmflow {

struct Image {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint8_t> pixels;  // row-major

  std::uint8_t at(int row, int col) const { return pixels[row * width + col]; }
  friend bool operator==(const Image&, const Image&) = default;
};

// P2 or P5, maxval 1..255, '#' comments in the header.
Image parse_pgm(std::string_view bytes);
Image load_pgm(const std::filesystem::path& path);
std::string encode_pgm(const Image& img, bool binary);

struct Pixel {
  int row = 0;
  int col = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

struct SeedSets {
  std::vector<Pixel> object;
  std::vector<Pixel> background;
};

// One seed per line: "o <row> <col>" or "b <row> <col>", 0-based, with "c"
// comment lines. Seeds are checked against the image in build_seg_network.
SeedSets parse_seeds(std::string_view text);
std::string encode_seeds(const SeedSets& seeds);

struct SegmentationConfig {
  FlowUnits c = 100;
  double sigma = 30.0;
  // Terminal arc capacity; defaults to c * |V|^2.
  std::optional<FlowUnits> m;
};

// floor(c * exp(-(ip - iq)^2 / (2 sigma^2)))
FlowUnits pair_penalty(int ip, int iq, const SegmentationConfig& config);

FlowUnits terminal_capacity(const Image& img, const SegmentationConfig& config);

// Pixel r*W + c, source W*H, sink W*H + 1. Arcs: per pixel in row-major
// order its right pair then its down pair (both directions, zero capacities
// kept), then source -> object seeds, then background seeds -> sink.
Network build_seg_network(const Image& img, const SeedSets& seeds,
                          const SegmentationConfig& config);

// min(old flow, new capacity) arc by arc. Throws InputError unless both
// networks have the same nodes, terminals and arc endpoints.
PseudoFlow project_flow(const Network& old_net, const PseudoFlow& old_flow,
                        const Network& new_net);

// P6 copy of the image with source-side pixels that touch a sink-side
// neighbour painted red.
std::string encode_overlay_ppm(const Image& img, const CutPartition& cut);

struct Frame {
  Image image;
  SeedSets seeds;
};

struct SyntheticSpec {
  int frames = 8;
  int size = 24;
  int square_size = 12;
  int step = 1;
  std::uint64_t noise_seed = 1;
  int object_intensity = 70;
  int background_intensity = 150;
  int noise = 3;  // uniform in [-noise, noise]
};

// Dark square on a light background with uniform noise, moving right
// by `step` per frame. Object seed: centre of the square's sweep. Background
// seeds: the four corners.
std::vector<Frame> generate_synthetic_sequence(const SyntheticSpec& spec);

enum class BenchMode { cold, warm };

const char* to_string(BenchMode m);

struct FrameRow {
  int frame = 0;
  BenchMode mode = BenchMode::cold;
  FlowUnits eta = 0;
  FlowUnits sigma = 0;
  FlowUnits imbalance = 0;
  FlowUnits flow_value = 0;
  FlowUnits cut_capacity = 0;
  SolverStats stats;  // stats.phase names the pipeline phase or "cold"
};

struct SequenceOptions {
  SegmentationConfig config;
  // Warm frames seed from the previous cut; false uses the residual max-flow
  // seeding instead.
  bool seed_with_previous_cut = true;
  int jobs = 1;  // cold mode only
  EngineOptions engine;
};

struct SequenceReport {
  BenchMode mode = BenchMode::cold;
  std::vector<FrameRow> rows;  // warm frames: one row per phase, then "total"
  std::vector<CutPartition> cuts;
  std::vector<FlowUnits> terminal_capacity;
  std::vector<std::int64_t> frame_operations;  // pushes + relabels
};

SequenceReport run_sequence(const std::vector<Frame>& frames, BenchMode mode,
                            const SequenceOptions& options = {});

std::string sequence_csv_header();
// Elapsed times are written as 0 unless `timing` is set, so reports from
// identical runs compare equal byte for byte.
std::string sequence_csv(const SequenceReport& report, bool timing);

}  // namespace warmflow
