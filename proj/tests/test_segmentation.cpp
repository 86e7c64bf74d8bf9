#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "warmflow/oracle.hpp"
#include "warmflow/segmentation.hpp"

namespace warmflow {
namespace {

Image tiny(std::vector<std::uint8_t> px, int w, int h) {
  Image img;
  img.width = w;
  img.height = h;
  img.pixels = std::move(px);
  return img;
}

SeedSets corner_seeds(int w, int h) {
  SeedSets s;
  s.object.push_back({0, 0});
  s.background.push_back({h - 1, w - 1});
  return s;
}

TEST(Pgm, ParsesAsciiWithComments) {
  const Image img = parse_pgm("P2\n# hello\n3 2\n# max\n9\n0 1 2\n3 4 9\n");
  EXPECT_EQ(img.width, 3);
  EXPECT_EQ(img.height, 2);
  EXPECT_EQ(img.maxval, 9);
  EXPECT_EQ(img.pixels, (std::vector<std::uint8_t>{0, 1, 2, 3, 4, 9}));
  EXPECT_EQ(img.at(1, 2), 9);
}

TEST(Pgm, ParsesBinary) {
  std::string bytes = "P5\n2 2\n255\n";
  bytes += std::string{'\x00', '\x10', '\x7f', '\xff'};
  const Image img = parse_pgm(bytes);
  EXPECT_EQ(img.pixels, (std::vector<std::uint8_t>{0, 16, 127, 255}));
}

TEST(Pgm, EncodeRoundTrips) {
  const Image img = tiny({5, 200, 0, 17, 255, 90}, 3, 2);
  EXPECT_EQ(parse_pgm(encode_pgm(img, true)), img);
  EXPECT_EQ(parse_pgm(encode_pgm(img, false)), img);
}

TEST(Pgm, AsciiAndBinaryAgree) {
  const Image a = parse_pgm("P2 2 1 255 7 250");
  std::string bytes = "P5 2 1 255\n";
  bytes += std::string{'\x07', '\xfa'};
  EXPECT_EQ(a, parse_pgm(bytes));
}

TEST(Pgm, RejectsBadInput) {
  EXPECT_THROW(parse_pgm("P6\n1 1\n255\nabc"), InputError);
  EXPECT_THROW(parse_pgm("P2\n0 1\n255\n"), InputError);
  EXPECT_THROW(parse_pgm("P2\n1 1\n256\n0"), InputError);
  EXPECT_THROW(parse_pgm("P2\n1 1\n9\n10"), InputError);
  EXPECT_THROW(parse_pgm("P2\n2 1\n9\n1"), InputError);
  EXPECT_THROW(parse_pgm("P5\n2 2\n255\nab"), InputError);
  EXPECT_THROW(parse_pgm("P2\nx 1\n9\n1"), InputError);
  EXPECT_THROW(parse_pgm(""), InputError);
}

TEST(Seeds, ParseAndEncode) {
  const SeedSets s = parse_seeds("c seeds\no 1 2\nb 0 0\n\nb 3 4\n");
  ASSERT_EQ(s.object.size(), 1u);
  EXPECT_EQ(s.object[0], (Pixel{1, 2}));
  ASSERT_EQ(s.background.size(), 2u);
  EXPECT_EQ(s.background[1], (Pixel{3, 4}));
  EXPECT_EQ(encode_seeds(s), "o 1 2\nb 0 0\nb 3 4\n");
}

TEST(Seeds, MalformedLineReportsNumber) {
  try {
    parse_seeds("o 1 2\nx 1 1\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()), "malformed seed line at line 2");
  }
  EXPECT_THROW(parse_seeds("o 1\n"), InputError);
}

TEST(PairPenalty, Values) {
  const SegmentationConfig cfg;
  EXPECT_EQ(pair_penalty(100, 100, cfg), 100);
  EXPECT_EQ(pair_penalty(70, 100, cfg), 60);   // 100 e^-0.5
  EXPECT_EQ(pair_penalty(70, 150, cfg), 2);    // 100 e^-3.56
  EXPECT_EQ(pair_penalty(70, 73, cfg), 99);
  EXPECT_EQ(pair_penalty(0, 255, cfg), 0);
  for (int a = 0; a < 256; a += 15)
    for (int b = 0; b < 256; b += 17)
      EXPECT_EQ(pair_penalty(a, b, cfg), pair_penalty(b, a, cfg));
}

TEST(SegNetwork, ArcLayout) {
  // 2x2 image, pixels 0..3, s=4, t=5.
  const Image img = tiny({100, 100, 70, 100}, 2, 2);
  const SegmentationConfig cfg;
  const Network net = build_seg_network(img, corner_seeds(2, 2), cfg);
  EXPECT_EQ(net.node_count(), 6);
  EXPECT_EQ(net.source(), 4);
  EXPECT_EQ(net.sink(), 5);
  ASSERT_EQ(net.arc_count(), 10);
  EXPECT_EQ(net.arc(0), (ArcSpec{0, 1, 100}));
  EXPECT_EQ(net.arc(1), (ArcSpec{1, 0, 100}));
  EXPECT_EQ(net.arc(2), (ArcSpec{0, 2, 60}));
  EXPECT_EQ(net.arc(3), (ArcSpec{2, 0, 60}));
  EXPECT_EQ(net.arc(4), (ArcSpec{1, 3, 100}));
  EXPECT_EQ(net.arc(6), (ArcSpec{2, 3, 60}));
  EXPECT_EQ(net.arc(8), (ArcSpec{4, 0, 100 * 36}));
  EXPECT_EQ(net.arc(9), (ArcSpec{3, 5, 100 * 36}));
}

TEST(SegNetwork, TerminalCapacityOverride) {
  const Image img = tiny({1, 2, 3, 4}, 2, 2);
  SegmentationConfig cfg;
  EXPECT_EQ(terminal_capacity(img, cfg), 3600);
  cfg.m = 7;
  EXPECT_EQ(terminal_capacity(img, cfg), 7);
  EXPECT_EQ(build_seg_network(img, corner_seeds(2, 2), cfg).arc(8).capacity, 7);
}

TEST(SegNetwork, RejectsBadSeedsAndConfig) {
  const Image img = tiny({1, 2, 3, 4}, 2, 2);
  SeedSets s = corner_seeds(2, 2);
  s.object.push_back({2, 0});
  EXPECT_THROW(build_seg_network(img, s, {}), InputError);
  s = corner_seeds(2, 2);
  s.background.push_back({0, 0});
  EXPECT_THROW(build_seg_network(img, s, {}), InputError);
  EXPECT_THROW(build_seg_network(img, SeedSets{}, {}), InputError);
  SegmentationConfig cfg;
  cfg.sigma = 0;
  EXPECT_THROW(build_seg_network(img, corner_seeds(2, 2), cfg), InputError);
}

TEST(ProjectFlow, ClampsToNewCapacities) {
  const Image a = tiny({100, 100, 100, 100}, 2, 2);
  const Image b = tiny({100, 40, 100, 100}, 2, 2);
  const Network na = build_seg_network(a, corner_seeds(2, 2), {});
  const Network nb = build_seg_network(b, corner_seeds(2, 2), {});
  PseudoFlow f(na.arc_count());
  f[0] = 100;
  f[2] = 30;
  const PseudoFlow g = project_flow(na, f, nb);
  EXPECT_EQ(g[0], nb.arc(0).capacity);
  EXPECT_LT(g[0], 100);
  EXPECT_EQ(g[2], 30);
}

TEST(ProjectFlow, RejectsDifferentTopology) {
  const Image a = tiny({1, 2, 3, 4}, 2, 2);
  const Image b = tiny({1, 2, 3, 4, 5, 6}, 3, 2);
  const Network na = build_seg_network(a, corner_seeds(2, 2), {});
  const Network nb = build_seg_network(b, corner_seeds(3, 2), {});
  EXPECT_THROW(project_flow(na, PseudoFlow(na.arc_count()), nb), InputError);
  SeedSets moved = corner_seeds(2, 2);
  moved.object[0] = {0, 1};
  const Network nc = build_seg_network(a, moved, {});
  EXPECT_THROW(project_flow(na, PseudoFlow(na.arc_count()), nc), InputError);
}

TEST(Overlay, PaintsBoundaryPixels) {
  const Image img = tiny({10, 20, 30, 40}, 2, 2);
  CutPartition cut;
  cut.side.assign(6, Side::source_side);
  cut.side[1] = Side::sink_side;
  cut.side[3] = Side::sink_side;
  cut.side[5] = Side::sink_side;
  const std::string ppm = encode_overlay_ppm(img, cut);
  const std::string header = "P6\n2 2\n255\n";
  ASSERT_EQ(ppm.size(), header.size() + 12);
  EXPECT_EQ(ppm.substr(0, header.size()), header);
  const auto px = [&](int i, int ch) {
    return static_cast<unsigned char>(ppm[header.size() + 3 * i + ch]);
  };
  EXPECT_EQ(px(0, 0), 255);
  EXPECT_EQ(px(0, 1), 0);
  EXPECT_EQ(px(1, 0), 20);
  EXPECT_EQ(px(1, 1), 20);
  EXPECT_EQ(px(2, 0), 255);
  EXPECT_EQ(px(3, 2), 40);
  cut.side.pop_back();
  EXPECT_THROW(encode_overlay_ppm(img, cut), InputError);
}

TEST(Synthetic, DeterministicAndShaped) {
  SyntheticSpec spec;
  const auto a = generate_synthetic_sequence(spec);
  const auto b = generate_synthetic_sequence(spec);
  ASSERT_EQ(a.size(), 8u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].image, b[i].image);
  const Frame& f0 = a[0];
  EXPECT_EQ(f0.image.width, 24);
  // Square rows 6..17, sweep 19 wide starting at column 2.
  EXPECT_NEAR(f0.image.at(10, 5), 70, 3);
  EXPECT_NEAR(f0.image.at(10, 20), 150, 3);
  EXPECT_NEAR(a[7].image.at(10, 20), 70, 3);
  EXPECT_EQ(f0.seeds.object[0], (Pixel{12, 11}));
  EXPECT_EQ(f0.seeds.background.size(), 4u);
  spec.noise_seed = 2;
  EXPECT_NE(generate_synthetic_sequence(spec)[0].image, f0.image);
}

TEST(Synthetic, RejectsBadSpecs) {
  SyntheticSpec spec;
  spec.square_size = 20;
  EXPECT_THROW(generate_synthetic_sequence(spec), InputError);
  spec = {};
  spec.frames = 0;
  EXPECT_THROW(generate_synthetic_sequence(spec), InputError);
  spec = {};
  spec.noise = -1;
  EXPECT_THROW(generate_synthetic_sequence(spec), InputError);
}

std::vector<Frame> small_sequence(int step) {
  SyntheticSpec spec;
  spec.frames = 4;
  spec.size = 10;
  spec.square_size = 4;
  spec.step = step;
  return generate_synthetic_sequence(spec);
}

TEST(RunSequence, ValuesMatchOracleBothModes) {
  for (const bool prev_cut : {true, false}) {
    SequenceOptions opt;
    opt.seed_with_previous_cut = prev_cut;
    const auto frames = small_sequence(1);
    const SequenceReport cold = run_sequence(frames, BenchMode::cold, opt);
    const SequenceReport warm = run_sequence(frames, BenchMode::warm, opt);
    ASSERT_EQ(cold.cuts.size(), frames.size());
    ASSERT_EQ(warm.cuts.size(), frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const Network net =
          build_seg_network(frames[i].image, frames[i].seeds, opt.config);
      const FlowUnits ref = reference_maxflow(net).value;
      EXPECT_EQ(cold.cuts[i].capacity, ref) << "frame " << i;
      EXPECT_EQ(warm.cuts[i].capacity, ref) << "frame " << i;
      EXPECT_LT(ref, cold.terminal_capacity[i]);
      EXPECT_EQ(make_cut(net, warm.cuts[i].side).capacity, ref);
    }
  }
}

TEST(RunSequence, StillFramesCostNothingWarm) {
  SyntheticSpec spec;
  spec.frames = 2;
  spec.size = 10;
  spec.square_size = 4;
  spec.step = 0;
  spec.noise = 0;
  const auto frames = generate_synthetic_sequence(spec);
  EXPECT_EQ(frames[0].image, frames[1].image);
  for (const bool prev_cut : {true, false}) {
    SequenceOptions opt;
    opt.seed_with_previous_cut = prev_cut;
    const SequenceReport warm = run_sequence(frames, BenchMode::warm, opt);
    EXPECT_EQ(warm.frame_operations[1], 0);
    EXPECT_EQ(warm.rows.back().eta, 0);
    EXPECT_EQ(warm.rows.back().stats.phase, "total");
  }
}

TEST(RunSequence, ParallelColdMatchesSerial) {
  const auto frames = small_sequence(1);
  SequenceOptions opt;
  const std::string serial = sequence_csv(run_sequence(frames, BenchMode::cold, opt), false);
  opt.jobs = 3;
  EXPECT_EQ(sequence_csv(run_sequence(frames, BenchMode::cold, opt), false), serial);
}

TEST(RunSequence, CsvIsReproducible) {
  const auto frames = small_sequence(1);
  const std::string a = sequence_csv(run_sequence(frames, BenchMode::warm), false);
  const std::string b = sequence_csv(run_sequence(frames, BenchMode::warm), false);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("# warmflow-csv v1\n" + sequence_csv_header() + "\n", 0), 0u);
  EXPECT_NE(a.find(",warm,"), std::string::npos);
  EXPECT_THROW(run_sequence({}, BenchMode::cold), InputError);
}

}  // namespace
}  // namespace warmflow
