#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "warmflow/cli.hpp"
#include "warmflow/dimacs.hpp"
#include "warmflow/file_io.hpp"
#include "warmflow/oracle.hpp"
#include "warmflow/segmentation.hpp"

namespace fs = std::filesystem;

namespace warmflow {
namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("warmflow_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write_file(path("net_a.dimacs"), "p max 3 2\nn 1 s\nn 3 t\na 1 2 3\na 2 3 2\n");
    write_file(path("zero.txt"), "c nothing predicted\n");
    write_file(path("exact.txt"), "f 1 2 2\nf 2 3 2\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, SolvePrintsFlow) {
  const Outcome r = run({"solve", path("net_a.dimacs")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "flow 2\n");
}

TEST_F(Cli, SolveCutOnly) {
  const Outcome r = run({"solve", path("net_a.dimacs"), "--cut-only"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "cut 2\n");
}

TEST_F(Cli, WarmSolveEtaUnknownCutOnly) {
  const Outcome r = run({"warm-solve", path("net_a.dimacs"), "--prediction",
                     path("zero.txt"), "--eta-unknown", "--cut-only"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "cut 2\n");
}

TEST_F(Cli, WarmSolveVariants) {
  for (const std::vector<std::string> extra :
       {std::vector<std::string>{}, {"--eta", "2"}, {"--early-termination"},
        {"--eta-unknown", "--early-termination"}}) {
    std::vector<std::string> args{"warm-solve", path("net_a.dimacs"),
                                  "--prediction", path("exact.txt")};
    args.insert(args.end(), extra.begin(), extra.end());
    const Outcome r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "flow 2\n");
  }
}

TEST_F(Cli, EtaFlagsAreExclusive) {
  const Outcome r = run({"warm-solve", path("net_a.dimacs"), "--prediction",
                     path("zero.txt"), "--eta", "2", "--eta-unknown"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, ErrorReport) {
  Outcome r = run({"error", path("net_a.dimacs"), "--prediction", path("zero.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "eta 2 sigma 2 imbalance 0\n");
  r = run({"error", path("net_a.dimacs"), "--prediction", path("zero.txt"), "--l1"});
  EXPECT_EQ(r.out, "eta 2 sigma 2 imbalance 0 l1 4\n");
}

TEST_F(Cli, ErrorCsv) {
  const Outcome r = run({"error", path("net_a.dimacs"), "--prediction", path("zero.txt"),
                     "--csv-out", path("err.csv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(read_file(path("err.csv")),
            "# warmflow-csv v1\nsigma,imbalance,eta,l1\n2,0,2,\n");
}

TEST_F(Cli, BadInputExitsOne) {
  write_file(path("bad.dimacs"), "p max 3 2\nn 1 s\nn 3 t\na 1 2 3\n");
  Outcome r = run({"solve", path("bad.dimacs")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err, "error: arc count mismatch at line 4\n");
  r = run({"solve", path("missing.dimacs")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("error: cannot open", 0), 0u);
  write_file(path("bad_pred.txt"), "f 1 3 1\n");
  r = run({"warm-solve", path("net_a.dimacs"), "--prediction", path("bad_pred.txt")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err, "error: no arc 1 -> 3 at line 1\n");
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"solve"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"--version"}).code, 0);
}

TEST_F(Cli, SolveCsvIsDeterministic) {
  ASSERT_EQ(run({"solve", path("net_a.dimacs"), "--csv-out", path("a.csv")}).code, 0);
  ASSERT_EQ(run({"solve", path("net_a.dimacs"), "--csv-out", path("b.csv")}).code, 0);
  const std::string a = read_file(path("a.csv"));
  EXPECT_EQ(a, read_file(path("b.csv")));
  EXPECT_EQ(a.rfind("# warmflow-csv v1\n", 0), 0u);
  EXPECT_NE(a.find(",cold,0\n"), std::string::npos);
}

TEST_F(Cli, WarmSolveCsvListsPhases) {
  ASSERT_EQ(run({"warm-solve", path("net_a.dimacs"), "--prediction", path("zero.txt"),
                 "--csv-out", path("w.csv")})
                .code,
            0);
  const std::string csv = read_file(path("w.csv"));
  EXPECT_EQ(csv.rfind("# warmflow-csv v1\n", 0), 0u);
  EXPECT_GE(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST_F(Cli, GenRandomMatchesOracle) {
  const Outcome r = run({"gen-random", "--seed", "5", "-o", path("r.dimacs"),
                     "--prediction-out", path("r.txt"), "--perturb", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Network net = parse_dimacs(read_file(path("r.dimacs")));
  EXPECT_EQ(net.node_count(), 8);
  const Outcome s = run({"warm-solve", path("r.dimacs"), "--prediction", path("r.txt")});
  EXPECT_EQ(s.out, "flow " + std::to_string(reference_maxflow(net).value) + "\n");
  EXPECT_EQ(run({"gen-random", "--seed", "5"}).out, read_file(path("r.dimacs")));
}

TEST_F(Cli, GenSeqThenBench) {
  const std::string seq = path("seq");
  Outcome r = run({"gen-seq", seq, "--frames", "3", "--size", "10", "--square", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "wrote 3 frames to " + seq + "\n");
  ASSERT_TRUE(fs::exists(seq + "/frame_002.pgm"));

  std::vector<std::string> args{"bench-seq", seq + "/frame_000.pgm",
                                seq + "/frame_001.pgm", seq + "/frame_002.pgm",
                                "--seeds", seq + "/seeds.txt"};
  std::vector<std::string> cold = args;
  cold.insert(cold.end(), {"--mode", "cold", "--csv-out", path("cold.csv")});
  std::vector<std::string> warm = args;
  warm.insert(warm.end(), {"--mode", "warm", "--overlay-out", path("ov")});
  const Outcome c = run(cold);
  const Outcome w = run(warm);
  ASSERT_EQ(c.code, 0) << c.err;
  ASSERT_EQ(w.code, 0) << w.err;

  const SeedSets seeds = parse_seeds(read_file(seq + "/seeds.txt"));
  for (int i = 0; i < 3; ++i) {
    const Image img = load_pgm(seq + "/frame_00" + std::to_string(i) + ".pgm");
    const FlowUnits ref = reference_maxflow(build_seg_network(img, seeds, {})).value;
    const std::string prefix = "frame " + std::to_string(i) + " cut " +
                               std::to_string(ref) + " ops ";
    EXPECT_NE(c.out.find(prefix), std::string::npos) << c.out;
    EXPECT_NE(w.out.find(prefix), std::string::npos) << w.out;
  }
  EXPECT_NE(c.out.find("total ops "), std::string::npos);
  EXPECT_TRUE(fs::exists(path("ov/frame_001.ppm")));
  EXPECT_EQ(read_file(path("cold.csv")).rfind("# warmflow-csv v1\n", 0), 0u);

  std::vector<std::string> bad = args;
  bad.insert(bad.end(), {"--mode", "lukewarm"});
  EXPECT_EQ(run(bad).code, 1);
}

TEST_F(Cli, ConvertCanonicalises) {
  write_file(path("messy.dimacs"), "c hi\np max 3 2\nn 3 t\nn 1 s\na 1 2 3\n\na 2 3 2\n");
  ASSERT_EQ(run({"convert", path("messy.dimacs"), path("clean.dimacs")}).code, 0);
  EXPECT_EQ(read_file(path("clean.dimacs")),
            "p max 3 2\nn 1 s\nn 3 t\na 1 2 3\na 2 3 2\n");

  write_file(path("img.pgm"), "P2\n# c\n2 1\n255\n7 250\n");
  ASSERT_EQ(run({"convert", path("img.pgm"), path("img5.pgm"), "--to", "p5"}).code, 0);
  EXPECT_EQ(load_pgm(path("img5.pgm")), load_pgm(path("img.pgm")));
  ASSERT_EQ(run({"convert", path("img5.pgm"), path("img2.pgm"), "--to", "p2"}).code, 0);
  EXPECT_EQ(read_file(path("img2.pgm")), encode_pgm(load_pgm(path("img.pgm")), false));
  ASSERT_EQ(run({"convert", path("img5.pgm"), path("same.pgm")}).code, 0);
  EXPECT_EQ(read_file(path("same.pgm")), read_file(path("img5.pgm")));

  write_file(path("p.txt"), "c x\nf 2 3 1\nf 1 2 2\n");
  ASSERT_EQ(run({"convert", path("p.txt"), path("p2.txt"), "--network",
                 path("net_a.dimacs")})
                .code,
            0);
  EXPECT_EQ(read_file(path("p2.txt")), "f 1 2 2\nf 2 3 1\n");
  EXPECT_EQ(run({"convert", path("p.txt"), path("p3.txt"), "--to", "prediction"}).code, 1);
}

}  // namespace
}  // namespace warmflow
