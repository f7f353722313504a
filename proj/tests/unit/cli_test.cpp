// Copyright 2026 The qpolar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "qpolar/cli/commands.hpp"
#include "qpolar/cli/matrix_io.hpp"
#include "qpolar/cli/report.hpp"
#include "qpolar/cli/verify.hpp"
#include "test_util.hpp"

namespace qpolar::cli {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("qpolar_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
};

// ---- report plumbing ----

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e-9), "1e-09");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Report, RenderSectionsAndVerdict) {
  Report r("demo");
  r.config("mode", "exact");
  r.metric("error", 0.25);
  r.verdict("small", true);
  r.timing("total_seconds", 1.5);
  const std::string text = r.render();
  EXPECT_NE(text.find("# qpolar report\ncommand = demo\n"), std::string::npos);
  EXPECT_NE(text.find("[config]\nmode = exact\n"), std::string::npos);
  EXPECT_NE(text.find("[metrics]\nerror = 0.25\n"), std::string::npos);
  EXPECT_NE(text.find("small = pass\noverall = pass\n"), std::string::npos);
  EXPECT_NE(text.find("[timings]"), std::string::npos);
  EXPECT_EQ(strip_timings(text), r.render(false));
  r.verdict("broken", false);
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.render().find("overall = FAIL"), std::string::npos);
}

TEST(Report, MergePrefixesKeys) {
  Report inner("x");
  inner.metric("m", 1.0);
  inner.verdict("v", false);
  Report outer("verify");
  outer.merge("suite.item.", inner);
  EXPECT_NE(outer.render().find("suite.item.m = 1"), std::string::npos);
  EXPECT_FALSE(outer.passed());
}

// ---- file formats ----

TEST_F(CliFiles, MatrixRoundTripAcceptsIntegerLiterals) {
  const std::string p = write("m.json", R"({"rows": 1, "cols": 2, "data": [[1, 0], [0.5, -2]]})");
  const MatrixFile f = read_matrix_file(p);
  EXPECT_EQ(f.matrix, (ComplexMatrix{{1.0, cplx(0.5, -2.0)}}));
  EXPECT_FALSE(f.split.has_value());
  Rng rng(1);
  const ComplexMatrix m = ginibre(3, 2, rng);
  const std::string q = write("r.json", matrix_json(m, 1));
  const MatrixFile back = read_matrix_file(q);
  EXPECT_EQ(back.matrix, m);
  EXPECT_EQ(back.split, 1u);
}

TEST_F(CliFiles, InstanceRoundTrips) {
  Rng rng(2);
  const ProcrustesInstance inst = random_procrustes(2, 3, 4, false, rng);
  const ProcrustesInstance back = read_procrustes_file(write("p.json", procrustes_json(inst)));
  EXPECT_EQ(back.inputs(), inst.inputs());
  EXPECT_EQ(back.outputs(), inst.outputs());
  const PGMInstance pgm = random_pgm(3, 2, rng);
  const ComplexMatrix rho = random_density(3, rng);
  const PGMFile pf = read_pgm_file(write("g.json", pgm_json(pgm, rho)));
  EXPECT_EQ(pf.instance.matrix(), pgm.matrix());
  ASSERT_TRUE(pf.rho.has_value());
  EXPECT_EQ(*pf.rho, rho);
}

TEST_F(CliFiles, ReaderErrorCodes) {
  try {
    read_matrix_file(path("missing.json"));
    FAIL();
  } catch (const CliError& e) {
    EXPECT_EQ(e.code(), kExitUnreadableFile);
  }
  for (const char* text : {R"({"rows": 2)", R"({"rows": 2, "cols": 2, "data": [[1, 0]]})",
                           R"({"rows": 1, "cols": 1, "data": [["a", 0]]})"}) {
    try {
      read_matrix_file(write("bad.json", text));
      FAIL() << text;
    } catch (const CliError& e) {
      EXPECT_EQ(e.code(), kExitMalformedInput) << text;
    }
  }
}

// ---- command line ----

TEST(Cli, EveryOperationIsReachable) {
  const std::vector<std::string> operations = {
      "svd", "classical_polar", "hermitian_eig", "matrix_exp_hermitian", "closest_positive",
      "frobenius_distance", "embed", "eigenstructure", "inject_right", "inject_left",
      "project_blocks", "exact_spectral_transform", "qpe_correlate", "apply_phase_function",
      "qpe_uncompute", "spectral_transform_qpe", "apply_polar_isometry",
      "apply_polar_wellconditioned", "evolve_positive_factor", "evolve_generalized",
      "build_pair_state", "reduced_density", "dme_step", "partial_swap_channel",
      "effective_hamiltonian_evolution", "solve_procrustes_classical", "apply_procrustes_quantum",
      "isolate_offdiagonal", "trotter_offdiagonal_evolution", "hsvt_transform", "pgm_vectors",
      "pgm_probabilities", "pgm_via_polar", "parse_and_dispatch", "generate_random_instance"};
  std::set<std::string> covered;
  for (const CommandCoverage& c : coverage_table()) {
    covered.insert(c.operations.begin(), c.operations.end());
    if (c.command != "*") {
      EXPECT_EQ(run_cli({c.command, "--help"}).code, kExitPass) << c.command;
    }
  }
  for (const std::string& op : operations) EXPECT_TRUE(covered.count(op)) << op;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"polar"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).code, kExitPass);
}

TEST_F(CliFiles, FileAndValueErrors) {
  const RunResult missing = run_cli({"polar", "--input", path("nope.json")});
  EXPECT_EQ(missing.code, kExitUnreadableFile);
  EXPECT_EQ(std::count(missing.err.begin(), missing.err.end(), '\n'), 1);
  EXPECT_EQ(run_cli({"polar", "--input", write("bad.json", "{\"rows\": 2")}).code,
            kExitMalformedInput);
  const std::string a = write("a.json", matrix_json(ComplexMatrix::identity(2)));
  EXPECT_EQ(run_cli({"polar", "--input", a, "--bits", "0"}).code, kExitInvalidValue);
  EXPECT_EQ(run_cli({"polar", "--input", a, "--mode", "fast"}).code, kExitInvalidValue);
  EXPECT_EQ(run_cli({"polar", "--input", a, "--kappa-tilde", "0.5"}).code, kExitInvalidValue);
  EXPECT_EQ(run_cli({"evolve", "--input", a, "--function", "nope:odd"}).code, kExitInvalidValue);
  EXPECT_EQ(run_cli({"generate", "--kind", "matrix", "--dims", "2"}).code, kExitInvalidValue);
  EXPECT_EQ(run_cli({"hsvt", "--input", a, "--split", "2"}).code, kExitInvalidValue);
}

TEST_F(CliFiles, PolarOnIdentity) {
  const std::string a = write("a.json", matrix_json(ComplexMatrix::identity(2)));
  const RunResult r = run_cli({"polar", "--input", a, "--no-timings"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  EXPECT_NE(r.out.find("isometry = [[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]"), std::string::npos);
  EXPECT_NE(r.out.find("\nfidelity = 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("overall = pass"), std::string::npos);
  EXPECT_EQ(r.out.find("[timings]"), std::string::npos);
}

TEST_F(CliFiles, EvolveAtZeroTimeIsIdentity) {
  Rng rng(3);
  const std::string a = write("a.json", matrix_json(ginibre(2, 3, rng)));
  const RunResult r = run_cli({"evolve", "--input", a, "--time", "0", "--no-timings"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  EXPECT_NE(r.out.find("\nfidelity = 1\n"), std::string::npos);
}

TEST_F(CliFiles, ReportWrittenToOutputPath) {
  const std::string a = write("a.json", matrix_json(ComplexMatrix::identity(2)));
  const RunResult r = run_cli({"polar", "--input", a, "--output", path("report.txt")});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_EQ(slurp(path("report.txt")).rfind("# qpolar report\ncommand = polar\n", 0), 0u);
}

TEST_F(CliFiles, EveryRunCommandPassesOnGeneratedInput) {
  ASSERT_EQ(run_cli({"generate", "--kind", "matrix", "--dims", "3,2", "--seed", "4", "--output",
                     path("m.json")}).code, kExitPass);
  ASSERT_EQ(run_cli({"generate", "--kind", "procrustes", "--dims", "2,3,3", "--seed", "4",
                     "--output", path("p.json")}).code, kExitPass);
  ASSERT_EQ(run_cli({"generate", "--kind", "pgm", "--dims", "3,3", "--seed", "4", "--output",
                     path("g.json")}).code, kExitPass);
  ASSERT_EQ(run_cli({"generate", "--kind", "split-hamiltonian", "--dims", "2,3", "--seed", "4",
                     "--output", path("s.json")}).code, kExitPass);
  const std::vector<std::vector<std::string>> commands = {
      {"polar", "--input", path("m.json")},
      {"polar", "--input", path("m.json"), "--kappa-tilde", "3"},
      {"evolve", "--input", path("m.json"), "--time", "1.5"},
      {"evolve", "--input", path("m.json"), "--time", "1", "--function", "sin:odd"},
      {"procrustes", "--input", path("p.json"), "--steps", "50"},
      {"pgm", "--input", path("g.json"), "--shots", "100"},
      {"hsvt", "--input", path("s.json"), "--time", "1", "--function", "square:even"},
      {"hsvt", "--input", path("s.json"), "--function", "polar"},
  };
  for (const auto& args : commands) {
    const RunResult r = run_cli(args);
    EXPECT_EQ(r.code, kExitPass) << args[0] << "\n" << r.out << r.err;
  }
}

TEST_F(CliFiles, GenerateIsByteIdentical) {
  for (const std::string kind : {"matrix", "procrustes", "pgm", "split-hamiltonian"}) {
    const std::string dims = kind == "procrustes" ? "3,3,4" : "3,3";
    const RunResult a = run_cli({"generate", "--kind", kind, "--dims", dims, "--seed", "1"});
    const RunResult b = run_cli({"generate", "--kind", kind, "--dims", dims, "--seed", "1"});
    const RunResult c = run_cli({"generate", "--kind", kind, "--dims", dims, "--seed", "2"});
    EXPECT_EQ(a.code, kExitPass);
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out) << kind;
    EXPECT_NE(a.out, c.out) << kind;
  }
}

TEST_F(CliFiles, GeneratedUnitaryAndRealizableInstance) {
  const RunResult u = run_cli({"generate", "--kind", "matrix", "--dims", "4,4", "--unitary",
                               "--seed", "9", "--output", path("u.json")});
  EXPECT_EQ(u.code, kExitPass);
  EXPECT_TRUE(read_matrix_file(path("u.json")).matrix.is_unitary(1e-12));
  const RunResult p = run_cli({"generate", "--kind", "procrustes", "--dims", "3,3,5",
                               "--realizable", "--seed", "9", "--output", path("p.json")});
  EXPECT_EQ(p.code, kExitPass);
  EXPECT_LE(solve_procrustes_classical(read_procrustes_file(path("p.json"))).residual, 1e-12);
}

TEST(Cli, VerifyIsDeterministicModuloTimings) {
  const RunResult a = run_cli({"verify", "--suite", "all", "--seed", "7"});
  const RunResult b = run_cli({"verify", "--suite", "all", "--seed", "7"});
  EXPECT_EQ(a.code, kExitPass) << a.out;
  EXPECT_EQ(strip_timings(a.out), strip_timings(b.out));
  const RunResult c = run_cli({"verify", "--suite", "all", "--seed", "7", "--no-timings"});
  EXPECT_EQ(strip_timings(a.out), c.out);
}

TEST(Cli, VerifyIndependentOfThreadCount) {
  VerifyOptions one;
  one.seed = 11;
  VerifyOptions many = one;
  many.threads = 4;
  EXPECT_EQ(run_verify(one).render(false), run_verify(many).render(false));
}

TEST(Cli, VerifySuiteSelection) {
  const RunResult r = run_cli({"verify", "--suite", "hsvt", "--seed", "3", "--no-timings"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_NE(r.out.find("hsvt.isolation."), std::string::npos);
  EXPECT_EQ(r.out.find("pgm.dual_path."), std::string::npos);
}

TEST(Cli, ToleranceEnvironmentOverride) {
  ::setenv("QPOLAR_TOLERANCE", "0.5", 1);
  const RunResult r = run_cli({"verify", "--suite", "polar", "--no-timings"});
  ::unsetenv("QPOLAR_TOLERANCE");
  EXPECT_NE(r.out.find("tolerance = 0.5"), std::string::npos) << r.out;
  ::setenv("QPOLAR_TOLERANCE", "zero", 1);
  EXPECT_EQ(run_cli({"verify", "--suite", "polar"}).code, kExitInvalidValue);
  ::unsetenv("QPOLAR_TOLERANCE");
}

}  // namespace
}  // namespace qpolar::cli
