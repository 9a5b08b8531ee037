#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/problem.hpp"
#include "hh/complexes.hpp"

using namespace hh;
using namespace hh::cli;

namespace {

const std::filesystem::path kExamples = std::filesystem::path(HH_SOURCE_DIR) / "docs" / "examples";

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hhcomp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = hhcomp_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("hhcomp_test_" + name);
  std::ofstream(p) << text;
  return p;
}

const char* kSmall =
    "field Q\n"
    "\n"
    "algebra A truncated 3 x\n"
    "\n"
    "resolution P of A truncated(3, 6)\n";

}  // namespace

TEST(Cli, CanonicalFormRoundTripsOnExamples) {
  for (const auto& entry : std::filesystem::directory_iterator(kExamples)) {
    const std::string text = slurp(entry.path());
    const std::string canon = print_problem(parse_problem(text));
    EXPECT_EQ(print_problem(parse_problem(canon)), canon) << entry.path();
    const auto r = run({"print", entry.path().string()});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_EQ(r.out, canon);
  }
}

TEST(Cli, MalformedLineReportsLineAndColumn) {
  const auto p = write_temp("bad.hhp",
                            "field Q\n"
                            "algebra R\n"
                            "  group Z\n"
                            "  basis 1 [0]\n"
                            "  mult 1 1 -> 1 abc\n"
                            "  unit 1\n"
                            "end\n");
  const auto r = run({"validate", p.string()});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("line 5, column 17"), std::string::npos) << r.err;
  try {
    parse_problem(slurp(p));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 5u);
    EXPECT_EQ(e.column, 17u);
  }
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({"validate", "/nonexistent/file.hhp"}).code, kExitInput);
  EXPECT_EQ(run({}).code, kExitInput);
  EXPECT_EQ(run({"cohomology", write_temp("small.hhp", kSmall).string()}).code, kExitInput);  // no --degree
  EXPECT_EQ(run({"--help"}).code, kExitPass);
}

TEST(Cli, WorkedExample) {
  const auto r = run({"example-paper"});
  EXPECT_EQ(r.code, kExitPass) << r.out;
  EXPECT_NE(r.out.find("2*1.y"), std::string::npos);
  EXPECT_NE(r.out.find("-2*x.1"), std::string::npos);
  EXPECT_NE(r.out.find("summary: 15 checks, 0 failed"), std::string::npos) << r.out;
}

TEST(Cli, CohomologyAndBracket) {
  const auto p = write_temp("small.hhp", kSmall).string();
  const auto c = run({"cohomology", p, "--degree", "1"});
  EXPECT_EQ(c.code, kExitPass) << c.out << c.err;
  const auto b = run({"bracket", p, "--left", "1:0", "--right", "1:0"});
  EXPECT_EQ(b.code, kExitPass) << b.out << b.err;
  const auto cube = run({"run", (kExamples / "cube.hhp").string()});
  EXPECT_EQ(cube.code, kExitPass) << cube.out << cube.err;
}

TEST(Cli, OutputDoesNotDependOnThreads) {
  const auto p = (kExamples / "twisted.hhp").string();
  const auto one = run({"verify-iso", p, "--max-degree", "4", "--threads", "1"});
  const auto four = run({"verify-iso", p, "--max-degree", "4", "--threads", "4"});
  EXPECT_EQ(one.code, four.code);
  EXPECT_EQ(one.out, four.out);
}

TEST(Cli, RecordsBlock) {
  const auto r = run({"validate", write_temp("small.hhp", kSmall).string(), "--emit", "records"});
  EXPECT_EQ(r.code, kExitPass);
  const auto at = r.out.find("\nrecords\n");
  ASSERT_NE(at, std::string::npos) << r.out;
  std::istringstream rest(r.out.substr(at + 9));
  std::string line;
  std::size_t n = 0;
  while (std::getline(rest, line)) {
    if (line.empty()) continue;
    EXPECT_EQ(line.rfind("record\t", 0), 0u) << line;
    EXPECT_TRUE(line.ends_with("\tPASS") || line.ends_with("\tFAIL")) << line;
    ++n;
  }
  EXPECT_GT(n, 0u);
}

TEST(Cli, BadThreadEnvironment) {
  ::setenv("HHCOMP_THREADS", "zero", 1);
  const auto r = run({"validate", write_temp("small.hhp", kSmall).string()});
  ::unsetenv("HHCOMP_THREADS");
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("HHCOMP_THREADS"), std::string::npos);
}

std::size_t bracket_failures(const std::string& out) {
  std::istringstream in(out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line))
    if (line.starts_with("FAIL pair=") && line.find(" bracket:") != std::string::npos) ++n;
  return n;
}

// Dropping the sign (-1)^{(m'-1)n} in the tensor bracket formula must be caught.
TEST(Cli, DroppedBracketSignIsDetected) {
  const auto p = (kExamples / "twisted.hhp").string();
  EXPECT_EQ(bracket_failures(run({"verify-iso", p, "--max-degree", "4"}).out), 0u);
  const auto r = run({"verify-iso", p, "--max-degree", "4", "--drop-bracket-sign"});
  EXPECT_EQ(r.code, kExitFail);
  EXPECT_GT(bracket_failures(r.out), 0u) << r.out;
}
