#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vilenkin/cli.hpp"

using namespace vilenkin;
using namespace vilenkin::cli;

namespace {

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "vilenkin-lab");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data());
}

int usage_code(std::vector<std::string> args) {
  try {
    parse(std::move(args));
  } catch (const UsageError &e) {
    return e.exit_code;
  }
  return -1;
}

std::filesystem::path scratch(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("vilenkin_cli_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("help lists every suite") {
  std::string help;
  try {
    parse({"--help"});
  } catch (const UsageError &e) {
    CHECK(e.exit_code == 0);
    help = e.what();
  }
  for (const auto &s : suite_names()) CHECK_MESSAGE(help.find(s) != std::string::npos, s);
  for (const char *cmd : {"transform", "kernel", "verify", "explore"}) {
    CHECK(help.find(cmd) != std::string::npos);
  }
}

TEST_CASE("parsing") {
  unsetenv("VILENKIN_LAB_OUT");
  const auto c = parse({"verify", "--group", "2,2,2,2,2,2", "--suite", "lemma2"});
  CHECK(c.command == "verify");
  CHECK(c.suite == "lemma2");
  CHECK(c.group == "2,2,2,2,2,2");
  CHECK(c.workers >= 1);
  const auto t = parse({"verify", "--suite", "theorem2", "--p", "0.25,0.5", "--seeds", "0x10:7",
                        "--levels", "2,3", "--weights", "log:a=1,b=2", "--format", "json",
                        "--tolerance-drift", "0.2", "--workers", "3", "--atom-resolution", "2"});
  CHECK(t.p == std::vector<double>{0.25, 0.5});
  CHECK(t.seed_base == 16);
  CHECK(t.seed_count == 7);
  CHECK(t.support_levels == std::vector<int>{2, 3});
  CHECK(t.weights == "log:a=1,b=2");
  CHECK(t.format == ReportFormat::json);
  CHECK(t.drift_tolerance == 0.2);
  CHECK(t.workers == 3);
  CHECK(t.atom_resolution == 2);
  CHECK(parse({"verify", "--suite", "theorem1a", "--seeds", "12"}).seed_count == 12);
}

TEST_CASE("rejected command lines") {
  CHECK(usage_code({"verify", "--suite", "theorem2", "--p", "0.6"}) == 2);
  CHECK(usage_code({"verify", "--suite", "theorem1b", "--p", "0.25"}) == 2);
  CHECK(usage_code({"verify", "--suite", "lemma2", "--p", "1.5"}) == 2);
  CHECK(usage_code({"verify", "--suite", "lemma2", "--p", "0"}) == 2);
  CHECK(usage_code({"verify", "--suite", "lemma2", "--group", "2,x,3"}) == 2);
  CHECK(usage_code({"verify", "--suite", "lemma2", "--group", "1,2"}) == 2);
  CHECK(usage_code({"verify", "--suite", "nope"}) == 2);
  CHECK(usage_code({"verify", "--suite", "lemma2", "--bogus"}) == 2);
  CHECK(usage_code({"verify", "--suite", "lemma2", "--weights", "log:a=1,b=0.5"}) == 2);
  CHECK(usage_code({"verify", "--suite", "lemma2", "--seeds", "1:2:3"}) == 2);
  CHECK(usage_code({"verify", "--suite", "lemma2", "--format", "xml"}) == 2);
  CHECK(usage_code({"verify", "--suite", "lemma2", "--workers", "0"}) == 2);
  CHECK(usage_code({"verify"}) == 2);
  CHECK(usage_code({}) == 2);
  CHECK(usage_code({"explore", "--p", "0.5"}) == 2);
}

TEST_CASE("output directory from the environment wins") {
  setenv("VILENKIN_LAB_OUT", "/tmp/from-env", 1);
  CHECK(parse({"verify", "--suite", "lemma2", "--out", "/tmp/from-flag"}).out_dir ==
        "/tmp/from-env");
  unsetenv("VILENKIN_LAB_OUT");
  CHECK(parse({"verify", "--suite", "lemma2", "--out", "/tmp/from-flag"}).out_dir ==
        "/tmp/from-flag");
}

TEST_CASE("config file with flag override") {
  const auto dir = scratch("config");
  std::filesystem::create_directories(dir);
  const auto file = dir / "run.toml";
  {
    std::ofstream out(file);
    out << "[verify]\ngroup = \"2,3,2\"\nsuite = \"lemma2\"\nweights = \"log:a=2,b=2\"\n";
  }
  const auto c = parse({"--config", file.string(), "verify", "--group", "2,2,2"});
  CHECK(c.suite == "lemma2");
  CHECK(c.weights == "log:a=2,b=2");
  CHECK(c.group == "2,2,2");
  std::filesystem::remove_all(dir);
}

TEST_CASE("run writes reports and maps pass flags to the exit code") {
  unsetenv("VILENKIN_LAB_OUT");
  const auto dir = scratch("run");
  std::ostringstream log;
  auto c = parse({"verify", "--group", "2,2,2,2,2,2", "--suite", "lemma2", "--out", dir.string()});
  CHECK(run(c, log) == 0);
  CHECK(std::filesystem::exists(dir / "lemma2_const.csv"));
  CHECK(log.str().rfind("PASS lemma2", 0) == 0);

  c = parse({"verify", "--group", "2,2,2,2,2,2", "--suite", "lemma2-corrupted", "--out",
             dir.string()});
  CHECK(run(c, log) == 1);

  c = parse({"explore", "--group", "2,2,2,2,2,2", "--seeds", "3", "--levels", "2,3", "--out",
             dir.string()});
  CHECK(run(c, log) == 0);
  CHECK(std::filesystem::exists(dir / "explore_p0.3333333333333333_const.csv"));

  c = parse({"verify", "--group", "2,2,2,2,2,2", "--suite", "kernel-bounds", "--out",
             dir.string(), "--format", "json"});
  CHECK(run(c, log) == 0);
  CHECK(std::filesystem::exists(dir / "kernel-bounds_const.json"));

  c = parse({"verify", "--group", "2,2,2,2,2,2", "--level", "6", "--suite", "kernel-bounds",
             "--out", dir.string()});
  CHECK_THROWS(run(c, log));
  std::filesystem::remove_all(dir);
}

TEST_CASE("transform and kernel commands") {
  const auto dir = scratch("transform");
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "f.csv");
    out << "index,re,im\n0,1,0\n1,0,0\n2,0,0\n3,0,0\n4,0,0\n5,0,0\n";
  }
  std::ostringstream log;
  auto c = parse({"transform", "--group", "2,3", "--in", (dir / "f.csv").string(), "--out",
                  dir.string()});
  CHECK(run(c, log) == 0);
  std::ifstream in(dir / "transform.csv");
  const auto values = read_values_csv(in);
  CHECK(values.size() == 6);
  CHECK((values.array() - Complex(1.0 / 6.0)).abs().maxCoeff() < 1e-15);

  c = parse({"kernel", "--group", "2,2,2", "--kind", "fejer-closed", "--n", "2", "--out",
             dir.string()});
  CHECK(run(c, log) == 0);
  std::ifstream kin(dir / "kernel_fejer-closed_n2.csv");
  CHECK(std::abs(read_values_csv(kin)[0] - 2.5) < 1e-15);

  c = parse({"kernel", "--group", "2,2,2", "--kind", "tail", "--n", "6", "--tail-level", "2",
             "--weights", "log:a=1,b=1", "--out", dir.string()});
  CHECK(run(c, log) == 0);
  c = parse({"kernel", "--group", "2,2,2", "--kind", "wrong", "--out", dir.string()});
  CHECK_THROWS(run(c, log));
  std::filesystem::remove_all(dir);
}
