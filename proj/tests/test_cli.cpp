#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gmlab/cli.hpp"

using namespace gmlab;
using namespace gmlab::cli;

namespace {

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "gmlab_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = main_entry(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path write_config(const std::string& name, const std::string& body) {
  const auto path = temp_dir() / name;
  std::ofstream(path, std::ios::binary) << body;
  return path;
}

}  // namespace

TEST_CASE("flags map onto RunConfig") {
  const auto cfg = parse_config({"defect", "--family", "thm2", "--r2", "2", "--r", "1"});
  CHECK(cfg.command == Command::Defect);
  CHECK(cfg.family.kind == "thm2");
  CHECK(cfg.family.period == 2);
  CHECK(cfg.r == 1);
  CHECK(cfg.c == 2.0);
  CHECK(cfg.grid_size == 1024);
  CHECK(cfg.cap == (Index{1} << 20));
  CHECK(cfg.format == Format::Csv);
  CHECK(cfg.output_path == "gmlab_defect.csv");
  const auto seq = cfg.family.build();
  CHECK(seq.term(2) == 0.25);
  CHECK(seq.term(3) == 3.0 / 9.0);
}

TEST_CASE("lemma1 command flags") {
  const auto cfg = parse_config({"lemma1", "--trials", "200", "--seed", "42"});
  CHECK(cfg.command == Command::Lemma1);
  CHECK(cfg.trials == 200);
  CHECK(cfg.seed == 42);
  CHECK(cfg.r == 8);
  CHECK(cfg.n_max == 64);
}

TEST_CASE("malformed and out-of-range values are usage errors") {
  CHECK_THROWS_AS((void)parse_config({"defect", "--c", "0.5"}), UsageError);
  CHECK_THROWS_AS((void)parse_config({"defect", "--r", "abc"}), UsageError);
  CHECK_THROWS_AS((void)parse_config({"defect", "--r", "0"}), UsageError);
  CHECK_THROWS_AS((void)parse_config({"defect", "--format", "xml"}), UsageError);
  CHECK_THROWS_AS((void)parse_config({"defect", "--bogus", "1"}), UsageError);
  CHECK_THROWS_AS((void)parse_config({"frobnicate"}), UsageError);
  CHECK_THROWS_AS((void)parse_config({}), UsageError);
  CHECK_THROWS_AS((void)parse_config({"defect", "--family", "nope"}), UsageError);
  CHECK_THROWS_AS((void)parse_config({"defect", "--family", "remark4:2"}), UsageError);
  CHECK_THROWS_AS((void)parse_config({"defect", "--slope-bounded", "0.7"}), UsageError);
}

TEST_CASE("contradictory flags are usage errors") {
  CHECK_THROWS_AS((void)parse_config({"defect", "--family", "thm2:3", "--r2", "2"}), UsageError);
  CHECK_NOTHROW((void)parse_config({"defect", "--family", "thm2:2", "--r2", "2"}));
  CHECK_THROWS_AS((void)parse_config({"embed", "--r1", "2", "--r2", "2"}), UsageError);
  CHECK_THROWS_AS((void)parse_config({"converge", "--n-max", "1024", "--N-max", "1024"}), UsageError);
  CHECK_THROWS_AS((void)parse_config({"converge", "--N-max", "4096", "--cap", "2048", "--n-max", "64"}), UsageError);
}

TEST_CASE("config file: flags override file, file overrides defaults") {
  const auto path = write_config("basic.cfg",
                                 "# comment line\n"
                                 "family = remark4\n"
                                 "r = 4\n"
                                 "c=3   # trailing comment\n"
                                 "format=json\n");
  const auto cfg = parse_config({"defect", "--r", "5"}, path);
  CHECK(cfg.r == 5);
  CHECK(cfg.c == 3.0);
  CHECK(cfg.format == Format::Json);
  CHECK(cfg.family.kind == "remark4");
  CHECK(cfg.family.period == 5);
  CHECK(cfg.output_path == "gmlab_defect.json");
  const auto via_flag = parse_config({"defect", "--config", path.string()});
  CHECK(via_flag.r == 4);
  CHECK(via_flag.family.period == 4);
}

TEST_CASE("config file errors") {
  CHECK_THROWS_AS((void)parse_config({"defect"}, write_config("unknown.cfg", "colour=blue\n")), UsageError);
  CHECK_THROWS_AS((void)parse_config({"defect"}, write_config("malformed.cfg", "r 3\n")), UsageError);
  CHECK_THROWS_AS((void)parse_config({"defect"}, temp_dir() / "missing.cfg"), UsageError);
}

TEST_CASE("family labels and inline parameters") {
  CHECK(parse_config({"defect", "--family", "powerlog:2,1"}).family.label() ==
        "powerlog:2.0000000000000000e+00;1.0000000000000000e+00");
  CHECK(parse_config({"defect", "--family", "random:16", "--seed", "3"}).family.length == 16);
  CHECK(parse_config({"defect", "--family", "thm3", "--r1", "3"}).family.period == 3);
  CHECK(parse_config({"defect", "--family", "remark3"}).family.label() == "remark3");
}

TEST_CASE("exit status 0 with the documented summary lines") {
  const auto dir = temp_dir();
  auto res = invoke({"defect", "--family", "thm2", "--r2", "2", "--r", "1", "--out", (dir / "d.csv").string()});
  CHECK(res.status == kOk);
  CHECK(res.out.rfind("verdict=growing max_ratio=", 0) == 0);
  CHECK(res.out.find(" slope=") != std::string::npos);
  const auto csv = slurp(dir / "d.csv");
  CHECK(csv.rfind("m,lhs,beta,ratio,zero_beta\n", 0) == 0);

  res = invoke({"lemma1", "--trials", "5", "--out", (dir / "l.csv").string()});
  CHECK(res.status == kOk);
  CHECK(res.out.rfind("max_residual=", 0) == 0);
  CHECK(res.out.find(" pass=true") != std::string::npos);

  res = invoke({"diverge", "--n-max", "10000", "--out", (dir / "v.csv").string()});
  CHECK(res.status == kOk);
  CHECK(res.out.rfind("verdict=divergence_witness", 0) == 0);

  res = invoke({"embed", "--family", "thm2", "--r1", "1", "--r2", "2", "--m-max", "4096", "--out",
                (dir / "e.csv").string()});
  CHECK(res.status == kOk);
  CHECK(res.out.rfind("verdict=separated", 0) == 0);
}

TEST_CASE("exit status 1 on usage errors") {
  auto res = invoke({"defect", "--c", "0.5"});
  CHECK(res.status == kUsage);
  CHECK(res.err.find("usage error") != std::string::npos);
  CHECK(invoke({"nonsense"}).status == kUsage);
}

TEST_CASE("exit status 2 under --strict when the epsilon supremum sits at the cap") {
  const auto dir = temp_dir();
  const std::vector<std::string> base{"converge", "--family", "powerlog:0.5", "--r", "2", "--n-max", "16",
                                      "--N-max", "64", "--cap", "64", "--grid-size", "16", "--out",
                                      (dir / "c.csv").string()};
  auto relaxed = invoke(base);
  CHECK(relaxed.status == kOk);
  CHECK(relaxed.out.find("cap_attained=true") != std::string::npos);
  CHECK(relaxed.err.find("warning") != std::string::npos);
  auto strict = base;
  strict.push_back("--strict");
  CHECK(invoke(strict).status == kNumericalGuard);
}

TEST_CASE("exit status 3 on an unwritable output path") {
  const auto res = invoke({"diverge", "--n-max", "100", "--out", "/nonexistent-gmlab-dir/x.csv"});
  CHECK(res.status == kIo);
  CHECK(res.err.find("/nonexistent-gmlab-dir/x.csv") != std::string::npos);
}

TEST_CASE("identical runs produce byte-identical files") {
  const auto dir = temp_dir();
  for (const std::string fmt : {"csv", "json"}) {
    for (const auto& cmd : std::vector<std::vector<std::string>>{
             {"defect", "--family", "remark4:3", "--r", "3"},
             {"lemma1", "--trials", "3"},
             {"report", "--m-max", "256"}}) {
      auto a = cmd, b = cmd;
      a.insert(a.end(), {"--format", fmt, "--out", (dir / "run_a").string()});
      b.insert(b.end(), {"--format", fmt, "--out", (dir / "run_b").string()});
      REQUIRE(invoke(a).status == kOk);
      REQUIRE(invoke(b).status == kOk);
      CHECK(slurp(dir / "run_a") == slurp(dir / "run_b"));
    }
  }
}
