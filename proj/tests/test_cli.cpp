#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bmtk/bmgf.hpp"
#include "bmtk/cli.hpp"
#include "bmtk/corpus.hpp"
#include "bmtk/errors.hpp"
#include "helpers.hpp"

using namespace bmtk;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "bmtk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bmtk_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("BMGF round trip and malformed files") {
  const GridSpec spec{2, 16, 3.5};
  const GridFunction f = testing::smooth_random(spec, 1, 3);
  std::stringstream ss;
  write_bmgf(ss, f);
  const GridFunction g = read_bmgf(ss);
  CHECK(g.spec() == spec);
  CHECK(testing::max_diff(f, g) == 0.0);

  std::stringstream bad("XXXX\x01\x00\x00\x00");
  CHECK_THROWS_WITH_AS(read_bmgf(bad), "not a BMGF file", FormatError);
  std::string bytes;
  {
    std::stringstream full;
    write_bmgf(full, f);
    bytes = full.str();
  }
  std::stringstream truncated(bytes.substr(0, bytes.size() - 8));
  CHECK_THROWS_AS(read_bmgf(truncated), FormatError);
}

TEST_CASE("usage errors exit with 2") {
  const Run q = run({"norm", "--dim", "2", "--points", "16", "--family", "Morrey", "--p", "2", "--q", "3"});
  CHECK(q.code == 2);
  CHECK(q.err.find("requires q ≤ p") != std::string::npos);

  const fs::path dir = scratch("bad");
  const fs::path junk = dir / "junk.bmgf";
  std::ofstream(junk) << "definitely not a grid";
  const Run b = run({"norm", "--input", junk.string()});
  CHECK(b.code == 2);
  CHECK(b.err.find("not a BMGF file") != std::string::npos);

  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"norm", "--bogus-flag"}).code == 2);
  CHECK(run({"norm", "--input", "nosuchfield"}).code == 2);
  CHECK(run({"gauge", "--epsilon", "0.5"}).code == 2);

  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << R"({"command": "norm", "colour": 3})";
  CHECK(run({"--config", cfg.string()}).code == 2);
}

TEST_CASE("numerical failures exit with 3") {
  const Run r = run({"gauge", "--dim", "2", "--points", "16", "--epsilon", "0.04", "--max-iter", "0"});
  CHECK(r.code == 3);
}

TEST_CASE("norm output matches the library") {
  const fs::path dir = scratch("norm");
  const GridSpec spec{2, 32};
  const GridFunction f = corpus_bump(spec, 4);
  write_bmgf(dir / "f.bmgf", f);
  const Run r = run({"norm", "--input", (dir / "f.bmgf").string(), "--family", "BesovMorrey", "--s", "0.5",
                     "--p", "2", "--q", "2", "--r", "inf"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  const SpaceSpec space{Family::BesovMorrey, 0.5, 2.0, 2.0, INFINITY};
  const PartitionOfUnity part(spec);
  const NormResult lib = evaluate_norm(FieldComponents(&f, 1), space, part, BallFamily::standard(spec));
  CHECK(j["result"]["value"].get<double>() == lib.value);
  CHECK(j["version"] == kVersion);
  CHECK(j["config"]["r"] == "inf");
}

TEST_CASE("config file reproduces a run") {
  const fs::path dir = scratch("config");
  const Run a = run({"wente", "--dim", "2", "--points", "32", "--input", "bump2", "--input-b", "bump5",
                     "--out", dir.string()});
  REQUIRE(a.code == 0);
  const Json first = Json::parse(a.out);
  std::ifstream written(dir / "wente.json");
  std::stringstream contents;
  contents << written.rdbuf();
  CHECK(contents.str() == a.out);

  const fs::path cfg = dir / "cfg.json";
  Json c = first["config"];
  c["out"] = "";
  std::ofstream(cfg) << c.dump();
  const Run b = run({"--config", cfg.string()});
  REQUIRE(b.code == 0);
  CHECK(Json::parse(b.out)["result"] == first["result"]);

  const RunConfig back = config_from_json(to_json(config_from_json(c)));
  CHECK(to_json(back) == c);
}

TEST_CASE("subcommand outputs") {
  const fs::path dir = scratch("sub");
  const Run ce = run({"counterexample", "--sizes", "32", "64", "--out", dir.string()});
  REQUIRE(ce.code == 0);
  std::ifstream csv(dir / "counterexample.csv");
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) ++lines;
  CHECK(lines == 3);

  const Run g = run({"gauge", "--dim", "2", "--points", "16", "--epsilon", "0"});
  REQUIRE(g.code == 0);
  CHECK(Json::parse(g.out)["result"]["iterations"] == 0);

  const Run s = run({"scaling", "--dim", "2", "--points", "32", "--lambdas", "1"});
  REQUIRE(s.code == 0);
  CHECK(Json::parse(s.out)["result"]["rows"][0]["ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));

  const Run d = run({"decompose", "--dim", "2", "--points", "32", "--export", "--out", dir.string()});
  REQUIRE(d.code == 0);
  const Json dj = Json::parse(d.out)["result"];
  CHECK(dj["reconstruction_error"].get<double>() < 1e-12);
  CHECK(fs::exists(dir / "block_0.bmgf"));
  CHECK(read_bmgf(dir / "block_0.bmgf").spec() == GridSpec{2, 32});

  const Run e = run({"embed-check", "--dim", "2", "--points", "32", "--p", "2", "--q", "2", "--r", "2"});
  REQUIRE(e.code == 0);
  CHECK(Json::parse(e.out)["result"]["embedding"]["ratio"].get<double>() > 0.0);

  const Run p = run({"paraproduct", "--dim", "2", "--points", "32"});
  REQUIRE(p.code == 0);
  CHECK(Json::parse(p.out)["result"]["split_error"].get<double>() < 1e-10);
}

}
