#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coverspec/cli.hpp"
#include "coverspec/graph_io.hpp"

using namespace coverspec;

namespace {

const std::string kData = COVERSPEC_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("coverspec_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("pointspec reports") {
  Result k = run({"pointspec", kData + "/k23.graph", "--oracle"});
  CHECK(k.code == 0);
  CHECK(k.out.find("mass: 1/5") != std::string::npos);
  CHECK(k.out.find("oracle: agree") != std::string::npos);
  CHECK(k.out.rfind("# pointspec seed=0\n", 0) == 0);

  Result c = run({"pointspec", kData + "/c3.graph"});
  CHECK(c.code == 0);
  CHECK(c.out.find("point spectrum: empty") != std::string::npos);

  Result p = run({"pointspec", kData + "/path4.graph", "--numeric"});
  CHECK(p.out.find("finite cover") != std::string::npos);
  CHECK(p.out.find("1.61803398875 multiplicity 1") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kParseError);
  CHECK(run({"pointspec"}).code == cli::kParseError);
  CHECK(run({"pointspec", kData + "/missing.graph"}).code == cli::kParseError);
  CHECK(run({"pointspec", kData + "/k23.graph", "--exact", "--numeric"}).code == cli::kParseError);
  CHECK(run({"dos", kData + "/k23.graph", "--lift-degree", "100000"}).code == cli::kBudget);
  CHECK(run({"lift", kData + "/k23.graph", "--degree", "100000"}).code == cli::kBudget);
  CHECK(run({"eigvec", kData + "/k23.graph", "--weighting", "bogus"}).code == cli::kFailure);

  std::string bad = tmp("bad.graph");
  std::ofstream(bad) << "vertex a\nedge a b weight 1\n";
  Result r = run({"pointspec", bad});
  CHECK(r.code == cli::kParseError);
  CHECK(r.err.find("line 2") != std::string::npos);
  std::remove(bad.c_str());
}

TEST_CASE("lift output re-parses") {
  Result r = run({"lift", kData + "/c3.graph", "--girth-doubling"});
  REQUIRE(r.code == 0);
  Multigraph h = parse_graph_text(r.out);
  CHECK(h.vertex_count() == 48);
  CHECK(validate(h).ok());

  Result rnd = run({"lift", kData + "/k23.graph", "--degree", "3", "--seed", "4"});
  CHECK(rnd.code == 0);
  CHECK(parse_graph_text(rnd.out).vertex_count() == 15);
  CHECK(rnd.out == run({"lift", kData + "/k23.graph", "--degree", "3", "--seed", "4"}).out);

  std::string spec = tmp("spec.txt");
  std::ofstream(spec) << "degree 2\nperm 0 (0 1)\n";
  Result s = run({"lift", kData + "/c3.graph", "--spec", spec});
  CHECK(s.code == 0);
  CHECK(*girth(parse_graph_text(s.out)) == 6);
  std::remove(spec.c_str());
}

TEST_CASE("dos writes csv files") {
  std::string prefix = tmp("dos");
  Result r = run({"dos", kData + "/k23.graph", "--lift-degree", "200", "--bins", "101", "--out", prefix});
  REQUIRE(r.code == 0);
  std::string atoms = slurp(prefix + ".atoms.csv");
  CHECK(atoms.rfind("location,mass\n", 0) == 0);
  double loc = 0, mass = 0;
  REQUIRE(std::sscanf(atoms.c_str() + 14, "%lf,%lf", &loc, &mass) == 2);
  CHECK(std::abs(loc) < 1e-6);
  CHECK(mass == doctest::Approx(0.2).epsilon(0.1));
  CHECK(slurp(prefix + ".hist.csv").rfind("bin_lo,bin_hi,mass\n", 0) == 0);
  CHECK(r.out.find("seed=0") != std::string::npos);
  for (const char* ext : {".atoms.csv", ".hist.csv", ".dat"}) std::remove((prefix + ext).c_str());
}

TEST_CASE("outputs are byte-identical across runs") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"dos", kData + "/k23.graph", "--lift-degree", "40", "--seed", "9"},
        {"perturb", kData + "/k23.graph", "--samples", "20", "--seed", "3", "--jobs", "3"},
        {"eigvec", kData + "/k23.graph", "--degree", "3", "--weighting", "random", "--seed", "2"},
        {"pointspec", kData + "/star_cycle.graph", "--jobs", "4"}}) {
    Result a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("eigvec, perturb, moment and verify") {
  Result e = run({"eigvec", kData + "/star_cycle.graph", "--degree", "3"});
  CHECK(e.code == 0);
  CHECK(e.out.find("certificate,vector,vertex,fiber,re,im") != std::string::npos);
  CHECK(e.out.find("FAIL") == std::string::npos);

  Result p = run({"perturb", kData + "/k23.graph", "--samples", "10", "--seed", "5"});
  CHECK(p.code == 0);
  CHECK(p.out.find("count_with_point_spectrum: 0") != std::string::npos);
  CHECK(p.out.find("seed: 5") != std::string::npos);

  Result m = run({"moment", kData + "/c3.graph", "--kmax", "6"});
  CHECK(m.code == 0);
  CHECK(m.out.find("result: ok") != std::string::npos);

  for (const auto& entry : std::filesystem::directory_iterator(kData)) {
    if (entry.path().extension() != ".graph") continue;
    Result v = run({"verify", entry.path().string()});
    CHECK_MESSAGE(v.code == 0, entry.path().string() << "\n" << v.out);
  }
}

TEST_CASE("output file option") {
  std::string path = tmp("cert.txt");
  Result r = run({"pointspec", kData + "/k23.graph", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path).find("index: 1") != std::string::npos);
  std::remove(path.c_str());
}
