#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "permgraph/cli.hpp"

using namespace permgraph;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("permgraph_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("stats") {
  auto r = run({"stats", "--perm", "5 2 3 1 4", "--stat", "inversions"});
  CHECK(r.code == 0);
  CHECK(r.out == "6\n");
  CHECK(run({"stats", "--perm", "5,2,3,1,4", "--stat", "cliques_m", "--m", "3"}).out == "2\n");
  auto j = nlohmann::json::parse(run({"stats", "--perm", "3 4 1 5 2", "--stat", "level", "--format", "json"}).out);
  CHECK(j["results"][0]["value"] == "3");

  const auto path = temp_path("perms.txt");
  std::ofstream(path) << "1 2 3\n3 2 1\n\n2 1 3\n";
  CHECK(run({"stats", "--in", path, "--stat", "inversions"}).out == "0\n3\n1\n");
  std::remove(path.c_str());
}

TEST_CASE("exact") {
  CHECK(run({"exact", "--formula", "expected_cliques", "--n", "5", "--m", "2"}).out == "5/1\n");
  CHECK(run({"exact", "--formula", "degree_variance", "--n", "3", "--k", "1"}).out == "2/3\n");
  CHECK(run({"exact", "--formula", "degree_variance", "--n", "3", "--k", "1", "--variant", "printed"}).out == "1/1\n");
  CHECK(run({"exact", "--formula", "isolated_probability", "--n", "3", "--k", "1", "--digits", "4"}).out ==
        "0.3333\n");
  CHECK(run({"exact", "--formula", "rayleigh_tail", "--x", "0"}).out == "1\n");
  auto j = nlohmann::json::parse(run({"exact", "--formula", "level_mean", "--n", "3", "--format", "json"}).out);
  CHECK(j["value"] == "7/6");
  CHECK(j["variant"] == "corrected");
  // Missing and superfluous parameters are usage errors; bad values are domain errors.
  CHECK(run({"exact", "--formula", "expected_cliques", "--n", "5"}).code == 2);
  CHECK(run({"exact", "--formula", "expected_cliques", "--n", "5", "--m", "2", "--k", "1"}).code == 2);
  CHECK(run({"exact", "--formula", "nope", "--n", "5"}).code == 2);
  CHECK(run({"exact", "--formula", "degree_variance", "--n", "3", "--k", "9"}).code == 1);
  CHECK(run({"exact", "--formula", "rayleigh_tail", "--x", "-1"}).code == 1);
}

TEST_CASE("oracle and arbitrate") {
  auto r = run({"oracle", "--n", "3", "--stat", "inversions"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["entries"]["2"] == "2");
  CHECK(run({"oracle", "--n", "3", "--stat", "inversions", "--format", "csv"}).out == "value,count\n0,1\n1,2\n2,2\n3,1\n");
  CHECK(run({"oracle", "--n", "10", "--stat", "inversions"}).code == 1);

  auto a = nlohmann::json::parse(run({"arbitrate", "--formula", "degree_variance", "--n-max", "7"}).out);
  for (const auto& v : a["variants"]) {
    if (v["variant"] == "corrected") CHECK(v["verdict"] == "match");
    if (v["variant"] == "as_printed") CHECK(v["verdict"] == "mismatch");
  }
  CHECK(run({"arbitrate", "--formula", "bogus", "--n-max", "4"}).code == 2);
}

TEST_CASE("sample") {
  auto r = run({"sample", "--n", "6", "--seed", "4", "--count", "3"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
  CHECK(r.out == run({"sample", "--n", "6", "--seed", "4", "--count", "3"}).out);
  CHECK(run({"sample", "--n", "5", "--sampler", "riffle", "--a", "1", "--seed", "1"}).out == "1 2 3 4 5\n");
  CHECK(run({"sample", "--n", "4", "--sampler", "riffle", "--p", "0.5,0.3,0.2", "--seed", "1", "--riffle-form", "piles"})
            .code == 0);
  CHECK(run({"sample", "--n", "4", "--sampler", "riffle", "--p", "0.5,0.6", "--seed", "1"}).code == 1);
  CHECK(run({"sample", "--n", "4", "--sampler", "unfair", "--phi", "const:1", "--seed", "1"}).code == 0);

  const auto phi = temp_path("phi.txt");
  std::ofstream(phi) << "1 2 3\n";
  CHECK(run({"sample", "--n", "3", "--sampler", "unfair", "--phi", "table:" + phi, "--seed", "1"}).code == 0);
  CHECK(run({"sample", "--n", "4", "--sampler", "unfair", "--phi", "table:" + phi, "--seed", "1"}).code == 1);
  std::remove(phi.c_str());

  CHECK(run({"sample", "--n", "3", "--strict-repro"}).code == 2);
  CHECK(run({"sample", "--n", "3", "--strict-repro", "--seed", "2"}).code == 0);
}

TEST_CASE("mc and diagnose") {
  const std::vector<std::string> base{"mc", "--n", "40", "--reps", "500", "--stat", "degree_k", "--k", "20",
                                      "--seed", "9", "--normalize", "20,6.3245553203", "--ks",
                                      "mixture_normal,uniform_scaled(-2,2)"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  };
  const auto one = with({"--threads", "1"});
  CHECK(one.code == 0);
  CHECK(one.out == with({"--threads", "4"}).out);
  auto j = nlohmann::json::parse(one.out);
  CHECK(j["ks"].contains("mixture_normal"));
  CHECK(j["ks"].contains("uniform_scaled(-2,2)"));
  CHECK(j["elapsed_ms"].is_null());
  CHECK(j["config"]["seed"] == 9);

  const auto hist = temp_path("hist.csv");
  const auto samples = temp_path("samples.csv");
  CHECK(with({"--emit-hist", hist, "--samples-csv", samples}).code == 0);
  CHECK(slurp(hist).rfind("bin_left,bin_right,count\n", 0) == 0);
  const auto sample_text = slurp(samples);
  CHECK(std::count(sample_text.begin(), sample_text.end(), '\n') == 501);
  std::remove(hist.c_str());
  std::remove(samples.c_str());

  CHECK(with({"--ks", "cauchy"}).code == 2);
  CHECK(run({"mc", "--n", "5", "--reps", "10", "--stat", "degree_k", "--k", "9", "--seed", "1"}).code == 1);
  CHECK(run({"mc", "--n", "5", "--reps", "10", "--stat", "lis", "--strict-repro"}).code == 2);

  auto d = run({"diagnose", "--preset", "smallk", "--n", "200", "--reps", "300", "--seed", "3"});
  CHECK(d.code == 0);
  CHECK(nlohmann::json::parse(d.out)["ranking"].size() == 2);
  CHECK(run({"diagnose", "--preset", "none", "--n", "200", "--reps", "300", "--seed", "3"}).code == 2);
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"stats", "--perm", "1 2", "--stat", "inversions", "--bogus"}).code == 2);
  CHECK(run({"stats", "--perm", "1 1", "--stat", "inversions"}).code == 1);
  CHECK(run({"mc", "--n", "ten", "--reps", "1", "--stat", "lis"}).code == 2);
  CHECK(run({"oracle", "--n", "3", "--stat", "inversions", "--threads", "0"}).code == 2);
  for (const auto* sub : {"sample", "stats", "exact", "oracle", "arbitrate", "mc", "diagnose"}) {
    const auto r = run({sub, "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Usage") != std::string::npos);
  }
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("--out writes to a file") {
  const auto path = temp_path("out.json");
  CHECK(run({"oracle", "--n", "3", "--stat", "level", "--out", path}).out.empty());
  CHECK(nlohmann::json::parse(slurp(path))["total"] == "6");
  std::remove(path.c_str());
  CHECK(run({"oracle", "--n", "3", "--stat", "level", "--out", "/nonexistent/dir/x.json"}).code == 1);
}
