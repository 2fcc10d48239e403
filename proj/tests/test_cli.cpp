#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using harmless::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("harmless-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string &name, const std::string &text) {
  auto path = scratch() / name;
  std::ofstream(path) << text;
  return path.string();
}

const std::string triangle = "p hs 3 3\ne 1 2\ne 2 3\ne 1 3\nt 1 2\nt 2 2\nt 3 2\nk 1\n";

} // namespace

TEST_CASE("solve reports the optimum") {
  auto path = write("tri.hs", triangle);
  auto r = call({"solve", path, "--method", "brute", "--format", "json"});
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["result"]["optimum"] == 1);
  CHECK(doc["decision"] == "yes");
  CHECK(doc["version"].is_string());
  CHECK(doc["config"]["method"] == "brute");
  CHECK(doc["config"]["input"] == path);

  auto vc = call({"solve", path, "--method", "vc", "--format", "json"});
  CHECK(nlohmann::json::parse(vc.out)["result"]["optimum"] == 1);
}

TEST_CASE("solve --decide exits 1 on NO") {
  auto path = write("tri3.hs", "p hs 3 3\ne 1 2\ne 2 3\ne 1 3\nt 1 2\nt 2 2\nt 3 2\nk 3\n");
  CHECK(call({"solve", path, "--decide"}).code == 1);
  CHECK(call({"solve", path}).code == 0);
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  std::string text = "p hs 8 9\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\ne 7 8\ne 1 8\ne 2 6\n";
  for (int v = 1; v <= 8; ++v)
    text += "t " + std::to_string(v) + " " + std::to_string(1 + v % 3) + "\n";
  auto path = write("cyc.hs", text + "k 3\n");
  auto a = call({"solve", path, "--method", "vc", "--format", "json"});
  auto b = call({"solve", path, "--method", "vc", "--format", "json"});
  CHECK(a.out == b.out);
  auto one = nlohmann::json::parse(a.out)["result"];
  auto four = nlohmann::json::parse(call({"solve", path, "--method", "vc", "--workers", "4", "--format", "json"}).out);
  CHECK(four["result"] == one);
  CHECK(call({"kernelize", path}).out == call({"kernelize", path}).out);
  CHECK(call({"fuzz", "--count", "20", "--seed", "9"}).out == call({"fuzz", "--count", "20", "--seed", "9"}).out);
}

TEST_CASE("timing is opt-in") {
  auto path = write("tri_t.hs", triangle);
  auto plain = nlohmann::json::parse(call({"solve", path, "--format", "json"}).out);
  CHECK_FALSE(plain.contains("seconds"));
  auto timed = nlohmann::json::parse(call({"solve", path, "--format", "json", "--timing"}).out);
  CHECK(timed["seconds"].is_number());
}

TEST_CASE("kernelize with an empty core decides NO") {
  auto path = write("frag.hs", "p hs 2 1\ne 1 2\nt 1 1\nt 2 1\nk 1\n");
  auto r = call({"kernelize", path, "--format", "json"});
  CHECK(r.code == 1);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["decision"] == "no");
  CHECK(doc["kernel"]["core"].empty());
}

TEST_CASE("kernelize writes kernels") {
  auto path = write("tri_k.hs", triangle);
  auto annotated = (scratch() / "kernel.json").string();
  CHECK(call({"kernelize", path, "--kernel", annotated}).code == 0);
  std::ifstream in(annotated);
  auto doc = nlohmann::json::parse(in);
  CHECK(doc.contains("core"));

  auto plain = (scratch() / "kernel.hs").string();
  CHECK(call({"kernelize", path, "--plain", "--kernel", plain}).code == 0);
  CHECK(fs::exists(plain));
  CHECK(call({"kernelize", path, "--kernel", plain}).code == 2);
}

TEST_CASE("reduce-mcc then verify-reduction") {
  auto mcc = write("edge.mcc", "p mcc 2 1\ne 1 1 2 1\n");
  auto h = (scratch() / "h.hs").string();
  auto roles = (scratch() / "roles.json").string();
  auto r = call({"reduce-mcc", mcc, "--instance", h, "--roles", roles, "--format", "json"});
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["vertices"] == 16);
  CHECK(doc["target"] == 3);
  std::ifstream in(roles);
  auto registry = nlohmann::json::parse(in);
  CHECK(registry["roles"].size() == 16);
  CHECK(registry["modulator"].size() == 6);

  auto solved = nlohmann::json::parse(call({"solve", h, "--format", "json"}).out);
  CHECK(solved["result"]["optimum"] == 3);

  auto v = call({"verify-reduction", mcc, "--format", "json"});
  CHECK(v.code == 0);
  CHECK(nlohmann::json::parse(v.out)["result"]["equivalent"] == true);
}

TEST_CASE("stats dumps profiles and a waterlily") {
  auto path = write("star.hs", "p hs 4 3\ne 1 2\ne 1 3\ne 1 4\nt 1 3\nt 2 2\nt 3 2\nt 4 2\nk 1\n");
  auto r = call({"stats", path, "--format", "json", "--target", "3"});
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["core_size"] == 4);
  CHECK(doc.contains("waterlily_report"));
  CHECK(doc["config"]["target"] == 3);
}

TEST_CASE("fuzz cross-checks pass and can write a corpus") {
  auto dir = (scratch() / "corpus").string();
  auto r = call({"fuzz", "--count", "30", "--seed", "3", "--corpus", dir, "--format", "json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["mismatches"].empty());
  CHECK(fs::exists(fs::path(dir) / "case0.hs"));
}

TEST_CASE("errors exit 2 with a message") {
  auto missing = call({"solve", (scratch() / "nope.hs").string()});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  auto bad = write("bad.hs", "p hs 2 0\nt 1 0\nt 2 1\n");
  auto parse = call({"solve", bad});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("line 2") != std::string::npos);

  CHECK(call({}).code == 2);
  CHECK(call({"solve", bad, "--method", "magic"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("caps come from the environment unless a flag overrides") {
  std::string text = "p hs 30 0\n";
  for (int v = 1; v <= 30; ++v)
    text += "t " + std::to_string(v) + " 1\n";
  auto path = write("wide.hs", text);
  ::setenv("HARMLESS_BRUTE_CAP", "10", 1);
  auto limited = call({"solve", path});
  CHECK(limited.code == 2);
  CHECK(limited.err.find("cap") != std::string::npos);
  auto doc = nlohmann::json::parse(call({"solve", path, "--brute-cap", "40", "--format", "json"}).out);
  CHECK(doc["result"]["optimum"] == 30);
  ::unsetenv("HARMLESS_BRUTE_CAP");
}
