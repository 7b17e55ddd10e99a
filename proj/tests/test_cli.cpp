#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "mltoric/report.hpp"

using namespace mltoric;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = mltoric::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(MLTORIC_FIXTURES) + "/" + name + ".json"; }

}  // namespace

TEST_CASE("analyze the second example") {
  auto r = invoke({"analyze", fixture("example2")});
  REQUIRE(r.code == 0);
  auto rep = report_from_json(r.out);
  CHECK(rep.is_rigid_core == true);
  CHECK(rep.splitting->k == 1);
  CHECK(rep.name == "example2");
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["tool"]["version"] == tool_version);
  CHECK(j["status"] == "complete");
}

TEST_CASE("output is byte-identical across runs") {
  for (auto name : {"example1", "example3", "example5", "product"}) {
    auto a = invoke({"analyze", fixture(name)});
    auto b = invoke({"analyze", fixture(name), "--format", "json"});
    CHECK(a.out == b.out);
    auto t = invoke({"analyze", fixture(name), "--format", "text"});
    CHECK(t.code == 0);
    CHECK(t.out.find("ml face:") != std::string::npos);
  }
}

TEST_CASE("exit codes") {
  CHECK(invoke({"analyze", fixture("units")}).code == 3);
  CHECK(invoke({"analyze", "/nonexistent.json"}).code == 2);
  CHECK(invoke({"analyze"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"analyze", fixture("example2"), "--format", "xml"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"--version"}).out == std::string(tool_version) + "\n");
}

TEST_CASE("holes of the fifth example") {
  auto r = invoke({"holes", fixture("example5"), "--bound", "4"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["holes"] == nlohmann::json::parse("[[0,1],[0,2],[1,1],[2,1],[3,1]]"));
  auto t = invoke({"holes", fixture("example5"), "--bound", "4", "--format", "text"});
  CHECK(t.out.find("(0,2)") != std::string::npos);
}

TEST_CASE("roots and derivations") {
  auto r = invoke({"roots", fixture("example2"), "--ray", "1", "--height", "2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["roots"].size() == 3);
  CHECK(j["roots"][0]["descends"] == "yes");
  CHECK(j["roots"][1]["descends"] == "no");
  CHECK(j["roots"][1]["witness"] == nlohmann::json::parse("[1,0]"));

  auto d = invoke({"derive", fixture("example2"), "--ray", "1", "--root=-1,0", "--apply", "2,3"});
  REQUIRE(d.code == 0);
  auto dj = nlohmann::json::parse(d.out);
  CHECK(dj["result"]["text"] == "2*x^(1,3)");
  CHECK(dj["nilpotency_index"] == 3);

  auto e = invoke({"derive", fixture("example2"), "--ray", "1", "--root=-1,0", "--exp", "1,2,0"});
  REQUIRE(e.code == 0);
  CHECK(nlohmann::json::parse(e.out)["result"]["text"] == "1*x^(2,0) + 2*x^(1,0) + 1*x^(0,0)");

  auto bad = invoke({"derive", fixture("example2"), "--ray", "1", "--root=-1,1", "--apply", "1,0"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("(0,1)") != std::string::npos);
  auto norm = invoke({"derive", fixture("example2"), "--ray", "1", "--root=-1,1", "--apply", "1,0", "--algebra",
                   "normalization"});
  CHECK(norm.code == 0);
  CHECK(invoke({"derive", fixture("example2"), "--ray", "1", "--root=1,0", "--apply", "1,0"}).code == 2);
  CHECK(invoke({"derive", fixture("example2"), "--ray", "1", "--root=-1,0"}).code == 2);
}

TEST_CASE("inconclusive runs exit with 4 and still print a report") {
  auto r = invoke({"analyze", fixture("example2_line"), "--degree-bound", "1"});
  CHECK(r.code == 4);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "partial");
  std::size_t open = 0;
  for (const auto& f : j["facets"])
    if (f["certificate"] == "bounded(1)") ++open;
  CHECK(open == 2);
  CHECK(j["ml_face"].is_null());
  auto rep = report_from_json(r.out);
  CHECK_FALSE(rep.complete);
  CHECK(rep.facets.size() == 3);

  auto full = invoke({"analyze", fixture("example2_line")});
  CHECK(full.code == 0);
  CHECK(nlohmann::json::parse(full.out)["status"] == "complete");

  auto exact = invoke({"analyze", fixture("odd_plane"), "--exact-only"});
  CHECK(exact.code == 4);
  CHECK(invoke({"analyze", fixture("odd_plane")}).code == 0);
}

TEST_CASE("check runs the property suite") {
  auto r = invoke({"check", fixture("example2"), "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS derivations vanish on the ml face") != std::string::npos);
}
