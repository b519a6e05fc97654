#include <doctest.h>

#include <fstream>
#include <sstream>

#include "k3lat/cli.hpp"
#include "k3lat/report_json.hpp"

using namespace k3lat;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("lattice info") {
    const Run a = run({"lattice", "info", "U + E8(2)"});
    CHECK(a.code == kExitOk);
    CHECK(has_line(a.out, "2-elementary r=10 a=8 delta=0"));
    const Run split = run({"lattice", "info", "U", "+", "E8(2)"});
    CHECK(split.out == a.out);
    const Run b = run({"--json", "lattice", "info", "U' + E8(2) + A1"});
    CHECK(b.code == kExitOk);
    const Json j = Json::parse(b.out);
    CHECK(j["two_elementary"]["r"] == 11);
    CHECK(j["two_elementary"]["a"] == 9);
    CHECK(j["two_elementary"]["delta"] == 1);
    const Run c = run({"--json", "lattice", "info", "gram[[0,1],[1,1]]"});
    CHECK(Json::parse(c.out)["even"] == false);
    CHECK(run({"lattice", "info", "U +"}).code == kExitUsage);
    CHECK(run({"lattice", "info", "gram[[0]]"}).code == kExitDomain);
    CHECK(has_line(run({"lattice", "info", "A2"}).out, "2-elementary no"));
  }

  TEST_CASE("roots") {
    const Run e8 = run({"roots", "E8", "--norm", "-2"});
    CHECK(e8.code == kExitOk);
    CHECK(e8.out.rfind("120 vectors", 0) == 0);
    CHECK(Json::parse(run({"--json", "roots", "E8(2)", "--norm", "-2"}).out)["count"] == 0);
    CHECK(Json::parse(run({"roots", "A1", "--norm=-2", "--json"}).out)["count"] == 1);
    CHECK(run({"roots", "U", "--norm", "-2"}).code == kExitDomain);
    CHECK(run({"roots", "A1", "--norm", "x"}).code == kExitUsage);
    CHECK(run({"roots", "A1"}).code == kExitUsage);
  }

  TEST_CASE("verify") {
    const Run all = run({"verify", "--case", "all"});
    CHECK(all.code == kExitOk);
    CHECK(has_line(all.out, "12/12 cases pass"));
    const Run one = run({"--json", "verify", "--case", "s6_t=3"});
    CHECK(one.code == kExitOk);
    const auto reports = reports_from_json(Json::parse(one.out));
    REQUIRE(reports.size() == 1);
    REQUIRE(reports[0].find("8.c_pencil.mw_rank") != nullptr);
    CHECK(reports[0].find("8.c_pencil.mw_rank")->actual == "4");
    CHECK(run({"verify", "--case", "nope"}).code == kExitUsage);
  }

  TEST_CASE("triples") {
    const Run t = run({"triples"});
    CHECK(t.code == kExitOk);
    CHECK(has_line(t.out, "10 10 1"));
    CHECK_FALSE(has_line(t.out, "6 6 0"));
    std::istringstream in(t.out);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      std::istringstream row(line);
      int r = 0, a = 0, d = 0;
      if (row >> r >> a >> d) CHECK((r + a) % 2 == 0);
    }
  }

  TEST_CASE("fibration analyze") {
    const std::string path = std::string(K3LAT_TEST_DATA) + "/pencil_11_9_1.txt";
    const Run r = run({"fibration", "analyze", "--file", path});
    CHECK(r.code == kExitOk);
    CHECK(has_line(r.out, "  At1: a1 + f2"));
    CHECK(has_line(r.out, "mordell-weil rank 8"));
    const Json j = Json::parse(run({"--json", "fibration", "analyze", "--file", path}).out);
    CHECK(j["mw_rank"] == 8);
    CHECK(j["fibers"][0]["kind"] == "At1");
    CHECK(run({"fibration", "analyze", "--file", "/nonexistent"}).code == kExitUsage);

    const std::string bad = "k3lat_bad_pencil.txt";
    std::ofstream(bad) << "[lattice]\nU'\n[fibration]\ne = u2\n";  // u2.u2 = -2
    CHECK(run({"fibration", "analyze", "--file", bad}).code == kExitDomain);
    std::ofstream(bad) << "[lattice]\nU'\n[classes]\nx = (1)\n";
    CHECK(run({"fibration", "analyze", "--file", bad}).code == kExitUsage);
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"lattice"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
  }

  TEST_CASE("JSON output is stable and round-trips") {
    const Run a = run({"--json", "verify", "--case", "all"});
    const Run b = run({"--json", "verify", "--case", "all"});
    CHECK(a.out == b.out);
    const Json j = Json::parse(a.out);
    const auto reports = reports_from_json(j);
    CHECK(reports.size() == 12);
    CHECK(reports_json(reports).dump(2) + "\n" == a.out);
    for (const auto& r : reports) {
      const Json one = r;
      CHECK(one.get<CaseReport>() == r);
      CHECK(one.contains("case"));
      CHECK(one.contains("checks"));
      CHECK(one.contains("pass"));
    }
  }

  TEST_CASE("big integers are strings in JSON") {
    CHECK(integer_json(mpz_class(42)) == 42);
    const mpz_class big("123456789012345678901234567890");
    CHECK(integer_json(big) == "123456789012345678901234567890");
    CHECK(integer_from_json(integer_json(big)) == big);
    CHECK(integer_from_json(integer_json(mpz_class(-7))) == -7);
  }
}
