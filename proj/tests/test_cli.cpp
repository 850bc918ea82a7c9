#include "pencil/errors.hpp"
#include "pencil/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace pencil;

namespace {

json run_json(const std::vector<std::string>& args, int expect_exit) {
  auto r = run(args);
  CHECK(r.exit_code == expect_exit);
  return json::parse(r.output);
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("report schema") {
  auto j = run_json({"verify", "ruppert", "--d", "3"}, 0);
  CHECK(j["status"] == "verified");
  CHECK(j["command"] == "pencil verify ruppert --d 3");
  for (auto& i : j["items"]) {
    CHECK(i.contains("id"));
    CHECK(i.contains("paper_ref"));
    CHECK(i.contains("status"));
    CHECK(i.contains("details"));
  }
  CHECK(j["artifacts"].is_array());
  std::size_t fibers = 0;
  for (auto& i : j["items"])
    if (i["id"].get<std::string>().rfind("ruppert.fiber.", 0) == 0) ++fibers;
  CHECK(fibers == 6);
}

TEST_CASE("sfg example from the command line") {
  auto r = run({"verify", "sfg", "--d", "3", "--f-roots", "0,1,-1", "--g-roots", "0,2,3"});
  CHECK(r.exit_code == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"verify", "ruppert", "--d", "3", "--bogus"}).exit_code == 2);
  CHECK(run({"nothing"}).exit_code == 2);
  CHECK(run({}).exit_code == 2);
  CHECK(run({"bounds", "rho", "--d", "3"}).exit_code == 2);
  CHECK(run({"verify", "sfg", "--d", "3", "--f-roots", "0,1,1", "--g-roots", "0,2,3"}).exit_code == 2);
  CHECK(run({"bounds", "rank", "--surface", "nowhere", "--combo", "nofile"}).exit_code == 2);
  CHECK(run({"--help"}).exit_code == 0);
}

TEST_CASE("falsified items exit with 1") {
  auto r = run({"bounds", "p1p1", "--m", "3", "--n", "3", "--sweep", "10"});
  CHECK(r.exit_code == 1);
  auto set = temp_file("pencil_set.txt", "[2]\n");
  CHECK(run({"lattice", "check-saturated", "--surface", "p2", "--set", set}).exit_code == 1);
}

TEST_CASE("bounds subcommands") {
  auto j = run_json({"bounds", "table", "--kmax", "12"}, 0);
  CHECK(j["items"].size() == 12);
  CHECK(j["items"][1]["details"]["floor"] == "6");
  auto rho = run_json({"bounds", "rho", "--d", "24", "--k", "12"}, 0);
  CHECK(rho["items"][0]["details"]["floor"] == "11");
  auto combo = temp_file("pencil_combo.txt", "l-e1-e2 1 smooth\n2l-e1-e3-e4-e5-e6 1 smooth\n");
  auto rank = run_json({"bounds", "rank", "--surface", "cubic27", "--combo", combo}, 0);
  CHECK(rank["items"][0]["details"]["value"] == "5");
  auto delta = temp_file("pencil_delta.txt", "[1,1]\n");
  auto kd = run_json({"bounds", "kdelta", "--surface", "p1xp1", "--delta", delta}, 0);
  CHECK(kd["items"][0]["details"]["K"] == 2);
  auto seeds = temp_file("pencil_seeds.txt", "[3]\n");
  auto sat = run_json({"lattice", "saturate", "--surface", "p2", "--seeds", seeds}, 0);
  CHECK(sat["items"][0]["details"]["size"] == 3);
}

TEST_CASE("markdown is deterministic and bundles round trip") {
  auto a = run({"verify", "ruppert", "--d", "4", "--format", "md", "--seed", "9"});
  auto b = run({"verify", "ruppert", "--d", "4", "--format", "md", "--seed", "9"});
  CHECK(a.output == b.output);
  CHECK(a.output.find("| id |") != std::string::npos);

  auto out = (std::filesystem::temp_directory_path() / "pencil_kummer.json").string();
  auto r = run({"verify", "kummer-quartic", "--out", out});
  CHECK(r.exit_code == 0);
  REQUIRE(r.report.artifacts.size() == 2);
  auto again = run({"verify", "bundle", "--in", r.report.artifacts[0]});
  CHECK(again.exit_code == 0);
  CHECK(json::parse(again.output)["items"].size() == 6);

  std::ifstream in(r.report.artifacts[0]);
  json bundle = json::parse(in);
  bundle["certificates"][0]["scalar"] = "12345";
  auto tampered = temp_file("pencil_tampered.json", bundle.dump());
  CHECK(run({"verify", "bundle", "--in", tampered}).exit_code == 1);
}
