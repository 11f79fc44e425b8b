// end-to-end checks of the mwkt executable: output shapes, exit codes,
// determinism across thread counts, and the content-addressed cache.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int rc = -1;
  std::string out;
};

std::string bin() {
  const char* b = std::getenv("MWKT_BIN");
  REQUIRE(b != nullptr);
  return b;
}

RunResult run(const std::string& args) {
  std::string cmd = bin() + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("structure subcommands") {
  RunResult r = run("kmw --ring F5 --degree 2 --json");
  CHECK(r.rc == 0);
  json j = json::parse(r.out);
  CHECK(j["structure"] == json{{"free_rank", 0}, {"invariant_factors", json::array()}});
  CHECK(j["ring"] == "F5");
  CHECK(j["degree"] == 2);

  r = run("gw --ring F9 --json");
  j = json::parse(r.out);
  CHECK(j["structure"]["free_rank"] == 1);
  CHECK(j["structure"]["invariant_factors"] == json::array({2}));

  r = run("km --ring F7 --degree 1 --json");
  j = json::parse(r.out);
  CHECK(j["structure"]["invariant_factors"] == json::array({6}));

  r = run("khat --ring F3 --degree 2 --json");
  j = json::parse(r.out);
  CHECK(j["structure"] == json{{"free_rank", 0}, {"invariant_factors", json::array()}});

  r = run("vmod --ring F7 --json");
  j = json::parse(r.out);
  CHECK(j["structure"]["invariant_factors"] == json::array({6}));

  // repeatable --ring yields an array
  r = run("gw --ring F3 --ring F5 --json");
  j = json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 2);
  CHECK(j[0]["ring"] == "F3");
  CHECK(j[1]["ring"] == "F5");
}

TEST_CASE("ring info and witt") {
  RunResult r = run("ring info --ring Z/9 --json");
  CHECK(r.rc == 0);
  json j = json::parse(r.out);
  CHECK(j["size"] == 9);
  CHECK(j["is_field"] == false);
  CHECK(j["units"] == 6);
  CHECK(j["residue_field"]["size"] == 3);

  r = run("witt --ring F3 --degree 3 --json");
  j = json::parse(r.out);
  CHECK(j["witt_order"] == "4");
  CHECK(j["stable_at"] == 2);
}

TEST_CASE("complex JSON shape") {
  RunResult r = run("complex --ring F3 --degree 2 --json");
  CHECK(r.rc == 0);
  json j = json::parse(r.out);
  CHECK(j["ring"] == "F3");
  CHECK(j["n"] == 2);
  CHECK(j["variant"] == "plain");
  CHECK(j["dims"] == json::array({1, 8, 48}));
  CHECK(j["homology"]["0"]["free_rank"] == 0);
  CHECK(j["homology"]["1"]["invariant_factors"] == json::array());

  r = run("complex --ring F3 --degree 2 --tilde --json");
  j = json::parse(r.out);
  CHECK(j["variant"] == "general-position");
  CHECK(j["dims"].size() == 4);
}

TEST_CASE("smodule CSV tables") {
  RunResult r = run("smodule --ring F3 --degree 2 --csv");
  CHECK(r.rc == 0);
  CHECK(r.out.find("a_1,a_2,class") != std::string::npos);
  CHECK(r.out.find("a_1,a_2,det") != std::string::npos);
  CHECK(r.out.find("2,2,2<1> - <2>") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("kmw --ring F5").rc == 0);
  CHECK(run("").rc == 2);                       // no subcommand
  CHECK(run("kmw").rc == 2);                    // --ring required
  CHECK(run("verify nosuch").rc == 2);          // unknown suite
  CHECK(run("kmw --ring NOPE").rc == 2);        // malformed ring spec
  CHECK(run("smodule --ring F5 --degree 3").rc == 3);  // over the column cap
  CHECK(run("complex --ring F7 --degree 3").rc == 3);
  CHECK(run("--help").rc == 0);
}

TEST_CASE("verify verdicts and determinism") {
  RunResult r = run("verify lemma4.6 --ring F3 --ring F5 --json");
  CHECK(r.rc == 0);
  json j = json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["suite"] == "lemma4.6");
  CHECK(j[0]["anchor"].get<std::string>().find("lemma4.6") == 0);
  CHECK(j[0]["counts"]["fail"] == 0);
  CHECK(j[0]["counts"]["pass"] == 2);
  for (const auto& ch : j[0]["checks"]) {
    CHECK(ch["verdict"] == "pass");
  }

  // byte-identical across runs and thread counts (timings live outside JSON)
  RunResult r1 = run("verify lemma4.5 lemma4.6 lemma4.8 --ring F3 --ring F7 --jobs 1 --json");
  RunResult r8 = run("verify lemma4.5 lemma4.6 lemma4.8 --ring F3 --ring F7 --jobs 8 --json");
  CHECK(r1.rc == 0);
  CHECK(r1.out == r8.out);

  // reports assemble sorted by suite name regardless of argument order
  RunResult rr = run("verify lemma4.8 lemma4.5 --ring F3 --jobs 2 --json");
  json jj = json::parse(rr.out);
  CHECK(jj[0]["suite"] == "lemma4.5");
  CHECK(jj[1]["suite"] == "lemma4.8");

  // CSV form carries the same verdicts
  RunResult rc = run("verify lemma4.6 --ring F3 --csv");
  CHECK(rc.rc == 0);
  CHECK(rc.out.find("suite,ring,check,verdict,instances,note") == 0);
  CHECK(rc.out.find("lemma4.6,F3,ambient-identity-iso,pass") != std::string::npos);
}

TEST_CASE("failing hypothesis downgrades to finding, not fail") {
  // Z/9 has residue field of size 3: thm-khat-iso's hypothesis is not
  // satisfied, so whatever happens the suite must not report "fail".
  RunResult r = run("verify thm-khat-iso --ring Z/9 --degree 2 --json");
  CHECK(r.rc == 0);
  json j = json::parse(r.out);
  CHECK(j[0]["counts"]["fail"] == 0);
}

TEST_CASE("content-addressed cache") {
  fs::path dir = fs::temp_directory_path() / "mwkt-cache-test";
  std::error_code ec;
  fs::remove_all(dir, ec);
  std::string cmd = "MWKT_CACHE=" + dir.string() + " " + bin() +
                    " kmw --ring F5 --degree 2 --json >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  size_t count1 = 0;
  for (auto& e : fs::directory_iterator(dir)) {
    ++count1;
    // the file name is the fnv1a64 hash of its content
    std::string name = e.path().stem().string();
    CHECK(name.size() == 16);
  }
  CHECK(count1 == 1);
  // immutable: re-running adds nothing new
  REQUIRE(std::system(cmd.c_str()) == 0);
  size_t count2 = 0;
  for (auto& e : fs::directory_iterator(dir)) ++count2;
  CHECK(count2 == 1);
  fs::remove_all(dir, ec);
}
