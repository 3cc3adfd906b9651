#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "unistab/cli.hpp"
#include "unistab/error.hpp"

using namespace unistab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("unistab-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RunConfig symplectic(unsigned q, unsigned n) {
  RunConfig c;
  c.q = q;
  c.n = n;
  c.no_cache = true;
  return c;
}

std::string verdict_section(const Report& r) {
  return nlohmann::json{{"verdict", r.verdict}, {"evidence", r.evidence}, {"result", r.result}}.dump();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(UNISTAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream is(p);
  return nlohmann::json::parse(is);
}

}  // namespace

TEST_CASE("acyclicity of the symplectic line-frame poset") {
  const auto r = run_guarded("acyclicity", symplectic(3, 2), [] { return cmd_acyclicity(symplectic(3, 2)); });
  CHECK(r.verdict == "PASS");
  CHECK(r.exit_code() == 0);
  CHECK(r.evidence == "exact-Z");
  CHECK(r.result["simplex_counts"] == nlohmann::json{40, 480});
  CHECK(r.result["boundaries_compose_to_zero"] == true);
}

TEST_CASE("F2 is refused for isotropic kinds but not for the building") {
  auto c = symplectic(2, 2);
  c.eps = "1";
  const auto r = run_guarded("acyclicity", c, [&] { return cmd_acyclicity(c); });
  CHECK(r.verdict == "REFUSED");
  CHECK(r.exit_code() == 2);
  CHECK(r.message.find("F_2") != std::string::npos);

  c.kind = "tits";
  c.n = 3;
  const auto t = run_guarded("acyclicity", c, [&] { return cmd_acyclicity(c); });
  CHECK(t.verdict == "PASS");
  REQUIRE(t.result["extra_degrees"].size() == 1);
  CHECK(t.result["extra_degrees"][0]["degree"] == 1);
  CHECK(t.result["extra_degrees"][0]["rank"] == 8);
}

TEST_CASE("a link poset uses n - |w| - 2 as its bound") {
  auto c = symplectic(3, 3);
  c.kind = "u";
  c.m = 3;
  c.link = "e3";
  const auto r = cmd_acyclicity(c);
  CHECK(r.result["bound"] == 0);
  CHECK(r.verdict == "PASS");
}

TEST_CASE("orbit and stabilizer reports") {
  auto c = symplectic(3, 2);
  c.frames = {"e1;e3"};
  const auto o = cmd_orbit(c);
  CHECK(o.verdict == "PASS");
  CHECK(o.result["orbit_size"] == 480);
  CHECK(o.result["frames_enumerated"] == 480);
  CHECK(o.result["group_order"] == 51840);

  c.frames = {"e1;e2"};
  CHECK(run_guarded("orbit", c, [&] { return cmd_orbit(c); }).verdict == "REFUSED");

  c.p = 2;
  const auto s = cmd_stab(c);
  CHECK(s.result["derived_pattern_count"] == 27);
  CHECK(s.result["samples_match_pattern"] == true);
  // [N, N] is trivial here, so the display is not reached
  CHECK(s.result["derived_order"] == 1);
  CHECK(s.verdict == "FAIL");
}

TEST_CASE("spectral commands") {
  auto c = symplectic(3, 2);
  c.coeff = "5";
  const auto row = cmd_spectral("bottom-row", c);
  CHECK(row.verdict == "PASS");
  CHECK(row.result["d1_alternates"] == true);
  CHECK(cmd_spectral("theta", c).verdict == "PASS");
  c.coeff = "Q";
  CHECK(run_guarded("spectral bottom-row", c, [&] { return cmd_spectral("bottom-row", c); }).verdict == "REFUSED");
  c.coeff = "5";
  c.group_prime = 3;
  c.group_rank = 2;
  CHECK(cmd_spectral("coprime", c).verdict == "PASS");
  c.coeff = "3";
  CHECK(run_guarded("spectral coprime", c, [&] { return cmd_spectral("coprime", c); }).verdict == "REFUSED");
  CHECK_THROWS_AS(cmd_spectral("nonsense", c), ConfigError);
}

TEST_CASE("eps selectors") {
  RunConfig c;
  c.q = 9;
  c.involution = "frobenius";
  c.eps = "1";
  CHECK_NOTHROW(c.space());
  c.eps = "0";
  CHECK_NOTHROW(c.space());
  c.eps = "99";
  CHECK_THROWS_AS(c.space(), ConfigError);
  c.eps = "x";
  CHECK_THROWS_AS(c.space(), ConfigError);
}

TEST_CASE("cached and cold runs agree byte for byte") {
  const auto dir = scratch("cache");
  auto c = symplectic(3, 2);
  c.no_cache = false;
  c.cache_dir = dir.string();
  const auto cold = cmd_acyclicity(c);
  CHECK(cold.cache["misses"] == 2);
  const auto warm = cmd_acyclicity(c);
  CHECK(warm.cache["hits"] == 2);
  CHECK(verdict_section(cold) == verdict_section(warm));
  c.no_cache = true;
  CHECK(verdict_section(cmd_acyclicity(c)) == verdict_section(warm));

  // a damaged entry reads as a miss and gets rewritten
  const SimplexCache cache(dir, true);
  const auto key = c.poset_spec().key() + ";k=1";
  { std::ofstream(cache.file_for(key)) << "garbage\n"; }
  CHECK_FALSE(cache.load(key));
  c.no_cache = false;
  const auto repaired = cmd_acyclicity(c);
  CHECK(repaired.cache["misses"] == 1);
  CHECK(verdict_section(repaired) == verdict_section(cold));
  CHECK(cache.load(key));
  fs::remove_all(dir);
}

TEST_CASE("report JSON round trip") {
  auto c = symplectic(3, 2);
  c.frames = {"e1;e3"};
  const auto r = run_guarded("orbit", c, [&] { return cmd_orbit(c); });
  const auto text = r.to_json().dump();
  const auto back = Report::from_json(nlohmann::json::parse(text));
  CHECK(back == r);
  CHECK(back.to_json().dump() == text);

  auto j = r.to_json();
  j.erase("evidence");
  CHECK_THROWS_AS(validate_report_json(j), ConfigError);
  j = r.to_json();
  j["verdict"] = "MAYBE";
  CHECK_THROWS_AS(validate_report_json(j), ConfigError);
  j = r.to_json();
  j["exit_code"] = 1;
  CHECK_THROWS_AS(validate_report_json(j), ConfigError);
}

TEST_CASE("reports carry every field the schema requires") {
  std::ifstream is(UNISTAB_SCHEMA_PATH);
  REQUIRE(is);
  const auto schema = nlohmann::json::parse(is);
  auto c = symplectic(3, 2);
  const auto pass = run_guarded("acyclicity", c, [&] { return cmd_acyclicity(c); }).to_json();
  c.q = 2;
  const auto refused = run_guarded("acyclicity", c, [&] { return cmd_acyclicity(c); }).to_json();
  CHECK_NOTHROW(validate_report_json(pass));
  CHECK_NOTHROW(validate_report_json(nlohmann::json::parse(refused.dump())));
  for (const auto& key : schema.at("required")) {
    CHECK(pass.contains(key.get<std::string>()));
    CHECK(refused.contains(key.get<std::string>()));
  }
  const auto verdicts = schema.at("properties").at("verdict").at("enum");
  CHECK(std::find(verdicts.begin(), verdicts.end(), pass["verdict"]) != verdicts.end());
  const auto evidence = schema.at("properties").at("evidence").at("enum");
  CHECK(std::find(evidence.begin(), evidence.end(), refused["evidence"]) != evidence.end());
}

TEST_CASE("dump writes the sparse boundary format") {
  auto c = symplectic(3, 2);
  c.degree = 1;
  std::ostringstream os;
  const auto r = cmd_dump(c, os);
  std::istringstream in(os.str());
  std::size_t rows = 0, cols = 0, nnz = 0;
  in >> rows >> cols >> nnz;
  CHECK(rows == 40);
  CHECK(cols == 480);
  CHECK(nnz == 960);
  std::size_t lines = 0;
  long long i, j, v;
  while (in >> i >> j >> v) ++lines;
  CHECK(lines == nnz);
  CHECK(r.result["rows"] == 40);
}

TEST_CASE("command-line process: exit codes and atomic output") {
  const auto dir = scratch("proc");
  const auto out = dir / "report.json";
  CHECK(run_cli("acyclicity --kind iu-proj --q 3 --eps -1 --n 2 --coeff int --no-cache --out " + out.string()) == 0);
  const auto j = read_json(out);
  CHECK_NOTHROW(validate_report_json(j));
  CHECK(j["verdict"] == "PASS");
  CHECK(run_cli("acyclicity --kind iu-proj --q 2 --eps 1 --n 2 --no-cache --out " + out.string()) == 2);
  CHECK(read_json(out)["verdict"] == "REFUSED");
  CHECK(run_cli("stab --q 3 --n 2 --p 2 --json") == 1);
  CHECK(run_cli("orbit --q 3 --n 2 --frame 'e1;e3'") == 0);
  CHECK(run_cli("no-such-command") == 2);
  for (const auto& entry : fs::directory_iterator(dir)) CHECK(entry.path().extension() == ".json");
  fs::remove_all(dir);
}
