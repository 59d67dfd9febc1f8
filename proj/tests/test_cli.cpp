#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "symcover/cli.hpp"

using namespace symcover;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kData = SYMCOVER_TEST_DATA;

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("symcover-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<fs::path> entries(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& item : fs::directory_iterator(dir))
    if (item.path().extension() == ".json") out.push_back(item.path());
  return out;
}

}  // namespace

TEST_CASE("classify emits the JSON report") {
  const auto r = run_command({"classify", "--group", "preset:cyclic:3", "--genus", "2"});
  REQUIRE(r.exit_code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["total"] == 1);
  CHECK(doc["exact"] == true);
  CHECK(doc["complete"] == true);
  CHECK(doc["group"]["order"] == 3);
  CHECK(doc["moveset"] == "default");
  CHECK(doc["signatures"].size() == 2);
  CHECK(doc["signatures"][0]["orbits"][0]["size"] == 6);
  CHECK(r.err.find("classified in") != std::string::npos);
  CHECK(r.out.find("seconds") == std::string::npos);
}

TEST_CASE("classify attaches level data on request") {
  const auto r = run_command({"classify", "--group", "preset:cyclic:3", "--genus", "2", "--level", "3"});
  REQUIRE(r.exit_code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["level"]["m_valid"] == true);
  CHECK(doc.dump().find("51840") != std::string::npos);
}

TEST_CASE("sp and signatures commands") {
  CHECK(run_command({"sp", "order", "--genus", "1", "--level", "3"}).out == "24\n");
  CHECK(run_command({"sp", "order", "--genus", "2", "--level", "3"}).out == "51840\n");

  const auto yes = run_command({"sp", "check", "--matrix", kData + "/sp_g1_m5.json", "--level", "5"});
  CHECK(json::parse(yes.out)["symplectic"] == true);
  const auto no = run_command({"sp", "check", "--matrix", kData + "/not_sp_g1_m4.json", "--level", "4"});
  CHECK(json::parse(no.out)["symplectic"] == false);

  const auto sigs = run_command({"signatures", "--group", "preset:cyclic:2", "--genus", "2"});
  REQUIRE(sigs.exit_code == 0);
  const auto rows = json::parse(sigs.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["gprime"] == 0);
  CHECK(rows[1]["orders"] == json::array({2, 2}));
}

TEST_CASE("vectors, orbit and group commands") {
  CHECK(run_command({"vectors", "count", "--group", "preset:cyclic:3", "--signature", "0;3,3,3,3", "--format",
                     "csv"})
            .out == "6\n");
  const auto list = run_command({"vectors", "list", "--group", "preset:cyclic:2", "--signature", "1;2,2"});
  CHECK(json::parse(list.out).size() == 4);

  const auto orbit =
      run_command({"orbit", "--group", "preset:cyclic:2", "--signature", "1;2,2", "--vector", "1,1,1,1"});
  REQUIRE(orbit.exit_code == 0);
  CHECK(json::parse(orbit.out)["size"] == 3);
  CHECK(run_command({"orbit", "--group", "preset:cyclic:2", "--signature", "1;2,2", "--vector", "1,1,1,0"})
            .exit_code == 1);

  const auto info = run_command({"group", "info", "--group", kData + "/s3_perms.json"});
  REQUIRE(info.exit_code == 0);
  CHECK(json::parse(info.out)["order"] == 6);
  const auto table = run_command({"group", "info", "--group", "file:" + kData + "/z3_table.json"});
  CHECK(json::parse(table.out)["order"] == 3);
}

TEST_CASE("exit codes") {
  CHECK(run_command({"classify", "--group", "preset:cyclic:3"}).exit_code == 2);
  CHECK(run_command({"frobnicate"}).exit_code == 2);
  CHECK(run_command({"classify", "--group", "preset:cyclic:3", "--genus", "1"}).exit_code == 2);
  const auto unknown = run_command({"classify", "--group", "preset:lie:3", "--genus", "2"});
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.err.find("UnknownPreset") != std::string::npos);
  const auto limited =
      run_command({"classify", "--group", "preset:cyclic:3", "--genus", "2", "--limit-vectors", "3"});
  CHECK(limited.exit_code == 1);
  CHECK(json::parse(limited.out)["complete"] == false);
  const auto bad_move = run_command(
      {"classify", "--group", "preset:cyclic:2", "--genus", "2", "--moveset", "file:" + kData + "/bad_order.json"});
  CHECK(bad_move.exit_code == 1);
  CHECK(bad_move.err.find("MoveValidationFailed") != std::string::npos);
}

TEST_CASE("registered moves from a file") {
  const auto r = run_command({"classify", "--group", "preset:cyclic:2", "--genus", "2", "--moveset",
                              "file:" + kData + "/coupling_g1.json"});
  REQUIRE(r.exit_code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["moveset"] == "default+registered");
  CHECK(doc["total"] == 2);
}

TEST_CASE("result cache") {
  const auto dir = fresh_dir("cache");
  const std::vector<std::string> args{"classify", "--group", "preset:symmetric:3", "--genus", "3",
                                      "--cache-dir", dir.string()};
  const auto first = run_command(args);
  REQUIRE(first.exit_code == 0);
  CHECK_FALSE(first.cache_hit);
  REQUIRE(entries(dir).size() == 1);

  const auto second = run_command(args);
  CHECK(second.cache_hit);
  CHECK(second.out == first.out);

  // Worker count is not part of the key.
  auto jobs = args;
  jobs.insert(jobs.end(), {"--jobs", "4"});
  CHECK(run_command(jobs).cache_hit);

  auto moved = args;
  moved.insert(moved.end(), {"--moveset", "file:" + kData + "/braid_words.json"});
  const auto registered = run_command(moved);
  CHECK_FALSE(registered.cache_hit);
  CHECK(entries(dir).size() == 2);

  auto no_cache = args;
  no_cache.push_back("--no-cache");
  CHECK_FALSE(run_command(no_cache).cache_hit);

  // Environment variable as the cache root.
  const auto env_dir = fresh_dir("cache-env");
  const std::vector<std::string> plain{"classify", "--group", "preset:cyclic:3", "--genus", "2"};
  CHECK_FALSE(run_command(plain, {{"SYMCOVER_CACHE", env_dir.string()}}).cache_hit);
  CHECK(run_command(plain, {{"SYMCOVER_CACHE", env_dir.string()}}).cache_hit);
  CHECK_FALSE(run_command(plain).cache_hit);

  const auto purge = run_command({"cache", "purge", "--cache-dir", dir.string()});
  CHECK(purge.out == "2 entries removed\n");
  CHECK(entries(dir).empty());
}

TEST_CASE("corrupt cache entries are recomputed with a warning") {
  const auto dir = fresh_dir("corrupt");
  const std::vector<std::string> args{"classify", "--group", "preset:cyclic:3", "--genus", "2",
                                      "--cache-dir", dir.string()};
  const auto first = run_command(args);
  const auto files = entries(dir);
  REQUIRE(files.size() == 1);
  {
    std::ofstream out(files[0], std::ios::trunc);
    out << "{\"payload\": \"trun";
  }
  const auto again = run_command(args);
  CHECK(again.exit_code == 0);
  CHECK_FALSE(again.cache_hit);
  CHECK(again.err.find("CorruptCacheEntry") != std::string::npos);
  CHECK(again.out == first.out);
  CHECK(run_command(args).cache_hit);

  // A well-formed entry whose payload no longer matches its checksum.
  std::ifstream in(files[0]);
  auto entry = json::parse(in);
  in.close();
  entry["payload"] = "{}";
  std::ofstream(files[0], std::ios::trunc) << entry.dump();
  const auto tampered = run_command(args);
  CHECK_FALSE(tampered.cache_hit);
  CHECK(tampered.err.find("checksum") != std::string::npos);
}

TEST_CASE("stability defaults to CSV") {
  const auto r = run_command(
      {"stability", "--group", "preset:cyclic:3", "--orders", "3,3,3,3", "--gprime-min", "0", "--gprime-max", "1"});
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "gprime,vectors,orbits,exact");
  CHECK(first == "0,6,1,true");
}

TEST_CASE("installed binary round trip") {
  const std::string command = std::string("\"") + SYMCOVER_CLI_PATH + "\" sp order --genus 2 --level 2";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe);
  char buffer[64] = {};
  const auto n = fread(buffer, 1, sizeof buffer - 1, pipe);
  CHECK(pclose(pipe) == 0);
  CHECK(std::string(buffer, n) == "720\n");
}
