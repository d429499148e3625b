#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" + std::string(SOCLELAB_CLI) + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json run_json(const std::string& args, int expect_code = 0) {
  CliRun r = run(args + " --format json");
  EXPECT_EQ(r.code, expect_code) << args;
  return json::parse(r.out);
}

fs::path temp_dir() {
  fs::path d = fs::temp_directory_path() / "soclelab_test_cli";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, AnalyzeSL2) {
  json r = run_json("analyze 'SL2(3)' --p 2");
  EXPECT_EQ(r["schema_version"], 1);
  EXPECT_TRUE(r["ideal"]["direct"].get<bool>());
  EXPECT_TRUE(r["ideal"]["criterion"].get<bool>());
  EXPECT_EQ(r["algebra"]["dim_center"], 7);
  EXPECT_EQ(r["algebra"]["dim_jacobson"], 6);
  EXPECT_EQ(r["algebra"]["dim_socle"], 3);
  EXPECT_TRUE(r["theorem_c"]["agl"].get<bool>());
  EXPECT_TRUE(r["theorem_c"]["centralizer_of_gsecond_nontrivial"].get<bool>());
  EXPECT_TRUE(r["theorem_c"]["camina"].get<bool>());
  EXPECT_TRUE(r["theorem_c"]["predicted"].get<bool>());
  EXPECT_EQ(r["consistency_failures"], 0);
}

TEST(Cli, AnalyzeSmallExamples) {
  EXPECT_TRUE(run_json("analyze 'cyclic(6)' --p 2")["ideal"]["direct"].get<bool>());
  json agl = run_json("analyze 'AGL(1,9)' --p 3");
  EXPECT_TRUE(agl["ideal"]["direct"].get<bool>());
  EXPECT_EQ(agl["algebra"]["dim_socle"], 8);
  // Default prime: smallest prime dividing |G'| = 4.
  EXPECT_EQ(run_json("analyze 'AGL(1,4)'")["p"], 2);
  EXPECT_EQ(run_json("verify 'SL2(3)'")["theorem_mode"], "all");
  EXPECT_EQ(run("analyze 'SL2(3)' --theorems none").code, 0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("analyze 'nosuch(3)'").code, 3);
  EXPECT_EQ(run("analyze 'SL2(3)' --max-order 10").code, 3);
  EXPECT_EQ(run("analyze " + (temp_dir() / "missing.txt").string()).code, 3);
  EXPECT_EQ(run("analyze 'SL2(3)' --p 4").code, 3);
}

TEST(Cli, ConstructRoundTrip) {
  for (const std::string spec : {"SL2(3)", "central(SL2(3),SL2(3))", "AGL(1,8)"}) {
    const fs::path file = temp_dir() / "group.txt";
    ASSERT_EQ(run("construct '" + spec + "' -o " + file.string()).code, 0);
    std::ifstream in(file);
    std::string header;
    std::size_t n = 0;
    in >> header >> n;
    EXPECT_EQ(header, "cayley");
    const std::size_t expect = spec == "SL2(3)" ? 24 : spec == "AGL(1,8)" ? 56 : 288;
    EXPECT_EQ(n, expect);
    const std::string p = spec == "central(SL2(3),SL2(3))" ? "2" : spec == "AGL(1,8)" ? "2" : "2";
    json from_file = run_json("analyze " + file.string() + " --p " + p);
    json in_memory = run_json("analyze '" + spec + "' --p " + p);
    from_file["group"].erase("descriptor");
    in_memory["group"].erase("descriptor");
    // Product factors are only known for the in-memory spec.
    in_memory.erase("factors");
    json::array_t a, b;
    for (const auto& c : from_file["checks"]) a.push_back(c);
    for (const auto& c : in_memory["checks"])
      if (c["name"] != "central_product_verdict_is_conjunction") b.push_back(c);
    from_file.erase("checks");
    in_memory.erase("checks");
    EXPECT_EQ(from_file, in_memory) << spec;
    EXPECT_EQ(json(a), json(b)) << spec;
  }
}

TEST(Cli, ScanAffineFamily) {
  json s = run_json("scan 'AGL(1,3)' 'AGL(1,4)' 'AGL(1,5)' 'AGL(1,7)' 'AGL(1,8)' 'AGL(1,9)' --primes natural");
  ASSERT_EQ(s["rows"].size(), 6u);
  for (const auto& row : s["rows"]) EXPECT_TRUE(row["report"]["ideal"]["direct"].get<bool>());
  EXPECT_EQ(s["summary"]["consistency_failures"], 0);
}

TEST(Cli, ScanOrderIsDeterministic) {
  CliRun one = run("scan --format json", "SOCLELAB_THREADS=1");
  CliRun many = run("scan --format json", "SOCLELAB_THREADS=8");
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, many.out);
}

TEST(Cli, ScanUserDirectory) {
  json s = run_json(std::string("scan ") + SOCLELAB_STANDIN_DIR + " --primes natural");
  EXPECT_EQ(s["summary"]["errors"], 1);
  EXPECT_EQ(s["summary"]["consistency_failures"], 0);
  std::size_t reports = 0;
  for (const auto& row : s["rows"]) reports += row.contains("report");
  EXPECT_GE(reports, 2u);
}
