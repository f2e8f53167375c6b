#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "commands.hpp"
#include "render.hpp"
#include "secacc/errors.hpp"
#include "secacc/setup.hpp"

namespace secacc::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "secacc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("secacc_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string default_config_path() { return std::string(SECACC_SOURCE_DIR) + "/configs/default.json"; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(Cli, SimulateShaTable) {
  const auto r = invoke({"simulate", "--workload", "sha256", "--payload", "4096", "--placement", "ram",
                         "--config", default_config_path()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.out, m, std::regex(R"(total cycles\s+(\d+))")));
  EXPECT_NEAR(std::stod(m[1]), 32260, 0.05 * 32260);
  for (const char* row : {"Config", "Digest", "Wait", "Final", "TOT"})
    EXPECT_NE(r.out.find(std::string("\n") + row), std::string::npos) << row;
}

TEST(Cli, BoundPrintsFourFigures) {
  const auto r = invoke({"bound", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::string> cpb;
  for (const auto& row : csv_rows(r.out))
    if (row.size() > 2 && (row[0] == "hmac" || row[0] == "aes") && (row[1] == "rot" || row[1] == "ram"))
      cpb.push_back(row.back());
  EXPECT_EQ(cpb, (std::vector<std::string>{"2.50", "7.00", "5.00", "14.00"}));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"simulate", "--workload", "sha256", "--payload", "0", "--placement", "ram"}).code, 1);
  EXPECT_EQ(invoke({"simulate", "--workload", "md5", "--payload", "64", "--placement", "ram"}).code, 1);
  EXPECT_EQ(invoke({"simulate", "--bogus"}).code, 1);
  EXPECT_EQ(invoke({"bound", "--config", "/nonexistent.json"}).code, 1);
  EXPECT_EQ(invoke({"analyze", "--trace", "/nonexistent.csv"}).code, 1);
  EXPECT_EQ(invoke({"simulate", "--workload", "aes256cbc", "--payload", "20", "--placement", "ram"}).code, 1);
  EXPECT_EQ(invoke({"simulate", "--workload", "sha256", "--payload", "64", "--placement", "ram", "--format",
                    "svg"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, ModelViolationExitsTwo) {
  TempDir dir;
  auto doc = to_json(default_setup());
  for (auto& a : doc["accelerators"])
    if (a["name"] == "aes") a["compute_cycles_per_block"] = 100000;
  doc["templates"] = {{"aes256cbc", {{"block", {"fetch*4", "push*4", "readback*4", "poll"}}}}};
  std::ofstream(dir.file("nopoll.json")) << doc.dump();
  const auto r = invoke({"simulate", "--workload", "aes256cbc", "--payload", "64", "--placement", "ram",
                         "--config", dir.file("nopoll.json")});
  EXPECT_EQ(r.code, 2) << r.out << r.err;
}

TEST(Cli, CsvAndJsonAgree) {
  const std::vector<std::string> base{"simulate", "--workload", "aes256cbc", "--payload", "4096",
                                      "--placement", "ram"};
  auto csv_args = base, json_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto csv = invoke(csv_args), json = invoke(json_args);
  ASSERT_EQ(csv.code, 0);
  ASSERT_EQ(json.code, 0);
  const auto doc = nlohmann::json::parse(json.out);
  const auto rows = csv_rows(csv.out);
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(std::stoull(rows[1][4]), doc["total_cycles"].get<std::uint64_t>());
  EXPECT_DOUBLE_EQ(std::stod(rows[1][5]), doc["cycles_per_byte"].get<double>());
  const auto& jrows = doc["attribution"]["rows"];
  std::size_t matched = 0;
  for (const auto& row : rows) {
    for (const auto& jr : jrows) {
      if (row[0] != jr["phase"].get<std::string>() || row.size() != 12) continue;
      EXPECT_EQ(std::stoull(row[1]), jr["counts"]["ALU"].get<std::uint64_t>());
      EXPECT_EQ(std::stoull(row[4]), jr["counts"]["MemRam"].get<std::uint64_t>());
      EXPECT_DOUBLE_EQ(std::stod(row[9]), jr["percent"]["MemRam"].get<double>());
      ++matched;
    }
  }
  EXPECT_EQ(matched, jrows.size());
}

TEST(Cli, SweepDefaultPayloads) {
  const auto r = invoke({"sweep", "--workloads", "sha256,aes256cbc", "--placements", "ram", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 1u + 14u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"workload", "placement", "payload", "cycles_per_byte"}));
  EXPECT_EQ(rows[1][2], "64");
  EXPECT_EQ(rows[7][2], "4096");
}

TEST(Cli, SweepSvgStructure) {
  const auto r = invoke({"sweep", "--workloads", "sha256", "--placements", "ram,rot", "--format", "svg"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = r.out.find(needle); pos != std::string::npos; pos = r.out.find(needle, pos + 1)) ++n;
    return n;
  };
  EXPECT_EQ(r.out.rfind("<svg", 0) == 0 || r.out.find("<svg") != std::string::npos, true);
  EXPECT_EQ(count("class=\"curve\""), 2u);
  EXPECT_EQ(count("class=\"reference bound\""), 2u);
  EXPECT_EQ(count("class=\"reference theoretical\""), 1u);
  EXPECT_NE(r.out.find("</svg>"), std::string::npos);
}

TEST(Cli, EmptyAttributionCsvIsHeaderOnly) {
  const auto text = render::render_attribution(AttributionReport{}, render::Format::Csv);
  EXPECT_EQ(text, "phase,alu,ctl,mem_rot,mem_ram,total,alu_pct,ctl_pct,mem_rot_pct,mem_ram_pct,total_pct,cycles\n");
}

TEST(Cli, SvgRejectsEmptyCurves) {
  EXPECT_THROW(render::render(render::SweepDoc{}, render::Format::Svg), ValidationError);
}

TEST(Cli, OutputFileAndReportRerender) {
  TempDir dir;
  const auto json_path = dir.file("sim.json");
  auto r = invoke({"simulate", "--workload", "hmac", "--payload", "1024", "--placement", "rot", "--format", "json",
                   "-o", json_path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto table = invoke({"report", "--input", json_path, "--format", "table"});
  ASSERT_EQ(table.code, 0) << table.err;
  const auto direct = invoke({"simulate", "--workload", "hmac", "--payload", "1024", "--placement", "rot"});
  EXPECT_EQ(table.out, direct.out);
  const auto again = invoke({"report", "--input", json_path, "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(again.out), nlohmann::json::parse(read_file(json_path)));
}

TEST(Cli, AnalyzeSelfTrace) {
  TempDir dir;
  const auto trace_path = dir.file("t.csv");
  auto sim = invoke({"simulate", "--workload", "sha256", "--payload", "4096", "--placement", "ram", "--trace",
                     trace_path, "--format", "json"});
  ASSERT_EQ(sim.code, 0) << sim.err;
  auto ana = invoke({"analyze", "--trace", trace_path, "--format", "json"});
  ASSERT_EQ(ana.code, 0) << ana.err;
  const auto s = nlohmann::json::parse(sim.out), a = nlohmann::json::parse(ana.out);
  EXPECT_EQ(s["attribution"], a["attribution"]);
  EXPECT_NEAR(a["latency"]["summary"]["RoT"]["mean"].get<double>(), 5.7, 0.57);
  EXPECT_EQ(a["latency"]["summary"]["RAM"]["min"].get<int>(), 23);
}

TEST(Cli, DeterministicUnlessStamped) {
  const std::vector<std::string> args{"sweep", "--workloads", "aes256cbc", "--payloads", "64,128",
                                      "--placements", "rot", "--format", "json"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
  auto stamped = args;
  stamped.push_back("--stamp");
  const auto doc = nlohmann::json::parse(invoke(stamped).out);
  EXPECT_TRUE(doc.contains("generated_at"));
  EXPECT_FALSE(nlohmann::json::parse(invoke(args).out).contains("generated_at"));
}

TEST(Cli, EnvironmentConfig) {
  TempDir dir;
  auto doc = to_json(default_setup());
  doc["latency"]["ram"]["base_read"] = 46;
  std::ofstream(dir.file("slow.json")) << doc.dump();
  ::setenv("SECACC_CONFIG", dir.file("slow.json").c_str(), 1);
  const auto r = invoke({"bound", "--format", "csv"});
  ::unsetenv("SECACC_CONFIG");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("hmac,ram"), std::string::npos);
  EXPECT_EQ(r.out.find(",7.00\n"), std::string::npos);
}

}  // namespace
}  // namespace secacc::cli
