#include <gtest/gtest.h>

#include <random>

#include "secacc/errors.hpp"
#include "secacc/setup.hpp"
#include "secacc/socmodel.hpp"

namespace secacc::soc {
namespace {

using nlohmann::json;

json default_doc() { return to_json(default_config()); }

std::string rejection(const json& doc) {
  try {
    load_config(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

TEST(LoadConfig, DefaultLatencies) {
  const auto cfg = load_config(default_doc());
  EXPECT_EQ(cfg.latency.rot.base_read, 5u);
  EXPECT_EQ(cfg.latency.ram.base_read, 23u);
  EXPECT_EQ(cfg, default_config());
}

TEST(LoadConfig, ShippedFileMatchesBuiltin) {
  const auto setup = load_setup_file(std::string(SECACC_SOURCE_DIR) + "/configs/default.json");
  EXPECT_EQ(setup.soc, default_config());
  EXPECT_EQ(setup.templates, drivers::default_templates());
  EXPECT_EQ(to_json(setup), to_json(default_setup()));
}

TEST(LoadConfig, OverlapNamesBothRegions) {
  auto doc = default_doc();
  for (auto& r : doc["address_map"])
    if (r["name"] == "aes_fifo") r["start"] = "0x41100800";
  const auto msg = rejection(doc);
  EXPECT_NE(msg.find("aes_regs"), std::string::npos) << msg;
  EXPECT_NE(msg.find("aes_fifo"), std::string::npos) << msg;
}

TEST(LoadConfig, ZeroLatencyRejected) {
  auto doc = default_doc();
  doc["latency"]["ram"]["base_read"] = 0;
  const auto msg = rejection(doc);
  EXPECT_NE(msg.find("base_read"), std::string::npos) << msg;
}

TEST(LoadConfig, SchemaViolationsNameTheField) {
  auto doc = default_doc();
  doc["core"]["alu_cycles"] = 0;
  EXPECT_NE(rejection(doc).find("alu_cycles"), std::string::npos);

  doc = default_doc();
  doc["address_map"][0]["start"] = "4096";
  EXPECT_NE(rejection(doc).find("start"), std::string::npos);

  doc = default_doc();
  doc["accelerators"][0]["block_size"] = 66;
  EXPECT_NE(rejection(doc).find("block_size"), std::string::npos);

  doc = default_doc();
  doc.erase("latency");
  EXPECT_NE(rejection(doc).find("latency"), std::string::npos);

  EXPECT_THROW(load_config("{not json"), ValidationError);
  EXPECT_THROW(load_config_file("/nonexistent/secacc.json"), ValidationError);
}

TEST(LoadConfig, RoundTrip) {
  const auto cfg = default_config();
  EXPECT_EQ(load_config(serialize(cfg)), cfg);
}

TEST(ClassifyAddress, DeclaredRegions) {
  const auto& map = default_config().address_map;
  EXPECT_EQ(classify_address(map, 0x80000010), RegionKind::SystemRam);
  EXPECT_EQ(classify_address(map, 0x41101004), RegionKind::AccelFifo);
  EXPECT_EQ(classify_address(map, 0x41100000), RegionKind::MmioStatus);
  EXPECT_EQ(classify_address(map, 0x10000000), RegionKind::RotScratchpad);
  EXPECT_EQ(classify_address(map, 0x0), std::nullopt);
  EXPECT_EQ(classify_address(map, 0x81000000), std::nullopt);
}

TEST(ClassifyAddress, TotalOverRandomMaps) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Region> regions;
    Address cursor = 0x1000 * (rng() % 16);
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      cursor += 4 * (rng() % 64);
      const Address size = 4 * (1 + rng() % 256);
      regions.push_back({"r" + std::to_string(i), kAllRegionKinds[rng() % kRegionKinds], cursor,
                         cursor + size, ""});
      cursor += size;
    }
    const AddressMap map(regions);
    for (int probe = 0; probe < 20; ++probe) {
      const auto& r = regions[rng() % regions.size()];
      const Address addr = r.start + rng() % r.size();
      EXPECT_EQ(classify_address(map, addr), r.kind);
    }
    EXPECT_EQ(classify_address(map, cursor + 4), std::nullopt);
  }
}

TEST(AccessLatency, DefaultModel) {
  const LatencyModel m;
  EXPECT_EQ(access_latency(m, RegionKind::RotScratchpad, Access::Read, false), 5u);
  EXPECT_EQ(access_latency(m, RegionKind::SystemRam, Access::Read, false), 23u);
  EXPECT_EQ(access_latency(m, RegionKind::RotScratchpad, Access::Read, true), 12u);
  EXPECT_EQ(access_latency(m, RegionKind::SystemRam, Access::Write, true), 28u);
  EXPECT_EQ(access_latency(m, RegionKind::AccelFifo, Access::Write, false), 5u);
}

TEST(AccessLatency, BranchPenaltyNeverNegative) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    LatencyModel m{{1 + rng() % 40, 1 + rng() % 40, rng() % 10}, {1 + rng() % 40, 1 + rng() % 40, rng() % 10}};
    for (auto k : kAllRegionKinds)
      for (auto a : {Access::Read, Access::Write})
        EXPECT_GE(access_latency(m, k, a, true), access_latency(m, k, a, false));
  }
}

TEST(Accelerators, Lookup) {
  const auto cfg = default_config();
  EXPECT_EQ(cfg.accelerator("aes").block_size, 16u);
  EXPECT_EQ(cfg.accelerator("otbn").job_cost("rsa_decrypt", 512), Cycles{570000});
  EXPECT_EQ(cfg.accelerator("otbn").job_cost("rsa_decrypt", 2048), std::nullopt);
  EXPECT_THROW(cfg.accelerator("kmac"), ValidationError);
}

TEST(Addresses, ParseAndFormat) {
  EXPECT_EQ(parse_address("0x10000", "f"), 0x10000u);
  EXPECT_EQ(format_address(0x10000), "0x10000");
  EXPECT_THROW(parse_address("10000", "f"), ValidationError);
  EXPECT_THROW(parse_address("0xzz", "f"), ValidationError);
}

}  // namespace
}  // namespace secacc::soc
