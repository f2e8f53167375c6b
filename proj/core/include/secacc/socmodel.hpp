#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace secacc::soc {

using Cycles = std::uint64_t;
using Address = std::uint64_t;

enum class RegionKind : std::uint8_t { RotScratchpad, AccelFifo, SystemRam, MmioStatus };
inline constexpr std::size_t kRegionKinds = 4;
inline constexpr std::array<RegionKind, kRegionKinds> kAllRegionKinds = {
    RegionKind::RotScratchpad, RegionKind::AccelFifo, RegionKind::SystemRam,
    RegionKind::MmioStatus};

std::string_view to_string(RegionKind kind);
std::optional<RegionKind> parse_region_kind(std::string_view text);

/// Scratchpad, FIFO windows and status registers sit on the RoT interconnect.
constexpr bool is_rot_side(RegionKind kind) { return kind != RegionKind::SystemRam; }

enum class Access : std::uint8_t { Read, Write };

struct Region {
  std::string name;
  RegionKind kind = RegionKind::RotScratchpad;
  Address start = 0;
  Address end = 0;  // exclusive
  std::string owner;  // accelerator served by a FIFO/status window, empty otherwise

  bool contains(Address addr) const { return addr >= start && addr < end; }
  Address size() const { return end - start; }
  bool operator==(const Region&) const = default;
};

/// Disjoint, 4-byte aligned regions. Validated on construction.
class AddressMap {
 public:
  AddressMap() = default;
  explicit AddressMap(std::vector<Region> regions);

  const std::vector<Region>& regions() const { return regions_; }

  /// Kind of the region containing `addr`, or nullopt when unmapped.
  std::optional<RegionKind> classify(Address addr) const;
  const Region* find(Address addr) const;
  const Region* find_by_name(std::string_view name) const;
  /// First region of `kind`, optionally restricted to an owning accelerator.
  const Region* find_kind(RegionKind kind, std::string_view owner = {}) const;

  bool operator==(const AddressMap&) const = default;

 private:
  std::vector<Region> regions_;  // sorted by start
};

std::optional<RegionKind> classify_address(const AddressMap& map, Address addr);

struct RegionLatency {
  Cycles base_read = 1;
  Cycles base_write = 1;
  Cycles post_branch_penalty = 0;
  bool operator==(const RegionLatency&) const = default;
};

/// Access cost per memory class. AccelFifo and MmioStatus use the RoT entry.
struct LatencyModel {
  RegionLatency rot{5, 5, 7};
  RegionLatency ram{23, 23, 5};

  const RegionLatency& for_kind(RegionKind kind) const { return is_rot_side(kind) ? rot : ram; }
  RegionLatency& for_kind(RegionKind kind) { return is_rot_side(kind) ? rot : ram; }
  bool operator==(const LatencyModel&) const = default;
};

Cycles access_latency(const LatencyModel& model, RegionKind kind, Access access, bool post_branch);

enum class EngineKind : std::uint8_t { Hash, BlockCipher, Job };
std::string_view to_string(EngineKind kind);

struct JobCost {
  std::string operation;  // "rsa_encrypt" | "rsa_decrypt"
  unsigned key_bits = 0;
  Cycles cycles = 0;
  bool operator==(const JobCost&) const = default;
};

struct AcceleratorSpec {
  std::string name;
  EngineKind kind = EngineKind::Hash;
  std::uint32_t block_size = 0;  // bytes
  std::uint32_t word_size = 4;   // bytes
  std::uint32_t input_fifo_capacity = 0;  // words
  bool has_output_fifo = false;
  Cycles compute_cycles_per_block = 0;
  std::vector<JobCost> job_cost_table;

  std::uint32_t block_words() const { return word_size == 0 ? 0 : block_size / word_size; }
  bool streaming() const { return kind != EngineKind::Job; }
  std::optional<Cycles> job_cost(std::string_view operation, unsigned key_bits) const;
  bool operator==(const AcceleratorSpec&) const = default;
};

struct SocConfig {
  AddressMap address_map;
  LatencyModel latency;
  std::vector<AcceleratorSpec> accelerators;
  Cycles alu_cycles = 1;
  Cycles ctl_cycles = 1;

  const AcceleratorSpec& accelerator(std::string_view name) const;
  const AcceleratorSpec* find_accelerator(std::string_view name) const;
  bool operator==(const SocConfig&) const = default;
};

/// Throws ValidationError naming the offending field.
void validate(const SocConfig& config);

/// Parses the `address_map`, `latency`, `accelerators` and `core` keys.
/// `templates` and `baseline` are tolerated and left to their owners.
SocConfig load_config(const nlohmann::json& document);
SocConfig load_config(std::string_view text);
inline SocConfig load_config(const std::string& text) { return load_config(std::string_view(text)); }
inline SocConfig load_config(const char* text) { return load_config(std::string_view(text)); }
SocConfig load_config_file(const std::string& path);

nlohmann::json to_json(const SocConfig& config);
std::string serialize(const SocConfig& config);

/// Built-in configuration; identical to configs/default.json.
SocConfig default_config();

/// "0x10000" style address text.
std::string format_address(Address addr);
Address parse_address(std::string_view text, std::string_view field);

}  // namespace secacc::soc
