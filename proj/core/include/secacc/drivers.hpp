#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "secacc/crypto.hpp"
#include "secacc/labels.hpp"
#include "secacc/socmodel.hpp"

namespace secacc::drivers {

using soc::RegionKind;

enum class Workload : std::uint8_t { Sha256, Hmac, Aes256Cbc, Rsa512, Rsa1024 };
enum class Direction : std::uint8_t { Encrypt, Decrypt };
enum class Placement : std::uint8_t { RotScratchpad, SystemRam };

std::string_view to_string(Workload w);
std::string_view to_string(Direction d);
std::string_view to_string(Placement p);
std::optional<Workload> parse_workload(std::string_view text);
std::optional<Placement> parse_placement(std::string_view text);

constexpr RegionKind region_of(Placement p) {
  return p == Placement::RotScratchpad ? RegionKind::RotScratchpad : RegionKind::SystemRam;
}
constexpr bool is_hash(Workload w) { return w == Workload::Sha256 || w == Workload::Hmac; }
constexpr bool is_rsa(Workload w) { return w == Workload::Rsa512 || w == Workload::Rsa1024; }
constexpr unsigned rsa_key_bits(Workload w) { return w == Workload::Rsa1024 ? 1024 : 512; }
/// Accelerator name a workload is offloaded to.
std::string_view accelerator_for(Workload w);

enum class OpKind : std::uint8_t { Alu, Ctl, Load, Store, Poll };

/// Functional effect of a memory op on the modeled engine and data path.
enum class DataRole : std::uint8_t {
  None,
  DataLoad,     // read the next payload word into the core
  FifoWrite,    // push the oldest loaded word into the accelerator input
  FifoRead,     // pop one word of accelerator output into the core
  ResultStore,  // write the oldest popped word to the result buffer
  KeyLoad,      // read the next key/IV word into the core
  KeyWrite,     // write the oldest key word into the accelerator
  Start,        // start command (hash_start, OTBN go)
  Finish,       // end-of-message command (hash_process)
};

enum class PollCondition : std::uint8_t {
  InputReady,   // FIFO can take the next block
  OutputValid,  // a finished block is waiting in the output register
  Idle,         // engine done with all queued work
};

struct MicroOp {
  OpKind kind = OpKind::Alu;
  SemanticLabel semantic = SemanticLabel::Config;
  RegionKind region = RegionKind::RotScratchpad;  // Load/Store; Poll reads MmioStatus
  std::uint8_t width = 4;
  bool taken = false;  // Ctl only
  DataRole role = DataRole::None;
  PollCondition poll = PollCondition::Idle;

  bool is_memory() const { return kind == OpKind::Load || kind == OpKind::Store; }
  /// Opcode label of a non-Poll op.
  OpcodeLabel opcode() const;
  bool operator==(const MicroOp&) const = default;
};

MicroOp alu(SemanticLabel s);
MicroOp ctl(SemanticLabel s, bool taken = false);
MicroOp load(SemanticLabel s, RegionKind region, DataRole role = DataRole::None);
MicroOp store(SemanticLabel s, RegionKind region, DataRole role = DataRole::None);
MicroOp poll(SemanticLabel s, PollCondition condition);

/// Per-workload op-sequence template. Sequences are lists of tokens of the
/// form `name[*N]`:
///   alu, ctl, ctl.taken, load.rot, store.rot, load.mmio, store.mmio,
///   load.data, store.data, poll.idle
/// and, inside `block` only,
///   payload (fetch + push pair), fetch, push, readback (pop + result store), poll.
/// `load.data`/`store.data` target the placement region.
struct DriverTemplate {
  std::vector<std::string> config;
  std::vector<std::string> body_prologue;
  std::vector<std::string> block;
  std::vector<std::string> body_epilogue;
  std::vector<std::string> final_ops;
  unsigned extra_alu_per_block = 0;
  unsigned extra_ctl_per_block = 0;  // the last one is the taken loop back-edge
  bool poll_exit_taken = false;
  unsigned program_words = 0;  // big-number engine binary size

  bool operator==(const DriverTemplate&) const = default;
};

struct TemplateSet {
  DriverTemplate sha256;
  DriverTemplate hmac;
  DriverTemplate aes;
  DriverTemplate rsa;

  const DriverTemplate& for_workload(Workload w) const;
  bool operator==(const TemplateSet&) const = default;
};

TemplateSet default_templates();
/// Applies the `templates` object of a config document over the defaults.
/// Missing workloads/fields keep their default values.
TemplateSet load_templates(const nlohmann::json& templates, TemplateSet base = default_templates());
nlohmann::json to_json(const TemplateSet& set);

/// Expands a token list; throws ValidationError on unknown tokens.
std::vector<MicroOp> expand_tokens(const std::vector<std::string>& tokens, SemanticLabel semantic,
                                   Placement placement, bool poll_exit_taken = false);

struct DriverProgram {
  Workload workload = Workload::Sha256;
  Direction direction = Direction::Encrypt;
  std::uint64_t payload_bytes = 0;
  Placement placement = Placement::SystemRam;
  std::string accelerator;
  std::vector<MicroOp> ops;
  crypto::Bytes key;  // HMAC key or AES key
  crypto::Bytes iv;   // AES IV

  std::uint64_t block_count() const;
};

DriverProgram gen_hash_program(Workload workload, std::uint64_t payload_bytes, Placement placement,
                               const DriverTemplate& tmpl, crypto::Bytes key = {});
DriverProgram gen_aes_program(std::uint64_t payload_bytes, Placement placement,
                              const DriverTemplate& tmpl, const crypto::AesKeyIv& key_iv = {},
                              Direction direction = Direction::Encrypt);
DriverProgram gen_otbn_program(Direction op, unsigned key_bits, Placement placement,
                               const DriverTemplate& tmpl);

/// Convenience dispatcher over the three generators.
DriverProgram generate(Workload workload, std::uint64_t payload_bytes, Placement placement,
                       const TemplateSet& templates, Direction direction = Direction::Encrypt);

/// Opcode x semantic matrix of op counts.
using CountMatrix = std::array<std::array<std::uint64_t, kSemanticLabels>, kOpcodeLabels>;

/// Static counts; a Poll contributes one iteration (ALU + CTL + MemRot), which is
/// a lower bound on what the simulator executes.
CountMatrix count_ops(const DriverProgram& program);

/// One line per op: `semantic,opcode,region,width` (Poll lines use opcode `POLL`).
std::string dump_listing(const DriverProgram& program);

}  // namespace secacc::drivers
