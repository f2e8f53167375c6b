#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "secacc/attribution.hpp"
#include "secacc/crypto.hpp"
#include "secacc/drivers.hpp"
#include "secacc/socmodel.hpp"
#include "secacc/trace.hpp"

namespace secacc::sim {

using soc::Address;
using soc::Cycles;
using soc::RegionKind;

struct TraceRecord {
  std::uint64_t seq = 0;
  Cycles start_cycle = 0;
  Cycles duration = 1;
  OpcodeLabel opcode = OpcodeLabel::Alu;
  SemanticLabel semantic = SemanticLabel::Config;
  std::optional<RegionKind> region;
  std::optional<Address> effective_address;
  Address pc = 0;
  std::string mnemonic;

  bool operator==(const TraceRecord&) const = default;
};

struct SimResult {
  Cycles total_cycles = 0;
  AttributionReport report;  // instruction and cycle counts per (opcode, semantic)
  crypto::Bytes output;
  std::optional<std::vector<TraceRecord>> trace;
  std::uint64_t blocks_processed = 0;
  std::uint64_t poll_iterations = 0;
};

/// Executes a hash or AES program. Throws ValidationError for an input of the
/// wrong length or a config lacking the program's accelerator, ModelViolation
/// when the driver misuses the engine (overfilled FIFO, read of an empty
/// output, a poll that can never succeed).
SimResult run(const drivers::DriverProgram& program, const soc::SocConfig& config,
              crypto::ByteView input, bool emit_trace = false);

/// Executes a big-number job program. `job_cost_override` replaces the table
/// entry and may be 0.
SimResult run_otbn(const drivers::DriverProgram& program, const soc::SocConfig& config,
                   const crypto::RsaParams& params, crypto::ByteView input, bool emit_trace = false,
                   std::optional<Cycles> job_cost_override = std::nullopt);

AttributionReport attribution(const SimResult& result);

/// Trace document in the analyzer's CSV format. Throws ValidationError when the
/// run was not traced.
std::string self_trace(const SimResult& result);
std::vector<trace::RawTraceLine> to_raw(const std::vector<TraceRecord>& records);

/// Annotation sidecar matching the simulator's pc layout and mnemonics.
trace::AnnotationSet self_annotations();

/// Base pc of the code range holding ops of a semantic label.
constexpr Address semantic_base_pc(SemanticLabel s) {
  return 0x20000000u + static_cast<Address>(index_of(s)) * 0x01000000u;
}

/// Deterministic payload used by the CLI and sweeps.
crypto::Bytes default_input(std::uint64_t bytes);

/// Fixed RSA key pair for simulations: a modulus of `key_bits` bits with
/// public exponent 65537 and the matching private exponent.
struct RsaKeyPair {
  crypto::BigUint modulus;
  crypto::BigUint public_exponent;
  crypto::BigUint private_exponent;
  unsigned key_bits = 0;

  crypto::RsaParams encrypt_params() const { return {modulus, public_exponent, key_bits}; }
  crypto::RsaParams decrypt_params() const { return {modulus, private_exponent, key_bits}; }
};
const RsaKeyPair& builtin_rsa_key(unsigned key_bits);

/// Generates the program for `workload` and runs it on `default_input`.
/// Without a direction AES encrypts and RSA decrypts.
SimResult simulate(drivers::Workload workload, std::uint64_t payload_bytes,
                   drivers::Placement placement, const soc::SocConfig& config,
                   const drivers::TemplateSet& templates, bool emit_trace = false,
                   std::optional<drivers::Direction> direction = std::nullopt);

}  // namespace secacc::sim
