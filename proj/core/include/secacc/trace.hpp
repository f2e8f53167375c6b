#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "secacc/attribution.hpp"
#include "secacc/labels.hpp"
#include "secacc/socmodel.hpp"

namespace secacc::trace {

using soc::Address;
using soc::Cycles;
using soc::RegionKind;

/// One line of a cycle-annotated trace:
/// `start_cycle,duration,pc,mnemonic,effective_address`.
struct RawTraceLine {
  Cycles start_cycle = 0;
  Cycles duration = 1;
  Address pc = 0;
  std::string mnemonic;
  std::optional<Address> effective_address;

  bool operator==(const RawTraceLine&) const = default;
};

inline constexpr std::string_view kTraceHeader = "start_cycle,duration,pc,mnemonic,effective_address";

/// True for the RV32/RV64 load and store mnemonics the parser insists carry an
/// effective address.
bool is_memory_mnemonic(std::string_view mnemonic);

/// Throws ValidationError naming the 1-based line number on malformed input or
/// a start_cycle that goes backwards.
std::vector<RawTraceLine> parse_trace(std::string_view document);
std::string serialize_trace(std::span<const RawTraceLine> lines);

enum class MnemonicClass : std::uint8_t { Alu, Ctl, MemLoad, MemStore };
std::string_view to_string(MnemonicClass c);
std::optional<MnemonicClass> parse_mnemonic_class(std::string_view text);

struct SemanticRange {
  Address start = 0;
  Address end = 0;  // exclusive
  SemanticLabel label = SemanticLabel::Config;
  bool operator==(const SemanticRange&) const = default;
};

/// Hand annotation of a disassembly: what each mnemonic is and which pc
/// ranges serve which driver phase.
class AnnotationSet {
 public:
  AnnotationSet() = default;
  /// Throws ValidationError when ranges overlap or are empty.
  AnnotationSet(std::map<std::string, MnemonicClass, std::less<>> mnemonic_classes,
                std::vector<SemanticRange> semantic_ranges);

  const std::map<std::string, MnemonicClass, std::less<>>& mnemonic_classes() const {
    return classes_;
  }
  const std::vector<SemanticRange>& semantic_ranges() const { return ranges_; }

  std::optional<MnemonicClass> classify(std::string_view mnemonic) const;
  std::optional<SemanticLabel> semantic_at(Address pc) const;

  bool operator==(const AnnotationSet&) const = default;

 private:
  std::map<std::string, MnemonicClass, std::less<>> classes_;
  std::vector<SemanticRange> ranges_;  // sorted by start
};

AnnotationSet load_annotations(const nlohmann::json& document);
AnnotationSet load_annotations(std::string_view text);
inline AnnotationSet load_annotations(const std::string& text) {
  return load_annotations(std::string_view(text));
}
inline AnnotationSet load_annotations(const char* text) { return load_annotations(std::string_view(text)); }
nlohmann::json to_json(const AnnotationSet& annotations);

struct LabeledRecord {
  RawTraceLine line;
  OpcodeLabel opcode = OpcodeLabel::Alu;
  SemanticLabel semantic = SemanticLabel::Config;
  std::optional<RegionKind> region;
};

/// Throws ValidationError for unknown mnemonics (all listed), pcs outside every
/// semantic range, memory ops without or non-memory ops with an address, and
/// memory accesses to unmapped addresses.
std::vector<LabeledRecord> annotate(std::span<const RawTraceLine> records,
                                    const AnnotationSet& annotations, const soc::AddressMap& map);

struct RegionStats {
  Cycles min = 0;
  Cycles max = 0;
  Cycles sum = 0;
  std::uint64_t count = 0;

  double mean() const { return count == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(count); }
  void add(Cycles duration);
  void merge(const RegionStats& other);
  bool operator==(const RegionStats&) const = default;
};

/// Memory access durations per region kind. `rot()` folds scratchpad, FIFO and
/// status accesses together (one interconnect); `ram()` is system RAM.
struct LatencyStats {
  std::map<RegionKind, RegionStats> per_region;

  RegionStats rot() const;
  RegionStats ram() const;
  bool operator==(const LatencyStats&) const = default;
};

/// Throws ValidationError when there is no memory record.
LatencyStats latency_stats(std::span<const LabeledRecord> records);

AttributionReport attribute(std::span<const LabeledRecord> records);

}  // namespace secacc::trace
