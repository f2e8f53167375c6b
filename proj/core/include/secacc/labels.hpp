#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace secacc {

/// Instruction category.
enum class OpcodeLabel : std::uint8_t { Alu, Ctl, MemRot, MemRam };
inline constexpr std::size_t kOpcodeLabels = 4;
inline constexpr std::array<OpcodeLabel, kOpcodeLabels> kAllOpcodeLabels = {
    OpcodeLabel::Alu, OpcodeLabel::Ctl, OpcodeLabel::MemRot, OpcodeLabel::MemRam};

/// Driver phase an instruction serves. Hash drivers use Config/Digest/Wait/Final,
/// AES uses Config/Cipher/Wait, big-number jobs use the Job* labels.
enum class SemanticLabel : std::uint8_t {
  Config,
  Digest,
  Cipher,
  Wait,
  Final,
  JobLoad,
  JobStart,
  JobWait,
  JobReadback,
};
inline constexpr std::size_t kSemanticLabels = 9;
inline constexpr std::array<SemanticLabel, kSemanticLabels> kAllSemanticLabels = {
    SemanticLabel::Config, SemanticLabel::Digest,  SemanticLabel::Cipher,
    SemanticLabel::Wait,   SemanticLabel::Final,   SemanticLabel::JobLoad,
    SemanticLabel::JobStart, SemanticLabel::JobWait, SemanticLabel::JobReadback};

std::string_view to_string(OpcodeLabel label);
std::string_view to_string(SemanticLabel label);
std::optional<OpcodeLabel> parse_opcode_label(std::string_view text);
std::optional<SemanticLabel> parse_semantic_label(std::string_view text);

constexpr std::size_t index_of(OpcodeLabel l) { return static_cast<std::size_t>(l); }
constexpr std::size_t index_of(SemanticLabel l) { return static_cast<std::size_t>(l); }

}  // namespace secacc
