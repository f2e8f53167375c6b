#include "secacc/labels.hpp"

namespace secacc {

namespace {
constexpr std::array<std::string_view, kOpcodeLabels> kOpcodeNames = {"ALU", "CTL", "MemRot",
                                                                      "MemRam"};
constexpr std::array<std::string_view, kSemanticLabels> kSemanticNames = {
    "Config", "Digest", "Cipher", "Wait", "Final", "JobLoad", "JobStart", "JobWait", "JobReadback"};
}  // namespace

std::string_view to_string(OpcodeLabel label) { return kOpcodeNames[index_of(label)]; }
std::string_view to_string(SemanticLabel label) { return kSemanticNames[index_of(label)]; }

std::optional<OpcodeLabel> parse_opcode_label(std::string_view text) {
  for (std::size_t i = 0; i < kOpcodeNames.size(); ++i)
    if (kOpcodeNames[i] == text) return static_cast<OpcodeLabel>(i);
  return std::nullopt;
}

std::optional<SemanticLabel> parse_semantic_label(std::string_view text) {
  for (std::size_t i = 0; i < kSemanticNames.size(); ++i)
    if (kSemanticNames[i] == text) return static_cast<SemanticLabel>(i);
  return std::nullopt;
}

}  // namespace secacc
