#pragma once

#include <array>
#include <cstdint>

#include "secacc/labels.hpp"

namespace secacc {

/// Opcode x semantic matrix of instruction counts and cycles, the shape of the
/// per-phase breakdown tables. Both the simulator and the trace analyzer
/// produce it; equality is exact.
struct AttributionReport {
  using Matrix = std::array<std::array<std::uint64_t, kSemanticLabels>, kOpcodeLabels>;

  Matrix counts{};
  Matrix cycles{};
  std::uint64_t total_cycles = 0;

  void add(OpcodeLabel op, SemanticLabel sem, std::uint64_t duration) {
    ++counts[index_of(op)][index_of(sem)];
    cycles[index_of(op)][index_of(sem)] += duration;
    total_cycles += duration;
  }

  std::uint64_t count(OpcodeLabel op, SemanticLabel sem) const {
    return counts[index_of(op)][index_of(sem)];
  }
  std::uint64_t cycle(OpcodeLabel op, SemanticLabel sem) const {
    return cycles[index_of(op)][index_of(sem)];
  }

  std::uint64_t count_row(SemanticLabel sem) const;
  std::uint64_t cycle_row(SemanticLabel sem) const;
  std::uint64_t count_column(OpcodeLabel op) const;
  std::uint64_t cycle_column(OpcodeLabel op) const;
  std::uint64_t total_count() const;

  /// Share of total cycles in percent; 0 when the report is empty.
  double percent(OpcodeLabel op, SemanticLabel sem) const;
  double row_percent(SemanticLabel sem) const;
  double column_percent(OpcodeLabel op) const;

  bool empty() const { return total_count() == 0; }
  /// Semantic rows with at least one instruction, in canonical order.
  std::array<bool, kSemanticLabels> active_rows() const;

  bool operator==(const AttributionReport&) const = default;
};

}  // namespace secacc
