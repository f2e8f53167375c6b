#include "secacc/attribution.hpp"

namespace secacc {

std::uint64_t AttributionReport::count_row(SemanticLabel sem) const {
  std::uint64_t sum = 0;
  for (auto op : kAllOpcodeLabels) sum += count(op, sem);
  return sum;
}

std::uint64_t AttributionReport::cycle_row(SemanticLabel sem) const {
  std::uint64_t sum = 0;
  for (auto op : kAllOpcodeLabels) sum += cycle(op, sem);
  return sum;
}

std::uint64_t AttributionReport::count_column(OpcodeLabel op) const {
  std::uint64_t sum = 0;
  for (auto v : counts[index_of(op)]) sum += v;
  return sum;
}

std::uint64_t AttributionReport::cycle_column(OpcodeLabel op) const {
  std::uint64_t sum = 0;
  for (auto v : cycles[index_of(op)]) sum += v;
  return sum;
}

std::uint64_t AttributionReport::total_count() const {
  std::uint64_t sum = 0;
  for (auto op : kAllOpcodeLabels) sum += count_column(op);
  return sum;
}

double AttributionReport::percent(OpcodeLabel op, SemanticLabel sem) const {
  if (total_cycles == 0) return 0.0;
  return 100.0 * static_cast<double>(cycle(op, sem)) / static_cast<double>(total_cycles);
}

double AttributionReport::row_percent(SemanticLabel sem) const {
  if (total_cycles == 0) return 0.0;
  return 100.0 * static_cast<double>(cycle_row(sem)) / static_cast<double>(total_cycles);
}

double AttributionReport::column_percent(OpcodeLabel op) const {
  if (total_cycles == 0) return 0.0;
  return 100.0 * static_cast<double>(cycle_column(op)) / static_cast<double>(total_cycles);
}

std::array<bool, kSemanticLabels> AttributionReport::active_rows() const {
  std::array<bool, kSemanticLabels> rows{};
  for (auto sem : kAllSemanticLabels) rows[index_of(sem)] = count_row(sem) > 0;
  return rows;
}

}  // namespace secacc
