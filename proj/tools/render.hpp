#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "secacc/analytics.hpp"
#include "secacc/attribution.hpp"
#include "secacc/trace.hpp"

namespace secacc::render {

enum class Format { Csv, Table, Svg, Json };
std::optional<Format> parse_format(std::string_view text);

/// Cycles/byte and percentages use two decimals everywhere.
std::string fixed2(double value);
double round2(double value);

std::string render_attribution(const AttributionReport& report, Format format);
nlohmann::json attribution_json(const AttributionReport& report);
AttributionReport attribution_from_json(const nlohmann::json& doc);

struct SimulationDoc {
  std::string workload;
  std::string placement;
  std::string direction;
  std::uint64_t payload_bytes = 0;
  std::uint64_t total_cycles = 0;
  double cycles_per_byte = 0.0;
  std::optional<double> theoretical_cpb;
  std::optional<double> utilization;
  std::optional<double> speedup;
  AttributionReport report;
};

struct ReferenceLine {
  std::string label;
  std::string kind;  // "bound" | "theoretical"
  double cycles_per_byte = 0.0;
};

struct SweepDoc {
  std::vector<analytics::SweepCurve> curves;
  std::vector<ReferenceLine> references;
};

struct BoundRow {
  std::string accelerator;
  std::string placement;
  analytics::AccessBudget budget;
  std::uint64_t accel_cycles = 0;
  std::uint64_t rot_cycles = 0;
  std::uint64_t ram_cycles = 0;
  std::uint64_t cycles_per_block = 0;
  std::uint32_t block_size = 0;
  double cycles_per_byte = 0.0;
};

struct TheoreticalRow {
  std::string accelerator;
  std::uint64_t compute_cycles = 0;
  std::uint32_t block_size = 0;
  double cycles_per_byte = 0.0;
};

struct BoundDoc {
  std::vector<BoundRow> rows;
  std::vector<TheoreticalRow> theoretical;
};

struct AnalysisDoc {
  std::uint64_t records = 0;
  trace::LatencyStats latency;
  AttributionReport report;
};

std::string render(const SimulationDoc& doc, Format format);
std::string render(const SweepDoc& doc, Format format);
std::string render(const BoundDoc& doc, Format format);
std::string render(const AnalysisDoc& doc, Format format);

/// Each JSON rendering carries a "kind" key so `report` can re-render it.
nlohmann::json to_json(const SimulationDoc& doc);
nlohmann::json to_json(const SweepDoc& doc);
nlohmann::json to_json(const BoundDoc& doc);
nlohmann::json to_json(const AnalysisDoc& doc);

/// Re-renders a JSON document produced by any of the above.
std::string rerender(const nlohmann::json& doc, Format format);

}  // namespace secacc::render
