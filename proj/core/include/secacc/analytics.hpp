#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "secacc/drivers.hpp"
#include "secacc/socmodel.hpp"

namespace secacc::analytics {

enum class FigureSource : std::uint8_t { Bound, Theoretical, Simulated, Measured, Baseline };
std::string_view to_string(FigureSource s);

struct BandwidthFigure {
  double cycles_per_byte = 0.0;
  FigureSource source = FigureSource::Simulated;
};

/// Memory accesses the driver issues per accelerator block.
struct AccessBudget {
  std::uint64_t accel_reads = 0;
  std::uint64_t accel_writes = 0;
  std::uint64_t rot_reads = 0;
  std::uint64_t rot_writes = 0;
  std::uint64_t ram_reads = 0;
  std::uint64_t ram_writes = 0;

  bool operator==(const AccessBudget&) const = default;
};

/// Payload in, results out: hash engines only take input, block ciphers also
/// return one block of output per block of input. Throws ValidationError for
/// job engines.
AccessBudget access_budget(const soc::AcceleratorSpec& spec, drivers::Placement placement);

/// Cycles per block of the budget at base latency (FIFO accesses at RoT cost).
soc::Cycles budget_cycles(const AccessBudget& budget, const soc::LatencyModel& latency);

/// Throws ValidationError when block_size is 0.
BandwidthFigure peak_bound(const AccessBudget& budget, const soc::LatencyModel& latency,
                           std::uint32_t block_size);

/// Throws ValidationError for job engines or a zero block size.
BandwidthFigure theoretical_bandwidth(const soc::AcceleratorSpec& spec);

/// theoretical / achieved. Throws ValidationError for non-positive figures and
/// ModelViolation when the achieved figure beats the theoretical one.
double utilization(const BandwidthFigure& theoretical, const BandwidthFigure& achieved);

struct BaselineEntry {
  double cycles_per_byte = 0.0;
  std::string note;
};

/// Software-only cycles/byte on the host core, calibrated rather than simulated.
struct BaselineModel {
  std::map<drivers::Workload, BaselineEntry> entries;

  const BaselineEntry& at(drivers::Workload w) const;
};

BaselineModel default_baseline();
/// `baseline` object: workload -> cycles_per_byte (or {cycles_per_byte, note}),
/// applied over `base`.
BaselineModel load_baseline(const nlohmann::json& doc, BaselineModel base = default_baseline());
nlohmann::json to_json(const BaselineModel& model);

/// baseline / achieved. Throws ValidationError when the workload has no entry.
double speedup(const BaselineModel& baseline, drivers::Workload workload,
               const BandwidthFigure& achieved);

struct SweepPoint {
  std::uint64_t payload_bytes = 0;
  soc::Cycles total_cycles = 0;
  double cycles_per_byte = 0.0;
};

struct SweepCurve {
  drivers::Workload workload = drivers::Workload::Sha256;
  drivers::Placement placement = drivers::Placement::SystemRam;
  std::vector<SweepPoint> points;
};

/// 64, 128, ..., 4096.
std::vector<std::uint64_t> default_sweep_payloads();

/// One simulation per (workload, payload). Payloads must be positive and
/// strictly increasing; RSA workloads take only their modulus size.
std::vector<SweepCurve> sweep(const std::vector<drivers::Workload>& workloads,
                              const std::vector<std::uint64_t>& payloads,
                              drivers::Placement placement, const soc::SocConfig& config,
                              const drivers::TemplateSet& templates);

}  // namespace secacc::analytics
