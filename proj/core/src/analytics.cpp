#include "secacc/analytics.hpp"

#include <future>

#include "secacc/errors.hpp"
#include "secacc/sim.hpp"

namespace secacc::analytics {

using drivers::Placement;
using drivers::Workload;
using nlohmann::json;

std::string_view to_string(FigureSource s) {
  switch (s) {
    case FigureSource::Bound: return "bound";
    case FigureSource::Theoretical: return "theoretical";
    case FigureSource::Simulated: return "simulated";
    case FigureSource::Measured: return "measured";
    case FigureSource::Baseline: return "baseline";
  }
  return "?";
}

AccessBudget access_budget(const soc::AcceleratorSpec& spec, Placement placement) {
  if (!spec.streaming())
    throw ValidationError("accelerator '" + spec.name + "' is a job engine; no per-block budget");
  const std::uint64_t words = spec.block_words();
  const bool ram = placement == Placement::SystemRam;
  AccessBudget b;
  b.accel_writes = words;
  (ram ? b.ram_reads : b.rot_reads) = words;
  if (spec.kind == soc::EngineKind::BlockCipher) {
    b.accel_reads = words;
    (ram ? b.ram_writes : b.rot_writes) = words;
  }
  return b;
}

soc::Cycles budget_cycles(const AccessBudget& b, const soc::LatencyModel& lat) {
  return (b.accel_reads + b.rot_reads) * lat.rot.base_read +
         (b.accel_writes + b.rot_writes) * lat.rot.base_write + b.ram_reads * lat.ram.base_read +
         b.ram_writes * lat.ram.base_write;
}

BandwidthFigure peak_bound(const AccessBudget& budget, const soc::LatencyModel& latency,
                           std::uint32_t block_size) {
  if (block_size == 0) throw ValidationError("peak_bound: block_size must be > 0");
  return {static_cast<double>(budget_cycles(budget, latency)) / block_size, FigureSource::Bound};
}

BandwidthFigure theoretical_bandwidth(const soc::AcceleratorSpec& spec) {
  if (!spec.streaming())
    throw ValidationError("accelerator '" + spec.name +
                          "' is a job engine; it has no per-byte theoretical bandwidth");
  if (spec.block_size == 0)
    throw ValidationError("accelerator '" + spec.name + "': block_size must be > 0");
  return {static_cast<double>(spec.compute_cycles_per_block) / spec.block_size,
          FigureSource::Theoretical};
}

double utilization(const BandwidthFigure& theoretical, const BandwidthFigure& achieved) {
  if (theoretical.cycles_per_byte <= 0 || achieved.cycles_per_byte <= 0)
    throw ValidationError("utilization: bandwidth figures must be positive");
  if (achieved.cycles_per_byte < theoretical.cycles_per_byte)
    throw ModelViolation("utilization: achieved " + std::to_string(achieved.cycles_per_byte) +
                         " cycles/byte beats the engine limit of " +
                         std::to_string(theoretical.cycles_per_byte));
  return theoretical.cycles_per_byte / achieved.cycles_per_byte;
}

const BaselineEntry& BaselineModel::at(Workload w) const {
  auto it = entries.find(w);
  if (it == entries.end())
    throw ValidationError("baseline: no entry for " + std::string(drivers::to_string(w)));
  return it->second;
}

BaselineModel default_baseline() {
  BaselineModel m;
  m.entries[Workload::Sha256] = {87.47, "11.1x speedup times 7.88 cycles/byte"};
  m.entries[Workload::Hmac] = {93.69, "11.8x speedup times 7.94 cycles/byte"};
  m.entries[Workload::Aes256Cbc] = {202.88, "12.5x speedup times 16.23 cycles/byte"};
  m.entries[Workload::Rsa512] = {39130.0, "4.3x speedup times 9100 cycles/byte"};
  m.entries[Workload::Rsa1024] = {88540.0, "3.8x speedup times 23300 cycles/byte"};
  return m;
}

BaselineModel load_baseline(const json& doc, BaselineModel base) {
  if (!doc.is_object()) throw ValidationError("baseline: expected an object");
  for (const auto& [key, value] : doc.items()) {
    const std::string where = "baseline." + key;
    auto w = drivers::parse_workload(key);
    if (!w) throw ValidationError(where + ": unknown workload");
    BaselineEntry entry;
    if (value.is_number()) {
      entry.cycles_per_byte = value.get<double>();
    } else if (value.is_object() && value.contains("cycles_per_byte") &&
               value["cycles_per_byte"].is_number()) {
      entry.cycles_per_byte = value["cycles_per_byte"].get<double>();
      if (auto n = value.find("note"); n != value.end() && n->is_string())
        entry.note = n->get<std::string>();
    } else {
      throw ValidationError(where + ": expected a number or {cycles_per_byte, note}");
    }
    if (!(entry.cycles_per_byte > 0)) throw ValidationError(where + ": must be > 0");
    base.entries[*w] = std::move(entry);
  }
  return base;
}

json to_json(const BaselineModel& model) {
  json out = json::object();
  for (const auto& [w, e] : model.entries)
    out[std::string(drivers::to_string(w))] = {{"cycles_per_byte", e.cycles_per_byte},
                                               {"note", e.note}};
  return out;
}

double speedup(const BaselineModel& baseline, Workload workload, const BandwidthFigure& achieved) {
  if (achieved.cycles_per_byte <= 0) throw ValidationError("speedup: achieved figure must be positive");
  return baseline.at(workload).cycles_per_byte / achieved.cycles_per_byte;
}

std::vector<std::uint64_t> default_sweep_payloads() {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 64; p <= 4096; p *= 2) out.push_back(p);
  return out;
}

std::vector<SweepCurve> sweep(const std::vector<Workload>& workloads,
                              const std::vector<std::uint64_t>& payloads, Placement placement,
                              const soc::SocConfig& config, const drivers::TemplateSet& templates) {
  if (payloads.empty()) throw ValidationError("sweep: no payloads");
  for (std::size_t i = 0; i < payloads.size(); ++i) {
    if (payloads[i] == 0) throw ValidationError("sweep: payloads must be > 0");
    if (i > 0 && payloads[i] <= payloads[i - 1])
      throw ValidationError("sweep: payloads must be strictly increasing");
  }
  std::vector<SweepCurve> curves;
  for (auto w : workloads) {
    if (drivers::is_rsa(w)) {
      const std::uint64_t bytes = drivers::rsa_key_bits(w) / 8;
      for (auto p : payloads)
        if (p != bytes)
          throw ValidationError(std::string(drivers::to_string(w)) + ": sweep payload must be " +
                                std::to_string(bytes) + " bytes (got " + std::to_string(p) + ")");
    }
    std::vector<std::future<SweepPoint>> jobs;
    for (auto p : payloads) {
      jobs.push_back(std::async(std::launch::async, [&, w, p] {
        auto r = sim::simulate(w, p, placement, config, templates);
        return SweepPoint{p, r.total_cycles, static_cast<double>(r.total_cycles) / p};
      }));
    }
    SweepCurve curve{w, placement, {}};
    for (auto& j : jobs) curve.points.push_back(j.get());
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace secacc::analytics
