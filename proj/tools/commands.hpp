#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "render.hpp"
#include "secacc/setup.hpp"
#include "secacc/sim.hpp"

namespace secacc::cli {

render::SimulationDoc simulation_doc(const Setup& setup, drivers::Workload workload,
                                     std::uint64_t payload_bytes, drivers::Placement placement,
                                     std::optional<drivers::Direction> direction,
                                     sim::SimResult* keep = nullptr);

render::SweepDoc sweep_doc(const Setup& setup, const std::vector<drivers::Workload>& workloads,
                           const std::vector<std::uint64_t>& payloads,
                           const std::vector<drivers::Placement>& placements);

render::BoundDoc bound_doc(const soc::SocConfig& config);

render::AnalysisDoc analysis_doc(const std::string& trace_text, const trace::AnnotationSet& annotations,
                                 const soc::AddressMap& map);

/// Writes `content` to `path` through a temporary file and rename.
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

/// Full command line entry point. Returns 0 on success, 1 on validation
/// errors, 2 on model violations.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace secacc::cli
