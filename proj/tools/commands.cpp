#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "secacc/errors.hpp"

namespace secacc::cli {

using drivers::Placement;
using drivers::Workload;
using render::Format;

render::SimulationDoc simulation_doc(const Setup& setup, Workload workload, std::uint64_t payload_bytes,
                                     Placement placement, std::optional<drivers::Direction> direction,
                                     sim::SimResult* keep) {
  if (payload_bytes == 0) throw ValidationError("payload must be > 0 bytes");
  auto result = sim::simulate(workload, payload_bytes, placement, setup.soc, setup.templates,
                              keep != nullptr, direction);
  render::SimulationDoc d;
  d.workload = std::string(drivers::to_string(workload));
  d.placement = std::string(drivers::to_string(placement));
  if (workload == Workload::Aes256Cbc || drivers::is_rsa(workload))
    d.direction = std::string(drivers::to_string(direction.value_or(
        drivers::is_rsa(workload) ? drivers::Direction::Decrypt : drivers::Direction::Encrypt)));
  d.payload_bytes = payload_bytes;
  d.total_cycles = result.total_cycles;
  d.cycles_per_byte = static_cast<double>(result.total_cycles) / static_cast<double>(payload_bytes);
  const analytics::BandwidthFigure achieved{d.cycles_per_byte, analytics::FigureSource::Simulated};
  const auto& spec = setup.soc.accelerator(drivers::accelerator_for(workload));
  if (spec.streaming()) {
    const auto theo = analytics::theoretical_bandwidth(spec);
    d.theoretical_cpb = theo.cycles_per_byte;
    d.utilization = analytics::utilization(theo, achieved);
  }
  if (setup.baseline.entries.count(workload))
    d.speedup = analytics::speedup(setup.baseline, workload, achieved);
  d.report = sim::attribution(result);
  if (keep) *keep = std::move(result);
  return d;
}

render::SweepDoc sweep_doc(const Setup& setup, const std::vector<Workload>& workloads,
                           const std::vector<std::uint64_t>& payloads,
                           const std::vector<Placement>& placements) {
  render::SweepDoc d;
  std::set<std::string> seen;
  for (auto placement : placements) {
    auto curves = analytics::sweep(workloads, payloads, placement, setup.soc, setup.templates);
    for (auto& c : curves) {
      const auto& spec = setup.soc.accelerator(drivers::accelerator_for(c.workload));
      if (spec.streaming()) {
        const auto bound = analytics::peak_bound(analytics::access_budget(spec, placement),
                                                 setup.soc.latency, spec.block_size);
        std::string label = spec.name + " bound " + std::string(drivers::to_string(placement));
        if (seen.insert(label).second) d.references.push_back({label, "bound", bound.cycles_per_byte});
        label = spec.name + " theoretical";
        if (seen.insert(label).second)
          d.references.push_back({label, "theoretical", analytics::theoretical_bandwidth(spec).cycles_per_byte});
      }
      d.curves.push_back(std::move(c));
    }
  }
  return d;
}

render::BoundDoc bound_doc(const soc::SocConfig& config) {
  render::BoundDoc d;
  for (const auto& spec : config.accelerators) {
    if (!spec.streaming()) continue;
    for (auto placement : {Placement::RotScratchpad, Placement::SystemRam}) {
      render::BoundRow row;
      row.accelerator = spec.name;
      row.placement = std::string(drivers::to_string(placement));
      row.budget = analytics::access_budget(spec, placement);
      const auto& lat = config.latency;
      row.accel_cycles = row.budget.accel_reads * lat.rot.base_read + row.budget.accel_writes * lat.rot.base_write;
      row.rot_cycles = row.budget.rot_reads * lat.rot.base_read + row.budget.rot_writes * lat.rot.base_write;
      row.ram_cycles = row.budget.ram_reads * lat.ram.base_read + row.budget.ram_writes * lat.ram.base_write;
      row.cycles_per_block = analytics::budget_cycles(row.budget, lat);
      row.block_size = spec.block_size;
      row.cycles_per_byte = analytics::peak_bound(row.budget, lat, spec.block_size).cycles_per_byte;
      d.rows.push_back(std::move(row));
    }
    d.theoretical.push_back({spec.name, spec.compute_cycles_per_block, spec.block_size,
                             analytics::theoretical_bandwidth(spec).cycles_per_byte});
  }
  return d;
}

render::AnalysisDoc analysis_doc(const std::string& trace_text, const trace::AnnotationSet& annotations,
                                 const soc::AddressMap& map) {
  const auto lines = trace::parse_trace(trace_text);
  const auto labeled = trace::annotate(lines, annotations, map);
  render::AnalysisDoc d;
  d.records = labeled.size();
  d.latency = trace::latency_stats(labeled);
  d.report = trace::attribute(labeled);
  return d;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ValidationError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ValidationError("cannot replace '" + path + "': " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string stamp(std::string doc, Format format) {
  const std::string ts = timestamp();
  switch (format) {
    case Format::Json: {
      auto j = nlohmann::json::parse(doc);
      j["generated_at"] = ts;
      return j.dump(2) + "\n";
    }
    case Format::Svg: {
      auto pos = doc.find('\n');
      return doc.substr(0, pos + 1) + "<!-- generated " + ts + " -->\n" + doc.substr(pos + 1);
    }
    case Format::Csv:
    case Format::Table: return "# generated " + ts + "\n" + doc;
  }
  return doc;
}

Setup load(const std::string& config_path) {
  if (!config_path.empty()) return load_setup_file(config_path);
  if (const char* env = std::getenv("SECACC_CONFIG"); env && *env) return load_setup_file(env);
  return default_setup();
}

Format format_of(const std::string& text) {
  auto f = render::parse_format(text);
  if (!f) throw ValidationError("unknown format '" + text + "' (csv, table, svg, json)");
  return *f;
}

Workload workload_of(const std::string& text) {
  auto w = drivers::parse_workload(text);
  if (!w) throw ValidationError("unknown workload '" + text + "' (sha256, hmac, aes256cbc, rsa512, rsa1024)");
  return *w;
}

Placement placement_of(const std::string& text) {
  auto p = drivers::parse_placement(text);
  if (!p) throw ValidationError("unknown placement '" + text + "' (rot, ram)");
  return *p;
}

struct Common {
  std::string config;
  std::string format = "table";
  std::string output;
  bool stamp = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_config = true) {
  if (with_config) cmd->add_option("--config", c.config, "Config document (default: $SECACC_CONFIG or built-in)");
  cmd->add_option("--format", c.format, "csv | table | svg | json")->capture_default_str();
  cmd->add_option("-o,--output", c.output, "Write to this file instead of stdout");
  cmd->add_flag("--stamp", c.stamp, "Add a generation timestamp");
}

void emit(const Common& c, Format format, std::string doc, std::ostream& out) {
  if (c.stamp) doc = stamp(std::move(doc), format);
  if (c.output.empty()) out << doc;
  else write_atomic(c.output, doc);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle-level model of crypto accelerator offload in a root of trust", "secacc"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Reserved; the model is deterministic");

  Common sim_c;
  std::string workload, placement = "ram", direction, trace_path, annotations_out;
  std::uint64_t payload = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Run one workload and print its attribution");
  sim_cmd->add_option("--workload", workload, "sha256 | hmac | aes256cbc | rsa512 | rsa1024")->required();
  sim_cmd->add_option("--payload", payload, "Payload size in bytes")->required();
  sim_cmd->add_option("--placement", placement, "rot | ram")->capture_default_str();
  sim_cmd->add_option("--direction", direction, "encrypt | decrypt (AES, RSA)");
  sim_cmd->add_option("--trace", trace_path, "Also write the cycle trace (CSV) here");
  sim_cmd->add_option("--annotations", annotations_out, "Also write the matching annotation file here");
  add_common(sim_cmd, sim_c);

  Common sweep_c;
  std::vector<std::string> workloads{"sha256", "hmac", "aes256cbc"};
  std::vector<std::uint64_t> payloads = analytics::default_sweep_payloads();
  std::vector<std::string> placements{"ram", "rot"};
  auto* sweep_cmd = app.add_subcommand("sweep", "Cycles/byte over a range of payload sizes");
  sweep_cmd->add_option("--workloads", workloads, "Workloads")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--payloads", payloads, "Payload sizes in bytes")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--placements", placements, "Placements")->delimiter(',')->capture_default_str();
  add_common(sweep_cmd, sweep_c);

  Common an_c;
  std::string trace_in, annotations_in;
  auto* an_cmd = app.add_subcommand("analyze", "Latency statistics and attribution of a trace");
  an_cmd->add_option("--trace", trace_in, "Trace CSV")->required()->check(CLI::ExistingFile);
  an_cmd->add_option("--annotations", annotations_in, "Annotation JSON (default: the simulator's)")
      ->check(CLI::ExistingFile);
  add_common(an_cmd, an_c);

  Common bound_c;
  auto* bound_cmd = app.add_subcommand("bound", "Peak memory bounds and theoretical bandwidth");
  add_common(bound_cmd, bound_c);

  Common rep_c;
  std::string input;
  auto* rep_cmd = app.add_subcommand("report", "Re-render a JSON document in another format");
  rep_cmd->add_option("--input", input, "JSON document from another command")->required()->check(CLI::ExistingFile);
  add_common(rep_cmd, rep_c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  (void)seed;

  try {
    if (*sim_cmd) {
      const Setup setup = load(sim_c.config);
      const Format format = format_of(sim_c.format);
      std::optional<drivers::Direction> dir;
      if (direction == "encrypt") dir = drivers::Direction::Encrypt;
      else if (direction == "decrypt") dir = drivers::Direction::Decrypt;
      else if (!direction.empty()) throw ValidationError("unknown direction '" + direction + "'");
      sim::SimResult result;
      const bool traced = !trace_path.empty();
      auto doc = simulation_doc(setup, workload_of(workload), payload, placement_of(placement), dir,
                                traced ? &result : nullptr);
      if (traced) write_atomic(trace_path, sim::self_trace(result));
      if (!annotations_out.empty())
        write_atomic(annotations_out, trace::to_json(sim::self_annotations()).dump(2) + "\n");
      emit(sim_c, format, render::render(doc, format), out);
    } else if (*sweep_cmd) {
      const Setup setup = load(sweep_c.config);
      const Format format = format_of(sweep_c.format);
      std::vector<Workload> ws;
      for (const auto& w : workloads) ws.push_back(workload_of(w));
      std::vector<Placement> ps;
      for (const auto& p : placements) ps.push_back(placement_of(p));
      emit(sweep_c, format, render::render(sweep_doc(setup, ws, payloads, ps), format), out);
    } else if (*an_cmd) {
      const Setup setup = load(an_c.config);
      const Format format = format_of(an_c.format);
      const auto annotations = annotations_in.empty() ? sim::self_annotations()
                                                      : trace::load_annotations(read_file(annotations_in));
      emit(an_c, format, render::render(analysis_doc(read_file(trace_in), annotations, setup.soc.address_map), format), out);
    } else if (*bound_cmd) {
      const Setup setup = load(bound_c.config);
      const Format format = format_of(bound_c.format);
      emit(bound_c, format, render::render(bound_doc(setup.soc), format), out);
    } else if (*rep_cmd) {
      const Format format = format_of(rep_c.format);
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_file(input));
      } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("report: malformed JSON in '" + input + "': " + e.what());
      }
      emit(rep_c, format, render::rerender(doc, format), out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ModelViolation& e) {
    err << "model violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace secacc::cli
