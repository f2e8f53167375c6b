#include "secacc/socmodel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "secacc/errors.hpp"

namespace secacc::soc {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kRegionKinds> kRegionNames = {
    "rot_scratchpad", "accel_fifo", "system_ram", "mmio_status"};

[[noreturn]] void reject(const std::string& field, const std::string& why) {
  throw ValidationError(field + ": " + why);
}

const json& require(const json& obj, std::string_view key, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) reject(std::string(where), "missing key '" + std::string(key) + "'");
  return *it;
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      reject(std::string(where), "unknown key '" + key + "'");
  }
}

std::uint64_t as_uint(const json& value, const std::string& field) {
  if (!value.is_number_integer()) reject(field, "expected an integer");
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  auto v = value.get<std::int64_t>();
  if (v < 0) reject(field, "must be >= 0 (got " + std::to_string(v) + ")");
  return static_cast<std::uint64_t>(v);
}

std::string as_string(const json& value, const std::string& field) {
  if (!value.is_string()) reject(field, "expected a string");
  return value.get<std::string>();
}

RegionLatency parse_region_latency(const json& obj, const std::string& where) {
  if (!obj.is_object()) reject(where, "expected an object");
  reject_unknown_keys(obj, {"base_read", "base_write", "post_branch_penalty"}, where);
  RegionLatency lat;
  lat.base_read = as_uint(require(obj, "base_read", where), where + ".base_read");
  lat.base_write = as_uint(require(obj, "base_write", where), where + ".base_write");
  lat.post_branch_penalty =
      as_uint(require(obj, "post_branch_penalty", where), where + ".post_branch_penalty");
  return lat;
}

json region_latency_json(const RegionLatency& lat) {
  return json{{"base_read", lat.base_read},
              {"base_write", lat.base_write},
              {"post_branch_penalty", lat.post_branch_penalty}};
}

std::optional<EngineKind> parse_engine_kind(std::string_view text) {
  if (text == "hash") return EngineKind::Hash;
  if (text == "block_cipher") return EngineKind::BlockCipher;
  if (text == "job") return EngineKind::Job;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(RegionKind kind) { return kRegionNames[static_cast<std::size_t>(kind)]; }

std::optional<RegionKind> parse_region_kind(std::string_view text) {
  for (std::size_t i = 0; i < kRegionNames.size(); ++i)
    if (kRegionNames[i] == text) return static_cast<RegionKind>(i);
  return std::nullopt;
}

std::string_view to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::Hash: return "hash";
    case EngineKind::BlockCipher: return "block_cipher";
    case EngineKind::Job: return "job";
  }
  return "?";
}

std::string format_address(Address addr) {
  std::ostringstream os;
  os << "0x" << std::hex << addr;
  return os.str();
}

Address parse_address(std::string_view text, std::string_view field) {
  if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
    reject(std::string(field), "expected a hex address like \"0x10000\" (got \"" +
                                   std::string(text) + "\")");
  Address value = 0;
  auto digits = text.substr(2);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, 16);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    reject(std::string(field), "malformed hex address \"" + std::string(text) + "\"");
  return value;
}

// ---------------------------------------------------------------------------
// AddressMap

AddressMap::AddressMap(std::vector<Region> regions) : regions_(std::move(regions)) {
  std::set<std::string> names;
  for (const auto& r : regions_) {
    const std::string field = "address_map." + r.name;
    if (r.name.empty()) reject("address_map", "region with empty name");
    if (!names.insert(r.name).second) reject(field, "duplicate region name");
    if (r.start >= r.end)
      reject(field, "start must be below end (" + format_address(r.start) + " >= " +
                        format_address(r.end) + ")");
    if (r.start % 4 != 0 || r.end % 4 != 0) reject(field, "bounds must be 4-byte aligned");
  }
  std::sort(regions_.begin(), regions_.end(),
            [](const Region& a, const Region& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < regions_.size(); ++i) {
    const auto& prev = regions_[i - 1];
    const auto& cur = regions_[i];
    if (cur.start < prev.end)
      reject("address_map", "regions '" + prev.name + "' and '" + cur.name + "' overlap");
  }
}

const Region* AddressMap::find(Address addr) const {
  auto it = std::upper_bound(regions_.begin(), regions_.end(), addr,
                             [](Address a, const Region& r) { return a < r.start; });
  if (it == regions_.begin()) return nullptr;
  --it;
  return it->contains(addr) ? &*it : nullptr;
}

std::optional<RegionKind> AddressMap::classify(Address addr) const {
  const Region* r = find(addr);
  if (r == nullptr) return std::nullopt;
  return r->kind;
}

const Region* AddressMap::find_by_name(std::string_view name) const {
  for (const auto& r : regions_)
    if (r.name == name) return &r;
  return nullptr;
}

const Region* AddressMap::find_kind(RegionKind kind, std::string_view owner) const {
  for (const auto& r : regions_)
    if (r.kind == kind && (owner.empty() || r.owner == owner)) return &r;
  return nullptr;
}

std::optional<RegionKind> classify_address(const AddressMap& map, Address addr) {
  return map.classify(addr);
}

Cycles access_latency(const LatencyModel& model, RegionKind kind, Access access,
                      bool post_branch) {
  const auto& lat = model.for_kind(kind);
  Cycles base = access == Access::Read ? lat.base_read : lat.base_write;
  return post_branch ? base + lat.post_branch_penalty : base;
}

std::optional<Cycles> AcceleratorSpec::job_cost(std::string_view operation,
                                                unsigned key_bits) const {
  for (const auto& entry : job_cost_table)
    if (entry.operation == operation && entry.key_bits == key_bits) return entry.cycles;
  return std::nullopt;
}

const AcceleratorSpec* SocConfig::find_accelerator(std::string_view name) const {
  for (const auto& a : accelerators)
    if (a.name == name) return &a;
  return nullptr;
}

const AcceleratorSpec& SocConfig::accelerator(std::string_view name) const {
  const auto* spec = find_accelerator(name);
  if (spec == nullptr)
    throw ValidationError("accelerators: no accelerator named '" + std::string(name) + "'");
  return *spec;
}

// ---------------------------------------------------------------------------
// Validation

void validate(const SocConfig& config) {
  const auto check_latency = [](const RegionLatency& lat, const std::string& where) {
    if (lat.base_read < 1)
      reject(where + ".base_read", "must be >= 1 (got " + std::to_string(lat.base_read) + ")");
    if (lat.base_write < 1)
      reject(where + ".base_write", "must be >= 1 (got " + std::to_string(lat.base_write) + ")");
  };
  check_latency(config.latency.rot, "latency.rot");
  check_latency(config.latency.ram, "latency.ram");
  if (config.alu_cycles < 1) reject("core.alu_cycles", "must be >= 1");
  if (config.ctl_cycles < 1) reject("core.ctl_cycles", "must be >= 1");

  std::set<std::string> names;
  for (const auto& acc : config.accelerators) {
    const std::string where = "accelerators." + acc.name;
    if (acc.name.empty()) reject("accelerators", "accelerator with empty name");
    if (!names.insert(acc.name).second) reject(where, "duplicate accelerator name");
    if (acc.word_size == 0) reject(where + ".word_size", "must be > 0");
    if (acc.block_size == 0) reject(where + ".block_size", "must be > 0");
    if (acc.block_size % acc.word_size != 0)
      reject(where + ".block_size", "must be a multiple of word_size");
    if (acc.streaming()) {
      if (acc.compute_cycles_per_block == 0)
        reject(where + ".compute_cycles_per_block", "must be > 0 for streaming engines");
      if (acc.input_fifo_capacity < acc.block_words())
        reject(where + ".input_fifo_words", "must hold at least one block");
    }
    for (const auto& job : acc.job_cost_table) {
      if (job.cycles == 0)
        reject(where + ".job_costs", "entry " + job.operation + "/" +
                                         std::to_string(job.key_bits) + " must be > 0");
    }
    if (acc.kind == EngineKind::Job && acc.job_cost_table.empty())
      reject(where + ".job_costs", "job engines need at least one entry");
  }
}

// ---------------------------------------------------------------------------
// JSON

SocConfig load_config(const json& doc) {
  if (!doc.is_object()) reject("config", "top level must be an object");
  reject_unknown_keys(doc, {"address_map", "latency", "accelerators", "core", "templates",
                            "baseline"},
                      "config");
  SocConfig cfg;

  const json& map = require(doc, "address_map", "config");
  if (!map.is_array()) reject("address_map", "expected an array");
  std::vector<Region> regions;
  for (std::size_t i = 0; i < map.size(); ++i) {
    const json& r = map[i];
    const std::string where = "address_map[" + std::to_string(i) + "]";
    if (!r.is_object()) reject(where, "expected an object");
    reject_unknown_keys(r, {"name", "kind", "start", "end", "owner"}, where);
    Region region;
    region.name = as_string(require(r, "name", where), where + ".name");
    auto kind_text = as_string(require(r, "kind", where), where + ".kind");
    auto kind = parse_region_kind(kind_text);
    if (!kind) reject(where + ".kind", "unknown region kind '" + kind_text + "'");
    region.kind = *kind;
    region.start =
        parse_address(as_string(require(r, "start", where), where + ".start"), where + ".start");
    region.end = parse_address(as_string(require(r, "end", where), where + ".end"), where + ".end");
    if (auto it = r.find("owner"); it != r.end()) region.owner = as_string(*it, where + ".owner");
    regions.push_back(std::move(region));
  }
  cfg.address_map = AddressMap(std::move(regions));

  const json& lat = require(doc, "latency", "config");
  if (!lat.is_object()) reject("latency", "expected an object");
  reject_unknown_keys(lat, {"rot", "ram"}, "latency");
  cfg.latency.rot = parse_region_latency(require(lat, "rot", "latency"), "latency.rot");
  cfg.latency.ram = parse_region_latency(require(lat, "ram", "latency"), "latency.ram");

  const json& accs = require(doc, "accelerators", "config");
  if (!accs.is_array()) reject("accelerators", "expected an array");
  for (std::size_t i = 0; i < accs.size(); ++i) {
    const json& a = accs[i];
    const std::string where = "accelerators[" + std::to_string(i) + "]";
    if (!a.is_object()) reject(where, "expected an object");
    reject_unknown_keys(a,
                        {"name", "kind", "block_size", "word_size", "input_fifo_words",
                         "has_output_fifo", "compute_cycles_per_block", "job_costs"},
                        where);
    AcceleratorSpec spec;
    spec.name = as_string(require(a, "name", where), where + ".name");
    auto kind_text = as_string(require(a, "kind", where), where + ".kind");
    auto kind = parse_engine_kind(kind_text);
    if (!kind) reject(where + ".kind", "unknown engine kind '" + kind_text + "'");
    spec.kind = *kind;
    spec.block_size =
        static_cast<std::uint32_t>(as_uint(require(a, "block_size", where), where + ".block_size"));
    spec.word_size =
        static_cast<std::uint32_t>(as_uint(require(a, "word_size", where), where + ".word_size"));
    if (auto it = a.find("input_fifo_words"); it != a.end())
      spec.input_fifo_capacity = static_cast<std::uint32_t>(as_uint(*it, where + ".input_fifo_words"));
    if (auto it = a.find("has_output_fifo"); it != a.end()) {
      if (!it->is_boolean()) reject(where + ".has_output_fifo", "expected a boolean");
      spec.has_output_fifo = it->get<bool>();
    }
    if (auto it = a.find("compute_cycles_per_block"); it != a.end())
      spec.compute_cycles_per_block = as_uint(*it, where + ".compute_cycles_per_block");
    if (auto it = a.find("job_costs"); it != a.end()) {
      if (!it->is_array()) reject(where + ".job_costs", "expected an array");
      for (const auto& entry : *it) {
        const std::string jw = where + ".job_costs";
        if (!entry.is_object()) reject(jw, "expected objects");
        reject_unknown_keys(entry, {"operation", "key_bits", "cycles"}, jw);
        JobCost job;
        job.operation = as_string(require(entry, "operation", jw), jw + ".operation");
        job.key_bits = static_cast<unsigned>(as_uint(require(entry, "key_bits", jw), jw + ".key_bits"));
        job.cycles = as_uint(require(entry, "cycles", jw), jw + ".cycles");
        spec.job_cost_table.push_back(std::move(job));
      }
    }
    cfg.accelerators.push_back(std::move(spec));
  }

  const json& core = require(doc, "core", "config");
  if (!core.is_object()) reject("core", "expected an object");
  reject_unknown_keys(core, {"alu_cycles", "ctl_cycles"}, "core");
  cfg.alu_cycles = as_uint(require(core, "alu_cycles", "core"), "core.alu_cycles");
  cfg.ctl_cycles = as_uint(require(core, "ctl_cycles", "core"), "core.ctl_cycles");

  validate(cfg);
  return cfg;
}

SocConfig load_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: malformed JSON: ") + e.what());
  }
  return load_config(doc);
}

SocConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  return load_config(std::string_view(text));
}

json to_json(const SocConfig& cfg) {
  json map = json::array();
  for (const auto& r : cfg.address_map.regions()) {
    json entry{{"name", r.name},
               {"kind", to_string(r.kind)},
               {"start", format_address(r.start)},
               {"end", format_address(r.end)}};
    if (!r.owner.empty()) entry["owner"] = r.owner;
    map.push_back(std::move(entry));
  }
  json accs = json::array();
  for (const auto& a : cfg.accelerators) {
    json entry{{"name", a.name},
               {"kind", to_string(a.kind)},
               {"block_size", a.block_size},
               {"word_size", a.word_size},
               {"input_fifo_words", a.input_fifo_capacity},
               {"has_output_fifo", a.has_output_fifo},
               {"compute_cycles_per_block", a.compute_cycles_per_block}};
    if (!a.job_cost_table.empty()) {
      json jobs = json::array();
      for (const auto& j : a.job_cost_table)
        jobs.push_back({{"operation", j.operation}, {"key_bits", j.key_bits}, {"cycles", j.cycles}});
      entry["job_costs"] = std::move(jobs);
    }
    accs.push_back(std::move(entry));
  }
  return json{{"address_map", std::move(map)},
              {"latency",
               {{"rot", region_latency_json(cfg.latency.rot)},
                {"ram", region_latency_json(cfg.latency.ram)}}},
              {"accelerators", std::move(accs)},
              {"core", {{"alu_cycles", cfg.alu_cycles}, {"ctl_cycles", cfg.ctl_cycles}}}};
}

std::string serialize(const SocConfig& config) { return to_json(config).dump(2); }

}  // namespace secacc::soc
