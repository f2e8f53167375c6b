#include "secacc/setup.hpp"

#include <fstream>
#include <sstream>

#include "secacc/errors.hpp"

namespace secacc {

using nlohmann::json;

namespace soc {

SocConfig default_config() {
  SocConfig cfg;
  cfg.address_map = AddressMap({
      {"rot_scratchpad", RegionKind::RotScratchpad, 0x10000000, 0x10020000, ""},
      {"aes_regs", RegionKind::MmioStatus, 0x41100000, 0x41101000, "aes"},
      {"aes_fifo", RegionKind::AccelFifo, 0x41101000, 0x41102000, "aes"},
      {"hmac_regs", RegionKind::MmioStatus, 0x41110000, 0x41111000, "hmac"},
      {"hmac_fifo", RegionKind::AccelFifo, 0x41111000, 0x41112000, "hmac"},
      {"otbn_regs", RegionKind::MmioStatus, 0x411d0000, 0x411d1000, "otbn"},
      {"otbn_mem", RegionKind::AccelFifo, 0x411d4000, 0x411dc000, "otbn"},
      {"system_ram", RegionKind::SystemRam, 0x80000000, 0x81000000, ""},
  });
  cfg.latency.rot = {5, 5, 7};
  cfg.latency.ram = {23, 23, 5};

  AcceleratorSpec hmac;
  hmac.name = "hmac";
  hmac.kind = EngineKind::Hash;
  hmac.block_size = 64;
  hmac.input_fifo_capacity = 16;
  hmac.compute_cycles_per_block = 80;

  AcceleratorSpec aes;
  aes.name = "aes";
  aes.kind = EngineKind::BlockCipher;
  aes.block_size = 16;
  aes.input_fifo_capacity = 4;
  aes.has_output_fifo = true;
  aes.compute_cycles_per_block = 72;

  AcceleratorSpec otbn;
  otbn.name = "otbn";
  otbn.kind = EngineKind::Job;
  otbn.block_size = 4;
  otbn.job_cost_table = {
      {"rsa_decrypt", 512, 570000},
      {"rsa_decrypt", 1024, 2960000},
      {"rsa_encrypt", 512, 13000},
      {"rsa_encrypt", 1024, 33000},
  };

  cfg.accelerators = {hmac, aes, otbn};
  cfg.alu_cycles = 2;
  cfg.ctl_cycles = 1;
  return cfg;
}

}  // namespace soc

Setup default_setup() {
  return Setup{soc::default_config(), drivers::default_templates(), analytics::default_baseline()};
}

Setup load_setup(const json& doc) {
  Setup s;
  s.soc = soc::load_config(doc);
  s.templates = drivers::default_templates();
  s.baseline = analytics::default_baseline();
  if (auto it = doc.find("templates"); it != doc.end())
    s.templates = drivers::load_templates(*it, s.templates);
  if (auto it = doc.find("baseline"); it != doc.end())
    s.baseline = analytics::load_baseline(*it, s.baseline);
  return s;
}

Setup load_setup(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: malformed JSON: ") + e.what());
  }
  return load_setup(doc);
}

Setup load_setup_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  return load_setup(std::string_view(text));
}

json to_json(const Setup& setup) {
  json doc = soc::to_json(setup.soc);
  doc["templates"] = drivers::to_json(setup.templates);
  doc["baseline"] = analytics::to_json(setup.baseline);
  return doc;
}

}  // namespace secacc
