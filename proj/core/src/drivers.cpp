#include "secacc/drivers.hpp"

#include <charconv>
#include <sstream>

#include "secacc/errors.hpp"

namespace secacc::drivers {

using nlohmann::json;

std::string_view to_string(Workload w) {
  switch (w) {
    case Workload::Sha256: return "sha256";
    case Workload::Hmac: return "hmac";
    case Workload::Aes256Cbc: return "aes256cbc";
    case Workload::Rsa512: return "rsa512";
    case Workload::Rsa1024: return "rsa1024";
  }
  return "?";
}

std::string_view to_string(Direction d) { return d == Direction::Encrypt ? "encrypt" : "decrypt"; }

std::string_view to_string(Placement p) { return p == Placement::RotScratchpad ? "rot" : "ram"; }

std::optional<Workload> parse_workload(std::string_view text) {
  for (auto w : {Workload::Sha256, Workload::Hmac, Workload::Aes256Cbc, Workload::Rsa512,
                 Workload::Rsa1024})
    if (to_string(w) == text) return w;
  if (text == "aes") return Workload::Aes256Cbc;
  return std::nullopt;
}

std::optional<Placement> parse_placement(std::string_view text) {
  if (text == "ram" || text == "system_ram") return Placement::SystemRam;
  if (text == "rot" || text == "scratchpad" || text == "rot_scratchpad")
    return Placement::RotScratchpad;
  return std::nullopt;
}

std::string_view accelerator_for(Workload w) {
  if (is_hash(w)) return "hmac";
  if (w == Workload::Aes256Cbc) return "aes";
  return "otbn";
}

OpcodeLabel MicroOp::opcode() const {
  switch (kind) {
    case OpKind::Alu: return OpcodeLabel::Alu;
    case OpKind::Ctl: return OpcodeLabel::Ctl;
    case OpKind::Load:
    case OpKind::Store:
    case OpKind::Poll: return soc::is_rot_side(region) ? OpcodeLabel::MemRot : OpcodeLabel::MemRam;
  }
  return OpcodeLabel::Alu;
}

MicroOp alu(SemanticLabel s) { return MicroOp{.kind = OpKind::Alu, .semantic = s}; }

MicroOp ctl(SemanticLabel s, bool taken) {
  return MicroOp{.kind = OpKind::Ctl, .semantic = s, .taken = taken};
}

MicroOp load(SemanticLabel s, RegionKind region, DataRole role) {
  return MicroOp{.kind = OpKind::Load, .semantic = s, .region = region, .role = role};
}

MicroOp store(SemanticLabel s, RegionKind region, DataRole role) {
  return MicroOp{.kind = OpKind::Store, .semantic = s, .region = region, .role = role};
}

MicroOp poll(SemanticLabel s, PollCondition condition) {
  return MicroOp{.kind = OpKind::Poll, .semantic = s, .region = RegionKind::MmioStatus,
                 .poll = condition};
}

// ---------------------------------------------------------------------------
// Templates

const DriverTemplate& TemplateSet::for_workload(Workload w) const {
  if (w == Workload::Sha256) return sha256;
  if (w == Workload::Hmac) return hmac;
  if (w == Workload::Aes256Cbc) return aes;
  return rsa;
}

TemplateSet default_templates() {
  TemplateSet set;

  DriverTemplate hash;
  hash.body_prologue = {"load.rot*2", "alu*38", "ctl*18"};
  hash.block = {"poll", "payload*8", "ctl.taken", "payload*8", "ctl.taken", "load.rot"};
  hash.extra_alu_per_block = 3;
  hash.extra_ctl_per_block = 1;
  hash.final_ops = {"alu*4", "store.mmio*2", "load.mmio*2"};

  set.sha256 = hash;
  set.sha256.config = {"alu*5", "store.mmio*5"};
  set.hmac = hash;
  set.hmac.config = {"alu*5", "store.mmio*6"};

  set.aes.config = {"alu*27", "ctl*8", "store.mmio*30", "load.mmio*9", "poll.idle"};
  set.aes.body_prologue = {"load.rot*2", "alu"};
  set.aes.block = {"fetch*4", "poll", "push*4", "readback*4", "load.rot"};
  set.aes.extra_alu_per_block = 5;
  set.aes.extra_ctl_per_block = 1;
  set.aes.poll_exit_taken = true;

  set.rsa.config = {"alu*4", "store.mmio*4"};
  set.rsa.final_ops = {"alu*2"};
  set.rsa.program_words = 1024;
  return set;
}

namespace {

std::vector<std::string> string_list(const json& value, const std::string& field) {
  if (!value.is_array()) throw ValidationError(field + ": expected an array of op tokens");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) throw ValidationError(field + ": op tokens must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

unsigned uint_field(const json& value, const std::string& field) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
    throw ValidationError(field + ": expected a non-negative integer");
  return value.get<unsigned>();
}

void apply(DriverTemplate& t, const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    const std::string field = where + "." + key;
    if (key == "config") t.config = string_list(value, field);
    else if (key == "body_prologue") t.body_prologue = string_list(value, field);
    else if (key == "block") t.block = string_list(value, field);
    else if (key == "body_epilogue") t.body_epilogue = string_list(value, field);
    else if (key == "final") t.final_ops = string_list(value, field);
    else if (key == "extra_alu_per_block") t.extra_alu_per_block = uint_field(value, field);
    else if (key == "extra_ctl_per_block") t.extra_ctl_per_block = uint_field(value, field);
    else if (key == "program_words") t.program_words = uint_field(value, field);
    else if (key == "poll_exit_taken") {
      if (!value.is_boolean()) throw ValidationError(field + ": expected a boolean");
      t.poll_exit_taken = value.get<bool>();
    } else {
      throw ValidationError(where + ": unknown key '" + key + "'");
    }
  }
}

json template_json(const DriverTemplate& t) {
  return json{{"config", t.config},
              {"body_prologue", t.body_prologue},
              {"block", t.block},
              {"body_epilogue", t.body_epilogue},
              {"final", t.final_ops},
              {"extra_alu_per_block", t.extra_alu_per_block},
              {"extra_ctl_per_block", t.extra_ctl_per_block},
              {"poll_exit_taken", t.poll_exit_taken},
              {"program_words", t.program_words}};
}

struct Token {
  std::string name;
  unsigned repeat = 1;
};

Token parse_token(const std::string& text) {
  Token tok;
  auto star = text.find('*');
  tok.name = text.substr(0, star);
  if (star != std::string::npos) {
    std::string_view count = std::string_view(text).substr(star + 1);
    auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), tok.repeat);
    if (ec != std::errc{} || ptr != count.data() + count.size())
      throw ValidationError("template: bad repeat count in token '" + text + "'");
  }
  return tok;
}

// Emits a plain (non-block) token. Returns false when the name is unknown.
bool emit_plain(const std::string& name, SemanticLabel s, Placement placement, bool poll_exit_taken,
                std::vector<MicroOp>& out) {
  const RegionKind data = region_of(placement);
  if (name == "alu") out.push_back(alu(s));
  else if (name == "ctl") out.push_back(ctl(s, false));
  else if (name == "ctl.taken") out.push_back(ctl(s, true));
  else if (name == "load.rot") out.push_back(load(s, RegionKind::RotScratchpad));
  else if (name == "store.rot") out.push_back(store(s, RegionKind::RotScratchpad));
  else if (name == "load.mmio") out.push_back(load(s, RegionKind::MmioStatus));
  else if (name == "store.mmio") out.push_back(store(s, RegionKind::MmioStatus));
  else if (name == "load.data") out.push_back(load(s, data));
  else if (name == "store.data") out.push_back(store(s, data));
  else if (name == "poll.idle") {
    MicroOp p = poll(s, PollCondition::Idle);
    p.taken = poll_exit_taken;
    out.push_back(p);
  } else {
    return false;
  }
  return true;
}

}  // namespace

TemplateSet load_templates(const json& templates, TemplateSet base) {
  if (!templates.is_object()) throw ValidationError("templates: expected an object");
  for (const auto& [key, value] : templates.items()) {
    const std::string where = "templates." + key;
    if (key == "sha256") apply(base.sha256, value, where);
    else if (key == "hmac") apply(base.hmac, value, where);
    else if (key == "aes256cbc" || key == "aes") apply(base.aes, value, where);
    else if (key == "rsa") apply(base.rsa, value, where);
    else throw ValidationError("templates: unknown workload '" + key + "'");
  }
  return base;
}

json to_json(const TemplateSet& set) {
  return json{{"sha256", template_json(set.sha256)},
              {"hmac", template_json(set.hmac)},
              {"aes256cbc", template_json(set.aes)},
              {"rsa", template_json(set.rsa)}};
}

std::vector<MicroOp> expand_tokens(const std::vector<std::string>& tokens, SemanticLabel semantic,
                                   Placement placement, bool poll_exit_taken) {
  std::vector<MicroOp> out;
  for (const auto& text : tokens) {
    Token tok = parse_token(text);
    for (unsigned i = 0; i < tok.repeat; ++i)
      if (!emit_plain(tok.name, semantic, placement, poll_exit_taken, out))
        throw ValidationError("template: unknown op token '" + tok.name + "'");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators

std::uint64_t DriverProgram::block_count() const {
  if (is_hash(workload)) return crypto::sha256_block_count(payload_bytes);
  if (workload == Workload::Aes256Cbc) return payload_bytes / 16;
  return 1;
}

namespace {

struct BlockShape {
  unsigned fetch = 0;
  unsigned push = 0;
  unsigned readback = 0;
  unsigned polls = 0;
};

BlockShape block_shape(const DriverTemplate& tmpl) {
  BlockShape shape;
  for (const auto& text : tmpl.block) {
    Token tok = parse_token(text);
    if (tok.name == "payload") {
      shape.fetch += tok.repeat;
      shape.push += tok.repeat;
    } else if (tok.name == "fetch") {
      shape.fetch += tok.repeat;
    } else if (tok.name == "push") {
      shape.push += tok.repeat;
    } else if (tok.name == "readback") {
      shape.readback += tok.repeat;
    } else if (tok.name == "poll") {
      shape.polls += tok.repeat;
    }
  }
  return shape;
}

// One iteration of the per-block loop. `words` limits payload transfer for a
// trailing partial block; `with_readback` is false for the first AES block.
void emit_block(const DriverTemplate& tmpl, SemanticLabel body, Placement placement,
                unsigned words, PollCondition poll_condition, bool with_readback,
                std::vector<MicroOp>& out) {
  const RegionKind data = region_of(placement);
  unsigned fetched = 0;
  unsigned pushed = 0;
  for (const auto& text : tmpl.block) {
    Token tok = parse_token(text);
    for (unsigned i = 0; i < tok.repeat; ++i) {
      if (tok.name == "payload") {
        if (fetched < words) {
          out.push_back(load(body, data, DataRole::DataLoad));
          out.push_back(store(body, RegionKind::AccelFifo, DataRole::FifoWrite));
          ++fetched;
          ++pushed;
        }
      } else if (tok.name == "fetch") {
        if (fetched < words) {
          out.push_back(load(body, data, DataRole::DataLoad));
          ++fetched;
        }
      } else if (tok.name == "push") {
        if (pushed < words) {
          out.push_back(store(body, RegionKind::AccelFifo, DataRole::FifoWrite));
          ++pushed;
        }
      } else if (tok.name == "readback") {
        if (with_readback) {
          out.push_back(load(body, RegionKind::AccelFifo, DataRole::FifoRead));
          out.push_back(store(body, data, DataRole::ResultStore));
        }
      } else if (tok.name == "poll") {
        MicroOp p = poll(SemanticLabel::Wait, poll_condition);
        p.taken = tmpl.poll_exit_taken;
        out.push_back(p);
      } else if (!emit_plain(tok.name, body, placement, tmpl.poll_exit_taken, out)) {
        throw ValidationError("template: unknown op token '" + tok.name + "'");
      }
    }
  }
  for (unsigned i = 0; i < tmpl.extra_alu_per_block; ++i) out.push_back(alu(body));
  for (unsigned i = 0; i < tmpl.extra_ctl_per_block; ++i)
    out.push_back(ctl(body, i + 1 == tmpl.extra_ctl_per_block));
}

void append(std::vector<MicroOp>& out, const std::vector<MicroOp>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

void emit_key_transfer(std::size_t words, std::vector<MicroOp>& out) {
  for (std::size_t i = 0; i < words; ++i) {
    out.push_back(load(SemanticLabel::Config, RegionKind::RotScratchpad, DataRole::KeyLoad));
    out.push_back(store(SemanticLabel::Config, RegionKind::MmioStatus, DataRole::KeyWrite));
  }
}

crypto::Bytes default_key(std::size_t n, std::uint8_t seed) {
  crypto::Bytes key(n);
  for (std::size_t i = 0; i < n; ++i) key[i] = static_cast<std::uint8_t>(seed + 7 * i);
  return key;
}

}  // namespace

DriverProgram gen_hash_program(Workload workload, std::uint64_t payload_bytes, Placement placement,
                               const DriverTemplate& tmpl, crypto::Bytes key) {
  if (!is_hash(workload)) throw ValidationError("gen_hash_program: workload must be sha256 or hmac");
  if (payload_bytes == 0) throw ValidationError("payload must be > 0 bytes");
  const BlockShape shape = block_shape(tmpl);
  if (shape.fetch != 16 || shape.push != 16 || shape.readback != 0 || shape.polls != 1)
    throw ValidationError(
        "template: hash block must move exactly 16 payload words with one poll and no readback");

  DriverProgram prog;
  prog.workload = workload;
  prog.payload_bytes = payload_bytes;
  prog.placement = placement;
  prog.accelerator = std::string(accelerator_for(workload));

  auto& ops = prog.ops;
  append(ops, expand_tokens(tmpl.config, SemanticLabel::Config, placement, tmpl.poll_exit_taken));
  if (workload == Workload::Hmac) {
    if (key.empty()) key = default_key(32, 0x0b);
    if (key.size() != 32) throw ValidationError("hmac: driver key must be 32 bytes");
    emit_key_transfer(key.size() / 4, ops);
    prog.key = std::move(key);
  }
  ops.push_back(store(SemanticLabel::Config, RegionKind::MmioStatus, DataRole::Start));

  append(ops, expand_tokens(tmpl.body_prologue, SemanticLabel::Digest, placement,
                            tmpl.poll_exit_taken));
  const std::uint64_t words = (payload_bytes + 3) / 4;
  for (std::uint64_t done = 0; done < words; done += 16) {
    auto chunk = static_cast<unsigned>(std::min<std::uint64_t>(16, words - done));
    emit_block(tmpl, SemanticLabel::Digest, placement, chunk, PollCondition::InputReady, false, ops);
  }
  append(ops, expand_tokens(tmpl.body_epilogue, SemanticLabel::Digest, placement,
                            tmpl.poll_exit_taken));

  ops.push_back(store(SemanticLabel::Final, RegionKind::MmioStatus, DataRole::Finish));
  MicroOp done = poll(SemanticLabel::Wait, PollCondition::Idle);
  done.taken = tmpl.poll_exit_taken;
  ops.push_back(done);
  for (int i = 0; i < 8; ++i) {
    ops.push_back(load(SemanticLabel::Final, RegionKind::MmioStatus, DataRole::FifoRead));
    ops.push_back(store(SemanticLabel::Final, region_of(placement), DataRole::ResultStore));
  }
  append(ops, expand_tokens(tmpl.final_ops, SemanticLabel::Final, placement, tmpl.poll_exit_taken));
  return prog;
}

DriverProgram gen_aes_program(std::uint64_t payload_bytes, Placement placement,
                              const DriverTemplate& tmpl, const crypto::AesKeyIv& key_iv,
                              Direction direction) {
  if (payload_bytes == 0 || payload_bytes % 16 != 0)
    throw ValidationError("aes256cbc: payload must be a positive multiple of 16 bytes (got " +
                          std::to_string(payload_bytes) + ")");
  const BlockShape shape = block_shape(tmpl);
  if (shape.fetch != 4 || shape.push != 4 || shape.readback != 4 || shape.polls != 1)
    throw ValidationError(
        "template: aes block must fetch, push and read back exactly 4 words with one poll");

  DriverProgram prog;
  prog.workload = Workload::Aes256Cbc;
  prog.direction = direction;
  prog.payload_bytes = payload_bytes;
  prog.placement = placement;
  prog.accelerator = "aes";
  prog.key.assign(key_iv.key.begin(), key_iv.key.end());
  prog.iv.assign(key_iv.iv.begin(), key_iv.iv.end());

  auto& ops = prog.ops;
  append(ops, expand_tokens(tmpl.config, SemanticLabel::Config, placement, tmpl.poll_exit_taken));
  emit_key_transfer(8 + 4, ops);

  append(ops, expand_tokens(tmpl.body_prologue, SemanticLabel::Cipher, placement,
                            tmpl.poll_exit_taken));
  const std::uint64_t blocks = payload_bytes / 16;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    emit_block(tmpl, SemanticLabel::Cipher, placement, 4,
               b == 0 ? PollCondition::InputReady : PollCondition::OutputValid, b != 0, ops);
  }
  // Last block's output has no following iteration to collect it.
  MicroOp last = poll(SemanticLabel::Wait, PollCondition::OutputValid);
  last.taken = tmpl.poll_exit_taken;
  ops.push_back(last);
  for (int i = 0; i < 4; ++i) {
    ops.push_back(load(SemanticLabel::Cipher, RegionKind::AccelFifo, DataRole::FifoRead));
    ops.push_back(store(SemanticLabel::Cipher, region_of(placement), DataRole::ResultStore));
  }
  append(ops, expand_tokens(tmpl.body_epilogue, SemanticLabel::Cipher, placement,
                            tmpl.poll_exit_taken));
  append(ops, expand_tokens(tmpl.final_ops, SemanticLabel::Cipher, placement, tmpl.poll_exit_taken));
  return prog;
}

DriverProgram gen_otbn_program(Direction op, unsigned key_bits, Placement placement,
                               const DriverTemplate& tmpl) {
  if (key_bits != 512 && key_bits != 1024)
    throw ValidationError("rsa: key_bits must be 512 or 1024 (got " + std::to_string(key_bits) + ")");
  DriverProgram prog;
  prog.workload = key_bits == 512 ? Workload::Rsa512 : Workload::Rsa1024;
  prog.direction = op;
  prog.payload_bytes = key_bits / 8;
  prog.placement = placement;
  prog.accelerator = "otbn";

  const unsigned operand_words = key_bits / 32;
  auto& ops = prog.ops;
  append(ops, expand_tokens(tmpl.config, SemanticLabel::JobLoad, placement, tmpl.poll_exit_taken));
  for (unsigned i = 0; i < tmpl.program_words; ++i) {
    ops.push_back(load(SemanticLabel::JobLoad, RegionKind::RotScratchpad));
    ops.push_back(store(SemanticLabel::JobLoad, RegionKind::AccelFifo));
  }
  // Modulus and exponent live with the key material in the scratchpad.
  for (unsigned i = 0; i < 2 * operand_words; ++i) {
    ops.push_back(load(SemanticLabel::JobLoad, RegionKind::RotScratchpad));
    ops.push_back(store(SemanticLabel::JobLoad, RegionKind::AccelFifo));
  }
  for (unsigned i = 0; i < operand_words; ++i) {
    ops.push_back(load(SemanticLabel::JobLoad, region_of(placement), DataRole::DataLoad));
    ops.push_back(store(SemanticLabel::JobLoad, RegionKind::AccelFifo, DataRole::FifoWrite));
  }
  ops.push_back(store(SemanticLabel::JobStart, RegionKind::MmioStatus, DataRole::Start));
  MicroOp wait = poll(SemanticLabel::JobWait, PollCondition::Idle);
  wait.taken = tmpl.poll_exit_taken;
  ops.push_back(wait);
  for (unsigned i = 0; i < operand_words; ++i) {
    ops.push_back(load(SemanticLabel::JobReadback, RegionKind::AccelFifo, DataRole::FifoRead));
    ops.push_back(store(SemanticLabel::JobReadback, region_of(placement), DataRole::ResultStore));
  }
  append(ops,
         expand_tokens(tmpl.final_ops, SemanticLabel::JobReadback, placement, tmpl.poll_exit_taken));
  return prog;
}

DriverProgram generate(Workload workload, std::uint64_t payload_bytes, Placement placement,
                       const TemplateSet& templates, Direction direction) {
  if (is_hash(workload))
    return gen_hash_program(workload, payload_bytes, placement, templates.for_workload(workload));
  if (workload == Workload::Aes256Cbc) {
    crypto::AesKeyIv kiv;
    auto key = default_key(32, 0x60);
    auto iv = default_key(16, 0x00);
    std::copy(key.begin(), key.end(), kiv.key.begin());
    std::copy(iv.begin(), iv.end(), kiv.iv.begin());
    return gen_aes_program(payload_bytes, placement, templates.aes, kiv, direction);
  }
  const unsigned bits = rsa_key_bits(workload);
  if (payload_bytes != bits / 8)
    throw ValidationError(std::string(to_string(workload)) + ": payload must be exactly " +
                          std::to_string(bits / 8) + " bytes (one modulus-sized block)");
  return gen_otbn_program(direction, bits, placement, templates.rsa);
}

CountMatrix count_ops(const DriverProgram& program) {
  CountMatrix m{};
  for (const auto& op : program.ops) {
    const std::size_t s = index_of(op.semantic);
    if (op.kind == OpKind::Poll) {
      ++m[index_of(OpcodeLabel::Alu)][s];
      ++m[index_of(OpcodeLabel::Ctl)][s];
      ++m[index_of(OpcodeLabel::MemRot)][s];
    } else {
      ++m[index_of(op.opcode())][s];
    }
  }
  return m;
}

std::string dump_listing(const DriverProgram& program) {
  std::ostringstream os;
  for (const auto& op : program.ops) {
    os << to_string(op.semantic) << ',';
    if (op.kind == OpKind::Poll) {
      os << "POLL," << soc::to_string(op.region) << ',' << static_cast<int>(op.width);
    } else if (op.is_memory()) {
      os << to_string(op.opcode()) << ',' << soc::to_string(op.region) << ','
         << static_cast<int>(op.width);
    } else {
      os << to_string(op.opcode()) << ",,";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace secacc::drivers
