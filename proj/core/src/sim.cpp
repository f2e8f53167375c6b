#include "secacc/sim.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <memory>
#include <sstream>

#include "secacc/errors.hpp"

namespace secacc::sim {

using drivers::DataRole;
using drivers::DriverProgram;
using drivers::MicroOp;
using drivers::OpKind;
using drivers::PollCondition;
using drivers::Workload;

namespace {

constexpr std::uint64_t kMaxPollIterations = 100'000'000;

struct Word {
  std::array<std::uint8_t, 4> bytes{};
  std::uint8_t len = 4;
};

Word word_of(crypto::ByteView data, std::size_t offset) {
  Word w;
  w.len = static_cast<std::uint8_t>(std::min<std::size_t>(4, data.size() - offset));
  std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(offset), w.len, w.bytes.begin());
  return w;
}

void append(crypto::Bytes& out, const Word& w) { out.insert(out.end(), w.bytes.begin(), w.bytes.begin() + w.len); }

[[noreturn]] void violation(const std::string& engine, const std::string& what) {
  throw ModelViolation(engine + ": " + what);
}

class Engine {
 public:
  explicit Engine(std::string name) : name_(std::move(name)) {}
  virtual ~Engine() = default;

  virtual bool ready(PollCondition c, Cycles t) = 0;
  /// Next time after `t` at which the engine state changes on its own.
  virtual std::optional<Cycles> next_event(Cycles t) const = 0;
  virtual void write_fifo(const Word&, Cycles) { violation(name_, "input FIFO not supported"); }
  virtual void write_key(const Word&, Cycles) { violation(name_, "key registers not supported"); }
  virtual void start(Cycles) { violation(name_, "start command not supported"); }
  virtual void finish(Cycles) { violation(name_, "finish command not supported"); }
  virtual Word read_word(Cycles t) = 0;

  std::uint64_t blocks() const { return blocks_; }
  const std::string& name() const { return name_; }

 protected:
  std::string name_;
  std::uint64_t blocks_ = 0;
};

class HashEngine final : public Engine {
 public:
  HashEngine(const soc::AcceleratorSpec& spec, bool hmac)
      : Engine(spec.name),
        capacity_(spec.input_fifo_capacity),
        block_words_(spec.block_words()),
        compute_(spec.compute_cycles_per_block),
        hmac_(hmac) {}

  bool ready(PollCondition c, Cycles t) override {
    drop_released(t);
    switch (c) {
      case PollCondition::InputReady: return occupancy() + block_words_ <= capacity_;
      case PollCondition::OutputValid: return finished_ && t >= busy_until_;
      case PollCondition::Idle: return t >= busy_until_ && occupancy() == 0;
    }
    return false;
  }

  std::optional<Cycles> next_event(Cycles t) const override {
    for (Cycles r : releases_)
      if (r > t) return r;
    if (busy_until_ > t) return busy_until_;
    return std::nullopt;
  }

  void write_fifo(const Word& w, Cycles t) override {
    drop_released(t);
    if (finished_) violation(name_, "FIFO write after finish");
    if (occupancy() >= capacity_) violation(name_, "write to a full input FIFO");
    append(message_, w);
    if (++partial_ == block_words_) {
      partial_ = 0;
      releases_.push_back(schedule(t));
    }
  }

  void write_key(const Word& w, Cycles) override {
    if (!hmac_) violation(name_, "key write in plain hash mode");
    append(key_, w);
  }

  void start(Cycles t) override {
    message_.clear();
    finished_ = false;
    digest_read_ = 0;
    if (hmac_) {
      if (key_.size() != 32) violation(name_, "start with an incomplete 256-bit key");
      schedule(t);  // ipad block
    }
  }

  void finish(Cycles t) override {
    drop_released(t);
    if (finished_) violation(name_, "finish issued twice");
    const std::uint64_t n = message_.size();
    std::uint64_t tail = crypto::sha256_block_count(n) - n / 64;
    if (hmac_) tail += 2;  // opad block and padded inner digest
    partial_ = 0;
    for (std::uint64_t i = 0; i < tail; ++i) schedule(t);
    digest_ = hmac_ ? crypto::hmac_sha256(key_, message_) : crypto::sha256(message_);
    finished_ = true;
  }

  Word read_word(Cycles t) override {
    if (!finished_ || t < busy_until_) violation(name_, "digest read before completion");
    if (digest_read_ >= 8) violation(name_, "digest read past 8 words");
    return word_of(digest_, 4 * digest_read_++);
  }

 private:
  Cycles schedule(Cycles t) {
    const Cycles begin = std::max(t, busy_until_);
    busy_until_ = begin + compute_;
    ++blocks_;
    return begin;
  }

  void drop_released(Cycles t) {
    while (!releases_.empty() && releases_.front() <= t) releases_.pop_front();
  }

  std::uint64_t occupancy() const { return partial_ + block_words_ * releases_.size(); }

  std::uint64_t capacity_;
  std::uint64_t block_words_;
  Cycles compute_;
  bool hmac_;
  std::uint64_t partial_ = 0;
  std::deque<Cycles> releases_;  // compute start of each full block still held in the FIFO
  Cycles busy_until_ = 0;
  crypto::Bytes message_;
  crypto::Bytes key_;
  crypto::Digest256 digest_{};
  bool finished_ = false;
  std::size_t digest_read_ = 0;
};

class CipherEngine final : public Engine {
 public:
  CipherEngine(const soc::AcceleratorSpec& spec, drivers::Direction direction)
      : Engine(spec.name),
        capacity_(spec.input_fifo_capacity),
        block_words_(spec.block_words()),
        compute_(spec.compute_cycles_per_block),
        decrypt_(direction == drivers::Direction::Decrypt) {}

  bool ready(PollCondition c, Cycles t) override {
    advance(t);
    switch (c) {
      case PollCondition::InputReady: return input_.size() / 4 + block_words_ <= capacity_;
      case PollCondition::OutputValid: return out_valid_;
      case PollCondition::Idle: return !computing_ && !deferred_ && input_.empty();
    }
    return false;
  }

  std::optional<Cycles> next_event(Cycles) const override {
    if (computing_) return busy_until_;
    if (!deferred_ && input_.size() / 4 >= block_words_) return std::max(input_full_at_, free_at_);
    return std::nullopt;
  }

  void write_key(const Word& w, Cycles) override {
    if (key_.size() < 32) append(key_, w);
    else if (iv_.size() < 16) append(iv_, w);
    else violation(name_, "more than 8 key and 4 IV words written");
  }

  void write_fifo(const Word& w, Cycles t) override {
    advance(t);
    if (input_.size() / 4 >= capacity_) violation(name_, "write to a full input FIFO");
    append(input_, w);
    if (input_.size() / 4 == block_words_) input_full_at_ = t;
    advance(t);
  }

  Word read_word(Cycles t) override {
    advance(t);
    if (!out_valid_) violation(name_, "read from an empty output FIFO");
    Word w = word_of(out_, 4 * out_read_++);
    if (out_read_ * 4 == out_.size()) {
      out_valid_ = false;
      out_read_ = 0;
      if (deferred_) {
        deferred_ = false;
        publish(t);
      }
      advance(t);
    }
    return w;
  }

 private:
  void advance(Cycles t) {
    while (true) {
      if (computing_ && busy_until_ <= t) {
        computing_ = false;
        if (out_valid_) {
          deferred_ = true;
        } else {
          publish(busy_until_);
        }
        continue;
      }
      if (!computing_ && !deferred_ && input_.size() / 4 >= block_words_) {
        const Cycles begin = std::max(input_full_at_, free_at_);
        if (begin <= t) {
          compute_block();
          computing_ = true;
          busy_until_ = begin + compute_;
          continue;
        }
      }
      break;
    }
  }

  void publish(Cycles when) {
    out_ = pending_;
    out_valid_ = true;
    out_read_ = 0;
    free_at_ = when;
  }

  void compute_block() {
    if (key_.size() != 32 || iv_.size() != 16) violation(name_, "block started before key and IV");
    if (!cipher_) {
      cipher_ = std::make_unique<crypto::Aes256>(std::span<const std::uint8_t, 32>(key_.data(), 32));
      chain_ = iv_;
    }
    crypto::Bytes in(input_.begin(), input_.begin() + 16);
    input_.erase(input_.begin(), input_.begin() + 16);
    pending_.assign(16, 0);
    if (decrypt_) {
      cipher_->decrypt_block(in.data(), pending_.data());
      for (int i = 0; i < 16; ++i) pending_[i] ^= chain_[i];
      chain_ = in;
    } else {
      for (int i = 0; i < 16; ++i) in[i] ^= chain_[i];
      cipher_->encrypt_block(in.data(), pending_.data());
      chain_ = pending_;
    }
    ++blocks_;
  }

  std::uint64_t capacity_;
  std::uint64_t block_words_;
  Cycles compute_;
  bool decrypt_;
  crypto::Bytes key_;
  crypto::Bytes iv_;
  crypto::Bytes chain_;
  std::unique_ptr<crypto::Aes256> cipher_;
  crypto::Bytes input_;
  Cycles input_full_at_ = 0;
  bool computing_ = false;
  Cycles busy_until_ = 0;
  Cycles free_at_ = 0;
  crypto::Bytes pending_;
  bool deferred_ = false;  // finished block waiting for the output register
  crypto::Bytes out_;
  bool out_valid_ = false;
  std::size_t out_read_ = 0;
};

class JobEngine final : public Engine {
 public:
  JobEngine(std::string name, crypto::RsaParams params, Cycles cost)
      : Engine(std::move(name)), params_(std::move(params)), cost_(cost) {}

  bool ready(PollCondition c, Cycles t) override {
    switch (c) {
      case PollCondition::InputReady: return !started_;
      case PollCondition::OutputValid: return started_ && t >= busy_until_;
      case PollCondition::Idle: return t >= busy_until_;
    }
    return false;
  }

  std::optional<Cycles> next_event(Cycles t) const override {
    if (busy_until_ > t) return busy_until_;
    return std::nullopt;
  }

  void write_fifo(const Word& w, Cycles) override {
    if (started_) violation(name_, "operand written while a job runs");
    append(operand_, w);
  }

  void start(Cycles t) override {
    if (started_) violation(name_, "job started twice");
    const std::size_t width = params_.key_bits / 8;
    if (operand_.size() != width) violation(name_, "start with an incomplete operand");
    auto base = crypto::BigUint::from_bytes_be(operand_);
    result_ = crypto::rsa_modexp(base, params_.exponent, params_.modulus).to_bytes_be(width);
    started_ = true;
    busy_until_ = t + cost_;
    ++blocks_;
  }

  Word read_word(Cycles t) override {
    if (!started_ || t < busy_until_) violation(name_, "result read before job completion");
    if (read_ * 4 >= result_.size()) violation(name_, "result read past the operand width");
    return word_of(result_, 4 * read_++);
  }

 private:
  crypto::RsaParams params_;
  Cycles cost_;
  crypto::Bytes operand_;
  crypto::Bytes result_;
  bool started_ = false;
  Cycles busy_until_ = 0;
  std::size_t read_ = 0;
};

const soc::Region& require_region(const soc::SocConfig& config, RegionKind kind,
                                  std::string_view owner) {
  const soc::Region* r = config.address_map.find_kind(kind, owner);
  if (!r && !owner.empty()) r = config.address_map.find_kind(kind);
  if (!r)
    throw ValidationError("address_map: no " + std::string(soc::to_string(kind)) + " region" +
                          (owner.empty() ? "" : " for '" + std::string(owner) + "'"));
  return *r;
}

// Deterministic addresses for every memory op, laid out inside the configured
// regions so a trace of the run classifies back to the same regions.
class AddressPlan {
 public:
  AddressPlan(const soc::SocConfig& config, const DriverProgram& program)
      : scratch_(require_region(config, RegionKind::RotScratchpad, {})),
        data_(require_region(config, drivers::region_of(program.placement), {})),
        fifo_(require_region(config, RegionKind::AccelFifo, program.accelerator)),
        mmio_(require_region(config, RegionKind::MmioStatus, program.accelerator)) {
    input_base_ = data_.start + 0x1000;
    result_base_ = (input_base_ + program.payload_bytes + 0xff) & ~Address{0xff};
    const Address result_end = result_base_ + std::max<std::uint64_t>(program.payload_bytes, 128);
    if (result_end > data_.end)
      throw ValidationError("payload of " + std::to_string(program.payload_bytes) +
                            " bytes does not fit in region '" + data_.name + "'");
    if (fifo_.size() < 4 || mmio_.size() < 0x14 || scratch_.size() < 0x200)
      throw ValidationError("address_map: accelerator windows too small");
  }

  Address address(const MicroOp& op) {
    if (op.kind == OpKind::Poll) return mmio_.start;
    switch (op.region) {
      case RegionKind::AccelFifo: return fifo_.start + (4 * fifo_k_++) % fifo_.size();
      case RegionKind::MmioStatus:
        return mmio_.start + 0x10 + (4 * mmio_k_++) % ((mmio_.size() - 0x10) & ~Address{3});
      case RegionKind::RotScratchpad:
      case RegionKind::SystemRam:
        if (op.region == data_.kind) {
          if (op.role == DataRole::DataLoad) return input_base_ + 4 * input_k_++;
          if (op.role == DataRole::ResultStore) return result_base_ + 4 * result_k_++;
          if (op.region == RegionKind::SystemRam) return input_base_ + (4 * misc_k_++) % 0x1000;
        }
        return scratch_.start + 0x100 + 4 * (misc_k_++ % 64);
    }
    return 0;
  }

 private:
  const soc::Region& scratch_;
  const soc::Region& data_;
  const soc::Region& fifo_;
  const soc::Region& mmio_;
  Address input_base_ = 0;
  Address result_base_ = 0;
  std::uint64_t fifo_k_ = 0;
  std::uint64_t mmio_k_ = 0;
  std::uint64_t input_k_ = 0;
  std::uint64_t result_k_ = 0;
  std::uint64_t misc_k_ = 0;
};

class Machine {
 public:
  Machine(const DriverProgram& program, const soc::SocConfig& config, crypto::ByteView input,
          Engine& engine, bool emit_trace)
      : program_(program), config_(config), input_(input), engine_(engine), plan_(config, program) {
    if (emit_trace) result_.trace.emplace();
  }

  SimResult execute() {
    for (const auto& op : program_.ops) step(op);
    result_.total_cycles = t_;
    result_.blocks_processed = engine_.blocks();
    return std::move(result_);
  }

 private:
  void step(const MicroOp& op) {
    switch (op.kind) {
      case OpKind::Alu:
        emit(OpcodeLabel::Alu, op.semantic, config_.alu_cycles, slot(op.semantic), "addi");
        break;
      case OpKind::Ctl:
        emit(OpcodeLabel::Ctl, op.semantic, config_.ctl_cycles, slot(op.semantic), "bne");
        if (op.taken) post_branch_ = true;
        break;
      case OpKind::Load:
      case OpKind::Store: memory(op); break;
      case OpKind::Poll: poll(op); break;
    }
  }

  Address slot(SemanticLabel s) { return semantic_base_pc(s) + 4 * slots_[index_of(s)]++; }

  void emit(OpcodeLabel opcode, SemanticLabel semantic, Cycles duration, Address pc,
            const char* mnemonic, std::optional<RegionKind> region = std::nullopt,
            std::optional<Address> ea = std::nullopt) {
    result_.report.add(opcode, semantic, duration);
    if (result_.trace) {
      TraceRecord rec;
      rec.seq = result_.trace->size();
      rec.start_cycle = t_;
      rec.duration = duration;
      rec.opcode = opcode;
      rec.semantic = semantic;
      rec.region = region;
      rec.effective_address = ea;
      rec.pc = pc;
      rec.mnemonic = mnemonic;
      result_.trace->push_back(std::move(rec));
    }
    t_ += duration;
  }

  Cycles memory_cost(RegionKind region, soc::Access access) {
    const Cycles d = soc::access_latency(config_.latency, region, access, post_branch_);
    post_branch_ = false;
    return d;
  }

  Word pop_core() {
    if (core_.empty()) throw ModelViolation("driver: register queue underflow");
    Word w = core_.front();
    core_.pop_front();
    return w;
  }

  void memory(const MicroOp& op) {
    const bool is_load = op.kind == OpKind::Load;
    const Cycles d = memory_cost(op.region, is_load ? soc::Access::Read : soc::Access::Write);
    const Address ea = plan_.address(op);
    const OpcodeLabel opcode = op.opcode();
    emit(opcode, op.semantic, d, slot(op.semantic), is_load ? "lw" : "sw", op.region, ea);
    const Cycles done = t_;
    switch (op.role) {
      case DataRole::None: break;
      case DataRole::DataLoad: {
        const std::size_t offset = 4 * input_words_++;
        if (offset >= input_.size()) throw ModelViolation("driver: payload load past the input");
        core_.push_back(word_of(input_, offset));
        break;
      }
      case DataRole::KeyLoad: {
        const std::size_t offset = 4 * key_words_++;
        const crypto::Bytes& key_iv = key_material();
        if (offset >= key_iv.size()) throw ModelViolation("driver: key load past the key material");
        core_.push_back(word_of(key_iv, offset));
        break;
      }
      case DataRole::FifoWrite: engine_.write_fifo(pop_core(), done); break;
      case DataRole::KeyWrite: engine_.write_key(pop_core(), done); break;
      case DataRole::FifoRead: core_.push_back(engine_.read_word(done)); break;
      case DataRole::ResultStore: append(result_.output, pop_core()); break;
      case DataRole::Start: engine_.start(done); break;
      case DataRole::Finish: engine_.finish(done); break;
    }
  }

  const crypto::Bytes& key_material() {
    if (key_iv_.empty()) {
      key_iv_ = program_.key;
      key_iv_.insert(key_iv_.end(), program_.iv.begin(), program_.iv.end());
    }
    return key_iv_;
  }

  // The loop exits one iteration after the later of entry and engine
  // readiness. Iterations are whole; the sub-iteration remainder idles in the
  // final branch, which keeps total time monotone in every latency.
  void poll(const MicroOp& op) {
    const Address pc = slot(op.semantic);
    slot(op.semantic);
    slot(op.semantic);
    const Address status = plan_.address(op);
    const Cycles entry = t_;
    Cycles ready_at = entry;
    while (!engine_.ready(op.poll, ready_at)) {
      auto next = engine_.next_event(ready_at);
      if (!next) throw ModelViolation(engine_.name() + ": poll can never succeed");
      ready_at = std::max(*next, ready_at + 1);
    }
    Cycles wait = ready_at - entry;
    for (std::uint64_t iter = 0;; ++iter) {
      if (iter >= kMaxPollIterations)
        throw ModelViolation(engine_.name() + ": poll exceeded " +
                             std::to_string(kMaxPollIterations) + " iterations");
      ++result_.poll_iterations;
      const Cycles d = memory_cost(RegionKind::MmioStatus, soc::Access::Read);
      emit(OpcodeLabel::MemRot, op.semantic, d, pc, "lw", RegionKind::MmioStatus, status);
      emit(OpcodeLabel::Alu, op.semantic, config_.alu_cycles, pc + 4, "andi");
      const Cycles next = soc::access_latency(config_.latency, RegionKind::MmioStatus,
                                              soc::Access::Read, true) +
                          config_.alu_cycles + config_.ctl_cycles;
      if (wait < next) {
        emit(OpcodeLabel::Ctl, op.semantic, config_.ctl_cycles + wait, pc + 8, "beqz");
        if (op.taken) post_branch_ = true;
        break;
      }
      emit(OpcodeLabel::Ctl, op.semantic, config_.ctl_cycles, pc + 8, "beqz");
      post_branch_ = true;
      wait -= next;
    }
  }

  const DriverProgram& program_;
  const soc::SocConfig& config_;
  crypto::ByteView input_;
  Engine& engine_;
  AddressPlan plan_;
  SimResult result_;
  Cycles t_ = 0;
  bool post_branch_ = false;
  std::deque<Word> core_;
  std::size_t input_words_ = 0;
  std::size_t key_words_ = 0;
  crypto::Bytes key_iv_;
  std::array<std::uint64_t, kSemanticLabels> slots_{};
};

const soc::AcceleratorSpec& require_accelerator(const soc::SocConfig& config,
                                                const DriverProgram& program,
                                                soc::EngineKind kind) {
  const soc::AcceleratorSpec* spec = config.find_accelerator(program.accelerator);
  if (!spec) throw ValidationError("config has no accelerator named '" + program.accelerator + "'");
  if (spec->kind != kind)
    throw ValidationError("accelerator '" + spec->name + "' is a " +
                          std::string(soc::to_string(spec->kind)) + " engine, " +
                          std::string(drivers::to_string(program.workload)) + " needs " +
                          std::string(soc::to_string(kind)));
  return *spec;
}

void check_input(const DriverProgram& program, crypto::ByteView input) {
  if (input.size() != program.payload_bytes)
    throw ValidationError("input is " + std::to_string(input.size()) + " bytes, program expects " +
                          std::to_string(program.payload_bytes));
}

}  // namespace

SimResult run(const DriverProgram& program, const soc::SocConfig& config, crypto::ByteView input,
              bool emit_trace) {
  if (drivers::is_rsa(program.workload))
    throw ValidationError("big-number job programs run through run_otbn");
  check_input(program, input);
  std::unique_ptr<Engine> engine;
  if (drivers::is_hash(program.workload)) {
    const auto& spec = require_accelerator(config, program, soc::EngineKind::Hash);
    engine = std::make_unique<HashEngine>(spec, program.workload == Workload::Hmac);
  } else {
    const auto& spec = require_accelerator(config, program, soc::EngineKind::BlockCipher);
    engine = std::make_unique<CipherEngine>(spec, program.direction);
  }
  return Machine(program, config, input, *engine, emit_trace).execute();
}

SimResult run_otbn(const DriverProgram& program, const soc::SocConfig& config,
                   const crypto::RsaParams& params, crypto::ByteView input, bool emit_trace,
                   std::optional<Cycles> job_cost_override) {
  if (!drivers::is_rsa(program.workload))
    throw ValidationError("run_otbn expects an rsa512 or rsa1024 program");
  crypto::validate(params);
  if (params.key_bits != drivers::rsa_key_bits(program.workload))
    throw ValidationError("rsa key is " + std::to_string(params.key_bits) + " bits, program expects " +
                          std::to_string(drivers::rsa_key_bits(program.workload)));
  check_input(program, input);
  const auto& spec = require_accelerator(config, program, soc::EngineKind::Job);
  const std::string operation =
      program.direction == drivers::Direction::Decrypt ? "rsa_decrypt" : "rsa_encrypt";
  Cycles cost = 0;
  if (job_cost_override) {
    cost = *job_cost_override;
  } else {
    auto c = spec.job_cost(operation, params.key_bits);
    if (!c)
      throw ValidationError("accelerator '" + spec.name + "' has no job cost for " + operation + "/" +
                            std::to_string(params.key_bits));
    cost = *c;
  }
  JobEngine engine(spec.name, params, cost);
  return Machine(program, config, input, engine, emit_trace).execute();
}

AttributionReport attribution(const SimResult& result) { return result.report; }

std::vector<trace::RawTraceLine> to_raw(const std::vector<TraceRecord>& records) {
  std::vector<trace::RawTraceLine> out;
  out.reserve(records.size());
  for (const auto& r : records)
    out.push_back(trace::RawTraceLine{r.start_cycle, r.duration, r.pc, r.mnemonic, r.effective_address});
  return out;
}

std::string self_trace(const SimResult& result) {
  if (!result.trace) throw ValidationError("self_trace: the run was not traced");
  return trace::serialize_trace(to_raw(*result.trace));
}

trace::AnnotationSet self_annotations() {
  std::map<std::string, trace::MnemonicClass, std::less<>> classes{
      {"addi", trace::MnemonicClass::Alu},    {"andi", trace::MnemonicClass::Alu},
      {"bne", trace::MnemonicClass::Ctl},     {"beqz", trace::MnemonicClass::Ctl},
      {"lw", trace::MnemonicClass::MemLoad},  {"sw", trace::MnemonicClass::MemStore}};
  std::vector<trace::SemanticRange> ranges;
  for (auto s : kAllSemanticLabels)
    ranges.push_back({semantic_base_pc(s), semantic_base_pc(s) + 0x01000000u, s});
  return trace::AnnotationSet(std::move(classes), std::move(ranges));
}

crypto::Bytes default_input(std::uint64_t bytes) {
  crypto::Bytes out(bytes);
  for (std::uint64_t i = 0; i < bytes; ++i) out[i] = static_cast<std::uint8_t>((i * 131 + 7) & 0xff);
  return out;
}

const RsaKeyPair& builtin_rsa_key(unsigned key_bits) {
  static const RsaKeyPair k512{
      crypto::BigUint::from_hex(
          "a9010113da5f875ddf896dd191c80e566e98a47d82392eca81aa6e6657378ef20b6ada9d11abca66b6e1629a5c6"
          "c3699ac86bc14cb1b0963d6a37ceae25f1073"),
      crypto::BigUint(65537),
      crypto::BigUint::from_hex(
          "9b4257ea1430b49c51d2e037aa14becf3a95327037252f4e4ce6f4bb421ec14b2f6d3f4f1c677590910fdfd2335"
          "83c16d24bbdabb63c7e69363dc5b785927309"),
      512};
  static const RsaKeyPair k1024{
      crypto::BigUint::from_hex(
          "cc17fe23e95c07f5eb429612d67cb0791f6d48f1250022106d9d3d928f76a369bddeed88b65b048d3e0b41127"
          "83aeb3101185de60d149104354b821e251440426d61babba71e9ec7a615b839f89c1465baf6a4d0a8890e3ceb"
          "f840cc9e13bab9b8b4490f0b392a3fd3e9d75cd81583c9031a87d829d23339a9b550c977a030b1"),
      crypto::BigUint(65537),
      crypto::BigUint::from_hex(
          "7009e7c8bd0d798d45b60afe926266da47274e389b1044a2f219b4b8652b42b004bc8177606bfcc6b0bdaade4"
          "1c44e625b708df38150bdff2a66a62a783e72bb49ac1065ade00f843b83848e4a5512070ff750c402f04603b5"
          "9f8cbea5e6d70dacd1702610a88badb2b59a942597a8658827bfe828f5746f7491b0121335cc85"),
      1024};
  if (key_bits == 512) return k512;
  if (key_bits == 1024) return k1024;
  throw ValidationError("rsa: key_bits must be 512 or 1024 (got " + std::to_string(key_bits) + ")");
}

SimResult simulate(Workload workload, std::uint64_t payload_bytes, drivers::Placement placement,
                   const soc::SocConfig& config, const drivers::TemplateSet& templates,
                   bool emit_trace, std::optional<drivers::Direction> direction) {
  const auto input = default_input(payload_bytes);
  if (drivers::is_rsa(workload)) {
    const auto dir = direction.value_or(drivers::Direction::Decrypt);
    auto program = drivers::generate(workload, payload_bytes, placement, templates, dir);
    const auto& key = builtin_rsa_key(drivers::rsa_key_bits(workload));
    return run_otbn(program, config,
                    dir == drivers::Direction::Decrypt ? key.decrypt_params() : key.encrypt_params(),
                    input, emit_trace);
  }
  auto program = drivers::generate(workload, payload_bytes, placement, templates,
                                   direction.value_or(drivers::Direction::Encrypt));
  return run(program, config, input, emit_trace);
}

}  // namespace secacc::sim
