#include "secacc/trace.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include "secacc/errors.hpp"

namespace secacc::trace {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 15> kMemoryMnemonics = {
    "lb", "lh", "lw", "ld", "lbu", "lhu", "lwu", "sb", "sh", "sw", "sd",
    "c.lw", "c.sw", "c.lwsp", "c.swsp"};

[[noreturn]] void line_error(std::size_t line_no, const std::string& why) {
  throw ValidationError("trace line " + std::to_string(line_no) + ": " + why);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

Cycles parse_dec(std::string_view text, std::size_t line_no, std::string_view field) {
  Cycles value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 10);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    line_error(line_no, "bad " + std::string(field) + " '" + std::string(text) + "'");
  return value;
}

Address parse_hex(std::string_view text, std::size_t line_no, std::string_view field) {
  if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
    line_error(line_no, std::string(field) + " must be 0x-prefixed hex (got '" +
                            std::string(text) + "')");
  Address value = 0;
  auto digits = text.substr(2);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, 16);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    line_error(line_no, "bad " + std::string(field) + " '" + std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(pos)));
      break;
    }
    out.push_back(trim(line.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

constexpr std::array<std::string_view, 4> kClassNames = {"ALU", "CTL", "MEM-LOAD", "MEM-STORE"};

}  // namespace

bool is_memory_mnemonic(std::string_view mnemonic) {
  return std::find(kMemoryMnemonics.begin(), kMemoryMnemonics.end(), mnemonic) !=
         kMemoryMnemonics.end();
}

std::vector<RawTraceLine> parse_trace(std::string_view document) {
  std::vector<RawTraceLine> out;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < document.size()) {
    auto nl = document.find('\n', pos);
    std::string_view line =
        document.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? document.size() : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kTraceHeader)
        line_error(line_no, "expected header '" + std::string(kTraceHeader) + "'");
      header_seen = true;
      continue;
    }
    auto fields = split(line);
    if (fields.size() != 5)
      line_error(line_no, "expected 5 fields, found " + std::to_string(fields.size()));
    RawTraceLine rec;
    rec.start_cycle = parse_dec(fields[0], line_no, "start_cycle");
    rec.duration = parse_dec(fields[1], line_no, "duration");
    if (rec.duration < 1) line_error(line_no, "duration must be >= 1");
    rec.pc = parse_hex(fields[2], line_no, "pc");
    if (fields[3].empty()) line_error(line_no, "empty mnemonic");
    rec.mnemonic = std::string(fields[3]);
    if (!fields[4].empty()) rec.effective_address = parse_hex(fields[4], line_no, "effective_address");
    if (!rec.effective_address && is_memory_mnemonic(rec.mnemonic))
      line_error(line_no, "memory op '" + rec.mnemonic + "' without effective_address");
    if (!out.empty() && rec.start_cycle < out.back().start_cycle)
      line_error(line_no, "start_cycle " + std::to_string(rec.start_cycle) +
                              " goes backwards (previous " +
                              std::to_string(out.back().start_cycle) + ")");
    out.push_back(std::move(rec));
  }
  if (!header_seen) throw ValidationError("trace: missing header line");
  return out;
}

std::string serialize_trace(std::span<const RawTraceLine> lines) {
  std::ostringstream os;
  os << kTraceHeader << '\n';
  for (const auto& l : lines) {
    os << l.start_cycle << ',' << l.duration << ',' << soc::format_address(l.pc) << ','
       << l.mnemonic << ',';
    if (l.effective_address) os << soc::format_address(*l.effective_address);
    os << '\n';
  }
  return os.str();
}

std::string_view to_string(MnemonicClass c) { return kClassNames[static_cast<std::size_t>(c)]; }

std::optional<MnemonicClass> parse_mnemonic_class(std::string_view text) {
  for (std::size_t i = 0; i < kClassNames.size(); ++i)
    if (kClassNames[i] == text) return static_cast<MnemonicClass>(i);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Annotations

AnnotationSet::AnnotationSet(std::map<std::string, MnemonicClass, std::less<>> mnemonic_classes,
                             std::vector<SemanticRange> semantic_ranges)
    : classes_(std::move(mnemonic_classes)), ranges_(std::move(semantic_ranges)) {
  std::sort(ranges_.begin(), ranges_.end(),
            [](const SemanticRange& a, const SemanticRange& b) { return a.start < b.start; });
  for (std::size_t i = 0; i < ranges_.size(); ++i) {
    if (ranges_[i].start >= ranges_[i].end)
      throw ValidationError("annotations: empty semantic range at " +
                            soc::format_address(ranges_[i].start));
    if (i > 0 && ranges_[i].start < ranges_[i - 1].end)
      throw ValidationError("annotations: semantic ranges starting at " +
                            soc::format_address(ranges_[i - 1].start) + " and " +
                            soc::format_address(ranges_[i].start) + " overlap");
  }
}

std::optional<MnemonicClass> AnnotationSet::classify(std::string_view mnemonic) const {
  auto it = classes_.find(mnemonic);
  if (it == classes_.end()) return std::nullopt;
  return it->second;
}

std::optional<SemanticLabel> AnnotationSet::semantic_at(Address pc) const {
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), pc,
                             [](Address a, const SemanticRange& r) { return a < r.start; });
  if (it == ranges_.begin()) return std::nullopt;
  --it;
  if (pc >= it->start && pc < it->end) return it->label;
  return std::nullopt;
}

AnnotationSet load_annotations(const json& doc) {
  if (!doc.is_object()) throw ValidationError("annotations: top level must be an object");
  for (const auto& [key, _] : doc.items())
    if (key != "mnemonic_classes" && key != "semantic_ranges")
      throw ValidationError("annotations: unknown key '" + key + "'");
  auto classes_it = doc.find("mnemonic_classes");
  auto ranges_it = doc.find("semantic_ranges");
  if (classes_it == doc.end() || !classes_it->is_object())
    throw ValidationError("annotations.mnemonic_classes: expected an object");
  if (ranges_it == doc.end() || !ranges_it->is_array())
    throw ValidationError("annotations.semantic_ranges: expected an array");

  std::map<std::string, MnemonicClass, std::less<>> classes;
  for (const auto& [mnemonic, value] : classes_it->items()) {
    if (!value.is_string())
      throw ValidationError("annotations.mnemonic_classes." + mnemonic + ": expected a string");
    auto cls = parse_mnemonic_class(value.get<std::string>());
    if (!cls)
      throw ValidationError("annotations.mnemonic_classes." + mnemonic + ": unknown class '" +
                            value.get<std::string>() + "'");
    classes.emplace(mnemonic, *cls);
  }
  std::vector<SemanticRange> ranges;
  for (std::size_t i = 0; i < ranges_it->size(); ++i) {
    const auto& r = (*ranges_it)[i];
    const std::string where = "annotations.semantic_ranges[" + std::to_string(i) + "]";
    if (!r.is_object() || !r.contains("start") || !r.contains("end") || !r.contains("label"))
      throw ValidationError(where + ": expected {start,end,label}");
    SemanticRange range;
    range.start = soc::parse_address(r["start"].get<std::string>(), where + ".start");
    range.end = soc::parse_address(r["end"].get<std::string>(), where + ".end");
    auto label = parse_semantic_label(r["label"].get<std::string>());
    if (!label) throw ValidationError(where + ".label: unknown semantic label");
    range.label = *label;
    ranges.push_back(range);
  }
  return AnnotationSet(std::move(classes), std::move(ranges));
}

AnnotationSet load_annotations(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("annotations: malformed JSON: ") + e.what());
  }
  return load_annotations(doc);
}

json to_json(const AnnotationSet& a) {
  json classes = json::object();
  for (const auto& [m, c] : a.mnemonic_classes()) classes[m] = to_string(c);
  json ranges = json::array();
  for (const auto& r : a.semantic_ranges())
    ranges.push_back({{"start", soc::format_address(r.start)},
                      {"end", soc::format_address(r.end)},
                      {"label", to_string(r.label)}});
  return json{{"mnemonic_classes", std::move(classes)}, {"semantic_ranges", std::move(ranges)}};
}

// ---------------------------------------------------------------------------

std::vector<LabeledRecord> annotate(std::span<const RawTraceLine> records,
                                    const AnnotationSet& annotations, const soc::AddressMap& map) {
  std::vector<std::string> unknown;
  for (const auto& rec : records)
    if (!annotations.classify(rec.mnemonic) &&
        std::find(unknown.begin(), unknown.end(), rec.mnemonic) == unknown.end())
      unknown.push_back(rec.mnemonic);
  if (!unknown.empty()) {
    std::string list;
    for (const auto& m : unknown) list += (list.empty() ? "" : ", ") + m;
    throw ValidationError("annotate: unknown mnemonics: " + list);
  }

  std::vector<LabeledRecord> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const std::string where = "annotate: record " + std::to_string(i + 1) + " (pc " +
                              soc::format_address(rec.pc) + ")";
    LabeledRecord lr;
    lr.line = rec;
    auto sem = annotations.semantic_at(rec.pc);
    if (!sem) throw ValidationError(where + ": pc outside every semantic range");
    lr.semantic = *sem;
    const MnemonicClass cls = *annotations.classify(rec.mnemonic);
    switch (cls) {
      case MnemonicClass::Alu:
      case MnemonicClass::Ctl:
        if (rec.effective_address)
          throw ValidationError(where + ": non-memory op '" + rec.mnemonic + "' has an address");
        lr.opcode = cls == MnemonicClass::Alu ? OpcodeLabel::Alu : OpcodeLabel::Ctl;
        break;
      case MnemonicClass::MemLoad:
      case MnemonicClass::MemStore: {
        if (!rec.effective_address)
          throw ValidationError(where + ": memory op '" + rec.mnemonic + "' without address");
        auto kind = map.classify(*rec.effective_address);
        if (!kind)
          throw ValidationError(where + ": access to unmapped address " +
                                soc::format_address(*rec.effective_address));
        lr.region = *kind;
        lr.opcode = soc::is_rot_side(*kind) ? OpcodeLabel::MemRot : OpcodeLabel::MemRam;
        break;
      }
    }
    out.push_back(std::move(lr));
  }
  return out;
}

void RegionStats::add(Cycles duration) {
  if (count == 0) {
    min = max = duration;
  } else {
    min = std::min(min, duration);
    max = std::max(max, duration);
  }
  sum += duration;
  ++count;
}

void RegionStats::merge(const RegionStats& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  min = std::min(min, other.min);
  max = std::max(max, other.max);
  sum += other.sum;
  count += other.count;
}

RegionStats LatencyStats::rot() const {
  RegionStats s;
  for (const auto& [kind, stats] : per_region)
    if (soc::is_rot_side(kind)) s.merge(stats);
  return s;
}

RegionStats LatencyStats::ram() const {
  RegionStats s;
  if (auto it = per_region.find(RegionKind::SystemRam); it != per_region.end()) s = it->second;
  return s;
}

LatencyStats latency_stats(std::span<const LabeledRecord> records) {
  LatencyStats stats;
  for (const auto& r : records)
    if (r.region) stats.per_region[*r.region].add(r.line.duration);
  if (stats.per_region.empty()) throw ValidationError("latency_stats: no memory records");
  return stats;
}

AttributionReport attribute(std::span<const LabeledRecord> records) {
  AttributionReport report;
  for (const auto& r : records) report.add(r.opcode, r.semantic, r.line.duration);
  return report;
}

}  // namespace secacc::trace
