#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "secacc/errors.hpp"

namespace secacc::render {

using nlohmann::json;

std::optional<Format> parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "table") return Format::Table;
  if (text == "svg") return Format::Svg;
  if (text == "json") return Format::Json;
  return std::nullopt;
}

std::string fixed2(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", round2(value));
  return buf;
}

double round2(double value) {
  double r = std::round(value * 100.0) / 100.0;
  return r == 0.0 ? 0.0 : r;  // no "-0.00"
}

namespace {

// Leading text columns left-aligned, the rest right-aligned. Group titles
// span columns without affecting their width.
class TextTable {
 public:
  explicit TextTable(std::size_t left_columns = 1) : left_(left_columns) {}
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  void rule() { rows_.emplace_back(); }
  void group(std::size_t column, std::string title) { groups_.emplace_back(column, std::move(title)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    std::vector<std::size_t> offset(width.size() + 1, 0);
    for (std::size_t i = 0; i < width.size(); ++i) offset[i + 1] = offset[i] + width[i] + 2;
    const std::size_t total = offset.back() > 2 ? offset.back() - 2 : 0;
    std::ostringstream os;
    if (!groups_.empty()) {
      std::string line;
      for (const auto& [col, title] : groups_) {
        const std::size_t at = col < offset.size() ? offset[col] : total;
        if (line.size() < at) line.append(at - line.size(), ' ');
        else if (!line.empty()) line += ' ';
        line += title;
      }
      os << line << '\n';
    }
    for (const auto& r : rows_) {
      if (r.empty()) {
        os << std::string(total, '-') << '\n';
        continue;
      }
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        const std::size_t pad = width[i] - r[i].size();
        if (i < left_) line += r[i] + std::string(pad, ' ');
        else line += std::string(pad, ' ') + r[i];
        if (i + 1 < r.size()) line += "  ";
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      os << line << '\n';
    }
    return os.str();
  }

 private:
  std::size_t left_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::pair<std::size_t, std::string>> groups_;
};

constexpr std::array<const char*, kOpcodeLabels> kJsonOpcodes = {"ALU", "CTL", "MemRot", "MemRam"};
constexpr std::array<const char*, kOpcodeLabels> kCsvOpcodes = {"alu", "ctl", "mem_rot", "mem_ram"};

std::string count_cell(std::uint64_t v) { return v == 0 ? "--" : std::to_string(v); }
std::string pct_cell(std::uint64_t cycles, double pct) { return cycles == 0 ? "--" : fixed2(pct); }

[[noreturn]] void no_svg(std::string_view what) {
  throw ValidationError("svg output is only available for sweep curves, not " + std::string(what));
}

std::string csv_attribution(const AttributionReport& r) {
  std::ostringstream os;
  os << "phase";
  for (auto c : kCsvOpcodes) os << ',' << c;
  os << ",total";
  for (auto c : kCsvOpcodes) os << ',' << c << "_pct";
  os << ",total_pct,cycles\n";
  if (r.empty()) return os.str();
  const auto active = r.active_rows();
  for (auto sem : kAllSemanticLabels) {
    if (!active[index_of(sem)]) continue;
    os << to_string(sem);
    for (auto op : kAllOpcodeLabels) os << ',' << r.count(op, sem);
    os << ',' << r.count_row(sem);
    for (auto op : kAllOpcodeLabels) os << ',' << fixed2(r.percent(op, sem));
    os << ',' << fixed2(r.row_percent(sem)) << ',' << r.cycle_row(sem) << '\n';
  }
  os << "TOT";
  for (auto op : kAllOpcodeLabels) os << ',' << r.count_column(op);
  os << ',' << r.total_count();
  for (auto op : kAllOpcodeLabels) os << ',' << fixed2(r.column_percent(op));
  os << ',' << fixed2(100.0) << ',' << r.total_cycles << '\n';
  return os.str();
}

std::string table_attribution(const AttributionReport& r) {
  TextTable t;
  t.group(1, "Instructions [#]");
  t.group(6, "Cycles [%]");
  t.row({"Phase", "ALU", "CTL", "MemRot", "MemRam", "TOT", "ALU", "CTL", "MemRot", "MemRam", "TOT"});
  t.rule();
  const auto active = r.active_rows();
  for (auto sem : kAllSemanticLabels) {
    if (!active[index_of(sem)]) continue;
    std::vector<std::string> row{std::string(to_string(sem))};
    for (auto op : kAllOpcodeLabels) row.push_back(count_cell(r.count(op, sem)));
    row.push_back(std::to_string(r.count_row(sem)));
    for (auto op : kAllOpcodeLabels) row.push_back(pct_cell(r.cycle(op, sem), r.percent(op, sem)));
    row.push_back(fixed2(r.row_percent(sem)));
    t.row(std::move(row));
  }
  t.rule();
  std::vector<std::string> tot{"TOT"};
  for (auto op : kAllOpcodeLabels) tot.push_back(count_cell(r.count_column(op)));
  tot.push_back(std::to_string(r.total_count()));
  for (auto op : kAllOpcodeLabels) tot.push_back(pct_cell(r.cycle_column(op), r.column_percent(op)));
  tot.push_back(std::to_string(r.total_cycles));
  t.row(std::move(tot));
  return t.str();
}

}  // namespace

json attribution_json(const AttributionReport& r) {
  json rows = json::array();
  const auto active = r.active_rows();
  for (auto sem : kAllSemanticLabels) {
    if (!active[index_of(sem)]) continue;
    json counts = json::object(), cycles = json::object(), percent = json::object();
    for (auto op : kAllOpcodeLabels) {
      counts[kJsonOpcodes[index_of(op)]] = r.count(op, sem);
      cycles[kJsonOpcodes[index_of(op)]] = r.cycle(op, sem);
      percent[kJsonOpcodes[index_of(op)]] = round2(r.percent(op, sem));
    }
    counts["TOT"] = r.count_row(sem);
    cycles["TOT"] = r.cycle_row(sem);
    percent["TOT"] = round2(r.row_percent(sem));
    rows.push_back({{"phase", to_string(sem)}, {"counts", counts}, {"cycles", cycles},
                    {"percent", percent}});
  }
  json totals = json::object(), percent = json::object();
  for (auto op : kAllOpcodeLabels) {
    totals[kJsonOpcodes[index_of(op)]] = r.count_column(op);
    percent[kJsonOpcodes[index_of(op)]] = round2(r.column_percent(op));
  }
  totals["TOT"] = r.total_count();
  return json{{"rows", rows},
              {"totals", {{"counts", totals}, {"percent", percent}}},
              {"total_cycles", r.total_cycles}};
}

AttributionReport attribution_from_json(const json& doc) {
  AttributionReport r;
  try {
    for (const auto& row : doc.at("rows")) {
      auto sem = parse_semantic_label(row.at("phase").get<std::string>());
      if (!sem) throw ValidationError("report: unknown phase '" + row.at("phase").get<std::string>() + "'");
      for (auto op : kAllOpcodeLabels) {
        r.counts[index_of(op)][index_of(*sem)] = row.at("counts").at(kJsonOpcodes[index_of(op)]).get<std::uint64_t>();
        r.cycles[index_of(op)][index_of(*sem)] = row.at("cycles").at(kJsonOpcodes[index_of(op)]).get<std::uint64_t>();
      }
    }
    r.total_cycles = doc.at("total_cycles").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("report: malformed attribution: ") + e.what());
  }
  return r;
}

std::string render_attribution(const AttributionReport& report, Format format) {
  switch (format) {
    case Format::Csv: return csv_attribution(report);
    case Format::Table: return table_attribution(report);
    case Format::Json: return attribution_json(report).dump(2) + "\n";
    case Format::Svg: no_svg("attribution reports");
  }
  return {};
}

// ---------------------------------------------------------------------------
// Simulation

json to_json(const SimulationDoc& d) {
  json j{{"kind", "simulation"},
         {"workload", d.workload},
         {"placement", d.placement},
         {"direction", d.direction},
         {"payload_bytes", d.payload_bytes},
         {"total_cycles", d.total_cycles},
         {"cycles_per_byte", round2(d.cycles_per_byte)},
         {"attribution", attribution_json(d.report)}};
  if (d.theoretical_cpb) j["theoretical_cycles_per_byte"] = round2(*d.theoretical_cpb);
  if (d.utilization) j["utilization_pct"] = round2(*d.utilization * 100.0);
  if (d.speedup) j["speedup"] = round2(*d.speedup);
  return j;
}

std::string render(const SimulationDoc& d, Format format) {
  switch (format) {
    case Format::Json: return to_json(d).dump(2) + "\n";
    case Format::Svg: no_svg("a single simulation");
    case Format::Csv: {
      std::ostringstream os;
      os << "workload,placement,direction,payload,total_cycles,cycles_per_byte,theoretical_cpb,"
            "utilization_pct,speedup\n"
         << d.workload << ',' << d.placement << ',' << d.direction << ',' << d.payload_bytes << ','
         << d.total_cycles << ',' << fixed2(d.cycles_per_byte) << ','
         << (d.theoretical_cpb ? fixed2(*d.theoretical_cpb) : "") << ','
         << (d.utilization ? fixed2(*d.utilization * 100.0) : "") << ','
         << (d.speedup ? fixed2(*d.speedup) : "") << "\n\n"
         << csv_attribution(d.report);
      return os.str();
    }
    case Format::Table: {
      TextTable t;
      t.row({"workload", d.workload});
      t.row({"placement", d.placement});
      if (!d.direction.empty()) t.row({"direction", d.direction});
      t.row({"payload [B]", std::to_string(d.payload_bytes)});
      t.row({"total cycles", std::to_string(d.total_cycles)});
      t.row({"cycles/byte", fixed2(d.cycles_per_byte)});
      if (d.theoretical_cpb) t.row({"theoretical cycles/byte", fixed2(*d.theoretical_cpb)});
      if (d.utilization) t.row({"utilization [%]", fixed2(*d.utilization * 100.0)});
      if (d.speedup) t.row({"speedup vs baseline [x]", fixed2(*d.speedup)});
      return t.str() + "\n" + table_attribution(d.report);
    }
  }
  return {};
}

namespace {

SimulationDoc simulation_from_json(const json& j) {
  SimulationDoc d;
  d.workload = j.at("workload").get<std::string>();
  d.placement = j.at("placement").get<std::string>();
  d.direction = j.value("direction", "");
  d.payload_bytes = j.at("payload_bytes").get<std::uint64_t>();
  d.total_cycles = j.at("total_cycles").get<std::uint64_t>();
  d.cycles_per_byte = j.at("cycles_per_byte").get<double>();
  if (j.contains("theoretical_cycles_per_byte"))
    d.theoretical_cpb = j["theoretical_cycles_per_byte"].get<double>();
  if (j.contains("utilization_pct")) d.utilization = j["utilization_pct"].get<double>() / 100.0;
  if (j.contains("speedup")) d.speedup = j["speedup"].get<double>();
  d.report = attribution_from_json(j.at("attribution"));
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sweep

json to_json(const SweepDoc& d) {
  json curves = json::array();
  for (const auto& c : d.curves) {
    json points = json::array();
    for (const auto& p : c.points)
      points.push_back({{"payload", p.payload_bytes},
                        {"total_cycles", p.total_cycles},
                        {"cycles_per_byte", round2(p.cycles_per_byte)}});
    curves.push_back({{"workload", drivers::to_string(c.workload)},
                      {"placement", drivers::to_string(c.placement)},
                      {"points", points}});
  }
  json refs = json::array();
  for (const auto& r : d.references)
    refs.push_back({{"label", r.label}, {"kind", r.kind}, {"cycles_per_byte", round2(r.cycles_per_byte)}});
  return json{{"kind", "sweep"}, {"curves", curves}, {"references", refs}};
}

namespace {

SweepDoc sweep_from_json(const json& j) {
  SweepDoc d;
  for (const auto& c : j.at("curves")) {
    analytics::SweepCurve curve;
    auto w = drivers::parse_workload(c.at("workload").get<std::string>());
    auto p = drivers::parse_placement(c.at("placement").get<std::string>());
    if (!w || !p) throw ValidationError("report: unknown workload or placement in sweep");
    curve.workload = *w;
    curve.placement = *p;
    for (const auto& pt : c.at("points"))
      curve.points.push_back({pt.at("payload").get<std::uint64_t>(),
                              pt.value("total_cycles", std::uint64_t{0}),
                              pt.at("cycles_per_byte").get<double>()});
    d.curves.push_back(std::move(curve));
  }
  if (j.contains("references"))
    for (const auto& r : j["references"])
      d.references.push_back({r.at("label").get<std::string>(), r.at("kind").get<std::string>(),
                              r.at("cycles_per_byte").get<double>()});
  return d;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}

std::string svg_sweep(const SweepDoc& d) {
  if (d.curves.empty() || std::all_of(d.curves.begin(), d.curves.end(),
                                      [](const auto& c) { return c.points.empty(); }))
    throw ValidationError("svg: no sweep curves to plot");
  constexpr double W = 800, H = 480, L = 70, R = 190, T = 30, B = 60;
  double xmin = 1e300, xmax = 0, ymax = 0;
  for (const auto& c : d.curves)
    for (const auto& p : c.points) {
      xmin = std::min(xmin, static_cast<double>(p.payload_bytes));
      xmax = std::max(xmax, static_cast<double>(p.payload_bytes));
      ymax = std::max(ymax, p.cycles_per_byte);
    }
  for (const auto& r : d.references) ymax = std::max(ymax, r.cycles_per_byte);
  if (xmin == xmax) {
    xmin /= 2;
    xmax *= 2;
  }
  ymax = ymax > 0 ? ymax * 1.1 : 1.0;
  const double lx0 = std::log2(xmin), lx1 = std::log2(xmax);
  auto X = [&](double v) { return L + (std::log2(v) - lx0) / (lx1 - lx0) * (W - L - R); };
  auto Y = [&](double v) { return H - B - v / ymax * (H - T - B); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return std::string(buf);
  };
  static constexpr std::array<const char*, 8> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                         "#9467bd", "#8c564b", "#e377c2", "#17becf"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line class=\"axis\" x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\""
     << H - B << "\" stroke=\"black\"/>\n";
  os << "<line class=\"axis\" x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  for (double v = std::exp2(std::ceil(lx0)); v <= xmax * 1.0000001; v *= 2) {
    os << "<text x=\"" << num(X(v)) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">"
       << static_cast<std::uint64_t>(v) << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double v = ymax * i / 5;
    os << "<text x=\"" << L - 6 << "\" y=\"" << num(Y(v) + 4) << "\" text-anchor=\"end\">" << num(v)
       << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 20
     << "\" text-anchor=\"middle\">payload [B] (log scale)</text>\n";
  os << "<text transform=\"rotate(-90)\" x=\"" << -(T + H - B) / 2 << "\" y=\"18\" "
        "text-anchor=\"middle\">cycles/byte</text>\n";

  double legend_y = T + 10;
  for (std::size_t i = 0; i < d.curves.size(); ++i) {
    const auto& c = d.curves[i];
    const char* color = kColors[i % kColors.size()];
    const std::string name =
        std::string(drivers::to_string(c.workload)) + " " + std::string(drivers::to_string(c.placement));
    os << "<polyline class=\"curve\" data-workload=\"" << drivers::to_string(c.workload)
       << "\" data-placement=\"" << drivers::to_string(c.placement) << "\" fill=\"none\" stroke=\""
       << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      if (k) os << ' ';
      os << num(X(static_cast<double>(c.points[k].payload_bytes))) << ','
         << num(Y(c.points[k].cycles_per_byte));
    }
    os << "\"/>\n";
    os << "<line x1=\"" << W - R + 15 << "\" y1=\"" << legend_y << "\" x2=\"" << W - R + 35
       << "\" y2=\"" << legend_y << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - R + 40 << "\" y=\"" << legend_y + 4 << "\">" << xml_escape(name)
       << "</text>\n";
    legend_y += 16;
  }
  for (const auto& r : d.references) {
    const bool bound = r.kind == "bound";
    os << "<line class=\"reference " << xml_escape(r.kind) << "\" x1=\"" << L << "\" y1=\""
       << num(Y(r.cycles_per_byte)) << "\" x2=\"" << W - R << "\" y2=\"" << num(Y(r.cycles_per_byte))
       << "\" stroke=\"" << (bound ? "#555555" : "#999999") << "\" stroke-dasharray=\""
       << (bound ? "6,3" : "2,3") << "\"/>\n";
    os << "<text x=\"" << W - R + 4 << "\" y=\"" << num(Y(r.cycles_per_byte) + 4) << "\" fill=\"#555555\">"
       << xml_escape(r.label) << " " << fixed2(r.cycles_per_byte) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string render(const SweepDoc& d, Format format) {
  switch (format) {
    case Format::Json: return to_json(d).dump(2) + "\n";
    case Format::Svg: return svg_sweep(d);
    case Format::Csv: {
      std::ostringstream os;
      os << "workload,placement,payload,cycles_per_byte\n";
      for (const auto& c : d.curves)
        for (const auto& p : c.points)
          os << drivers::to_string(c.workload) << ',' << drivers::to_string(c.placement) << ','
             << p.payload_bytes << ',' << fixed2(p.cycles_per_byte) << '\n';
      return os.str();
    }
    case Format::Table: {
      TextTable t(2);
      t.row({"workload", "placement", "payload [B]", "total cycles", "cycles/byte"});
      t.rule();
      for (const auto& c : d.curves)
        for (const auto& p : c.points)
          t.row({std::string(drivers::to_string(c.workload)),
                 std::string(drivers::to_string(c.placement)), std::to_string(p.payload_bytes),
                 std::to_string(p.total_cycles), fixed2(p.cycles_per_byte)});
      return t.str();
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Bounds

json to_json(const BoundDoc& d) {
  json rows = json::array();
  for (const auto& r : d.rows)
    rows.push_back({{"accelerator", r.accelerator},
                    {"placement", r.placement},
                    {"accesses",
                     {{"accel_reads", r.budget.accel_reads},
                      {"accel_writes", r.budget.accel_writes},
                      {"rot_reads", r.budget.rot_reads},
                      {"rot_writes", r.budget.rot_writes},
                      {"ram_reads", r.budget.ram_reads},
                      {"ram_writes", r.budget.ram_writes}}},
                    {"cycles", {{"accel", r.accel_cycles}, {"rot", r.rot_cycles}, {"ram", r.ram_cycles}}},
                    {"cycles_per_block", r.cycles_per_block},
                    {"block_size", r.block_size},
                    {"cycles_per_byte", round2(r.cycles_per_byte)}});
  json theo = json::array();
  for (const auto& t : d.theoretical)
    theo.push_back({{"accelerator", t.accelerator},
                    {"compute_cycles", t.compute_cycles},
                    {"block_size", t.block_size},
                    {"cycles_per_byte", round2(t.cycles_per_byte)}});
  return json{{"kind", "bound"}, {"bounds", rows}, {"theoretical", theo}};
}

namespace {

BoundDoc bound_from_json(const json& j) {
  BoundDoc d;
  for (const auto& r : j.at("bounds")) {
    BoundRow row;
    row.accelerator = r.at("accelerator").get<std::string>();
    row.placement = r.at("placement").get<std::string>();
    const auto& a = r.at("accesses");
    row.budget = {a.at("accel_reads").get<std::uint64_t>(), a.at("accel_writes").get<std::uint64_t>(),
                  a.at("rot_reads").get<std::uint64_t>(),   a.at("rot_writes").get<std::uint64_t>(),
                  a.at("ram_reads").get<std::uint64_t>(),   a.at("ram_writes").get<std::uint64_t>()};
    row.accel_cycles = r.at("cycles").at("accel").get<std::uint64_t>();
    row.rot_cycles = r.at("cycles").at("rot").get<std::uint64_t>();
    row.ram_cycles = r.at("cycles").at("ram").get<std::uint64_t>();
    row.cycles_per_block = r.at("cycles_per_block").get<std::uint64_t>();
    row.block_size = r.at("block_size").get<std::uint32_t>();
    row.cycles_per_byte = r.at("cycles_per_byte").get<double>();
    d.rows.push_back(std::move(row));
  }
  for (const auto& t : j.at("theoretical"))
    d.theoretical.push_back({t.at("accelerator").get<std::string>(),
                             t.at("compute_cycles").get<std::uint64_t>(),
                             t.at("block_size").get<std::uint32_t>(),
                             t.at("cycles_per_byte").get<double>()});
  return d;
}

}  // namespace

std::string render(const BoundDoc& d, Format format) {
  switch (format) {
    case Format::Json: return to_json(d).dump(2) + "\n";
    case Format::Svg: no_svg("bandwidth bounds");
    case Format::Csv: {
      std::ostringstream os;
      os << "accelerator,placement,accel_accesses,rot_accesses,ram_accesses,accel_cycles,rot_cycles,"
            "ram_cycles,cycles_per_block,block_size,cycles_per_byte\n";
      for (const auto& r : d.rows)
        os << r.accelerator << ',' << r.placement << ','
           << r.budget.accel_reads + r.budget.accel_writes << ','
           << r.budget.rot_reads + r.budget.rot_writes << ','
           << r.budget.ram_reads + r.budget.ram_writes << ',' << r.accel_cycles << ','
           << r.rot_cycles << ',' << r.ram_cycles << ',' << r.cycles_per_block << ','
           << r.block_size << ',' << fixed2(r.cycles_per_byte) << '\n';
      os << "\naccelerator,compute_cycles,block_size,theoretical_cycles_per_byte\n";
      for (const auto& t : d.theoretical)
        os << t.accelerator << ',' << t.compute_cycles << ',' << t.block_size << ','
           << fixed2(t.cycles_per_byte) << '\n';
      return os.str();
    }
    case Format::Table: {
      TextTable t(2);
      t.group(2, "Accesses [#]");
      t.group(5, "Cycles per block");
      t.row({"accelerator", "placement", "Accel", "RoT", "RAM", "Accel", "RoT", "RAM", "TOT",
             "block [B]", "cycles/byte"});
      t.rule();
      for (const auto& r : d.rows)
        t.row({r.accelerator, r.placement, std::to_string(r.budget.accel_reads + r.budget.accel_writes),
               std::to_string(r.budget.rot_reads + r.budget.rot_writes),
               std::to_string(r.budget.ram_reads + r.budget.ram_writes),
               std::to_string(r.accel_cycles), std::to_string(r.rot_cycles),
               std::to_string(r.ram_cycles), std::to_string(r.cycles_per_block),
               std::to_string(r.block_size), fixed2(r.cycles_per_byte)});
      TextTable th;
      th.row({"accelerator", "compute cycles", "block [B]", "theoretical cycles/byte"});
      th.rule();
      for (const auto& x : d.theoretical)
        th.row({x.accelerator, std::to_string(x.compute_cycles), std::to_string(x.block_size),
                fixed2(x.cycles_per_byte)});
      return t.str() + "\n" + th.str();
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Trace analysis

json to_json(const AnalysisDoc& d) {
  json regions = json::object();
  auto stats_json = [](const trace::RegionStats& s) {
    return json{{"count", s.count}, {"min", s.min}, {"max", s.max}, {"sum", s.sum},
                {"mean", round2(s.mean())}};
  };
  for (const auto& [kind, s] : d.latency.per_region)
    regions[std::string(soc::to_string(kind))] = stats_json(s);
  json summary = json::object();
  if (auto rot = d.latency.rot(); rot.count) summary["RoT"] = stats_json(rot);
  if (auto ram = d.latency.ram(); ram.count) summary["RAM"] = stats_json(ram);
  return json{{"kind", "analysis"},
              {"records", d.records},
              {"latency", {{"regions", regions}, {"summary", summary}}},
              {"attribution", attribution_json(d.report)}};
}

namespace {

AnalysisDoc analysis_from_json(const json& j) {
  AnalysisDoc d;
  d.records = j.at("records").get<std::uint64_t>();
  for (const auto& [name, s] : j.at("latency").at("regions").items()) {
    auto kind = soc::parse_region_kind(name);
    if (!kind) throw ValidationError("report: unknown region kind '" + name + "'");
    d.latency.per_region[*kind] = {s.at("min").get<std::uint64_t>(), s.at("max").get<std::uint64_t>(),
                                   s.at("sum").get<std::uint64_t>(), s.at("count").get<std::uint64_t>()};
  }
  d.report = attribution_from_json(j.at("attribution"));
  return d;
}

void stats_row(TextTable& t, const std::string& name, const trace::RegionStats& s) {
  t.row({name, std::to_string(s.count), std::to_string(s.min), std::to_string(s.max), fixed2(s.mean())});
}

}  // namespace

std::string render(const AnalysisDoc& d, Format format) {
  switch (format) {
    case Format::Json: return to_json(d).dump(2) + "\n";
    case Format::Svg: no_svg("trace analyses");
    case Format::Csv: {
      std::ostringstream os;
      os << "region,count,min,max,mean\n";
      for (const auto& [kind, s] : d.latency.per_region)
        os << soc::to_string(kind) << ',' << s.count << ',' << s.min << ',' << s.max << ','
           << fixed2(s.mean()) << '\n';
      if (auto rot = d.latency.rot(); rot.count)
        os << "RoT," << rot.count << ',' << rot.min << ',' << rot.max << ',' << fixed2(rot.mean()) << '\n';
      if (auto ram = d.latency.ram(); ram.count)
        os << "RAM," << ram.count << ',' << ram.min << ',' << ram.max << ',' << fixed2(ram.mean()) << '\n';
      os << '\n' << csv_attribution(d.report);
      return os.str();
    }
    case Format::Table: {
      TextTable t;
      t.row({"region", "accesses", "min", "max", "avg"});
      t.rule();
      for (const auto& [kind, s] : d.latency.per_region) stats_row(t, std::string(soc::to_string(kind)), s);
      t.rule();
      if (auto rot = d.latency.rot(); rot.count) stats_row(t, "RoT", rot);
      if (auto ram = d.latency.ram(); ram.count) stats_row(t, "RAM", ram);
      return "records: " + std::to_string(d.records) + "\n\n" + t.str() + "\n" +
             table_attribution(d.report);
    }
  }
  return {};
}

std::string rerender(const json& doc, Format format) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw ValidationError("report: input is not a secacc JSON document (missing \"kind\")");
  const auto kind = doc["kind"].get<std::string>();
  try {
    if (kind == "simulation") return render(simulation_from_json(doc), format);
    if (kind == "sweep") return render(sweep_from_json(doc), format);
    if (kind == "bound") return render(bound_from_json(doc), format);
    if (kind == "analysis") return render(analysis_from_json(doc), format);
  } catch (const json::exception& e) {
    throw ValidationError("report: malformed " + kind + " document: " + e.what());
  }
  throw ValidationError("report: unknown document kind '" + kind + "'");
}

}  // namespace secacc::render
