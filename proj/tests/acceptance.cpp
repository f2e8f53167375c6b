#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/integer/mod_inverse.hpp>
#include <boost/multiprecision/miller_rabin.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "commands.hpp"
#include "properties.hpp"
#include "secacc/analytics.hpp"
#include "secacc/setup.hpp"
#include "secacc/sim.hpp"
#include "secacc/trace.hpp"
#include "support.hpp"

namespace {

using namespace secacc;
using drivers::Placement;
using drivers::Workload;
using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os << what << ": " << got << " vs " << want << " +/- " << tol;
    expect(std::abs(got - want) <= tol, os.str());
  }
  void rel(double got, double want, double frac, const std::string& what) { near(got, want, frac * want, what); }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const Setup& setup() {
  static const Setup s = default_setup();
  return s;
}

sim::SimResult simulate(Workload w, std::uint64_t n, Placement pl, bool trace = false) {
  return sim::simulate(w, n, pl, setup().soc, setup().templates, trace);
}

double cpb(const sim::SimResult& r, std::uint64_t n) { return static_cast<double>(r.total_cycles) / n; }

Check bound_reproduction() {
  Check c;
  const auto t0 = Clock::now();
  const char* argv[] = {"secacc", "bound", "--format", "json"};
  std::ostringstream out, err;
  const int code = cli::run(4, argv, out, err);
  const double elapsed = seconds_since(t0);
  c.expect(code == 0, "bound exited " + std::to_string(code) + ": " + err.str());
  if (code != 0) return c;
  const auto doc = nlohmann::json::parse(out.str());
  const std::vector<std::tuple<std::string, std::string, double, int>> want{
      {"hmac", "rot", 2.5, 160}, {"hmac", "ram", 7.0, 448}, {"aes", "rot", 5.0, 80}, {"aes", "ram", 14.0, 224}};
  for (const auto& [acc, pl, figure, cost] : want) {
    bool found = false;
    for (const auto& row : doc["bounds"]) {
      if (row["accelerator"] != acc || row["placement"] != pl) continue;
      found = true;
      c.expect(row["cycles_per_byte"].get<double>() == figure, acc + "/" + pl + " cycles/byte");
      c.expect(row["cycles_per_block"].get<int>() == cost, acc + "/" + pl + " cycles per block");
    }
    c.expect(found, acc + "/" + pl + " row missing");
  }
  c.expect(elapsed < 1.0, "bound took " + std::to_string(elapsed) + " s");
  return c;
}

Check theoretical_bandwidth() {
  Check c;
  c.expect(analytics::theoretical_bandwidth(setup().soc.accelerator("hmac")).cycles_per_byte == 1.25, "hmac");
  c.expect(analytics::theoretical_bandwidth(setup().soc.accelerator("aes")).cycles_per_byte == 4.5, "aes");
  return c;
}

struct Point {
  Workload workload;
  Placement placement;
  double cpb;
  double total;  // 0 when the figure is not reported
};

const std::vector<Point> kReference4K{
    {Workload::Sha256, Placement::SystemRam, 7.88, 32260},  {Workload::Sha256, Placement::RotScratchpad, 3.41, 0},
    {Workload::Hmac, Placement::SystemRam, 7.94, 32526},    {Workload::Hmac, Placement::RotScratchpad, 3.47, 0},
    {Workload::Aes256Cbc, Placement::SystemRam, 16.23, 66461}, {Workload::Aes256Cbc, Placement::RotScratchpad, 7.36, 0}};

std::string label(Workload w, Placement p) {
  return std::string(drivers::to_string(w)) + "/" + std::string(drivers::to_string(p));
}

Check asymptotes() {
  Check c;
  for (const auto& p : kReference4K) {
    const auto t0 = Clock::now();
    const auto r = simulate(p.workload, 4096, p.placement);
    const double elapsed = seconds_since(t0);
    c.rel(cpb(r, 4096), p.cpb, 0.05, label(p.workload, p.placement) + " cycles/byte");
    if (p.total > 0) c.rel(static_cast<double>(r.total_cycles), p.total, 0.05, label(p.workload, p.placement) + " total");
    c.expect(elapsed < 5.0, label(p.workload, p.placement) + " took " + std::to_string(elapsed) + " s");
  }
  return c;
}

Check utilization() {
  Check c;
  const std::vector<std::pair<Point, double>> want{{kReference4K[0], 16}, {kReference4K[1], 37}, {kReference4K[2], 16},
                                                   {kReference4K[3], 37}, {kReference4K[4], 28}, {kReference4K[5], 61}};
  for (const auto& [p, pct] : want) {
    const auto& spec = setup().soc.accelerator(drivers::accelerator_for(p.workload));
    const auto theo = analytics::theoretical_bandwidth(spec);
    c.near(100 * analytics::utilization(theo, {p.cpb}), pct, 1.5, label(p.workload, p.placement) + " reported");
    const auto r = simulate(p.workload, 4096, p.placement);
    c.near(100 * analytics::utilization(theo, {cpb(r, 4096)}), pct, 3.0, label(p.workload, p.placement) + " simulated");
  }
  return c;
}

using Row = std::array<double, 4>;
struct Breakdown {
  Workload workload;
  std::vector<std::pair<SemanticLabel, Row>> rows;
  Row total;
};

Check attribution_structure() {
  Check c;
  const std::vector<Breakdown> tables{
      {Workload::Sha256,
       {{SemanticLabel::Config, {5, 0, 6, 0}},
        {SemanticLabel::Digest, {230, 210, 1090, 1024}},
        {SemanticLabel::Wait, {74, 74, 74, 0}},
        {SemanticLabel::Final, {4, 0, 13, 8}}},
       {313, 284, 1183, 1032}},
      {Workload::Hmac,
       {{SemanticLabel::Config, {5, 0, 23, 0}},
        {SemanticLabel::Digest, {230, 210, 1090, 1024}},
        {SemanticLabel::Wait, {86, 86, 86, 0}},
        {SemanticLabel::Final, {4, 0, 13, 8}}},
       {325, 296, 1212, 1032}},
      {Workload::Aes256Cbc,
       {{SemanticLabel::Config, {28, 9, 64, 0}},
        {SemanticLabel::Cipher, {1281, 256, 2306, 2048}},
        {SemanticLabel::Wait, {258, 257, 257, 0}}},
       {1567, 522, 2627, 2048}}};
  for (const auto& t : tables) {
    const auto r = simulate(t.workload, 4096, Placement::SystemRam);
    const auto& rep = r.report;
    const std::string name(drivers::to_string(t.workload));
    auto check_cell = [&](double got, double want, const std::string& where) {
      if (want == 0)
        c.expect(got == 0, name + " " + where + " should be empty, got " + std::to_string(got));
      else
        c.rel(got, want, 0.10, name + " " + where);
    };
    for (const auto& [sem, row] : t.rows)
      for (std::size_t k = 0; k < kOpcodeLabels; ++k)
        check_cell(static_cast<double>(rep.count(kAllOpcodeLabels[k], sem)), row[k],
                   std::string(to_string(sem)) + "/" + std::string(to_string(kAllOpcodeLabels[k])));
    for (std::size_t k = 0; k < kOpcodeLabels; ++k)
      check_cell(static_cast<double>(rep.count_column(kAllOpcodeLabels[k])), t.total[k],
                 "TOT/" + std::string(to_string(kAllOpcodeLabels[k])));
    const double mem = rep.column_percent(OpcodeLabel::MemRot) + rep.column_percent(OpcodeLabel::MemRam);
    c.expect(mem >= 93.0, name + " memory share " + std::to_string(mem));
    const double ram = rep.column_percent(OpcodeLabel::MemRam);
    c.expect(ram >= 72.0 && ram <= 76.0, name + " Memory-RAM share " + std::to_string(ram));
    c.expect(rep.row_percent(SemanticLabel::Wait) <= 4.0,
             name + " Wait share " + std::to_string(rep.row_percent(SemanticLabel::Wait)));
  }
  return c;
}

Check rsa_calibration() {
  Check c;
  const auto& base = setup().baseline;
  const auto r512 = simulate(Workload::Rsa512, 64, Placement::SystemRam);
  const auto r1024 = simulate(Workload::Rsa1024, 128, Placement::SystemRam);
  c.rel(cpb(r512, 64), 9100, 0.05, "rsa512 cycles/byte");
  c.rel(cpb(r1024, 128), 23300, 0.05, "rsa1024 cycles/byte");
  c.near(analytics::speedup(base, Workload::Rsa512, {cpb(r512, 64)}), 4.3, 0.2, "rsa512 speedup");
  c.near(analytics::speedup(base, Workload::Rsa1024, {cpb(r1024, 128)}), 3.8, 0.2, "rsa1024 speedup");
  return c;
}

Check speedups() {
  Check c;
  const std::vector<std::pair<Workload, double>> want{
      {Workload::Sha256, 11.1}, {Workload::Hmac, 11.8}, {Workload::Aes256Cbc, 12.5}};
  for (const auto& [w, s] : want) {
    const auto r = simulate(w, 4096, Placement::SystemRam);
    c.near(analytics::speedup(setup().baseline, w, {cpb(r, 4096)}), s, 0.2,
           std::string(drivers::to_string(w)) + " speedup");
  }
  return c;
}

testing::cpp_int random_prime(boost::random::mt19937& gen, unsigned bits) {
  using testing::cpp_int;
  boost::random::uniform_int_distribution<cpp_int> dist(cpp_int(1) << (bits - 1), (cpp_int(1) << bits) - 1);
  while (true) {
    cpp_int p = dist(gen) | 1 | (cpp_int(1) << (bits - 2));
    if (boost::multiprecision::miller_rabin_test(p, 25, gen)) return p;
  }
}

Check functional_correctness() {
  Check c;
  using crypto::Bytes;
  auto digest = [](const crypto::Digest256& d) { return Bytes(d.begin(), d.end()); };
  for (const auto& v : testing::load_kat("sha256.kat"))
    c.expect(digest(crypto::sha256(v.input)) == v.expected, "sha256 KAT line " + std::to_string(v.line));
  for (const auto& v : testing::load_kat("hmac_sha256.kat"))
    c.expect(digest(crypto::hmac_sha256(v.key, v.input)) == v.expected, "hmac KAT line " + std::to_string(v.line));
  for (const auto& v : testing::load_kat("aes256_cbc.kat")) {
    crypto::AesKeyIv k;
    std::copy_n(v.key.begin(), 32, k.key.begin());
    std::copy_n(v.key.begin() + 32, 16, k.iv.begin());
    c.expect(crypto::aes256_cbc_encrypt(k, v.input) == v.expected, "aes KAT line " + std::to_string(v.line));
    c.expect(crypto::aes256_cbc_decrypt(k, v.expected) == v.input, "aes KAT inverse line " + std::to_string(v.line));
  }

  boost::random::mt19937 gen(7);
  std::mt19937_64 rng(7);
  using testing::cpp_int;
  for (unsigned bits : {512u, 1024u}) {
    cpp_int n, d;
    const cpp_int e = 65537;
    while (true) {
      const cpp_int p = random_prime(gen, bits / 2), q = random_prime(gen, bits / 2);
      n = p * q;
      const cpp_int phi = (p - 1) * (q - 1);
      if (boost::multiprecision::msb(n) + 1 != bits || boost::multiprecision::gcd(e, phi) != 1) continue;
      d = boost::integer::mod_inverse(e, phi);
      break;
    }
    const crypto::RsaParams pub{testing::from_cpp(n), testing::from_cpp(e), bits};
    const crypto::RsaParams priv{testing::from_cpp(n), testing::from_cpp(d), bits};
    const auto t = setup().templates.rsa;
    const auto enc = drivers::gen_otbn_program(drivers::Direction::Encrypt, bits, Placement::SystemRam, t);
    const auto dec = drivers::gen_otbn_program(drivers::Direction::Decrypt, bits, Placement::SystemRam, t);
    for (int i = 0; i < 3; ++i) {
      auto msg = testing::random_bytes(rng, bits / 8);
      msg[0] &= 0x3f;
      const auto ct = crypto::rsa_modexp(crypto::BigUint::from_bytes_be(msg), pub.exponent, pub.modulus);
      c.expect(crypto::rsa_modexp(ct, priv.exponent, priv.modulus) == crypto::BigUint::from_bytes_be(msg),
               "rsa" + std::to_string(bits) + " functional round trip");
      const auto sim_ct = sim::run_otbn(enc, setup().soc, pub, msg).output;
      c.expect(sim_ct == ct.to_bytes_be(bits / 8), "rsa" + std::to_string(bits) + " simulated encrypt");
      c.expect(sim::run_otbn(dec, setup().soc, priv, sim_ct).output == msg,
               "rsa" + std::to_string(bits) + " simulated round trip");
    }
  }

  int cases = 0;
  for (int i = 0; i < 120; ++i, ++cases) {
    const auto pl = rng() % 2 ? Placement::SystemRam : Placement::RotScratchpad;
    switch (i % 3) {
      case 0: {
        const std::uint64_t n = 1 + rng() % 1500;
        const auto msg = testing::random_bytes(rng, n);
        const auto prog = drivers::gen_hash_program(Workload::Sha256, n, pl, setup().templates.sha256);
        c.expect(sim::run(prog, setup().soc, msg).output == digest(crypto::sha256(msg)), "sha256 sim case " + std::to_string(i));
        break;
      }
      case 1: {
        const std::uint64_t n = 1 + rng() % 1500;
        const auto msg = testing::random_bytes(rng, n);
        const auto key = testing::random_bytes(rng, 32);
        const auto prog = drivers::gen_hash_program(Workload::Hmac, n, pl, setup().templates.hmac, key);
        c.expect(sim::run(prog, setup().soc, msg).output == digest(crypto::hmac_sha256(key, msg)),
                 "hmac sim case " + std::to_string(i));
        break;
      }
      default: {
        const std::uint64_t n = 16 * (1 + rng() % 90);
        const auto data = testing::random_bytes(rng, n);
        crypto::AesKeyIv k;
        for (auto& b : k.key) b = static_cast<std::uint8_t>(rng());
        for (auto& b : k.iv) b = static_cast<std::uint8_t>(rng());
        const auto dir = rng() % 2 ? drivers::Direction::Encrypt : drivers::Direction::Decrypt;
        const auto prog = drivers::gen_aes_program(n, pl, setup().templates.aes, k, dir);
        const auto want = dir == drivers::Direction::Encrypt ? crypto::aes256_cbc_encrypt(k, data)
                                                             : crypto::aes256_cbc_decrypt(k, data);
        c.expect(sim::run(prog, setup().soc, data).output == want, "aes sim case " + std::to_string(i));
      }
    }
  }
  c.expect(cases >= 100, "too few randomized cases");
  return c;
}

Check analyzer_round_trip() {
  Check c;
  for (auto w : {Workload::Sha256, Workload::Hmac, Workload::Aes256Cbc, Workload::Rsa512, Workload::Rsa1024}) {
    for (auto pl : {Placement::SystemRam, Placement::RotScratchpad}) {
      for (std::uint64_t n : {64u, 1024u, 4096u}) {
        std::uint64_t payload = n;
        if (drivers::is_rsa(w)) {
          if (n != 64) continue;
          payload = drivers::rsa_key_bits(w) / 8;
        }
        const auto r = simulate(w, payload, pl, true);
        const auto lines = trace::parse_trace(sim::self_trace(r));
        const auto rep = trace::attribute(trace::annotate(lines, sim::self_annotations(), setup().soc.address_map));
        c.expect(rep == sim::attribution(r), label(w, pl) + " " + std::to_string(payload) + " B");
      }
    }
  }
  return c;
}

Check latency_statistics() {
  Check c;
  const auto r = simulate(Workload::Sha256, 4096, Placement::SystemRam, true);
  const auto labeled =
      trace::annotate(trace::parse_trace(sim::self_trace(r)), sim::self_annotations(), setup().soc.address_map);
  const auto stats = trace::latency_stats(labeled);
  const auto rot = stats.rot(), ram = stats.ram();
  c.rel(rot.mean(), 5.7, 0.10, "RoT mean");
  c.rel(ram.mean(), 23.4, 0.10, "RAM mean");
  c.expect(rot.min == 5, "RoT min " + std::to_string(rot.min));
  c.expect(ram.min == 23, "RAM min " + std::to_string(ram.min));
  c.near(static_cast<double>(rot.max), 12, 1, "RoT max");
  c.near(static_cast<double>(ram.max), 28, 1, "RAM max");
  return c;
}

Check property_suites() {
  Check c;
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::string, std::function<properties::Outcome()>>> suites{
      {"cycle conservation", [] { return properties::cycle_conservation(200, 1001); }},
      {"latency monotonicity", [] { return properties::latency_monotonicity(200, 1002); }},
      {"placement dominance", [] { return properties::placement_dominance(200, 1003); }},
      {"simulated >= max(bound, theoretical)", [] { return properties::simulated_above_limits(200, 1004); }},
      {"sweep monotonicity", [] { return properties::sweep_monotonicity(200, 1005); }}};
  for (const auto& [name, fn] : suites) {
    const auto o = fn();
    c.expect(o.cases >= 200, name + ": only " + std::to_string(o.cases) + " cases");
    c.expect(o.ok(), name + ": " + std::to_string(o.failures) + " failures, " + o.first_failure);
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 60.0, "property suites took " + std::to_string(elapsed) + " s");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"peak memory bounds", bound_reproduction},
      {"theoretical bandwidth", theoretical_bandwidth},
      {"4 KiB cycles/byte and totals", asymptotes},
      {"utilization", utilization},
      {"attribution structure", attribution_structure},
      {"rsa calibration", rsa_calibration},
      {"speedups", speedups},
      {"functional correctness", functional_correctness},
      {"analyzer round trip", analyzer_round_trip},
      {"latency statistics", latency_statistics},
      {"property suites", property_suites}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu: %s %s\n", i + 1, c.ok ? "PASS" : "FAIL", criteria[i].first.c_str());
    for (const auto& note : c.notes) std::printf("    %s\n", note.c_str());
    if (!c.ok) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
