// Command-line front end: magic, divisible, verify, bench.
//
// Exit codes: 0 success / pass / divisible, 1 verification mismatch,
// checksum disagreement or "not divisible", 2 usage error.

#ifndef FASTREM_TOOLS_CLI_HPP
#define FASTREM_TOOLS_CLI_HPP

#include <charconv>
#include <exception>
#include <functional>
#include <thread>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fastrem/fastrem.hpp"

namespace fastrem::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Decimal or 0x-prefixed hexadecimal, with an optional leading '-'.
inline std::int64_t parse_int(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    text.remove_prefix(2);
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw usage_error("not an integer: '" + original + "'");
  }
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;
  if ((!negative && value >= kLimit) || (negative && value > kLimit)) {
    throw usage_error("integer out of range: '" + original + "'");
  }
  return negative ? static_cast<std::int64_t>(0 - value) : static_cast<std::int64_t>(value);
}

inline std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::string to_hex(uint128_t v) {
  if (v == 0) return "0x0";
  std::string digits;
  while (v != 0) {
    digits.push_back("0123456789abcdef"[static_cast<unsigned>(v & 15)]);
    v >>= 4;
  }
  return "0x" + std::string(digits.rbegin(), digits.rend());
}

inline std::string to_dec(uint128_t v) {
  if (v == 0) return "0";
  std::string digits;
  while (v != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  return std::string(digits.rbegin(), digits.rend());
}

inline strategy parse_strategy_or_throw(const std::string& name) {
  const auto s = parse_strategy(name);
  if (!s) throw usage_error("unknown strategy: '" + name + "'");
  return *s;
}

struct options {
  bool verbose = false;
  std::string format = "human";

  // magic
  std::string magic_d;
  unsigned n_bits = 32;
  bool magic_signed = false;
  bool minimal = false;
  bool convenient = false;

  // divisible
  std::string div_n;
  std::string div_d;
  std::string div_strategy = "lkk";
  bool div_signed = false;

  // verify
  unsigned width = 16;
  std::string divisors = "structured";
  std::optional<std::string> numerators;
  std::uint64_t samples = 10'000'000;
  bool v_signed = false;
  std::string signedness_text;
  std::string strategies = "lkk,gmw,gm,hardware";
  std::string seed = "0x5eed1234cafef00d";
  bool slow = false;
  unsigned threads = 0;
  int l_offset = 0;

  // bench
  std::string bench_d = "95";
  std::uint64_t iters = 100'000'000;
  std::string bench_strategy = "all";
  bool bench_signed = false;
  std::optional<std::string> multiplier;
  unsigned repeats = 5;
  std::uint64_t warmup = 1'000'000;
  std::uint32_t limit = 40000;
  bool parallel_cells = false;
};

inline int cmd_magic(const options& o, std::ostream& out, std::ostream& err) {
  if (o.minimal && o.convenient) throw usage_error("--minimal and --convenient are exclusive");
  const std::int64_t d = parse_int(o.magic_d);
  if (d == 0) throw usage_error("divisor must be non-zero");
  if (!o.magic_signed && d < 0) throw usage_error("negative divisor requires --signed");
  const std::uint64_t mag = static_cast<std::uint64_t>(d < 0 ? -d : d);
  magic_parameters p;
  try {
    if (o.magic_signed) {
      p = o.minimal ? minimal_signed_params(mag, o.n_bits) : convenient_signed_params(mag, o.n_bits);
    } else {
      p = o.minimal ? minimal_unsigned_params(mag, o.n_bits) : convenient_unsigned_params(mag, o.n_bits);
    }
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  const bool valid = is_valid(p);
  if (o.verbose) {
    err << "magic: d=" << d << " n_bits=" << o.n_bits << " signed=" << o.magic_signed
        << " mode=" << (o.minimal ? "minimal" : "convenient") << '\n';
  }
  if (o.format == "json") {
    nlohmann::json j{{"d", d},
                     {"d_hex", to_hex(mag)},
                     {"n_bits", p.n_bits},
                     {"l_bits", p.l_bits},
                     {"f_bits", p.f_bits},
                     {"c", to_dec(p.c)},
                     {"c_hex", to_hex(p.c)},
                     {"signed", p.is_signed},
                     {"minimal", p.minimal},
                     {"valid", valid}};
    out << j.dump(2) << '\n';
  } else {
    out << "d = " << d << " (" << (d < 0 ? "-" : "") << to_hex(mag) << ")\n"
        << "N = " << p.n_bits << "\n"
        << "L = " << p.l_bits << "\n"
        << "F = " << p.f_bits << "\n"
        << "c = " << to_dec(p.c) << " (" << to_hex(p.c) << ")\n"
        << "signed = " << (p.is_signed ? "true" : "false") << "\n"
        << "mode = " << (p.minimal ? "minimal" : "convenient") << "\n"
        << "valid = " << (valid ? "true" : "false") << "\n";
  }
  return valid ? kExitOk : kExitFail;
}

inline int cmd_divisible(const options& o, std::ostream& out, std::ostream& err) {
  const strategy which = parse_strategy_or_throw(o.div_strategy);
  const std::int64_t n = parse_int(o.div_n);
  const std::int64_t d = parse_int(o.div_d);
  if (d == 0) throw usage_error("divisor must be non-zero");
  bool result = false;
  if (o.div_signed) {
    if (n < INT32_MIN || n > INT32_MAX || d < INT32_MIN || d > INT32_MAX) {
      throw usage_error("signed operands must fit in 32 bits");
    }
    const auto sn = static_cast<std::int32_t>(n);
    const auto sd = static_cast<std::int32_t>(d);
    switch (which) {
      case strategy::lkk: result = is_divisible_signed(sn, compute_signed_reciprocal(sd)); break;
      case strategy::gm:
        result = gm_divisible(detail::magnitude<32>(sn), gm_prepare(detail::magnitude<32>(sd)));
        break;
      case strategy::hardware: result = (sd == -1) || sn % sd == 0; break;
      default: throw usage_error("divisible supports strategies lkk, gm, hardware");
    }
  } else {
    if (n < 0 || n > UINT32_MAX || d < 1 || d > UINT32_MAX) {
      throw usage_error("unsigned operands must be in [0, 2^32) (divisor >= 1)");
    }
    const auto un = static_cast<std::uint32_t>(n);
    const auto ud = static_cast<std::uint32_t>(d);
    switch (which) {
      case strategy::lkk: result = is_divisible(un, compute_reciprocal(ud)); break;
      case strategy::gm: result = gm_divisible(un, gm_prepare(ud)); break;
      case strategy::hardware: result = un % ud == 0; break;
      default: throw usage_error("divisible supports strategies lkk, gm, hardware");
    }
  }
  if (o.verbose) {
    err << "divisible: n=" << n << " d=" << d << " strategy=" << to_string(which)
        << " signed=" << o.div_signed << '\n';
  }
  if (o.format == "json") {
    out << nlohmann::json{{"n", n}, {"d", d}, {"strategy", std::string(to_string(which))},
                          {"signed", o.div_signed}, {"divisible", result}}
               .dump()
        << '\n';
  } else {
    out << (result ? "true" : "false") << '\n';
  }
  return result ? kExitOk : kExitFail;
}

inline sweep_spec build_sweep_spec(const options& o) {
  sweep_spec spec;
  spec.width = o.width;
  if (o.divisors == "all") {
    spec.divisors.mode = divisor_selection::kind::all;
  } else if (o.divisors == "structured") {
    spec.divisors.mode = divisor_selection::kind::structured;
  } else {
    spec.divisors.mode = divisor_selection::kind::explicit_list;
    for (const auto& item : split_commas(o.divisors)) {
      const std::int64_t d = parse_int(item);
      if (d == 0) throw usage_error("divisor 0 is not allowed");
      spec.divisors.values.push_back(d);
    }
    if (spec.divisors.values.empty()) throw usage_error("empty divisor list");
  }
  const std::string cov = o.slow ? "exhaustive" : o.numerators.value_or(o.width <= 16 ? "exhaustive" : "sampled");
  if (cov == "exhaustive") {
    spec.numerators = numerator_coverage::exhaustive;
  } else if (cov == "sampled") {
    spec.numerators = numerator_coverage::sampled;
  } else {
    throw usage_error("--numerators must be 'exhaustive' or 'sampled'");
  }
  spec.sample_count = o.samples;
  spec.seed = static_cast<std::uint64_t>(parse_int(o.seed));
  if (!o.signedness_text.empty()) {
    if (o.signedness_text == "unsigned") spec.sign = signedness::unsigned_only;
    else if (o.signedness_text == "signed") spec.sign = signedness::signed_only;
    else if (o.signedness_text == "both") spec.sign = signedness::both;
    else throw usage_error("--signedness must be unsigned, signed or both");
  } else if (o.v_signed) {
    spec.sign = signedness::signed_only;
  }
  spec.strategies.clear();
  for (const auto& name : split_commas(o.strategies)) {
    if (name == "all") {
      spec.strategies = {strategy::lkk, strategy::gmw, strategy::gm, strategy::hardware};
      continue;
    }
    spec.strategies.push_back(parse_strategy_or_throw(name));
  }
  if (spec.sign == signedness::signed_only) {
    std::erase(spec.strategies, strategy::gmw);  // unsigned-only baseline
  }
  spec.l_offset = o.l_offset;
  spec.threads = o.threads;
  return spec;
}

inline int cmd_verify(const options& o, std::ostream& out, std::ostream& err) {
  const sweep_spec spec = build_sweep_spec(o);
  if (o.verbose) err << "verify: " << to_json(spec).dump() << '\n';
  mismatch_report report;
  try {
    report = run_sweep(spec);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  if (o.format == "json") {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << (report.passed() ? "PASS" : "FAIL") << ": width=" << spec.width
        << " divisors=" << report.divisors_checked << " mismatches=" << report.mismatch_count()
        << " elapsed=" << std::fixed << std::setprecision(3)
        << static_cast<double>(report.elapsed_ns) / 1e9 << "s seed=" << to_hex(spec.seed) << '\n';
    for (strategy s : spec.strategies) {
      out << "  " << std::left << std::setw(9) << to_string(s) << " checks=" << report.tally(s).checks
          << " mismatches=" << report.tally(s).mismatches << '\n';
    }
    for (const auto& m : report.first_mismatches) {
      out << "  mismatch " << to_string(m.which) << ' ' << m.op << (m.is_signed ? " signed" : "")
          << " d=" << m.d << " n=" << m.n << " expected=" << m.expected << " actual=" << m.actual << '\n';
    }
  }
  return report.passed() ? kExitOk : kExitFail;
}

inline std::vector<strategy> bench_strategies(const std::string& text, bool primes, bool is_signed) {
  if (text == "all") {
    if (primes) return {strategy::lkk, strategy::gm, strategy::hardware};
    if (is_signed) return {strategy::lkk, strategy::hardware};
    return {strategy::lkk, strategy::gmw, strategy::hardware};
  }
  std::vector<strategy> out;
  for (const auto& name : split_commas(text)) out.push_back(parse_strategy_or_throw(name));
  if (out.empty()) throw usage_error("no strategy given");
  return out;
}

inline int emit_bench(const options& o, const std::vector<bench_report>& reports, std::ostream& out,
                      std::ostream& err) {
  const bool agree = checksums_agree(reports);
  if (o.format == "json" || o.format == "csv") {
    out << emit_report(reports, o.format);
  } else {
    for (const auto& r : reports) {
      out << std::left << std::setw(11) << r.benchmark << std::setw(9) << to_string(r.which);
      if (r.divisor) out << "d=" << std::setw(12) << *r.divisor;
      out << "iters=" << r.iterations << " time=" << std::fixed << std::setprecision(3)
          << static_cast<double>(r.elapsed_ns) / 1e6 << "ms ns/op=" << std::setprecision(3)
          << r.ns_per_op() << " checksum=" << r.checksum << '\n';
    }
  }
  if (!agree) err << "error: checksums disagree across strategies\n";
  return agree ? kExitOk : kExitFail;
}

template <class Cell>
std::vector<bench_report> run_cells(const std::vector<Cell>& cells, bool parallel) {
  std::vector<bench_report> reports(cells.size());
  if (!parallel) {
    for (std::size_t i = 0; i < cells.size(); ++i) reports[i] = cells[i]();
    return reports;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    workers.emplace_back([&, i] {
      try {
        reports[i] = cells[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

inline int cmd_bench_lcg(const options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::int64_t> ds;
  for (const auto& item : split_commas(o.bench_d)) ds.push_back(parse_int(item));
  if (ds.empty()) throw usage_error("--d is required");
  for (std::int64_t d : ds) {
    if (d == 0) throw usage_error("divisor must be non-zero");
    if (!o.bench_signed && (d < 1 || d > UINT32_MAX)) throw usage_error("divisor out of range");
    if (o.bench_signed && (d < INT32_MIN || d > INT32_MAX)) throw usage_error("divisor out of range");
  }
  if (o.iters == 0) throw usage_error("--iters must be >= 1");
  const auto strategies = bench_strategies(o.bench_strategy, false, o.bench_signed);
  std::vector<std::function<bench_report()>> cells;
  for (std::int64_t d : ds) {
    for (strategy s : strategies) {
      lcg_config cfg;
      cfg.d = d;
      cfg.which = s;
      cfg.iterations = o.iters;
      cfg.is_signed = o.bench_signed;
      if (o.multiplier) cfg.multiplier = parse_int(*o.multiplier);
      cfg.repeats = o.repeats;
      cfg.warmup_iterations = o.warmup;
      if (s != strategy::lkk && s != strategy::hardware && !(s == strategy::gmw && !o.bench_signed)) {
        throw usage_error("strategy " + std::string(to_string(s)) + " is not available for this lcg");
      }
      cells.emplace_back([cfg] { return lcg_bench(cfg); });
    }
  }
  if (o.verbose) {
    err << "bench lcg: d=" << o.bench_d << " iters=" << o.iters << " strategy=" << o.bench_strategy
        << " signed=" << o.bench_signed << " repeats=" << o.repeats << " warmup=" << o.warmup
        << " parallel_cells=" << o.parallel_cells << '\n';
  }
  return emit_bench(o, run_cells(cells, o.parallel_cells), out, err);
}

inline int cmd_bench_primes(const options& o, std::ostream& out, std::ostream& err) {
  if (o.limit < 3) throw usage_error("--limit must be >= 3");
  const auto strategies = bench_strategies(o.bench_strategy, true, false);
  std::vector<std::function<bench_report()>> cells;
  for (strategy s : strategies) {
    if (s != strategy::lkk && s != strategy::gm && s != strategy::hardware) {
      throw usage_error("primes supports strategies lkk, gm, hardware");
    }
    prime_config cfg;
    cfg.limit = o.limit;
    cfg.which = s;
    cfg.repeats = o.repeats;
    cells.emplace_back([cfg] { return prime_count_bench(cfg); });
  }
  if (o.verbose) {
    err << "bench primes: limit=" << o.limit << " strategy=" << o.bench_strategy
        << " repeats=" << o.repeats << '\n';
  }
  return emit_bench(o, run_cells(cells, o.parallel_cells), out, err);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Remainder, quotient and divisibility by invariant integers"};
  app.require_subcommand(1);
  options o;
  app.add_flag("-v,--verbose", o.verbose, "Print the resolved configuration to stderr");

  auto* magic = app.add_subcommand("magic", "Compute the scaled reciprocal for a divisor");
  magic->add_option("d", o.magic_d, "Divisor (decimal or 0x hex)")->required();
  magic->add_option("--n-bits", o.n_bits, "Numerator width N")->check(CLI::Range(1u, 32u));
  magic->add_flag("--signed", o.magic_signed, "Signed numerators");
  magic->add_flag("--minimal", o.minimal, "Smallest number of fractional bits");
  magic->add_flag("--convenient", o.convenient, "F = 2N (default)");
  magic->add_option("--format", o.format)->check(CLI::IsMember({"human", "json"}));

  auto* divisible = app.add_subcommand("divisible", "Test whether d divides n");
  divisible->add_option("n", o.div_n)->required();
  divisible->add_option("d", o.div_d)->required();
  divisible->add_option("--strategy", o.div_strategy)->check(CLI::IsMember({"lkk", "gm", "hardware"}));
  divisible->add_flag("--signed", o.div_signed);
  divisible->add_option("--format", o.format)->check(CLI::IsMember({"human", "json"}));

  auto* verify = app.add_subcommand("verify", "Compare strategies against native division");
  verify->add_option("--width", o.width, "Numerator width (8, 16, 32; 1..32 for minimal)")
      ->check(CLI::Range(1u, 32u));
  verify->add_option("--divisors", o.divisors, "all | structured | comma-separated list");
  verify->add_option("--numerators", o.numerators, "exhaustive | sampled");
  verify->add_option("--samples", o.samples, "Random numerators per divisor when sampled");
  verify->add_flag("--signed", o.v_signed, "Signed sweep");
  verify->add_option("--signedness", o.signedness_text, "unsigned | signed | both");
  verify->add_option("--strategies", o.strategies, "lkk,gmw,gm,hardware,minimal or all");
  verify->add_option("--seed", o.seed, "64-bit sampling seed");
  verify->add_flag("--slow", o.slow, "Exhaustive numerators at any width");
  verify->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  verify->add_option("--l-offset", o.l_offset, "Shift L of the minimal strategy");
  verify->add_option("--format", o.format)->check(CLI::IsMember({"human", "json"}));

  auto* bench = app.add_subcommand("bench", "Run a benchmark");
  bench->require_subcommand(1);
  auto* lcg = bench->add_subcommand("lcg", "Linear congruential generator throughput");
  lcg->add_option("--d", o.bench_d, "Divisor(s), comma-separated");
  lcg->add_option("--iters", o.iters, "Iterations per timed run");
  lcg->add_option("--strategy", o.bench_strategy, "lkk | gmw | hardware | all");
  lcg->add_flag("--signed", o.bench_signed, "Signed generator (a = -31)");
  lcg->add_option("--multiplier", o.multiplier, "Multiplier a (default 31, or -31 signed)");
  lcg->add_option("--repeats", o.repeats, "Timed runs; the median is reported");
  lcg->add_option("--warmup", o.warmup, "Untimed warmup iterations");
  lcg->add_flag("--parallel-cells", o.parallel_cells, "Run cells concurrently");
  lcg->add_option("--format", o.format)->check(CLI::IsMember({"human", "json", "csv"}));
  auto* primes = bench->add_subcommand("primes", "Prime counting by trial divisibility");
  primes->add_option("--limit", o.limit, "Count primes below this bound");
  primes->add_option("--strategy", o.bench_strategy, "lkk | gm | hardware | all");
  primes->add_option("--repeats", o.repeats, "Timed runs; the median is reported");
  primes->add_flag("--parallel-cells", o.parallel_cells, "Run cells concurrently");
  primes->add_option("--format", o.format)->check(CLI::IsMember({"human", "json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (magic->parsed()) return cmd_magic(o, out, err);
    if (divisible->parsed()) return cmd_divisible(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (lcg->parsed()) return cmd_bench_lcg(o, out, err);
    if (primes->parsed()) return cmd_bench_primes(o, out, err);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fastrem::cli

#endif  // FASTREM_TOOLS_CLI_HPP
