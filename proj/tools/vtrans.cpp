// vtrans: validating SIMD UTF-8 <-> UTF-16 transcoder and benchmark harness.
//
// Exit codes: 0 success, 1 invalid input data, 2 usage error,
// 3 fuzz divergence.

#include "vtrans/harness.hpp"
#include "vtrans/transcode_tables.hpp"
#include "vtrans/utf8_to_utf16.hpp"
#include "vtrans/validation.hpp"
#include "vtrans/vec128.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

namespace {

using namespace vtrans;
using namespace vtrans::harness;

std::optional<std::vector<uint8_t>> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>{});
}

bool write_file(const std::string& path, std::span<const uint8_t> data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  return f.good();
}

Format parse_format(const std::string& s) {
  if (s == "utf8") return Format::utf8;
  if (s == "utf16le") return Format::utf16le;
  return Format::utf16be;
}

// Loads a bench/stats input and normalizes it to valid UTF-8.
// Returns nullopt (after printing a diagnostic) when invalid.
std::optional<std::vector<uint8_t>> load_as_utf8(const std::string& path, Format from) {
  auto raw = read_file(path);
  if (!raw) {
    std::cerr << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  auto r = transcode_bytes(*raw, from, Format::utf8, BomPolicy::strip);
  if (r.exit_code != 0) {
    std::cerr << r.message << "\n";
    return std::nullopt;
  }
  return r.output;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIMD UTF-8 <-> UTF-16 transcoding harness"};
  app.require_subcommand(1);
  bool emulated = false;
  app.add_flag("--emulated", emulated, "force the scalar-emulation vector backend");

  // bench
  auto* bench = app.add_subcommand("bench", "benchmark both directions and implementations");
  std::string bench_input, bench_from = "utf8", bench_format = "json";
  uint64_t reps = 2000;
  bool prefix_sweep = false;
  bench->add_option("--input", bench_input)->required();
  bench->add_option("--from", bench_from)->check(CLI::IsMember({"utf8", "utf16le", "utf16be"}));
  bench->add_option("--reps", reps);
  bench->add_option("--format", bench_format)->check(CLI::IsMember({"json", "csv"}));
  bench->add_flag("--prefix-sweep", prefix_sweep,
                  "re-transcode growing prefixes for at least 0.2 s each");

  // stats
  auto* stats = app.add_subcommand("stats", "corpus statistics (bytes per char, length mix)");
  std::string stats_input;
  stats->add_option("--input", stats_input)->required();

  // transcode
  auto* transcode = app.add_subcommand("transcode", "convert between encodings");
  std::string tr_input, tr_output, tr_from = "utf8", tr_to = "utf16le", tr_bom = "strip";
  transcode->add_option("--input", tr_input)->required();
  transcode->add_option("--output", tr_output)->required();
  transcode->add_option("--from", tr_from)->check(CLI::IsMember({"utf8", "utf16le", "utf16be"}));
  transcode->add_option("--to", tr_to)->check(CLI::IsMember({"utf8", "utf16le", "utf16be"}));
  transcode->add_option("--bom", tr_bom)->check(CLI::IsMember({"keep", "strip", "add"}));

  // fuzz
  auto* fuzz = app.add_subcommand("fuzz", "differential fuzzing against the scalar reference");
  uint64_t fz_seed = 1, fz_iters = 100000;
  std::size_t fz_maxlen = 512;
  bool fz_mutate = false;
  fuzz->add_option("--seed", fz_seed);
  fuzz->add_option("--iterations", fz_iters);
  fuzz->add_option("--max-len", fz_maxlen);
  fuzz->add_flag("--mutate", fz_mutate,
                 "corrupt one table byte first; the run must then detect a divergence");

  // tables
  auto* tables = app.add_subcommand("tables", "table utilities");
  auto* tables_dump = tables->add_subcommand("dump", "emit all tables as hex");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (emulated) force_emulated_backend(true);

  if (*bench) {
    auto utf8 = load_as_utf8(bench_input, parse_format(bench_from));
    if (!utf8) return 1;
    std::vector<BenchRecord> records =
        prefix_sweep ? run_prefix_sweep(bench_input, *utf8) : run_bench(bench_input, *utf8, reps);
    if (bench_format == "csv") std::cout << csv_header() << "\n";
    for (const auto& r : records)
      std::cout << (bench_format == "csv" ? to_csv(r) : to_json(r)) << "\n";
    return 0;
  }

  if (*stats) {
    auto raw = read_file(stats_input);
    if (!raw) {
      std::cerr << "error: cannot read " << stats_input << "\n";
      return 1;
    }
    auto s = compute_stats(*raw);
    if (!s) {
      std::cerr << "error: invalid UTF-8 input\n";
      return 1;
    }
    std::printf("chars %llu\n", static_cast<unsigned long long>(s->chars));
    std::printf("avg_bytes_per_char_utf8 %.3f\n", s->avg_bytes_per_char_utf8);
    std::printf("avg_bytes_per_char_utf16 %.3f\n", s->avg_bytes_per_char_utf16);
    std::printf("pct_1byte %.2f\npct_2byte %.2f\npct_3byte %.2f\npct_4byte %.2f\n", s->pct_1byte,
                s->pct_2byte, s->pct_3byte, s->pct_4byte);
    return 0;
  }

  if (*transcode) {
    auto raw = read_file(tr_input);
    if (!raw) {
      std::cerr << "error: cannot read " << tr_input << "\n";
      return 1;
    }
    BomPolicy bom = tr_bom == "keep" ? BomPolicy::keep
                    : tr_bom == "add" ? BomPolicy::add
                                      : BomPolicy::strip;
    auto r = transcode_bytes(*raw, parse_format(tr_from), parse_format(tr_to), bom);
    if (!r.message.empty()) std::cerr << r.message << "\n";
    if (r.exit_code != 0) return r.exit_code;
    if (!write_file(tr_output, r.output)) {
      std::cerr << "error: cannot write " << tr_output << "\n";
      return 1;
    }
    return 0;
  }

  if (*fuzz) {
    if (fz_mutate) {
      std::cout << corrupt_tables_for_testing(fz_seed) << "\n";
      FuzzReport rep = run_fuzz(fz_seed, fz_iters, fz_maxlen);
      if (rep.divergences == 0) {
        std::cout << "mutation NOT detected in " << rep.iterations << " iterations\n";
        return 1;
      }
      std::cout << "mutation detected: " << rep.detail << " (" << rep.divergences << "/"
                << rep.iterations << " divergent)\n";
      return 0;
    }
    FuzzReport rep = run_fuzz(fz_seed, fz_iters, fz_maxlen);
    if (rep.divergences != 0) {
      std::cout << "DIVERGENCE (" << rep.divergences << "/" << rep.iterations
                << "): " << rep.detail << "\n";
      return 3;
    }
    std::cout << "ok: " << rep.iterations << " iterations, zero divergences\n";
    return 0;
  }

  if (*tables_dump) {
    std::cout << dump_tables_hex();
    return 0;
  }
  if (*tables) {
    std::cerr << "usage: vtrans tables dump\n";
    return 2;
  }
  return 2;
}
