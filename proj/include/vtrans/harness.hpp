#pragma once

#include "vtrans/codec_core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vtrans::harness {

// One benchmark measurement. Throughput is in gigacharacters per second,
// computed from the minimum timing; the warning flag is set when the
// min-vs-mean spread exceeds 1%.
struct BenchRecord {
  std::string dataset;
  std::string direction;  // utf8_to_utf16 | utf16_to_utf8
  std::string impl;       // simd | scalar
  uint64_t chars = 0;
  uint64_t bytes_in = 0;
  uint64_t bytes_out = 0;
  uint64_t reps = 0;
  uint64_t min_ns = 0;
  double mean_ns = 0.0;
  double gchars_per_sec = 0.0;
  bool spread_warning = false;
};

std::string to_json(const BenchRecord& r);
std::string csv_header();
std::string to_csv(const BenchRecord& r);

// Benchmarks both directions and both implementations over the given
// valid UTF-8 content, entirely in memory, single-threaded, with all
// allocation outside the timed region.
std::vector<BenchRecord> run_bench(const std::string& dataset, std::span<const uint8_t> utf8,
                                   uint64_t reps);

// Speed-versus-length sweep: re-transcodes each prefix for at least the
// given time budget (default 0.2 s) instead of a fixed rep count.
std::vector<BenchRecord> run_prefix_sweep(const std::string& dataset,
                                          std::span<const uint8_t> utf8,
                                          double budget_seconds = 0.2);

struct CorpusStats {
  double avg_bytes_per_char_utf8 = 0.0;
  double avg_bytes_per_char_utf16 = 0.0;
  double pct_1byte = 0.0, pct_2byte = 0.0, pct_3byte = 0.0, pct_4byte = 0.0;
  uint64_t chars = 0;
};

// Per-character length histogram over valid UTF-8; nullopt when invalid.
std::optional<CorpusStats> compute_stats(std::span<const uint8_t> utf8);

enum class Format { utf8, utf16le, utf16be };
enum class BomPolicy { keep, strip, add };

struct TranscodeFileResult {
  int exit_code = 0;  // 0 ok, 1 invalid data / BOM conflict
  std::string message;
  std::vector<uint8_t> output;
};

// Whole-buffer transcode with BOM detection and endianness handling.
// Big-endian UTF-16 goes through a byte-swap pass around the
// little-endian kernels.
TranscodeFileResult transcode_bytes(std::span<const uint8_t> in, Format from, Format to,
                                    BomPolicy bom);

struct FuzzReport {
  uint64_t iterations = 0;
  uint64_t divergences = 0;
  std::string detail;  // minimized reproducer (hex) for the first divergence
};

// Deterministic differential fuzzing: random bytes, valid class-mix
// strings, and single-mutation corruptions, each run through the SIMD
// and scalar paths in both directions. Any mismatch of output, counts or
// error index is a divergence.
FuzzReport run_fuzz(uint64_t seed, uint64_t iterations, std::size_t max_len);

}  // namespace vtrans::harness
