#include "vtrans/harness.hpp"

#include "vtrans/utf16_to_utf8.hpp"
#include "vtrans/utf8_to_utf16.hpp"
#include "vtrans/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

namespace vtrans::harness {

namespace {

uint64_t now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string hex(std::span<const uint8_t> bytes) {
  std::string s;
  char buf[4];
  for (uint8_t b : bytes) {
    std::snprintf(buf, sizeof buf, "%02x", b);
    s += buf;
  }
  return s;
}

BenchRecord make_record(const std::string& dataset, const char* direction, const char* impl,
                        uint64_t chars, uint64_t bytes_in, uint64_t bytes_out, uint64_t reps,
                        uint64_t min_ns, double mean_ns) {
  BenchRecord r;
  r.dataset = dataset;
  r.direction = direction;
  r.impl = impl;
  r.chars = chars;
  r.bytes_in = bytes_in;
  r.bytes_out = bytes_out;
  r.reps = reps;
  r.min_ns = min_ns;
  r.mean_ns = mean_ns;
  r.gchars_per_sec = min_ns > 0 ? static_cast<double>(chars) / static_cast<double>(min_ns) : 0.0;
  r.spread_warning = mean_ns > 0 && (mean_ns - static_cast<double>(min_ns)) / mean_ns > 0.01;
  return r;
}

// Times `reps` runs of fn, returning (min_ns, mean_ns).
std::pair<uint64_t, double> time_reps(uint64_t reps, const std::function<void()>& fn) {
  uint64_t min_ns = UINT64_MAX;
  double total = 0;
  for (uint64_t i = 0; i < reps; i++) {
    const uint64_t t0 = now_ns();
    fn();
    const uint64_t dt = now_ns() - t0;
    min_ns = std::min(min_ns, dt);
    total += static_cast<double>(dt);
  }
  if (reps == 0) return {0, 0.0};
  return {min_ns, total / static_cast<double>(reps)};
}

}  // namespace

std::string to_json(const BenchRecord& r) {
  std::ostringstream os;
  os << "{\"dataset\":\"" << r.dataset << "\",\"direction\":\"" << r.direction
     << "\",\"impl\":\"" << r.impl << "\",\"chars\":" << r.chars << ",\"bytes_in\":" << r.bytes_in
     << ",\"bytes_out\":" << r.bytes_out << ",\"reps\":" << r.reps << ",\"min_ns\":" << r.min_ns
     << ",\"mean_ns\":" << r.mean_ns << ",\"gchars_per_sec\":" << r.gchars_per_sec
     << ",\"spread_warning\":" << (r.spread_warning ? "true" : "false") << "}";
  return os.str();
}

std::string csv_header() {
  return "dataset,direction,impl,chars,bytes_in,bytes_out,reps,min_ns,mean_ns,gchars_per_sec,"
         "spread_warning";
}

std::string to_csv(const BenchRecord& r) {
  std::ostringstream os;
  os << r.dataset << ',' << r.direction << ',' << r.impl << ',' << r.chars << ',' << r.bytes_in
     << ',' << r.bytes_out << ',' << r.reps << ',' << r.min_ns << ',' << r.mean_ns << ','
     << r.gchars_per_sec << ',' << (r.spread_warning ? "true" : "false");
  return os.str();
}

std::vector<BenchRecord> run_bench(const std::string& dataset, std::span<const uint8_t> utf8,
                                   uint64_t reps) {
  TranscodeResult res;
  std::vector<uint16_t> utf16 = scalar::utf8_to_utf16(utf8, res);
  const uint64_t chars = scalar::count_codepoints_utf8(utf8).value_or(0);

  std::vector<uint16_t> out16(utf8.size() + 8);
  std::vector<uint8_t> out8(3 * utf16.size() + 16);

  std::vector<BenchRecord> records;
  auto bench_one = [&](const char* direction, const char* impl, uint64_t bytes_in,
                       uint64_t bytes_out, const std::function<void()>& fn) {
    auto [min_ns, mean_ns] = time_reps(reps, fn);
    records.push_back(
        make_record(dataset, direction, impl, chars, bytes_in, bytes_out, reps, min_ns, mean_ns));
  };

  const uint64_t b8 = utf8.size();
  const uint64_t b16 = 2 * utf16.size();
  bench_one("utf8_to_utf16", "simd", b8, b16,
            [&] { utf8_to_utf16(utf8, out16.data(), /*validate=*/true); });
  bench_one("utf8_to_utf16", "scalar", b8, b16, [&] { scalar::utf8_to_utf16(utf8, out16.data()); });
  std::span<const uint16_t> u16span(utf16);
  bench_one("utf16_to_utf8", "simd", b16, b8, [&] { utf16_to_utf8(u16span, out8.data()); });
  bench_one("utf16_to_utf8", "scalar", b16, b8, [&] { scalar::utf16_to_utf8(u16span, out8.data()); });
  return records;
}

std::vector<BenchRecord> run_prefix_sweep(const std::string& dataset,
                                          std::span<const uint8_t> utf8, double budget_seconds) {
  std::vector<BenchRecord> records;
  std::vector<uint16_t> out16(utf8.size() + 8);
  const auto budget_ns = static_cast<uint64_t>(budget_seconds * 1e9);

  std::vector<std::size_t> lens;
  for (std::size_t len = 16; len < utf8.size(); len *= 2) lens.push_back(len);
  if (!utf8.empty()) lens.push_back(utf8.size());

  for (std::size_t len : lens) {
    // Back the prefix up to a character boundary.
    std::size_t cut = len;
    while (cut < utf8.size() && cut > 0 && (utf8[cut] & 0xC0) == 0x80) cut--;
    std::span<const uint8_t> prefix = utf8.first(cut);
    const uint64_t chars = scalar::count_codepoints_utf8(prefix).value_or(0);

    uint64_t min_ns = UINT64_MAX, reps = 0;
    double total = 0;
    while (total < static_cast<double>(budget_ns)) {
      const uint64_t t0 = now_ns();
      utf8_to_utf16(prefix, out16.data(), /*validate=*/true);
      const uint64_t dt = now_ns() - t0;
      min_ns = std::min(min_ns, dt);
      total += static_cast<double>(dt);
      reps++;
    }
    std::string name = dataset + ":" + std::to_string(cut);
    records.push_back(make_record(name, "utf8_to_utf16", "simd", chars, cut, 0, reps, min_ns,
                                  total / static_cast<double>(reps)));
  }
  return records;
}

std::optional<CorpusStats> compute_stats(std::span<const uint8_t> utf8) {
  uint64_t hist[5] = {};
  std::size_t p = 0;
  while (p < utf8.size()) {
    auto dc = scalar::decode_utf8_char(utf8, p);
    if (!dc) return std::nullopt;
    hist[dc->length]++;
    p += dc->length;
  }
  CorpusStats s;
  s.chars = hist[1] + hist[2] + hist[3] + hist[4];
  if (s.chars == 0) return s;
  const double n = static_cast<double>(s.chars);
  s.pct_1byte = 100.0 * hist[1] / n;
  s.pct_2byte = 100.0 * hist[2] / n;
  s.pct_3byte = 100.0 * hist[3] / n;
  s.pct_4byte = 100.0 * hist[4] / n;
  s.avg_bytes_per_char_utf8 = (1.0 * hist[1] + 2.0 * hist[2] + 3.0 * hist[3] + 4.0 * hist[4]) / n;
  // UTF-16: 2 bytes per BMP character, 4 per supplemental.
  s.avg_bytes_per_char_utf16 = (2.0 * (hist[1] + hist[2] + hist[3]) + 4.0 * hist[4]) / n;
  return s;
}

namespace {

std::vector<uint16_t> units_from_bytes(std::span<const uint8_t> b, bool big_endian) {
  std::vector<uint16_t> u(b.size() / 2);
  for (std::size_t i = 0; i < u.size(); i++) {
    u[i] = big_endian ? static_cast<uint16_t>((b[2 * i] << 8) | b[2 * i + 1])
                      : static_cast<uint16_t>(b[2 * i] | (b[2 * i + 1] << 8));
  }
  return u;
}

void append_units(std::vector<uint8_t>& out, std::span<const uint16_t> u, bool big_endian) {
  for (uint16_t w : u) {
    if (big_endian) {
      out.push_back(static_cast<uint8_t>(w >> 8));
      out.push_back(static_cast<uint8_t>(w));
    } else {
      out.push_back(static_cast<uint8_t>(w));
      out.push_back(static_cast<uint8_t>(w >> 8));
    }
  }
}

}  // namespace

TranscodeFileResult transcode_bytes(std::span<const uint8_t> in, Format from, Format to,
                                    BomPolicy bom) {
  TranscodeFileResult r;
  bool had_bom = false;

  // BOM detection and stripping on the input side.
  if (from == Format::utf8) {
    if (in.size() >= 3 && in[0] == 0xEF && in[1] == 0xBB && in[2] == 0xBF) {
      had_bom = true;
      in = in.subspan(3);
      r.message = "warning: UTF-8 BOM stripped from input\n";
    }
  } else {
    if (in.size() >= 2) {
      const bool le_bom = in[0] == 0xFF && in[1] == 0xFE;
      const bool be_bom = in[0] == 0xFE && in[1] == 0xFF;
      if ((le_bom && from == Format::utf16be) || (be_bom && from == Format::utf16le)) {
        r.exit_code = 1;
        r.message = "error: byte-order mark conflicts with declared endianness";
        return r;
      }
      if (le_bom || be_bom) {
        had_bom = true;
        in = in.subspan(2);
      }
    }
    if (in.size() % 2 != 0) {
      r.exit_code = 1;
      r.message = "error: odd byte count for UTF-16 input";
      return r;
    }
  }

  // Decode to code units / bytes and transcode via the SIMD paths.
  std::vector<uint16_t> units;
  std::vector<uint16_t> out_units;
  std::vector<uint8_t> out_bytes;
  if (from == Format::utf8) {
    if (to == Format::utf8) {
      if (!validate_utf8(in)) {
        // Exact index via the scalar codec.
        std::vector<uint16_t> tmp(in.size() + 8);
        auto res = scalar::utf8_to_utf16(in, tmp.data());
        r.exit_code = 1;
        r.message = "error: invalid UTF-8 at byte " + std::to_string(res.error_at.value_or(0));
        return r;
      }
      out_bytes.assign(in.begin(), in.end());
    } else {
      TranscodeResult res;
      out_units = utf8_to_utf16(in, /*validate=*/true, res);
      if (!res.ok()) {
        r.exit_code = 1;
        r.message = "error: invalid UTF-8 at byte " + std::to_string(*res.error_at);
        return r;
      }
    }
  } else {
    units = units_from_bytes(in, from == Format::utf16be);
    if (to == Format::utf8) {
      TranscodeResult res;
      out_bytes = utf16_to_utf8(units, res);
      if (!res.ok()) {
        r.exit_code = 1;
        r.message = "error: invalid UTF-16 at unit " + std::to_string(*res.error_at);
        return r;
      }
    } else {
      if (auto err = validate_utf16(units)) {
        r.exit_code = 1;
        r.message = "error: invalid UTF-16 at unit " + std::to_string(*err);
        return r;
      }
      out_units = units;
    }
  }

  // Serialize with BOM policy.
  const bool want_bom = bom == BomPolicy::add || (bom == BomPolicy::keep && had_bom);
  if (to == Format::utf8) {
    r.output.clear();
    if (want_bom) r.output.insert(r.output.end(), {0xEF, 0xBB, 0xBF});
    r.output.insert(r.output.end(), out_bytes.begin(), out_bytes.end());
  } else {
    const bool be = to == Format::utf16be;
    if (want_bom) {
      const uint16_t bom_unit = 0xFEFF;
      append_units(r.output, std::span(&bom_unit, 1), be);
    }
    append_units(r.output, out_units, be);
  }
  return r;
}

namespace {

// Character-class mixes mirroring the corpus profiles: percentages of
// 1-, 2-, 3- and 4-byte characters.
struct ClassMix {
  int pct[4];
};
constexpr ClassMix kMixes[] = {
    {100, 0, 0, 0},   // pure ASCII
    {22, 78, 0, 0},   // Arabic-like
    {1, 0, 99, 0},    // Chinese-like
    {0, 0, 0, 100},   // emoji
    {25, 25, 25, 25}, // uniform
    {50, 0, 50, 0},   // ASCII + asiatic
};

uint32_t random_scalar_of_class(std::mt19937_64& rng, int cls) {
  switch (cls) {
    case 0:
      return rng() % 0x80;
    case 1:
      return 0x80 + rng() % (0x800 - 0x80);
    case 2: {
      uint32_t cp;
      do {
        cp = 0x800 + rng() % (0x10000 - 0x800);
      } while (cp >= kSurrogateFirst && cp <= kSurrogateLast);
      return cp;
    }
    default:
      return 0x10000 + rng() % (0x110000 - 0x10000);
  }
}

std::vector<uint8_t> gen_valid_utf8(std::mt19937_64& rng, std::size_t max_len) {
  const ClassMix& mix = kMixes[rng() % std::size(kMixes)];
  const std::size_t target = max_len == 0 ? 0 : rng() % (max_len + 1);
  std::vector<uint8_t> out;
  out.reserve(target + 4);
  while (out.size() < target) {
    int roll = static_cast<int>(rng() % 100);
    int cls = 0;
    for (int k = 0; k < 4; k++) {
      if (roll < mix.pct[k]) {
        cls = k;
        break;
      }
      roll -= mix.pct[k];
    }
    uint8_t buf[4];
    const unsigned len = scalar::encode_utf8(random_scalar_of_class(rng, cls), buf);
    out.insert(out.end(), buf, buf + len);
  }
  return out;
}

struct Divergence {
  bool found = false;
  std::string what;
};

Divergence check_utf8_case(std::span<const uint8_t> input) {
  TranscodeResult sres;
  std::vector<uint16_t> sout = scalar::utf8_to_utf16(input, sres);
  TranscodeResult vres;
  std::vector<uint16_t> vout = utf8_to_utf16(input, /*validate=*/true, vres);
  if (sres != vres || sout != vout) return {true, "utf8_to_utf16 validating"};
  if (sres.ok()) {
    TranscodeResult nres;
    std::vector<uint16_t> nout = utf8_to_utf16(input, /*validate=*/false, nres);
    if (nres != sres || nout != sout) return {true, "utf8_to_utf16 non-validating"};
    // Round trip back through the SIMD utf16->utf8 path.
    TranscodeResult bres;
    std::vector<uint8_t> back = utf16_to_utf8(sout, bres);
    if (!bres.ok() || back.size() != input.size() ||
        !std::equal(back.begin(), back.end(), input.begin()))
      return {true, "utf16_to_utf8 round trip"};
  }
  return {};
}

Divergence check_utf16_case(std::span<const uint16_t> input) {
  TranscodeResult sres;
  std::vector<uint8_t> sout = scalar::utf16_to_utf8(input, sres);
  TranscodeResult vres;
  std::vector<uint8_t> vout = utf16_to_utf8(input, vres);
  if (sres != vres || sout != vout) return {true, "utf16_to_utf8"};
  return {};
}

}  // namespace

FuzzReport run_fuzz(uint64_t seed, uint64_t iterations, std::size_t max_len) {
  std::mt19937_64 rng(seed);
  FuzzReport report;
  for (uint64_t it = 0; it < iterations; it++) {
    report.iterations++;
    const int kind = static_cast<int>(it % 3);
    std::vector<uint8_t> input;
    if (kind == 0) {
      const std::size_t len = max_len == 0 ? 0 : rng() % (max_len + 1);
      input.resize(len);
      for (auto& b : input) b = static_cast<uint8_t>(rng());
    } else {
      input = gen_valid_utf8(rng, max_len);
      if (kind == 2 && !input.empty()) input[rng() % input.size()] ^= 1u << (rng() % 8);
    }

    Divergence d = check_utf8_case(input);
    if (!d.found) {
      std::vector<uint16_t> units = units_from_bytes(input, false);
      Divergence d16 = check_utf16_case(units);
      if (d16.found) d = d16;
    }
    if (d.found) {
      report.divergences++;
      if (report.detail.empty()) {
        // Minimize: drop bytes from the back, then the front, while the
        // divergence persists.
        std::vector<uint8_t> mini = input;
        auto diverges = [](std::span<const uint8_t> s) {
          if (check_utf8_case(s).found) return true;
          std::vector<uint16_t> u = units_from_bytes(s, false);
          return check_utf16_case(u).found;
        };
        while (!mini.empty()) {
          std::vector<uint8_t> t(mini.begin(), mini.end() - 1);
          if (!diverges(t)) break;
          mini = std::move(t);
        }
        while (!mini.empty()) {
          std::vector<uint8_t> t(mini.begin() + 1, mini.end());
          if (!diverges(t)) break;
          mini = std::move(t);
        }
        report.detail = d.what + " input=" + hex(mini);
      }
    }
  }
  return report;
}

}  // namespace vtrans::harness
