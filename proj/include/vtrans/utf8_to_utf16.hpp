#pragma once

#include "vtrans/codec_core.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vtrans {

// Per-path hit counts for the UTF-8 -> UTF-16 driver.
struct PathCounters {
  uint64_t total_bytes = 0;
  uint64_t ascii64_blocks = 0;
  uint64_t ascii64_bytes = 0;
  uint64_t fast_ascii16 = 0;
  uint64_t fast_twobyte16 = 0;
  uint64_t fast_threebyte12 = 0;
  uint64_t block12 = 0;
  uint64_t scalar_fallback_chars = 0;
  uint64_t inner_iterations = 0;
};

// SIMD UTF-8 -> UTF-16LE transcoder. Output capacity: at least
// input.size() units. With validate=true the result is identical to the
// scalar reference on every input, including the error index. With
// validate=false the behavior on invalid input is unspecified but
// memory-safe.
TranscodeResult utf8_to_utf16(std::span<const uint8_t> input, uint16_t* out, bool validate,
                              PathCounters* counters = nullptr);

std::vector<uint16_t> utf8_to_utf16(std::span<const uint8_t> input, bool validate,
                                    TranscodeResult& res, PathCounters* counters = nullptr);

}  // namespace vtrans
