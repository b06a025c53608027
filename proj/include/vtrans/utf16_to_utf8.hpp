#pragma once

#include "vtrans/codec_core.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vtrans {

// SIMD UTF-16LE -> UTF-8 transcoder (always validating; surrogate
// handling makes validation inherent). Output capacity: at least
// 3 * input.size() + 16 bytes -- the compaction stores write a full
// 16-byte register and the useful prefix is kept.
TranscodeResult utf16_to_utf8(std::span<const uint16_t> input, uint8_t* out);

std::vector<uint8_t> utf16_to_utf8(std::span<const uint16_t> input, TranscodeResult& res);

}  // namespace vtrans
