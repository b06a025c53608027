#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace vtrans {

// Uniform return contract of every transcoder. When error_at is present,
// consumed == error_at and output[0..written) is the exact transcoding of
// the input prefix before the invalid sequence.
struct TranscodeResult {
  std::size_t consumed = 0;
  std::size_t written = 0;
  std::optional<std::size_t> error_at{};

  bool ok() const { return !error_at.has_value(); }
  friend bool operator==(const TranscodeResult&, const TranscodeResult&) = default;
};

inline constexpr uint32_t kMaxCodePoint = 0x10FFFF;
inline constexpr uint32_t kSurrogateFirst = 0xD800;
inline constexpr uint32_t kSurrogateLast = 0xDFFF;

constexpr bool is_scalar_value(uint32_t cp) {
  return cp <= kMaxCodePoint && (cp < kSurrogateFirst || cp > kSurrogateLast);
}

// Scalar reference codec. Implements the format rules exactly and serves as
// the differential oracle for the vectorized paths.
namespace scalar {

struct DecodedChar {
  uint32_t code_point;
  unsigned length;  // bytes (UTF-8) or units (UTF-16)
  friend bool operator==(const DecodedChar&, const DecodedChar&) = default;
};

// Decodes one character starting at pos. Enforces the full rule set:
// forbidden high bytes, continuation agreement in both directions,
// shortest-form minima, the 0x10FFFF cap and the surrogate exclusion.
// Truncation at end of input is malformed at the leading byte.
std::optional<DecodedChar> decode_utf8_char(std::span<const uint8_t> bytes, std::size_t pos);

// Shortest-form encoding; precondition: is_scalar_value(cp). Returns length 1..4.
unsigned encode_utf8(uint32_t cp, uint8_t out[4]);

// BMP values pass through; supplemental values become a surrogate pair.
// Returns 1 or 2.
unsigned encode_utf16(uint32_t cp, uint16_t out[2]);

std::optional<DecodedChar> decode_utf16_char(std::span<const uint16_t> units, std::size_t pos);

// Full validating transcoders; stop at the first invalid sequence.
// Output capacity: at least input.size() units / 3 * input.size() bytes.
TranscodeResult utf8_to_utf16(std::span<const uint8_t> input, uint16_t* out);
TranscodeResult utf16_to_utf8(std::span<const uint16_t> input, uint8_t* out);

// Convenience wrappers that allocate.
std::vector<uint16_t> utf8_to_utf16(std::span<const uint8_t> input, TranscodeResult& res);
std::vector<uint8_t> utf16_to_utf8(std::span<const uint16_t> input, TranscodeResult& res);

// Code-point counts; nullopt when the input is not valid in its format.
std::optional<std::size_t> count_codepoints_utf8(std::span<const uint8_t> bytes);
std::optional<std::size_t> count_codepoints_utf16(std::span<const uint16_t> units);

}  // namespace scalar
}  // namespace vtrans
