#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

namespace vtrans {

// Streaming UTF-8 validator over 64-byte blocks. The state carries the
// previous 16 input bytes (for sequences straddling block seams) plus the
// pending-incomplete marker for a sequence cut off at the block end.
// No error index at this layer; callers re-scan with the scalar codec
// when they need the exact position.
struct Utf8BlockValidator {
  std::array<uint8_t, 16> error{};
  std::array<uint8_t, 16> prev_input{};
  std::array<uint8_t, 16> prev_incomplete{};

  void feed(const uint8_t* block64);
  bool ok_so_far() const;
  // End-of-input check: also rejects a dangling incomplete sequence.
  bool finish() const;
};

// Whole-buffer validation: 64-byte blocks plus a zero-padded final block.
bool validate_utf8(std::span<const uint8_t> bytes);

// Vectorized surrogate scan with scalar pairing checks where needed.
// Returns the index of the first offending unit, or nullopt when valid.
std::optional<std::size_t> validate_utf16(std::span<const uint16_t> units);

}  // namespace vtrans
