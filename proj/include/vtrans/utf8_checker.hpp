#pragma once

// Internal: register-resident UTF-8 stream checker over 16-byte chunks.
// Shared by the standalone validator and the validating transcoder driver,
// which keeps the state in vector registers across blocks.

#include <cstdint>

namespace vtrans::detail {

// Error classes for the nibble-lookup classification of adjacent byte
// pairs. A pair contributes the intersection of the classes selected by
// the first byte's high nibble, the first byte's low nibble and the
// second byte's high nibble; any surviving bit is a rule violation,
// except TWO_CONTS which must appear exactly at positions forced to be
// the 3rd/4th byte of a longer sequence.
inline constexpr uint8_t TOO_SHORT = 1 << 0;   // lead followed by another lead/ASCII
inline constexpr uint8_t TOO_LONG = 1 << 1;    // ASCII followed by a continuation
inline constexpr uint8_t OVERLONG_3 = 1 << 2;  // E0 with continuation < A0
inline constexpr uint8_t TOO_LARGE = 1 << 3;   // F4 with continuation >= 90, F5..
inline constexpr uint8_t SURROGATE = 1 << 4;   // ED with continuation >= A0
inline constexpr uint8_t OVERLONG_2 = 1 << 5;  // C0/C1
inline constexpr uint8_t TOO_LARGE_1000 = 1 << 6;
inline constexpr uint8_t OVERLONG_4 = 1 << 6;  // F0 with continuation < 90
inline constexpr uint8_t TWO_CONTS = 1 << 7;   // continuation followed by continuation
inline constexpr uint8_t CARRY = TOO_SHORT | TOO_LONG | TWO_CONTS;

template <typename V>
V special_cases(V input, V prev1) {
  static const uint8_t tab_1_high[16] = {
      // 0xxx: ASCII lead
      TOO_LONG, TOO_LONG, TOO_LONG, TOO_LONG, TOO_LONG, TOO_LONG, TOO_LONG, TOO_LONG,
      // 10xx: continuation
      TWO_CONTS, TWO_CONTS, TWO_CONTS, TWO_CONTS,
      // 1100 / 1101: two-byte lead
      TOO_SHORT | OVERLONG_2, TOO_SHORT,
      // 1110: three-byte lead
      TOO_SHORT | OVERLONG_3 | SURROGATE,
      // 1111: four-byte lead (or forbidden F8..FF)
      TOO_SHORT | TOO_LARGE | TOO_LARGE_1000 | OVERLONG_4};
  static const uint8_t tab_1_low[16] = {
      CARRY | OVERLONG_3 | OVERLONG_2 | OVERLONG_4,
      CARRY | OVERLONG_2,
      CARRY,
      CARRY,
      CARRY | TOO_LARGE,
      CARRY | TOO_LARGE | TOO_LARGE_1000,
      CARRY | TOO_LARGE | TOO_LARGE_1000,
      CARRY | TOO_LARGE | TOO_LARGE_1000,
      CARRY | TOO_LARGE | TOO_LARGE_1000,
      CARRY | TOO_LARGE | TOO_LARGE_1000,
      CARRY | TOO_LARGE | TOO_LARGE_1000,
      CARRY | TOO_LARGE | TOO_LARGE_1000,
      CARRY | TOO_LARGE | TOO_LARGE_1000,
      CARRY | TOO_LARGE | TOO_LARGE_1000 | SURROGATE,
      CARRY | TOO_LARGE | TOO_LARGE_1000,
      CARRY | TOO_LARGE | TOO_LARGE_1000};
  static const uint8_t tab_2_high[16] = {
      // second byte is ASCII/lead: wrong after any multi-byte lead
      TOO_SHORT, TOO_SHORT, TOO_SHORT, TOO_SHORT, TOO_SHORT, TOO_SHORT, TOO_SHORT, TOO_SHORT,
      // 1000
      TOO_LONG | OVERLONG_2 | TWO_CONTS | OVERLONG_3 | TOO_LARGE_1000 | OVERLONG_4,
      // 1001
      TOO_LONG | OVERLONG_2 | TWO_CONTS | OVERLONG_3 | TOO_LARGE,
      // 101x
      TOO_LONG | OVERLONG_2 | TWO_CONTS | SURROGATE | TOO_LARGE,
      TOO_LONG | OVERLONG_2 | TWO_CONTS | SURROGATE | TOO_LARGE,
      // 11xx
      TOO_SHORT, TOO_SHORT, TOO_SHORT, TOO_SHORT};

  const V nib_mask = V::splat8(0x0F);
  const V byte_1_high = V::shuffle(V::load(tab_1_high), prev1.shr_u16(4) & nib_mask);
  const V byte_1_low = V::shuffle(V::load(tab_1_low), prev1 & nib_mask);
  const V byte_2_high = V::shuffle(V::load(tab_2_high), input.shr_u16(4) & nib_mask);
  return byte_1_high & byte_1_low & byte_2_high;
}

template <typename V>
V check_multibyte_lengths(V input, V prev_input, V sc) {
  const V prev2 = V::template prev<2>(input, prev_input);
  const V prev3 = V::template prev<3>(input, prev_input);
  // Bit 7 set exactly where the byte must be the 3rd (after 111x____)
  // or 4th (after 1111____) byte of a sequence.
  const V is_third = prev2.sat_sub_u8(V::splat8(0xE0 - 0x80));
  const V is_fourth = prev3.sat_sub_u8(V::splat8(0xF0 - 0x80));
  const V must23_80 = (is_third | is_fourth) & V::splat8(0x80);
  return must23_80 ^ sc;
}

// Nonzero bytes where the chunk ends with a lead whose continuations
// extend past the chunk.
template <typename V>
V incomplete_mask(V input) {
  static const uint8_t max_arr[16] = {0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF,
                                      0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xF0 - 1, 0xE0 - 1,
                                      0xC0 - 1};
  return input.sat_sub_u8(V::load(max_arr));
}

template <typename V>
struct CheckerState {
  V error;
  V prev_input;
  V prev_incomplete;

  void check_chunk(V input) {
    if (input.movemask() == 0) {
      // ASCII chunk: only a pending incomplete sequence can be wrong.
      error = error | prev_incomplete;
      prev_incomplete = V::zero();
      prev_input = input;
      return;
    }
    const V sc = special_cases(input, V::template prev<1>(input, prev_input));
    error = error | check_multibyte_lengths(input, prev_input, sc);
    prev_incomplete = incomplete_mask(input);
    prev_input = input;
  }

  // One 64-byte block at once, with a block-level ASCII short-circuit.
  void check_block(V b0, V b1, V b2, V b3) {
    if ((((b0 | b1) | (b2 | b3))).movemask() == 0) {
      error = error | prev_incomplete;
      prev_incomplete = V::zero();
      prev_input = b3;
      return;
    }
    check_chunk(b0);
    check_chunk(b1);
    check_chunk(b2);
    check_chunk(b3);
  }

  bool ok_so_far() const { return error.is_zero(); }
  // End-of-input check: also rejects a dangling incomplete sequence.
  bool finish() const { return error.is_zero() && prev_incomplete.is_zero(); }
};

}  // namespace vtrans::detail
