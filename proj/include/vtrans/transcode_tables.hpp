#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace vtrans {

// UTF-8 -> UTF-16 main table entry, keyed by the 12-bit end-of-character
// bitset over a 12-byte window. A set bit marks the final byte of a
// character. case 1: six characters of 1-2 bytes (16-bit lane kernel);
// case 2: four characters of 1-3 bytes (32-bit lane kernel); case 3: two
// characters of 1-4 bytes (32-bit lane kernel with surrogate synthesis).
// case 0 = fallback: the bitset cannot arise from valid UTF-8 at a
// character boundary; the driver delegates to the scalar codec.
//
// The key is the full 12-bit bitset (4096 entries). A denser 1024-entry
// keying is possible; we keep the direct keying, which changes nothing
// observable (see README).
struct Utf8TableEntry {
  uint8_t consumed;    // bytes consumed; 0 iff fallback
  uint8_t mask_index;  // into Utf8Tables::masks
  uint8_t case_id;     // 0 = fallback, 1..3
};

struct Utf8Tables {
  std::array<Utf8TableEntry, 4096> main{};
  // Shuffle masks, case-1 block first, then case-2, then case-3.
  // Mask bytes are source indexes in [0,12) or the 0x80 zero sentinel.
  std::array<std::array<uint8_t, 16>, 161> masks{};
  std::size_t case1_end = 0;  // masks[0..case1_end) belong to case 1
  std::size_t case2_end = 0;  // masks[case1_end..case2_end) belong to case 2
};

struct ClassifiedBitset {
  int case_id = 0;          // 0 = fallback
  unsigned consumed = 0;    // sum of the covered character lengths
  unsigned num_chars = 0;   // 6, 4 or 2
  std::array<uint8_t, 6> lengths{};  // lengths of the covered characters
  unsigned mask_key = 0;    // dense per-case mask index
};

// Applies the case priority to a 12-bit end-of-character bitset.
// All 4096 patterns are accepted; structurally impossible ones classify
// as fallback.
ClassifiedBitset classify_bitset(uint16_t z12);

// UTF-16 -> UTF-8 compaction table entry: 17 bytes when serialized
// (bytes_written then the 16-byte shuffle mask).
struct Utf16PackEntry {
  uint8_t bytes_written;
  std::array<uint8_t, 16> mask;
};

struct Utf16PackTables {
  // Keyed by the 8-bit is-ASCII bitset over 8 units; compacts interleaved
  // (trail, lead) byte pairs to 1 or 2 bytes per unit.
  std::array<Utf16PackEntry, 256> ascii_bitset{};
  // Keyed by an 8-bit class code, 2 bits per unit over 4 widened units,
  // field value = output length - 1, unit 0 in the low bits; compacts
  // 4x32-bit spread lanes to 1..3 bytes per unit.
  std::array<Utf16PackEntry, 256> class_code{};
};

const Utf8Tables& utf8_tables();
const Utf16PackTables& utf16_tables();

// Deterministic builders (utf8_tables()/utf16_tables() cache one instance).
Utf8Tables build_utf8_tables();
Utf16PackTables build_utf16_tables();

// Hex dump of all tables for snapshot diffing (`vtrans tables dump`).
std::string dump_tables_hex();

// Serialized size of one UTF-16 pack table: 256 entries x 17 bytes.
inline constexpr std::size_t kUtf16PackTableBytes = 256 * 17;

// Testing hook: flips one byte in a shuffle mask of the process-wide
// tables (mutation mode of the differential fuzzer). Returns a textual
// description of the corruption.
std::string corrupt_tables_for_testing(uint64_t seed);

}  // namespace vtrans
