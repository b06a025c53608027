#include "vtrans/transcode_tables.hpp"

#include <cstdio>
#include <random>

namespace vtrans {

namespace {

constexpr uint8_t kZeroLane = 0x80;

// Lengths of the characters ending at the set bits of z12, in order.
// A length above 4 (or a window with no usable boundary) disqualifies
// the prefix from every vectorized case.
unsigned extract_lengths(uint16_t z12, std::array<uint8_t, 12>& lengths) {
  unsigned count = 0;
  unsigned start = 0;
  for (unsigned e = 0; e < 12; e++) {
    if (z12 & (1u << e)) {
      lengths[count++] = static_cast<uint8_t>(e - start + 1);
      start = e + 1;
    }
  }
  return count;
}

}  // namespace

ClassifiedBitset classify_bitset(uint16_t z12) {
  std::array<uint8_t, 12> lengths{};
  const unsigned count = extract_lengths(z12, lengths);

  ClassifiedBitset c;
  auto all_at_most = [&](unsigned n, uint8_t maxlen) {
    if (count < n) return false;
    for (unsigned i = 0; i < n; i++)
      if (lengths[i] > maxlen) return false;
    return true;
  };

  if (all_at_most(6, 2)) {
    c.case_id = 1;
    c.num_chars = 6;
    for (unsigned i = 0; i < 6; i++) {
      c.lengths[i] = lengths[i];
      c.consumed += lengths[i];
      c.mask_key |= static_cast<unsigned>(lengths[i] - 1) << i;
    }
  } else if (all_at_most(4, 3)) {
    c.case_id = 2;
    c.num_chars = 4;
    unsigned pow = 1;
    for (unsigned i = 0; i < 4; i++) {
      c.lengths[i] = lengths[i];
      c.consumed += lengths[i];
      c.mask_key += static_cast<unsigned>(lengths[i] - 1) * pow;
      pow *= 3;
    }
  } else if (all_at_most(2, 4)) {
    c.case_id = 3;
    c.num_chars = 2;
    c.lengths[0] = lengths[0];
    c.lengths[1] = lengths[1];
    c.consumed = lengths[0] + lengths[1];
    c.mask_key = (lengths[0] - 1u) + 4u * (lengths[1] - 1u);
  }
  return c;
}

Utf8Tables build_utf8_tables() {
  Utf8Tables t;

  // Case 1: six characters into 16-bit lanes. A 2-byte character lands
  // as (trail, lead) so the kernel's 0x1F00 isolation picks the lead bits.
  for (unsigned key = 0; key < 64; key++) {
    auto& m = t.masks[key];
    m.fill(kZeroLane);
    unsigned j = 0;
    for (unsigned i = 0; i < 6; i++) {
      const unsigned len = 1 + ((key >> i) & 1);
      if (len == 1) {
        m[2 * i] = static_cast<uint8_t>(j);
      } else {
        m[2 * i] = static_cast<uint8_t>(j + 1);
        m[2 * i + 1] = static_cast<uint8_t>(j);
      }
      j += len;
    }
  }
  t.case1_end = 64;

  // Cases 2 and 3: characters right-aligned into 32-bit lanes in reversed
  // byte order (lane byte 0 = last byte of the character).
  auto reversed_lane = [](std::array<uint8_t, 16>& m, unsigned lane, unsigned j, unsigned len) {
    for (unsigned b = 0; b < len; b++) m[4 * lane + b] = static_cast<uint8_t>(j + len - 1 - b);
  };

  for (unsigned key = 0; key < 81; key++) {
    auto& m = t.masks[64 + key];
    m.fill(kZeroLane);
    unsigned j = 0, k = key;
    for (unsigned i = 0; i < 4; i++) {
      const unsigned len = 1 + (k % 3);
      k /= 3;
      reversed_lane(m, i, j, len);
      j += len;
    }
  }
  t.case2_end = 64 + 81;

  for (unsigned key = 0; key < 16; key++) {
    auto& m = t.masks[145 + key];
    m.fill(kZeroLane);
    unsigned j = 0;
    const unsigned l0 = 1 + (key & 3);
    const unsigned l1 = 1 + (key >> 2);
    reversed_lane(m, 0, j, l0);
    j += l0;
    reversed_lane(m, 1, j, l1);
  }

  for (unsigned z = 0; z < 4096; z++) {
    const ClassifiedBitset c = classify_bitset(static_cast<uint16_t>(z));
    Utf8TableEntry e{};
    e.case_id = static_cast<uint8_t>(c.case_id);
    e.consumed = static_cast<uint8_t>(c.case_id == 0 ? 0 : c.consumed);
    if (c.case_id == 1)
      e.mask_index = static_cast<uint8_t>(c.mask_key);
    else if (c.case_id == 2)
      e.mask_index = static_cast<uint8_t>(64 + c.mask_key);
    else if (c.case_id == 3)
      e.mask_index = static_cast<uint8_t>(145 + c.mask_key);
    t.main[z] = e;
  }
  return t;
}

Utf16PackTables build_utf16_tables() {
  Utf16PackTables t;

  // Table A: source is the interleaved pre-spread register where unit i
  // occupies bytes (2i, 2i+1) = (ascii char or trail, lead).
  for (unsigned key = 0; key < 256; key++) {
    auto& e = t.ascii_bitset[key];
    e.mask.fill(kZeroLane);
    unsigned out = 0;
    for (unsigned i = 0; i < 8; i++) {
      if (key & (1u << i)) {
        e.mask[out++] = static_cast<uint8_t>(2 * i);
      } else {
        e.mask[out++] = static_cast<uint8_t>(2 * i + 1);
        e.mask[out++] = static_cast<uint8_t>(2 * i);
      }
    }
    e.bytes_written = static_cast<uint8_t>(out);
  }

  // Table B: source is four 32-bit lanes, unit i's candidate output bytes
  // at lane offsets 0..len-1. Class fields above 2 cannot arise from BMP
  // input; their entries follow the same len = field + 1 rule so the
  // table stays total.
  for (unsigned key = 0; key < 256; key++) {
    auto& e = t.class_code[key];
    e.mask.fill(kZeroLane);
    unsigned out = 0;
    for (unsigned i = 0; i < 4; i++) {
      const unsigned len = 1 + ((key >> (2 * i)) & 3);
      for (unsigned b = 0; b < len && out < 16; b++)
        e.mask[out++] = static_cast<uint8_t>(4 * i + b);
    }
    e.bytes_written = static_cast<uint8_t>(out);
  }
  return t;
}

namespace {
Utf8Tables& utf8_tables_mutable() {
  static Utf8Tables t = build_utf8_tables();
  return t;
}
Utf16PackTables& utf16_tables_mutable() {
  static Utf16PackTables t = build_utf16_tables();
  return t;
}
}  // namespace

const Utf8Tables& utf8_tables() { return utf8_tables_mutable(); }
const Utf16PackTables& utf16_tables() { return utf16_tables_mutable(); }

std::string dump_tables_hex() {
  std::string s;
  char buf[64];
  const Utf8Tables& u8 = utf8_tables();
  s += "# utf8 main table: 4096 entries (consumed, mask_index, case_id)\n";
  for (unsigned z = 0; z < 4096; z++) {
    const auto& e = u8.main[z];
    std::snprintf(buf, sizeof buf, "%03x %02x %02x %x\n", z, e.consumed, e.mask_index, e.case_id);
    s += buf;
  }
  std::snprintf(buf, sizeof buf, "# shuffle masks: %zu (case1 [0,%zu), case2 [%zu,%zu), case3 [%zu,%zu))\n",
                u8.masks.size(), u8.case1_end, u8.case1_end, u8.case2_end, u8.case2_end,
                u8.masks.size());
  s += buf;
  for (std::size_t i = 0; i < u8.masks.size(); i++) {
    std::snprintf(buf, sizeof buf, "%3zu", i);
    s += buf;
    for (uint8_t b : u8.masks[i]) {
      std::snprintf(buf, sizeof buf, " %02x", b);
      s += buf;
    }
    s += '\n';
  }
  const Utf16PackTables& u16 = utf16_tables();
  auto dump_pack = [&](const char* name, const std::array<Utf16PackEntry, 256>& tab) {
    s += "# ";
    s += name;
    s += ": 256 x 17 bytes\n";
    for (unsigned k = 0; k < 256; k++) {
      std::snprintf(buf, sizeof buf, "%02x %02x", k, tab[k].bytes_written);
      s += buf;
      for (uint8_t b : tab[k].mask) {
        std::snprintf(buf, sizeof buf, " %02x", b);
        s += buf;
      }
      s += '\n';
    }
  };
  dump_pack("utf16 table A (ascii bitset)", u16.ascii_bitset);
  dump_pack("utf16 table B (class code)", u16.class_code);
  return s;
}

std::string corrupt_tables_for_testing(uint64_t seed) {
  std::mt19937_64 rng(seed);
  Utf8Tables& t = utf8_tables_mutable();
  // Pick a mask byte that is a real source index so the corruption is
  // observable through the shuffle.
  for (;;) {
    const std::size_t mask_idx = rng() % t.masks.size();
    const std::size_t byte_idx = rng() % 16;
    uint8_t& b = t.masks[mask_idx][byte_idx];
    if (b >= 0x80) continue;
    b = static_cast<uint8_t>((b + 1) % 12);
    char buf[96];
    std::snprintf(buf, sizeof buf, "redirected utf8 shuffle mask %zu byte %zu to index %u",
                  mask_idx, byte_idx, b);
    return buf;
  }
}

}  // namespace vtrans
