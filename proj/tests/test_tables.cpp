#include "vtrans/transcode_tables.hpp"

#include "vtrans/codec_core.hpp"
#include "vtrans/utf8_to_utf16.hpp"
#include "vtrans/vec128.hpp"

#include <doctest.h>

#include <vector>

using namespace vtrans;

namespace {

// Independent classification oracle: read the character lengths straight
// off the bitset (a set bit marks a final byte), then apply the case
// priority. Returns case 0 when no case fits.
struct RefClass {
  int case_id = 0;
  unsigned consumed = 0;
  std::vector<unsigned> lengths;
};

RefClass ref_classify(uint16_t z12) {
  std::vector<unsigned> lens;
  int prev = -1;
  for (int i = 0; i < 12; i++) {
    if (z12 & (1u << i)) {
      lens.push_back(static_cast<unsigned>(i - prev));
      prev = i;
    }
  }
  auto fits = [&](std::size_t count, unsigned max_len) {
    if (lens.size() < count) return false;
    for (std::size_t i = 0; i < count; i++)
      if (lens[i] > max_len) return false;
    return true;
  };
  RefClass r;
  std::size_t count = 0;
  if (fits(6, 2)) {
    r.case_id = 1;
    count = 6;
  } else if (fits(4, 3)) {
    r.case_id = 2;
    count = 4;
  } else if (fits(2, 4)) {
    r.case_id = 3;
    count = 2;
  } else {
    return r;
  }
  r.lengths.assign(lens.begin(), lens.begin() + count);
  for (unsigned l : r.lengths) r.consumed += l;
  return r;
}

// A representative character of each encoded length.
void append_char_of_length(std::vector<uint8_t>& out, unsigned len) {
  switch (len) {
    case 1: out.push_back('A'); break;
    case 2: out.insert(out.end(), {0xC2, 0xA3}); break;                // U+00A3
    case 3: out.insert(out.end(), {0xE9, 0x8F, 0xA1}); break;         // U+93E1
    default: out.insert(out.end(), {0xF0, 0x90, 0x8D, 0x88}); break;  // U+10348
  }
}

}  // namespace

TEST_CASE("bitset classification matches the oracle on all 4096 patterns") {
  int counts[4] = {0, 0, 0, 0};
  for (unsigned z = 0; z < 4096; z++) {
    const ClassifiedBitset c = classify_bitset(static_cast<uint16_t>(z));
    const RefClass r = ref_classify(static_cast<uint16_t>(z));
    CHECK(c.case_id == r.case_id);
    if (r.case_id != 0) {
      CHECK(c.consumed == r.consumed);
      CHECK(c.num_chars == r.lengths.size());
      for (std::size_t i = 0; i < r.lengths.size(); i++) CHECK(c.lengths[i] == r.lengths[i]);
    }
    counts[c.case_id]++;
  }
  CHECK(counts[1] + counts[2] + counts[3] + counts[0] == 4096);
  CHECK(counts[1] > 0);
  CHECK(counts[2] > 0);
  CHECK(counts[3] > 0);
  MESSAGE("case distribution: fallback=" << counts[0] << " case1=" << counts[1]
                                         << " case2=" << counts[2] << " case3=" << counts[3]);
}

TEST_CASE("classification worked examples") {
  // Six 2-byte characters: ends at odd offsets.
  auto c = classify_bitset(0b101010101010);
  CHECK(c.case_id == 1);
  CHECK(c.consumed == 12);
  // Four 3-byte characters.
  c = classify_bitset(0b100100100100);
  CHECK(c.case_id == 2);
  CHECK(c.consumed == 12);
  // Two 4-byte characters.
  c = classify_bitset(0b000010001000);
  CHECK(c.case_id == 3);
  CHECK(c.consumed == 8);
  // 4-byte then 1-byte: case 3, consumed 5.
  c = classify_bitset(0b000000011000);
  CHECK(c.case_id == 3);
  CHECK(c.consumed == 5);
  // Two 1-byte characters then a long gap: case 1 needs six characters,
  // case 2 four; only case 3 fits, consumed 2.
  c = classify_bitset(0b000000000011);
  CHECK(c.case_id == 3);
  CHECK(c.consumed == 2);
  // No bit set in the first 12 positions that completes a short character.
  c = classify_bitset(0);
  CHECK(c.case_id == 0);
}

TEST_CASE("table shapes and mask alphabet") {
  const Utf8Tables& t = utf8_tables();
  CHECK(t.main.size() == 4096);
  CHECK(t.masks.size() == 161);
  CHECK(t.case1_end == 64);
  CHECK(t.case2_end == 145);
  for (const auto& mask : t.masks)
    for (uint8_t b : mask) CHECK((b < 12 || b == 0x80));
  for (unsigned z = 0; z < 4096; z++) {
    const Utf8TableEntry& e = t.main[z];
    if (e.case_id == 0) {
      CHECK(e.consumed == 0);
      continue;
    }
    CHECK(e.consumed >= 1);
    CHECK(e.consumed <= 12);
    if (e.case_id == 1) CHECK(e.mask_index < t.case1_end);
    if (e.case_id == 2) {
      CHECK(e.mask_index >= t.case1_end);
      CHECK(e.mask_index < t.case2_end);
    }
    if (e.case_id == 3) CHECK(e.mask_index >= t.case2_end);
  }
}

TEST_CASE("distinct shuffle masks (informational)") {
  const Utf8Tables& t = utf8_tables();
  std::vector<std::array<uint8_t, 16>> seen;
  for (unsigned z = 0; z < 4096; z++) {
    const Utf8TableEntry& e = t.main[z];
    if (e.case_id == 0) continue;
    const auto& m = t.masks[e.mask_index];
    bool found = false;
    for (const auto& s : seen)
      if (s == m) {
        found = true;
        break;
      }
    if (!found) seen.push_back(m);
  }
  MESSAGE("distinct masks reachable from the main table: " << seen.size());
  CHECK(seen.size() <= 161);
}

TEST_CASE("utf16 pack tables: shapes and byte budgets") {
  const Utf16PackTables& t = utf16_tables();
  CHECK(t.ascii_bitset.size() == 256);
  CHECK(t.class_code.size() == 256);
  CHECK(kUtf16PackTableBytes == 256 * (1 + 16));
  for (unsigned key = 0; key < 256; key++) {
    unsigned expect = 0;
    for (int i = 0; i < 8; i++) expect += (key >> i) & 1 ? 1 : 2;
    CHECK(t.ascii_bitset[key].bytes_written == expect);
    unsigned expect_b = 0;
    for (int i = 0; i < 4; i++) expect_b += 1 + ((key >> (2 * i)) & 3);
    // Class-code fields above 2 (length 4) cannot arise from BMP input but
    // the entry is still defined; its budget counts the field value + 1.
    CHECK(t.class_code[key].bytes_written == expect_b);
  }
}

TEST_CASE("end-to-end equivalence for every classifiable bitset") {
  force_emulated_backend(true);
  const Utf8Tables& t = utf8_tables();
  for (unsigned z = 0; z < 4096; z++) {
    const Utf8TableEntry& e = t.main[z];
    if (e.case_id == 0) continue;
    const ClassifiedBitset c = classify_bitset(static_cast<uint16_t>(z));
    // Build a buffer whose first window realizes these character lengths,
    // padded with ASCII so the vector driver engages.
    std::vector<uint8_t> in;
    for (unsigned i = 0; i < c.num_chars; i++) append_char_of_length(in, c.lengths[i]);
    while (in.size() < 160) in.push_back('x');
    TranscodeResult sres;
    auto want = scalar::utf8_to_utf16(in, sres);
    REQUIRE(sres.ok());
    TranscodeResult vres;
    auto got = utf8_to_utf16(in, true, vres);
    CHECK(vres == sres);
    CHECK(got == want);
  }
  force_emulated_backend(false);
}

TEST_CASE("hex dump is stable and covers every table") {
  const std::string d1 = dump_tables_hex();
  const std::string d2 = dump_tables_hex();
  CHECK(d1 == d2);
  CHECK(d1.size() > 4096);
}
