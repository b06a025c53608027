#include "vtrans/utf16_to_utf8.hpp"

#include "vtrans/transcode_tables.hpp"
#include "vtrans/vec128.hpp"

namespace vtrans {

namespace {

// Even bits of a 16-bit byte-level movemask collapse to one bit per u16
// lane (both bytes of a lane carry the same comparison result).
unsigned lane_bits(uint16_t byte_mask) {
  unsigned key = 0;
  for (int i = 0; i < 8; i++) key |= ((byte_mask >> (2 * i)) & 1u) << i;
  return key;
}

// Spreads one widened half-register (4 units in 32-bit lanes) into UTF-8
// candidate bytes and compacts via table B. Returns bytes written.
template <typename V>
unsigned pack_bmp_half(V w, const Utf16PackTables& tables, uint8_t* out) {
  const V m1 = w.cmp_lt_u32(0x80);
  const V m2 = w.cmp_lt_u32(0x800);

  // Two-byte layout: 110xxxxx 10yyyyyy in lane bytes 0,1.
  const V lead2 = w.shr_u32(6) | V::splat32(0xC0);
  const V trail = (w & V::splat32(0x3F)) | V::splat32(0x80);
  const V lane2 = lead2 | trail.shl_u32(8);
  // Three-byte layout: 1110xxxx 10yyyyyy 10zzzzzz in lane bytes 0,1,2.
  const V lead3 = w.shr_u32(12) | V::splat32(0xE0);
  const V mid3 = (w.shr_u32(6) & V::splat32(0x3F)) | V::splat32(0x80);
  const V lane3 = lead3 | mid3.shl_u32(8) | trail.shl_u32(16);

  const V lane = V::blend(m1, w, V::blend(m2, lane2, lane3));

  const uint16_t mm1 = m1.movemask();
  const uint16_t mm2 = m2.movemask();
  unsigned key = 0;
  for (int i = 0; i < 4; i++) {
    const unsigned len = (mm1 >> (4 * i)) & 1 ? 1u : ((mm2 >> (4 * i)) & 1 ? 2u : 3u);
    key |= (len - 1) << (2 * i);
  }
  const Utf16PackEntry& e = tables.class_code[key];
  V::shuffle(lane, V::load(e.mask.data())).store(out);
  return e.bytes_written;
}

template <typename V>
TranscodeResult convert_impl(std::span<const uint16_t> input, uint8_t* out) {
  const uint16_t* src = input.data();
  const std::size_t n = input.size();
  const Utf16PackTables& tables = utf16_tables();

  static const uint8_t low_bytes[16] = {0,    2,    4,    6,    8,    10,   12,   14,
                                        0x80, 0x80, 0x80, 0x80, 0x80, 0x80, 0x80, 0x80};
  const V low_byte_mask = V::load(low_bytes);

  std::size_t p = 0, q = 0;
  while (p + 8 <= n) {
    const V v = V::load(src + p);
    const V is_ascii = v.cmp_lt_u16(0x0080);
    const uint16_t ascii_mm = is_ascii.movemask();
    if (ascii_mm == 0xFFFF) {
      V::shuffle(v, low_byte_mask).store(out + q);
      p += 8;
      q += 8;
      continue;
    }
    if (v.cmp_lt_u16(0x0800).movemask() == 0xFFFF) {
      // 1- and 2-byte characters. Spread each unit to (trail, lead) in
      // its byte pair, keep ASCII lanes as-is, then compact via table A.
      const V t1 = v.shl_u16(2) & V::splat16(0x1F00);
      const V t2 = v & V::splat16(0x003F);
      const V spread = V::blend(is_ascii, v, (t1 | t2) | V::splat16(0xC080));
      const Utf16PackEntry& e = tables.ascii_bitset[lane_bits(ascii_mm)];
      V::shuffle(spread, V::load(e.mask.data())).store(out + q);
      p += 8;
      q += e.bytes_written;
      continue;
    }
    const V surr = (v & V::splat16(0xF800)).cmp_eq_u16(0xD800);
    if (surr.is_zero()) {
      q += pack_bmp_half(v.widen_lo_u16(), tables, out + q);
      q += pack_bmp_half(v.widen_hi_u16(), tables, out + q);
      p += 8;
      continue;
    }
    // Surrogate present: conventional path for this register's worth of
    // units. A pair straddling the register boundary is taken whole.
    const std::size_t end = p + 8;
    while (p < end) {
      auto dc = scalar::decode_utf16_char(input, p);
      if (!dc) return TranscodeResult{p, q, p};
      uint8_t bytes[4];
      const unsigned bw = scalar::encode_utf8(dc->code_point, bytes);
      for (unsigned i = 0; i < bw; i++) out[q + i] = bytes[i];
      p += dc->length;
      q += bw;
    }
  }
  TranscodeResult tail = scalar::utf16_to_utf8(input.subspan(p), out + q);
  TranscodeResult res;
  res.consumed = p + tail.consumed;
  res.written = q + tail.written;
  if (tail.error_at) res.error_at = p + *tail.error_at;
  return res;
}

}  // namespace

TranscodeResult utf16_to_utf8(std::span<const uint16_t> input, uint8_t* out) {
#if VTRANS_HAVE_SSE
  if (active_backend() == Backend::native) return convert_impl<SseVec>(input, out);
#endif
  return convert_impl<EmuVec>(input, out);
}

std::vector<uint8_t> utf16_to_utf8(std::span<const uint16_t> input, TranscodeResult& res) {
  std::vector<uint8_t> out(3 * input.size() + 16);
  res = utf16_to_utf8(input, out.data());
  out.resize(res.written);
  return out;
}

}  // namespace vtrans
