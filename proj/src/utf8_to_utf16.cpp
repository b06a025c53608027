#include "vtrans/utf8_to_utf16.hpp"

#include "vtrans/transcode_tables.hpp"
#include "vtrans/utf8_checker.hpp"
#include "vtrans/vec128.hpp"

namespace vtrans {

namespace {

// The driver never reads past p + 67: the inner loop stops 12 bytes
// before the block end and each kernel loads 16 bytes.
constexpr std::size_t kBlockMargin = 68;

// Six (or eight, for the 0xaaaa fast path) characters of 1-2 bytes,
// already shuffled into 16-bit lanes as (trail, lead).
template <typename V>
V compose_case1(V perm) {
  const V ascii = perm & V::splat16(0x007F);
  const V highbyte = perm & V::splat16(0x1F00);
  return ascii | highbyte.shr_u16(2);
}

// Characters of 1-3 bytes in 32-bit lanes, last byte lowest.
template <typename V>
V compose_case2(V perm) {
  const V ascii = perm & V::splat32(0x0000007F);
  const V middle = (perm & V::splat32(0x00003F00)).shr_u32(2);
  const V high = (perm & V::splat32(0x000F0000)).shr_u32(4);
  return ascii | middle | high;
}

// Two characters of 1-4 bytes in 32-bit lanes; emits 1 unit per BMP
// character, a surrogate pair per supplemental one.
template <typename V>
unsigned emit_case3(V perm, uint16_t* out) {
  const V ascii = perm & V::splat32(0x0000007F);
  const V middle = (perm & V::splat32(0x00003F00)).shr_u32(2);
  // Third byte: 6 data bits for a 4-byte character, but for a 3-byte
  // character it is the leading byte with 4 data bits and a spurious
  // 1 at bit 5; that byte's 7th bit (1 for 3-byte leads, 0 for
  // continuations) drives the conditional reset.
  V middlehigh = perm & V::splat32(0x003F0000);
  const V correct = (perm & V::splat32(0x00400000)).shr_u32(1);
  middlehigh = (middlehigh ^ correct).shr_u32(4);
  const V high = (perm & V::splat32(0x07000000)).shr_u32(6);
  const V composed = ascii | middle | middlehigh | high;

  // Surrogate synthesis: subtract 0x10000, split 10+10 bits, add the
  // D800/DC00 bases (high surrogate in the low half of the lane).
  const V shifted = composed.sub_u32(V::splat32(0x10000));
  const V low10 = (shifted & V::splat32(0x3FF)).add_u32(V::splat32(0xDC00));
  const V high10 = shifted.shr_u32(10).add_u32(V::splat32(0xD800));
  const V surrogates = high10 | low10.shl_u32(16);

  unsigned written = 0;
  for (int lane = 0; lane < 2; lane++) {
    const uint32_t c = composed.u32(lane);
    if (c < 0x10000) {
      out[written++] = static_cast<uint16_t>(c);
    } else {
      const uint32_t s = surrogates.u32(lane);
      out[written++] = static_cast<uint16_t>(s);
      out[written++] = static_cast<uint16_t>(s >> 16);
    }
  }
  return written;
}

template <typename V>
void widen_store_16(V in, uint16_t* out) {
  V::interleave_lo(in, V::zero()).store(out);
  V::interleave_hi(in, V::zero()).store(out + 8);
}

TranscodeResult finish_scalar(std::span<const uint8_t> input, uint16_t* out, std::size_t p,
                              std::size_t q) {
  TranscodeResult tail = scalar::utf8_to_utf16(input.subspan(p), out + q);
  TranscodeResult res;
  res.consumed = p + tail.consumed;
  res.written = q + tail.written;
  if (tail.error_at) res.error_at = p + *tail.error_at;
  return res;
}

// kValidate/kCount are compile-time so the hot loop carries neither the
// flag test nor the counter memory traffic when they are off.
template <typename V, bool kValidate, bool kCount>
TranscodeResult convert_impl(std::span<const uint8_t> input, uint16_t* out,
                             PathCounters* counters) {
  constexpr bool validate = kValidate;
  const uint8_t* src = input.data();
  const std::size_t n = input.size();
  PathCounters local;
  PathCounters& c = kCount ? *counters : local;
  c.total_bytes += n;

  const Utf8Tables& tables = utf8_tables();
  static const uint8_t swap_pairs[16] = {1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10, 13, 12, 15, 14};
  const V swap_mask = V::load(swap_pairs);
  // Mask for four 3-byte characters: case-2 key with all length digits 2.
  const V three_byte_mask = V::load(tables.masks[64 + 80].data());

  detail::CheckerState<V> vld{V::zero(), V::zero(), V::zero()};
  std::size_t vpos = 0;

  std::size_t p = 0, q = 0;
  while (p + kBlockMargin <= n) {
    const V b0 = V::load(src + p);
    const V b1 = V::load(src + p + 16);
    const V b2 = V::load(src + p + 32);
    const V b3 = V::load(src + p + 48);
    if (((b0 | b1) | (b2 | b3)).movemask() == 0) {
      if (validate && vpos < p + 64) {
        // The checker has covered [0, vpos); the remaining bytes of this
        // block, [vpos, p+64), are ASCII per the test above and validate
        // themselves, so absorb them into the checker state directly: a
        // pending incomplete sequence is now known to be broken, and the
        // continuation context becomes the block's ASCII tail.
        vld.error = vld.error | vld.prev_incomplete;
        if (!vld.ok_so_far()) return finish_scalar(input, out, p, q);
        vld.prev_incomplete = V::zero();
        vld.prev_input = b3;
        vpos = p + 64;
      }
      widen_store_16(b0, out + q);
      widen_store_16(b1, out + q + 16);
      widen_store_16(b2, out + q + 32);
      widen_store_16(b3, out + q + 48);
      p += 64;
      q += 64;
      c.ascii64_blocks++;
      c.ascii64_bytes += 64;
      continue;
    }

    if (validate) {
      // The vector path only consumes bytes already validated; the margin
      // also covers the next-block context that settles sequences ending
      // at a block seam.
      while (vpos + 64 <= n && vpos < p + kBlockMargin) {
        vld.check_block(V::load(src + vpos), V::load(src + vpos + 16), V::load(src + vpos + 32),
                        V::load(src + vpos + 48));
        if (!vld.ok_so_far()) return finish_scalar(input, out, p, q);
        vpos += 64;
      }
      if (vpos < p + kBlockMargin) break;  // cannot validate far enough ahead
    }

    // Not-continuation bitset over the block, shifted down by one so bit i
    // marks that byte p+i ends a character. Bits 0..62 are meaningful.
    uint64_t z = 0;
    z |= static_cast<uint64_t>(b0.cmp_gt_signed(-65).movemask());
    z |= static_cast<uint64_t>(b1.cmp_gt_signed(-65).movemask()) << 16;
    z |= static_cast<uint64_t>(b2.cmp_gt_signed(-65).movemask()) << 32;
    z |= static_cast<uint64_t>(b3.cmp_gt_signed(-65).movemask()) << 48;
    z >>= 1;

    const std::size_t block_start = p;
    const std::size_t m = block_start + 64 - 12;
    while (p < m) {
      c.inner_iterations++;
      // 16-bit fast paths need 16 valid bitset positions.
      if (p - block_start <= 47) {
        const uint16_t low16 = static_cast<uint16_t>(z & 0xFFFF);
        if (low16 == 0xFFFF) {
          widen_store_16(V::load(src + p), out + q);
          p += 16;
          q += 16;
          z >>= 16;
          c.fast_ascii16++;
          continue;
        }
        if (low16 == 0xAAAA) {
          const V perm = V::shuffle(V::load(src + p), swap_mask);
          compose_case1(perm).store(out + q);
          p += 16;
          q += 8;
          z >>= 16;
          c.fast_twobyte16++;
          continue;
        }
      }
      if ((z & 0xFFF) == 0b100100100100) {
        const V perm = V::shuffle(V::load(src + p), three_byte_mask);
        const V composed = compose_case2(perm);
        V::pack_u32_low16(composed, composed).store(out + q);
        p += 12;
        q += 4;
        z >>= 12;
        c.fast_threebyte12++;
        continue;
      }

      const Utf8TableEntry entry = tables.main[z & 0xFFF];
      if (entry.case_id == 0) {
        // Bitset impossible for valid UTF-8 at a character boundary.
        auto dc = scalar::decode_utf8_char(input, p);
        if (!dc) return finish_scalar(input, out, p, q);
        uint16_t units[2];
        const unsigned uw = scalar::encode_utf16(dc->code_point, units);
        for (unsigned i = 0; i < uw; i++) out[q + i] = units[i];
        p += dc->length;
        q += uw;
        z >>= dc->length;
        c.scalar_fallback_chars++;
        continue;
      }
      c.block12++;
      const V perm = V::shuffle(V::load(src + p), V::load(tables.masks[entry.mask_index].data()));
      if (entry.case_id == 1) {
        compose_case1(perm).store(out + q);
        q += 6;
      } else if (entry.case_id == 2) {
        const V composed = compose_case2(perm);
        V::pack_u32_low16(composed, composed).store(out + q);
        q += 4;
      } else {
        q += emit_case3(perm, out + q);
      }
      p += entry.consumed;
      z >>= entry.consumed;
    }
  }
  return finish_scalar(input, out, p, q);
}

}  // namespace

template <typename V>
TranscodeResult convert_dispatch(std::span<const uint8_t> input, uint16_t* out, bool validate,
                                 PathCounters* counters) {
  if (validate) {
    return counters ? convert_impl<V, true, true>(input, out, counters)
                    : convert_impl<V, true, false>(input, out, nullptr);
  }
  return counters ? convert_impl<V, false, true>(input, out, counters)
                  : convert_impl<V, false, false>(input, out, nullptr);
}

TranscodeResult utf8_to_utf16(std::span<const uint8_t> input, uint16_t* out, bool validate,
                              PathCounters* counters) {
#if VTRANS_HAVE_SSE
  if (active_backend() == Backend::native)
    return convert_dispatch<SseVec>(input, out, validate, counters);
#endif
  return convert_dispatch<EmuVec>(input, out, validate, counters);
}

std::vector<uint16_t> utf8_to_utf16(std::span<const uint8_t> input, bool validate,
                                    TranscodeResult& res, PathCounters* counters) {
  std::vector<uint16_t> out(input.size() + 8);
  res = utf8_to_utf16(input, out.data(), validate, counters);
  out.resize(res.written);
  return out;
}

}  // namespace vtrans
