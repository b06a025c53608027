#pragma once

#include <array>
#include <cstdint>
#include <cstring>

#if defined(__x86_64__) && defined(__SSE4_1__) && defined(__SSSE3__)
#define VTRANS_HAVE_SSE 1
#include <immintrin.h>
#endif

namespace vtrans {

// Which vector backend the transcoders dispatch to. Selected once before
// first use; the emulated backend can be forced for testing (flag or
// VTRANS_FORCE_EMULATED=1 in the environment).
enum class Backend { emulated, native };

Backend active_backend();
void force_emulated_backend(bool force);
bool native_backend_available();

// 16-lane byte vector, lane 0 at the lowest address. The lane-by-lane
// implementation below is the semantic definition; the SSE backend must
// match it bit for bit (checked by the backend-equivalence tests).
//
// Out-of-range shuffle indexes (>= 0x80) produce a zero lane; the kernel
// masks rely on that zeroing.
struct EmuVec {
  std::array<uint8_t, 16> b{};

  static EmuVec load(const void* p) {
    EmuVec v;
    std::memcpy(v.b.data(), p, 16);
    return v;
  }
  void store(void* p) const { std::memcpy(p, b.data(), 16); }

  static EmuVec zero() { return EmuVec{}; }

  static EmuVec splat8(uint8_t x) {
    EmuVec v;
    v.b.fill(x);
    return v;
  }
  static EmuVec splat16(uint16_t x) {
    EmuVec v;
    for (int i = 0; i < 8; i++) v.set_u16(i, x);
    return v;
  }
  static EmuVec splat32(uint32_t x) {
    EmuVec v;
    for (int i = 0; i < 4; i++) v.set_u32(i, x);
    return v;
  }

  // u16/u32 views are little-endian within lanes.
  uint16_t u16(int lane) const {
    return static_cast<uint16_t>(b[2 * lane] | (b[2 * lane + 1] << 8));
  }
  uint32_t u32(int lane) const {
    return static_cast<uint32_t>(b[4 * lane]) | (static_cast<uint32_t>(b[4 * lane + 1]) << 8) |
           (static_cast<uint32_t>(b[4 * lane + 2]) << 16) |
           (static_cast<uint32_t>(b[4 * lane + 3]) << 24);
  }
  void set_u16(int lane, uint16_t x) {
    b[2 * lane] = static_cast<uint8_t>(x);
    b[2 * lane + 1] = static_cast<uint8_t>(x >> 8);
  }
  void set_u32(int lane, uint32_t x) {
    b[4 * lane] = static_cast<uint8_t>(x);
    b[4 * lane + 1] = static_cast<uint8_t>(x >> 8);
    b[4 * lane + 2] = static_cast<uint8_t>(x >> 16);
    b[4 * lane + 3] = static_cast<uint8_t>(x >> 24);
  }

  friend EmuVec operator&(EmuVec a, EmuVec c) {
    EmuVec r;
    for (int i = 0; i < 16; i++) r.b[i] = a.b[i] & c.b[i];
    return r;
  }
  friend EmuVec operator|(EmuVec a, EmuVec c) {
    EmuVec r;
    for (int i = 0; i < 16; i++) r.b[i] = a.b[i] | c.b[i];
    return r;
  }
  friend EmuVec operator^(EmuVec a, EmuVec c) {
    EmuVec r;
    for (int i = 0; i < 16; i++) r.b[i] = a.b[i] ^ c.b[i];
    return r;
  }
  // this & ~other
  EmuVec andnot(EmuVec other) const {
    EmuVec r;
    for (int i = 0; i < 16; i++) r.b[i] = b[i] & static_cast<uint8_t>(~other.b[i]);
    return r;
  }

  static EmuVec shuffle(EmuVec src, EmuVec idx) {
    EmuVec r;
    for (int i = 0; i < 16; i++) r.b[i] = (idx.b[i] & 0x80) ? 0 : src.b[idx.b[i] & 0x0F];
    return r;
  }

  uint16_t movemask() const {
    uint16_t m = 0;
    for (int i = 0; i < 16; i++) m |= static_cast<uint16_t>((b[i] >> 7) << i);
    return m;
  }

  EmuVec cmp_gt_signed(int8_t threshold) const {
    EmuVec r;
    for (int i = 0; i < 16; i++) r.b[i] = (static_cast<int8_t>(b[i]) > threshold) ? 0xFF : 0x00;
    return r;
  }
  EmuVec cmp_lt_u16(uint16_t c) const {
    EmuVec r;
    for (int i = 0; i < 8; i++) r.set_u16(i, u16(i) < c ? 0xFFFF : 0);
    return r;
  }
  EmuVec cmp_lt_u32(uint32_t c) const {
    EmuVec r;
    for (int i = 0; i < 4; i++) r.set_u32(i, u32(i) < c ? 0xFFFFFFFFu : 0);
    return r;
  }
  EmuVec cmp_eq_u16(uint16_t c) const {
    EmuVec r;
    for (int i = 0; i < 8; i++) r.set_u16(i, u16(i) == c ? 0xFFFF : 0);
    return r;
  }

  EmuVec shr_u16(int n) const {
    EmuVec r;
    for (int i = 0; i < 8; i++) r.set_u16(i, static_cast<uint16_t>(u16(i) >> n));
    return r;
  }
  EmuVec shl_u16(int n) const {
    EmuVec r;
    for (int i = 0; i < 8; i++) r.set_u16(i, static_cast<uint16_t>(u16(i) << n));
    return r;
  }
  EmuVec shr_u32(int n) const {
    EmuVec r;
    for (int i = 0; i < 4; i++) r.set_u32(i, u32(i) >> n);
    return r;
  }
  EmuVec shl_u32(int n) const {
    EmuVec r;
    for (int i = 0; i < 4; i++) r.set_u32(i, u32(i) << n);
    return r;
  }

  EmuVec add_u32(EmuVec other) const {
    EmuVec r;
    for (int i = 0; i < 4; i++) r.set_u32(i, u32(i) + other.u32(i));
    return r;
  }
  EmuVec sub_u32(EmuVec other) const {
    EmuVec r;
    for (int i = 0; i < 4; i++) r.set_u32(i, u32(i) - other.u32(i));
    return r;
  }

  // Byte-wise select: mask byte MSB set -> if_set, else if_clear.
  static EmuVec blend(EmuVec mask, EmuVec if_set, EmuVec if_clear) {
    EmuVec r;
    for (int i = 0; i < 16; i++) r.b[i] = (mask.b[i] & 0x80) ? if_set.b[i] : if_clear.b[i];
    return r;
  }

  EmuVec widen_lo_u16() const {
    EmuVec r;
    for (int i = 0; i < 4; i++) r.set_u32(i, u16(i));
    return r;
  }
  EmuVec widen_hi_u16() const {
    EmuVec r;
    for (int i = 0; i < 4; i++) r.set_u32(i, u16(i + 4));
    return r;
  }
  static EmuVec pack_u32_low16(EmuVec a, EmuVec c) {
    EmuVec r;
    for (int i = 0; i < 4; i++) r.set_u16(i, static_cast<uint16_t>(a.u32(i)));
    for (int i = 0; i < 4; i++) r.set_u16(i + 4, static_cast<uint16_t>(c.u32(i)));
    return r;
  }

  static EmuVec interleave_lo(EmuVec a, EmuVec c) {
    EmuVec r;
    for (int i = 0; i < 8; i++) {
      r.b[2 * i] = a.b[i];
      r.b[2 * i + 1] = c.b[i];
    }
    return r;
  }
  static EmuVec interleave_hi(EmuVec a, EmuVec c) {
    EmuVec r;
    for (int i = 0; i < 8; i++) {
      r.b[2 * i] = a.b[i + 8];
      r.b[2 * i + 1] = c.b[i + 8];
    }
    return r;
  }

  EmuVec sat_sub_u8(EmuVec other) const {
    EmuVec r;
    for (int i = 0; i < 16; i++) {
      int d = static_cast<int>(b[i]) - static_cast<int>(other.b[i]);
      r.b[i] = static_cast<uint8_t>(d < 0 ? 0 : d);
    }
    return r;
  }

  // Sliding window over [prev | cur]: lane i = prev[16-N+i] for i < N, else cur[i-N].
  template <int N>
  static EmuVec prev(EmuVec cur, EmuVec prior) {
    static_assert(N >= 1 && N <= 15);
    EmuVec r;
    for (int i = 0; i < 16; i++) r.b[i] = (i < N) ? prior.b[16 - N + i] : cur.b[i - N];
    return r;
  }

  bool is_zero() const {
    for (int i = 0; i < 16; i++)
      if (b[i]) return false;
    return true;
  }
};

#if VTRANS_HAVE_SSE

struct SseVec {
  __m128i v;

  SseVec() : v(_mm_setzero_si128()) {}
  explicit SseVec(__m128i x) : v(x) {}

  static SseVec load(const void* p) {
    return SseVec{_mm_loadu_si128(reinterpret_cast<const __m128i*>(p))};
  }
  void store(void* p) const { _mm_storeu_si128(reinterpret_cast<__m128i*>(p), v); }

  static SseVec zero() { return SseVec{_mm_setzero_si128()}; }
  static SseVec splat8(uint8_t x) { return SseVec{_mm_set1_epi8(static_cast<char>(x))}; }
  static SseVec splat16(uint16_t x) { return SseVec{_mm_set1_epi16(static_cast<short>(x))}; }
  static SseVec splat32(uint32_t x) { return SseVec{_mm_set1_epi32(static_cast<int>(x))}; }

  uint16_t u16(int lane) const {
    alignas(16) uint16_t tmp[8];
    _mm_store_si128(reinterpret_cast<__m128i*>(tmp), v);
    return tmp[lane];
  }
  uint32_t u32(int lane) const {
    alignas(16) uint32_t tmp[4];
    _mm_store_si128(reinterpret_cast<__m128i*>(tmp), v);
    return tmp[lane];
  }

  friend SseVec operator&(SseVec a, SseVec b) { return SseVec{_mm_and_si128(a.v, b.v)}; }
  friend SseVec operator|(SseVec a, SseVec b) { return SseVec{_mm_or_si128(a.v, b.v)}; }
  friend SseVec operator^(SseVec a, SseVec b) { return SseVec{_mm_xor_si128(a.v, b.v)}; }
  SseVec andnot(SseVec other) const { return SseVec{_mm_andnot_si128(other.v, v)}; }

  static SseVec shuffle(SseVec src, SseVec idx) {
    return SseVec{_mm_shuffle_epi8(src.v, idx.v)};
  }

  uint16_t movemask() const { return static_cast<uint16_t>(_mm_movemask_epi8(v)); }

  SseVec cmp_gt_signed(int8_t threshold) const {
    return SseVec{_mm_cmpgt_epi8(v, _mm_set1_epi8(threshold))};
  }
  SseVec cmp_lt_u16(uint16_t c) const {
    const __m128i bias = _mm_set1_epi16(static_cast<short>(0x8000));
    return SseVec{_mm_cmpgt_epi16(_mm_xor_si128(_mm_set1_epi16(static_cast<short>(c)), bias),
                                  _mm_xor_si128(v, bias))};
  }
  SseVec cmp_lt_u32(uint32_t c) const {
    const __m128i bias = _mm_set1_epi32(static_cast<int>(0x80000000u));
    return SseVec{_mm_cmpgt_epi32(_mm_xor_si128(_mm_set1_epi32(static_cast<int>(c)), bias),
                                  _mm_xor_si128(v, bias))};
  }
  SseVec cmp_eq_u16(uint16_t c) const {
    return SseVec{_mm_cmpeq_epi16(v, _mm_set1_epi16(static_cast<short>(c)))};
  }

  SseVec shr_u16(int n) const { return SseVec{_mm_srli_epi16(v, n)}; }
  SseVec shl_u16(int n) const { return SseVec{_mm_slli_epi16(v, n)}; }
  SseVec shr_u32(int n) const { return SseVec{_mm_srli_epi32(v, n)}; }
  SseVec shl_u32(int n) const { return SseVec{_mm_slli_epi32(v, n)}; }

  SseVec add_u32(SseVec other) const { return SseVec{_mm_add_epi32(v, other.v)}; }
  SseVec sub_u32(SseVec other) const { return SseVec{_mm_sub_epi32(v, other.v)}; }

  static SseVec blend(SseVec mask, SseVec if_set, SseVec if_clear) {
    return SseVec{_mm_blendv_epi8(if_clear.v, if_set.v, mask.v)};
  }

  SseVec widen_lo_u16() const { return SseVec{_mm_unpacklo_epi16(v, _mm_setzero_si128())}; }
  SseVec widen_hi_u16() const { return SseVec{_mm_unpackhi_epi16(v, _mm_setzero_si128())}; }
  static SseVec pack_u32_low16(SseVec a, SseVec b) {
    const __m128i m = _mm_set1_epi32(0xFFFF);
    return SseVec{_mm_packus_epi32(_mm_and_si128(a.v, m), _mm_and_si128(b.v, m))};
  }

  static SseVec interleave_lo(SseVec a, SseVec b) {
    return SseVec{_mm_unpacklo_epi8(a.v, b.v)};
  }
  static SseVec interleave_hi(SseVec a, SseVec b) {
    return SseVec{_mm_unpackhi_epi8(a.v, b.v)};
  }

  SseVec sat_sub_u8(SseVec other) const { return SseVec{_mm_subs_epu8(v, other.v)}; }

  template <int N>
  static SseVec prev(SseVec cur, SseVec prior) {
    return SseVec{_mm_alignr_epi8(cur.v, prior.v, 16 - N)};
  }

  bool is_zero() const { return _mm_testz_si128(v, v) != 0; }
};

#endif  // VTRANS_HAVE_SSE

}  // namespace vtrans
