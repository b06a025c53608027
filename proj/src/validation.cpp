#include "vtrans/validation.hpp"

#include "vtrans/codec_core.hpp"
#include "vtrans/utf8_checker.hpp"
#include "vtrans/vec128.hpp"

#include <cstring>

namespace vtrans {

namespace {

template <typename V>
void feed_impl(Utf8BlockValidator& s, const uint8_t* block) {
  detail::CheckerState<V> st{V::load(s.error.data()), V::load(s.prev_input.data()),
                             V::load(s.prev_incomplete.data())};
  st.check_block(V::load(block), V::load(block + 16), V::load(block + 32), V::load(block + 48));
  st.error.store(s.error.data());
  st.prev_input.store(s.prev_input.data());
  st.prev_incomplete.store(s.prev_incomplete.data());
}

bool all_zero(const std::array<uint8_t, 16>& a) {
  for (uint8_t b : a)
    if (b) return false;
  return true;
}

// Whole-buffer validation with the checker state kept in registers.
template <typename V>
bool validate_utf8_impl(std::span<const uint8_t> bytes) {
  detail::CheckerState<V> st{V::zero(), V::zero(), V::zero()};
  std::size_t p = 0;
  const std::size_t n = bytes.size();
  while (p + 64 <= n) {
    st.check_block(V::load(bytes.data() + p), V::load(bytes.data() + p + 16),
                   V::load(bytes.data() + p + 32), V::load(bytes.data() + p + 48));
    if (!st.ok_so_far()) return false;
    p += 64;
  }
  if (p < n) {
    uint8_t tail[64] = {};
    std::memcpy(tail, bytes.data() + p, n - p);
    // Zero padding is ASCII, so an incomplete trailing sequence in the
    // real data is flagged by the padded block itself.
    st.check_block(V::load(tail), V::load(tail + 16), V::load(tail + 32), V::load(tail + 48));
  }
  return st.finish();
}

template <typename V>
std::optional<std::size_t> validate_utf16_impl(std::span<const uint16_t> units) {
  const std::size_t n = units.size();
  std::size_t i = 0;
  const uint16_t* data = units.data();
  while (i + 8 <= n) {
    const V v = V::load(data + i);
    const V surr = (v & V::splat16(0xF800)).cmp_eq_u16(0xD800);
    if (surr.is_zero()) {
      i += 8;
      continue;
    }
    // Pairing check for this register; a pair may straddle into the next.
    const std::size_t end = i + 8;
    while (i < end && i < n) {
      auto dc = scalar::decode_utf16_char(units, i);
      if (!dc) return i;
      i += dc->length;
    }
  }
  while (i < n) {
    auto dc = scalar::decode_utf16_char(units, i);
    if (!dc) return i;
    i += dc->length;
  }
  return std::nullopt;
}

}  // namespace

void Utf8BlockValidator::feed(const uint8_t* block64) {
#if VTRANS_HAVE_SSE
  if (active_backend() == Backend::native) {
    feed_impl<SseVec>(*this, block64);
    return;
  }
#endif
  feed_impl<EmuVec>(*this, block64);
}

bool Utf8BlockValidator::ok_so_far() const { return all_zero(error); }

bool Utf8BlockValidator::finish() const { return all_zero(error) && all_zero(prev_incomplete); }

bool validate_utf8(std::span<const uint8_t> bytes) {
#if VTRANS_HAVE_SSE
  if (active_backend() == Backend::native) return validate_utf8_impl<SseVec>(bytes);
#endif
  return validate_utf8_impl<EmuVec>(bytes);
}

std::optional<std::size_t> validate_utf16(std::span<const uint16_t> units) {
#if VTRANS_HAVE_SSE
  if (active_backend() == Backend::native) return validate_utf16_impl<SseVec>(units);
#endif
  return validate_utf16_impl<EmuVec>(units);
}

}  // namespace vtrans
