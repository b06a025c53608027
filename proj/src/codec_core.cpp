#include "vtrans/codec_core.hpp"

namespace vtrans::scalar {

std::optional<DecodedChar> decode_utf8_char(std::span<const uint8_t> bytes, std::size_t pos) {
  const std::size_t n = bytes.size();
  const uint8_t b0 = bytes[pos];
  if (b0 < 0x80) return DecodedChar{b0, 1};
  unsigned len;
  uint32_t cp;
  uint32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    // continuation byte in leading position, or a forbidden 11111xxx byte
    return std::nullopt;
  }
  if (pos + len > n) return std::nullopt;
  for (unsigned i = 1; i < len; i++) {
    const uint8_t c = bytes[pos + i];
    if ((c & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (c & 0x3F);
  }
  if (cp < min) return std::nullopt;                                    // overlong
  if (cp > kMaxCodePoint) return std::nullopt;                          // beyond U+10FFFF
  if (cp >= kSurrogateFirst && cp <= kSurrogateLast) return std::nullopt;
  return DecodedChar{cp, len};
}

unsigned encode_utf8(uint32_t cp, uint8_t out[4]) {
  if (cp < 0x80) {
    out[0] = static_cast<uint8_t>(cp);
    return 1;
  }
  if (cp < 0x800) {
    out[0] = static_cast<uint8_t>(0xC0 | (cp >> 6));
    out[1] = static_cast<uint8_t>(0x80 | (cp & 0x3F));
    return 2;
  }
  if (cp < 0x10000) {
    out[0] = static_cast<uint8_t>(0xE0 | (cp >> 12));
    out[1] = static_cast<uint8_t>(0x80 | ((cp >> 6) & 0x3F));
    out[2] = static_cast<uint8_t>(0x80 | (cp & 0x3F));
    return 3;
  }
  out[0] = static_cast<uint8_t>(0xF0 | (cp >> 18));
  out[1] = static_cast<uint8_t>(0x80 | ((cp >> 12) & 0x3F));
  out[2] = static_cast<uint8_t>(0x80 | ((cp >> 6) & 0x3F));
  out[3] = static_cast<uint8_t>(0x80 | (cp & 0x3F));
  return 4;
}

unsigned encode_utf16(uint32_t cp, uint16_t out[2]) {
  if (cp < 0x10000) {
    out[0] = static_cast<uint16_t>(cp);
    return 1;
  }
  const uint32_t v = cp - 0x10000;
  out[0] = static_cast<uint16_t>(0xD800 + (v >> 10));
  out[1] = static_cast<uint16_t>(0xDC00 + (v & 0x3FF));
  return 2;
}

std::optional<DecodedChar> decode_utf16_char(std::span<const uint16_t> units, std::size_t pos) {
  const uint16_t w0 = units[pos];
  if (w0 < 0xD800 || w0 > 0xDFFF) return DecodedChar{w0, 1};
  if (w0 >= 0xDC00) return std::nullopt;  // low surrogate with no preceding high
  if (pos + 1 >= units.size()) return std::nullopt;  // truncated pair
  const uint16_t w1 = units[pos + 1];
  if (w1 < 0xDC00 || w1 > 0xDFFF) return std::nullopt;  // misordered pair
  const uint32_t cp = 0x10000 + ((static_cast<uint32_t>(w0 - 0xD800) << 10) | (w1 - 0xDC00));
  return DecodedChar{cp, 2};
}

TranscodeResult utf8_to_utf16(std::span<const uint8_t> input, uint16_t* out) {
  TranscodeResult res;
  std::size_t p = 0, q = 0;
  const std::size_t n = input.size();
  while (p < n) {
    auto dc = decode_utf8_char(input, p);
    if (!dc) {
      res.error_at = p;
      break;
    }
    uint16_t units[2];
    const unsigned uw = encode_utf16(dc->code_point, units);
    for (unsigned i = 0; i < uw; i++) out[q + i] = units[i];
    p += dc->length;
    q += uw;
  }
  res.consumed = p;
  res.written = q;
  return res;
}

TranscodeResult utf16_to_utf8(std::span<const uint16_t> input, uint8_t* out) {
  TranscodeResult res;
  std::size_t p = 0, q = 0;
  const std::size_t n = input.size();
  while (p < n) {
    auto dc = decode_utf16_char(input, p);
    if (!dc) {
      res.error_at = p;
      break;
    }
    uint8_t bytes[4];
    const unsigned bw = encode_utf8(dc->code_point, bytes);
    for (unsigned i = 0; i < bw; i++) out[q + i] = bytes[i];
    p += dc->length;
    q += bw;
  }
  res.consumed = p;
  res.written = q;
  return res;
}

std::vector<uint16_t> utf8_to_utf16(std::span<const uint8_t> input, TranscodeResult& res) {
  std::vector<uint16_t> out(input.size() + 1);
  res = utf8_to_utf16(input, out.data());
  out.resize(res.written);
  return out;
}

std::vector<uint8_t> utf16_to_utf8(std::span<const uint16_t> input, TranscodeResult& res) {
  std::vector<uint8_t> out(3 * input.size() + 1);
  res = utf16_to_utf8(input, out.data());
  out.resize(res.written);
  return out;
}

std::optional<std::size_t> count_codepoints_utf8(std::span<const uint8_t> bytes) {
  std::size_t p = 0, count = 0;
  while (p < bytes.size()) {
    auto dc = decode_utf8_char(bytes, p);
    if (!dc) return std::nullopt;
    p += dc->length;
    count++;
  }
  return count;
}

std::optional<std::size_t> count_codepoints_utf16(std::span<const uint16_t> units) {
  std::size_t p = 0, count = 0;
  while (p < units.size()) {
    auto dc = decode_utf16_char(units, p);
    if (!dc) return std::nullopt;
    p += dc->length;
    count++;
  }
  return count;
}

}  // namespace vtrans::scalar
