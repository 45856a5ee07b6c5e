#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citemesh/common.hpp"

namespace citemesh {

inline bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string{s.substr(b, e - b)};
}

/// ASCII-only upper-casing; multi-byte UTF-8 sequences pass through untouched.
inline std::string to_upper_ascii(std::string_view s) {
  std::string out{s};
  for (char& c : out)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  return out;
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline std::optional<long long> parse_ll(std::string_view s) {
  long long v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last) return std::nullopt;
  return v;
}

inline std::vector<std::string> split(std::string_view s, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.emplace_back(s.substr(pos));
      break;
    }
    out.emplace_back(s.substr(pos, next - pos));
    pos = next + sep.size();
  }
  return out;
}

/// Collapses every run of whitespace to one space and trims the ends.
inline std::string collapse_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

inline std::string remove_chars(std::string_view s, std::string_view drop) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (drop.find(c) == std::string_view::npos) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------
// Input decoding: UTF-8 with Latin-1 fallback.
// ---------------------------------------------------------------------------

struct DecodedText {
  std::string text;      // always valid UTF-8
  std::string encoding;  // "utf-8" or "latin-1"
  std::string note;      // non-empty when the fallback was taken
};

/// Byte offset of the first invalid UTF-8 sequence, or nullopt when valid.
inline std::optional<std::size_t> utf8_invalid_offset(std::string_view bytes) {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    std::size_t len;
    if (b0 < 0x80)
      len = 1;
    else if ((b0 & 0xE0) == 0xC0)
      len = 2;
    else if ((b0 & 0xF0) == 0xE0)
      len = 3;
    else if ((b0 & 0xF8) == 0xF0)
      len = 4;
    else
      return i;
    if (len > 1) {
      if (b0 == 0xC0 || b0 == 0xC1 || b0 > 0xF4) return i;
      if (i + len > n) return i;
      for (std::size_t k = 1; k < len; ++k)
        if ((static_cast<unsigned char>(bytes[i + k]) & 0xC0) != 0x80) return i;
    }
    i += len;
  }
  return std::nullopt;
}

inline std::string latin1_to_utf8(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size() + bytes.size() / 8);
  for (char ch : bytes) {
    const auto b = static_cast<unsigned char>(ch);
    if (b < 0x80) {
      out.push_back(ch);
    } else {
      out.push_back(static_cast<char>(0xC0 | (b >> 6)));
      out.push_back(static_cast<char>(0x80 | (b & 0x3F)));
    }
  }
  return out;
}

/// Decodes an export file: UTF-8 first, Latin-1 on the first invalid sequence.
/// Control bytes other than tab/CR/LF mark binary input and are fatal.
inline DecodedText decode_text(std::string_view bytes) {
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const auto b = static_cast<unsigned char>(bytes[i]);
    if (b < 0x20 && b != '\t' && b != '\n' && b != '\r')
      throw ParseError("undecodable byte 0x" +
                       std::string{"0123456789abcdef"[b >> 4]} +
                       std::string{"0123456789abcdef"[b & 0xF]} +
                       " at offset " + std::to_string(i));
  }
  if (bytes.size() >= 3 && bytes.substr(0, 3) == "\xEF\xBB\xBF")
    bytes.remove_prefix(3);
  if (auto bad = utf8_invalid_offset(bytes)) {
    return {latin1_to_utf8(bytes), "latin-1",
            "not valid UTF-8 at byte offset " + std::to_string(*bad) +
                "; decoded as Latin-1"};
  }
  return {std::string{bytes}, "utf-8", ""};
}

// ---------------------------------------------------------------------------
// Diacritic folding for surname matching (Latin-1 supplement + Extended-A).
// ---------------------------------------------------------------------------

namespace detail {

inline const char* fold_codepoint(std::uint32_t cp) {
  static const char* const latin1[64] = {
      // U+00C0 .. U+00FF
      "A", "A", "A",  "A", "A", "A", "AE", "C", "E", "E", "E",  "E", "I",
      "I", "I", "I",  "D", "N", "O", "O",  "O", "O", "O", nullptr, "O",
      "U", "U", "U",  "U", "Y", "TH", "ss",
      "a", "a", "a",  "a", "a", "a", "ae", "c", "e", "e", "e",  "e", "i",
      "i", "i", "i",  "d", "n", "o", "o",  "o", "o", "o", nullptr, "o",
      "u", "u", "u",  "u", "y", "th", "y"};
  static const char* const extended_a[128] = {
      // U+0100 .. U+017F
      "A", "a", "A", "a", "A", "a", "C", "c", "C", "c", "C", "c", "C", "c",
      "D", "d", "D", "d", "E", "e", "E", "e", "E", "e", "E", "e", "E", "e",
      "G", "g", "G", "g", "G", "g", "G", "g", "H", "h", "H", "h", "I", "i",
      "I", "i", "I", "i", "I", "i", "I", "i", "IJ", "ij", "J", "j", "K", "k",
      "k", "L", "l", "L", "l", "L", "l", "L", "l", "L", "l", "N", "n", "N",
      "n", "N", "n", "n", "N", "n", "O", "o", "O", "o", "O", "o", "OE", "oe",
      "R", "r", "R", "r", "R", "r", "S", "s", "S", "s", "S", "s", "S", "s",
      "T", "t", "T", "t", "T", "t", "U", "u", "U", "u", "U", "u", "U", "u",
      "U", "u", "U", "u", "W", "w", "Y", "y", "Y", "Z", "z", "Z", "z", "Z",
      "z", "s"};
  if (cp >= 0xC0 && cp <= 0xFF) return latin1[cp - 0xC0];
  if (cp >= 0x100 && cp <= 0x17F) return extended_a[cp - 0x100];
  return nullptr;
}

}  // namespace detail

/// Folds accented Latin letters to their ASCII base; anything the fold table
/// does not cover is passed through byte-for-byte.
inline std::string ascii_fold(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  const std::size_t n = utf8.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(utf8[i]);
    if (b0 < 0x80) {
      out.push_back(utf8[i]);
      ++i;
      continue;
    }
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    }
    if (len == 0 || i + len > n) {
      out.push_back(utf8[i]);
      ++i;
      continue;
    }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      const auto bk = static_cast<unsigned char>(utf8[i + k]);
      if ((bk & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (bk & 0x3F);
    }
    if (!ok) {
      out.push_back(utf8[i]);
      ++i;
      continue;
    }
    if (const char* folded = detail::fold_codepoint(cp))
      out.append(folded);
    else
      out.append(utf8.substr(i, len));
    i += len;
  }
  return out;
}

}  // namespace citemesh
