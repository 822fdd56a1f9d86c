#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace termtag::unicode {

bool is_ascii(std::string_view text);

// Throws Error on malformed UTF-8.
void validate_utf8(std::string_view text);

// NFC normalization. ASCII input is returned unchanged without touching ICU.
std::string nfc(std::string_view text);

// Full Unicode case folding, with an ASCII fast path.
std::string fold_case(std::string_view text);
// Writes the folded form into `out`, reusing its capacity.
void fold_case_into(std::string_view text, std::string& out);

std::string to_lower(std::string_view text);

// Decodes the code point starting at text[pos] and advances pos past it.
// Malformed sequences decode as U+FFFD one byte at a time.
char32_t next_code_point(std::string_view text, std::size_t& pos);

// Splits into the UTF-8 byte sequences of each code point.
template <typename Fn>
void for_each_code_point(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t begin = pos;
    const char32_t cp = next_code_point(text, pos);
    fn(cp, text.substr(begin, pos - begin));
  }
}

bool is_space(char32_t cp);

}  // namespace termtag::unicode
