#pragma once

#include <span>
#include <string>
#include <string_view>

#include "termtag/types.hpp"

namespace termtag {

enum class TokenizerKind {
  kWhitespace,  // split on runs of whitespace only
  kRule,        // whitespace split plus punctuation separation
  kChar,        // one token per non-space code point
};

struct TokenizerScheme {
  TokenizerKind kind = TokenizerKind::kWhitespace;
  bool lowercase = false;
};

TokenizerKind parse_tokenizer_kind(std::string_view name);
std::string_view to_string(TokenizerKind kind);

// Input is expected to be NFC already. Tokens never contain whitespace.
//
// RULE splits the characters  , . " ' ( ) [ ] { } : ; ! ? $ % « » “ ” „ ‘ ’ …
// — –  into tokens of their own, with three exceptions that keep words whole:
//   * '-' is never split, so hyphenated compounds survive;
//   * '.' and ',' between two digits stay inside the number (3.14, 1,000);
//   * apostrophes between two letters stay inside the word (don't, l’heure).
Tokens tokenize(std::string_view text, const TokenizerScheme& scheme);

// Appends tokens to `out` instead of returning a fresh vector.
void tokenize_into(std::string_view text, const TokenizerScheme& scheme, Tokens& out);

// WHITESPACE joins with single spaces, CHAR concatenates, RULE joins and
// re-attaches punctuation so that RULE-tokenizing the result gives back the
// input tokens.
std::string detokenize(std::span<const std::string> tokens, const TokenizerScheme& scheme);

std::string join(std::span<const std::string> tokens, std::string_view separator = " ");
Tokens split_on_space(std::string_view text);

}  // namespace termtag
