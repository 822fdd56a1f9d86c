#include "termtag/tokenize.hpp"

#include <unicode/uchar.h>

#include "termtag/error.hpp"
#include "termtag/unicode.hpp"

namespace termtag {
namespace {

bool is_split_punctuation(char32_t cp) {
  switch (cp) {
    case U',': case U'.': case U'"': case U'\'': case U'(': case U')':
    case U'[': case U']': case U'{': case U'}': case U':': case U';':
    case U'!': case U'?': case U'$': case U'%':
    case U'«': case U'»': case U'“': case U'”': case U'„': case U'‘':
    case U'’': case U'…': case U'—': case U'–': case U'¿': case U'¡':
      return true;
    default:
      return false;
  }
}

bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }
bool is_letter(char32_t cp) { return u_isalpha(static_cast<UChar32>(cp)); }
bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == U'’'; }

struct CodePoint {
  char32_t cp;
  std::string_view bytes;
};

void tokenize_chunk_rule(const std::vector<CodePoint>& chunk, Tokens& out) {
  std::string current;
  for (std::size_t i = 0; i < chunk.size(); ++i) {
    const char32_t cp = chunk[i].cp;
    bool split = is_split_punctuation(cp);
    if (split && i > 0 && i + 1 < chunk.size()) {
      const char32_t prev = chunk[i - 1].cp;
      const char32_t next = chunk[i + 1].cp;
      if ((cp == U'.' || cp == U',') && is_digit(prev) && is_digit(next)) split = false;
      if (is_apostrophe(cp) && is_letter(prev) && is_letter(next)) split = false;
    }
    if (!split) {
      current.append(chunk[i].bytes);
      continue;
    }
    if (!current.empty()) out.push_back(std::move(current));
    current.clear();
    out.emplace_back(chunk[i].bytes);
  }
  if (!current.empty()) out.push_back(std::move(current));
}

// Tokens that glue to their left / right neighbour when detokenizing.
bool attaches_left(std::string_view t) {
  return t == "," || t == "." || t == ":" || t == ";" || t == "!" || t == "?" || t == ")" ||
         t == "]" || t == "}" || t == "%" || t == "»" || t == "”" || t == "’" || t == "…" ||
         t == "'";
}

bool attaches_right(std::string_view t) {
  return t == "(" || t == "[" || t == "{" || t == "$" || t == "«" || t == "“" || t == "„" ||
         t == "‘" || t == "¿" || t == "¡";
}

}  // namespace

TokenizerKind parse_tokenizer_kind(std::string_view name) {
  if (name == "whitespace") return TokenizerKind::kWhitespace;
  if (name == "rule") return TokenizerKind::kRule;
  if (name == "char") return TokenizerKind::kChar;
  throw Error("unknown tokenizer '" + std::string(name) + "' (expected whitespace, rule or char)");
}

std::string_view to_string(TokenizerKind kind) {
  switch (kind) {
    case TokenizerKind::kWhitespace: return "whitespace";
    case TokenizerKind::kRule: return "rule";
    case TokenizerKind::kChar: return "char";
  }
  return "?";
}

void tokenize_into(std::string_view text, const TokenizerScheme& scheme, Tokens& out) {
  std::string lowered;
  if (scheme.lowercase) {
    lowered = unicode::to_lower(text);
    text = lowered;
  }

  if (scheme.kind == TokenizerKind::kWhitespace && unicode::is_ascii(text)) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && unicode::is_space(static_cast<unsigned char>(text[i]))) ++i;
      const std::size_t begin = i;
      while (i < text.size() && !unicode::is_space(static_cast<unsigned char>(text[i]))) ++i;
      if (i > begin) out.emplace_back(text.substr(begin, i - begin));
    }
    return;
  }

  std::vector<CodePoint> chunk;
  auto flush = [&] {
    if (chunk.empty()) return;
    switch (scheme.kind) {
      case TokenizerKind::kWhitespace: {
        const char* begin = chunk.front().bytes.data();
        const char* end = chunk.back().bytes.data() + chunk.back().bytes.size();
        out.emplace_back(begin, end);
        break;
      }
      case TokenizerKind::kRule:
        tokenize_chunk_rule(chunk, out);
        break;
      case TokenizerKind::kChar:
        for (const auto& c : chunk) out.emplace_back(c.bytes);
        break;
    }
    chunk.clear();
  };
  unicode::for_each_code_point(text, [&](char32_t cp, std::string_view bytes) {
    if (unicode::is_space(cp)) {
      flush();
    } else {
      chunk.push_back({cp, bytes});
    }
  });
  flush();
}

Tokens tokenize(std::string_view text, const TokenizerScheme& scheme) {
  Tokens out;
  tokenize_into(text, scheme, out);
  return out;
}

std::string join(std::span<const std::string> tokens, std::string_view separator) {
  std::string out;
  std::size_t size = 0;
  for (const auto& t : tokens) size += t.size() + separator.size();
  out.reserve(size);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.append(separator);
    out.append(tokens[i]);
  }
  return out;
}

Tokens split_on_space(std::string_view text) {
  return tokenize(text, TokenizerScheme{TokenizerKind::kWhitespace, false});
}

std::string detokenize(std::span<const std::string> tokens, const TokenizerScheme& scheme) {
  switch (scheme.kind) {
    case TokenizerKind::kWhitespace: return join(tokens, " ");
    case TokenizerKind::kChar: return join(tokens, "");
    case TokenizerKind::kRule: break;
  }

  std::string out;
  bool glue_next = false;
  bool quote_open = false;
  for (const auto& token : tokens) {
    bool left = attaches_left(token);
    bool right = attaches_right(token);
    if (token == "\"") {
      left = quote_open;
      right = !quote_open;
      quote_open = !quote_open;
    }
    if (!out.empty() && !glue_next && !left) out.push_back(' ');
    out.append(token);
    glue_next = right;
  }
  return out;
}

}  // namespace termtag
