#include "tutorsynth/tokenizer.h"

#include <cctype>

namespace tutorsynth {
namespace {

// U+2019 RIGHT SINGLE QUOTATION MARK and U+2018 LEFT SINGLE QUOTATION MARK.
constexpr std::string_view kRightQuote = "\xE2\x80\x99";
constexpr std::string_view kLeftQuote = "\xE2\x80\x98";
constexpr std::string_view kLeftDoubleQuote = "\xE2\x80\x9C";
constexpr std::string_view kRightDoubleQuote = "\xE2\x80\x9D";

bool IsSeparatorByte(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '>': case '"': case '(': case ')':
      return true;
    default:
      return std::isspace(static_cast<unsigned char>(c)) != 0;
  }
}

// Length in bytes of an apostrophe-like mark at `pos`, or 0.
std::size_t ApostropheAt(std::string_view text, std::size_t pos) {
  if (text[pos] == '\'') return 1;
  if (text.substr(pos, 3) == kRightQuote || text.substr(pos, 3) == kLeftQuote)
    return 3;
  return 0;
}

std::size_t DoubleQuoteAt(std::string_view text, std::size_t pos) {
  if (text.substr(pos, 3) == kLeftDoubleQuote ||
      text.substr(pos, 3) == kRightDoubleQuote)
    return 3;
  return 0;
}

bool IsWordByteAt(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return false;
  char c = text[pos];
  if (c == '&' || IsSeparatorByte(c)) return false;
  return ApostropheAt(text, pos) == 0 && DoubleQuoteAt(text, pos) == 0;
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::string current;
  std::size_t start = 0;

  auto flush = [&](std::size_t end) {
    if (!current.empty()) {
      tokens.push_back(Token{std::move(current), Span{start, end}});
      current.clear();
    }
  };

  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '&') {
      flush(i);
      tokens.push_back(Token{"&", Span{i, i + 1}});
      ++i;
      continue;
    }
    if (std::size_t len = ApostropheAt(text, i); len > 0) {
      // Inner apostrophe: word character on both sides.
      if (!current.empty() && IsWordByteAt(text, i + len)) {
        current.push_back('\'');
      } else {
        flush(i);
      }
      i += len;
      continue;
    }
    if (std::size_t len = DoubleQuoteAt(text, i); len > 0) {
      flush(i);
      i += len;
      continue;
    }
    if (IsSeparatorByte(c)) {
      flush(i);
      ++i;
      continue;
    }
    if (current.empty()) start = i;
    current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    ++i;
  }
  flush(text.size());
  return tokens;
}

TokenSet TokenizeToSet(std::string_view text) {
  TokenSet out;
  for (auto& t : Tokenize(text)) out.insert(std::move(t.text));
  return out;
}

std::string JoinTokens(const std::vector<Token>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t.text;
  }
  return out;
}

}  // namespace tutorsynth
