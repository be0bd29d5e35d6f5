#ifndef TUTORSYNTH_TOKENIZER_H_
#define TUTORSYNTH_TOKENIZER_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tutorsynth {

// Half-open byte range [start, end) into the original UTF-8 text.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool Contains(const Span& other) const {
    return start <= other.start && other.end <= end;
  }
  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  std::string text;  // lowercase, never empty, no whitespace
  Span span;

  friend bool operator==(const Token&, const Token&) = default;
};

using TokenSet = std::set<std::string>;

// Splits on whitespace and on . , ; : ! ? > " ( ) and quote marks. `&` is
// emitted as its own token. An apostrophe between two word characters is
// kept (normalized to ASCII) so "device’s" and "don't" stay single tokens.
std::vector<Token> Tokenize(std::string_view text);

// Token texts of Tokenize(text) as a set.
TokenSet TokenizeToSet(std::string_view text);

// Token texts joined by a single space.
std::string JoinTokens(const std::vector<Token>& tokens);

}  // namespace tutorsynth

#endif  // TUTORSYNTH_TOKENIZER_H_
