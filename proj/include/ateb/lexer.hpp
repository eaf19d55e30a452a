#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ateb/error.hpp"

namespace ateb {

struct Token {
  enum class Kind { Ident, Number, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

// Tokenizer shared by every surface syntax.  Multi-character symbols are
// "->" and "<-"; every other punctuation character is its own token.
std::vector<Token> tokenize(std::string_view src);

class TokenStream {
 public:
  explicit TokenStream(std::string_view src) : toks_(tokenize(src)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is(std::string_view sym) const {
    return peek().kind == Token::Kind::Symbol && peek().text == sym;
  }
  bool is_ident(std::string_view word) const {
    return peek().kind == Token::Kind::Ident && peek().text == word;
  }
  bool accept(std::string_view sym) {
    if (!is(sym)) return false;
    next();
    return true;
  }
  void expect(std::string_view sym) {
    if (!accept(sym)) fail("expected '" + std::string(sym) + "'");
  }
  std::string expect_ident();
  unsigned long expect_number();
  [[noreturn]] void fail(const std::string& msg) const;
  void expect_end() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }

  std::size_t mark() const { return pos_; }
  void reset(std::size_t m) { pos_ = m; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace ateb
