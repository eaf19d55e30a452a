#include "ateb/lexer.hpp"

#include <cctype>

namespace ateb {

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t j = i;
    if (std::isalpha(c) || c == '_') {
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
              src[j] == '\''))
        ++j;
      t.kind = Token::Kind::Ident;
    } else if (std::isdigit(c)) {
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::Number;
    } else if (src.substr(i, 2) == "->" || src.substr(i, 2) == "<-") {
      j = i + 2;
      t.kind = Token::Kind::Symbol;
    } else if (std::string_view("()[]{}<>|.,:/\\^!*-~;").find(static_cast<char>(c)) !=
               std::string_view::npos) {
      j = i + 1;
      t.kind = Token::Kind::Symbol;
    } else {
      throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'",
                       line, col);
    }
    t.text = std::string(src.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

std::string TokenStream::expect_ident() {
  if (peek().kind != Token::Kind::Ident) fail("expected identifier");
  return next().text;
}

unsigned long TokenStream::expect_number() {
  if (peek().kind != Token::Kind::Number) fail("expected number");
  const std::string& s = next().text;
  if (s.size() > 9) fail("number too large");
  return std::stoul(s);
}

void TokenStream::fail(const std::string& msg) const {
  const Token& t = peek();
  std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(msg + ", found " + found, t.line, t.column);
}

}  // namespace ateb
