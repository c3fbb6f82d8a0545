#pragma once

// Tokenizer shared by the term and formula syntaxes.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace realizer {

struct SourcePos {
  int line = 1;
  int column = 1;
};

inline std::string to_string(SourcePos p) {
  return std::to_string(p.line) + ":" + std::to_string(p.column);
}

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& what)
      : std::runtime_error(realizer::to_string(pos) + ": " + what), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

namespace syntax {

enum class Tok {
  Ident,
  Zero,
  One,
  LParen,
  RParen,
  Comma,
  Dot,
  Backslash,
  Plus,
  CutMinus,
  Eq,
  Geq,
  And,
  Or,
  Arrow,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '\'' || c == '_';
}

/// `origin` is the position of text[0] in the enclosing source.
inline std::vector<Token> tokenize(std::string_view text, SourcePos origin = {}) {
  std::vector<Token> out;
  SourcePos pos = origin;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
    i += n;
  };
  auto emit = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(text.substr(i, len)), pos});
    advance(len);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      advance(1);
      continue;
    }
    auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
    if (is_ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      emit(Tok::Ident, j - i);
    } else if (starts("\\/")) {
      emit(Tok::Or, 2);
    } else if (starts("/\\")) {
      emit(Tok::And, 2);
    } else if (starts("->")) {
      emit(Tok::Arrow, 2);
    } else if (starts("-.")) {
      emit(Tok::CutMinus, 2);
    } else if (starts(">=")) {
      emit(Tok::Geq, 2);
    } else {
      switch (c) {
        case '0': emit(Tok::Zero, 1); break;
        case '1': emit(Tok::One, 1); break;
        case '(': emit(Tok::LParen, 1); break;
        case ')': emit(Tok::RParen, 1); break;
        case ',': emit(Tok::Comma, 1); break;
        case '.': emit(Tok::Dot, 1); break;
        case '\\': emit(Tok::Backslash, 1); break;
        case '+': emit(Tok::Plus, 1); break;
        case '=': emit(Tok::Eq, 1); break;
        default:
          throw ParseError(pos, std::string("unexpected character '") + c + "'");
      }
    }
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_ident(std::string_view word) const { return at(Tok::Ident) && peek().text == word; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  Token expect(Tok k, std::string_view what) {
    if (!at(k)) fail("expected " + std::string(what));
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(t.pos, msg + (t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'"));
  }

  std::size_t mark() const { return pos_; }
  void reset(std::size_t m) { pos_ = m; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace syntax
}  // namespace realizer
