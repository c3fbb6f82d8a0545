#pragma once

// Minimal S-expression reader with source positions.
//
//   sexpr ::= atom | string | '(' sexpr* ')'
//   atom    any run of characters other than whitespace, parentheses, ';' and '"'
//   string  '"' ... '"' with no escapes; may span lines
//
// ';' starts a comment that runs to the end of the line.

#include <string>
#include <string_view>
#include <vector>

#include "realizer/syntax.hpp"

namespace realizer::sexpr {

struct Sexpr {
  enum class Kind { Atom, String, List };
  Kind kind = Kind::Atom;
  std::string text;  // Atom and String
  std::vector<Sexpr> items;  // List
  SourcePos pos;
  // Position of text[0]; differs from pos for strings.
  SourcePos text_pos;

  bool is_list() const { return kind == Kind::List; }
  bool is_text() const { return kind != Kind::List; }
};

namespace detail {

inline bool delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0 || c == '(' || c == ')' || c == ';' ||
         c == '"';
}

class Reader {
 public:
  explicit Reader(std::string_view src) : src_(src) {}

  std::vector<Sexpr> read_all() {
    std::vector<Sexpr> out;
    skip();
    while (i_ < src_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  std::string_view src_;
  std::size_t i_ = 0;
  SourcePos pos_;

  void advance() {
    if (src_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == ';') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
      } else {
        return;
      }
    }
  }

  Sexpr read() {
    Sexpr e;
    e.pos = pos_;
    char c = src_[i_];
    if (c == ')') throw ParseError(pos_, "unbalanced ')'");
    if (c == '(') {
      e.kind = Sexpr::Kind::List;
      advance();
      for (;;) {
        skip();
        if (i_ >= src_.size()) throw ParseError(e.pos, "unclosed '('");
        if (src_[i_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == '"') {
      e.kind = Sexpr::Kind::String;
      advance();
      e.text_pos = pos_;
      std::size_t start = i_;
      while (i_ < src_.size() && src_[i_] != '"') advance();
      if (i_ >= src_.size()) throw ParseError(e.pos, "unterminated string");
      e.text = std::string(src_.substr(start, i_ - start));
      advance();
      return e;
    }
    e.text_pos = pos_;
    std::size_t start = i_;
    while (i_ < src_.size() && !delimiter(src_[i_])) advance();
    e.text = std::string(src_.substr(start, i_ - start));
    return e;
  }
};

}  // namespace detail

inline std::vector<Sexpr> read_all(std::string_view src) { return detail::Reader(src).read_all(); }

/// Reads exactly one expression.
inline Sexpr read_one(std::string_view src) {
  auto all = read_all(src);
  if (all.empty()) throw ParseError({}, "empty input");
  if (all.size() > 1) throw ParseError(all[1].pos, "expected a single expression");
  return std::move(all[0]);
}

/// Text as an atom when possible, otherwise as a string.
inline std::string quote(std::string_view text) {
  bool plain = !text.empty();
  for (char c : text) {
    if (detail::delimiter(c)) plain = false;
  }
  return plain ? std::string(text) : "\"" + std::string(text) + "\"";
}

}  // namespace realizer::sexpr
