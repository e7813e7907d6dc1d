#pragma once

// S-expression reader shared by the formula and branch parsers.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "pbcalc/parser.hpp"

namespace pbcalc::detail {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_all() {
    skip();
    if (at_end()) throw ParseError("empty input", line_, column_);
    SExpr e = read();
    skip();
    if (!at_end()) throw ParseError("trailing input after expression", line_, column_);
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip() {
    while (!at_end()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        while (!at_end() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip();
    if (at_end()) throw ParseError("unexpected end of input", line_, column_);
    SExpr e;
    e.line = line_;
    e.column = column_;
    char c = text_[pos_];
    if (c == ')') throw ParseError("unexpected ')'", line_, column_);
    if (c == '(') {
      e.is_list = true;
      advance();
      while (true) {
        skip();
        if (at_end()) throw ParseError("unclosed '('", e.line, e.column);
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    while (!at_end()) {
      c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';') break;
      e.atom.push_back(c);
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

[[noreturn]] inline void fail(const SExpr& at, const std::string& message) { throw ParseError(message, at.line, at.column); }

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

inline bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

inline const std::string& head_of(const SExpr& e) {
  static const std::string none;
  if (!e.is_list || e.items.empty() || e.items[0].is_list) return none;
  return e.items[0].atom;
}

}  // namespace pbcalc::detail
