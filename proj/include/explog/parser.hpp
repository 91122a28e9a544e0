#pragma once

// Recursive-descent parser for the formula grammar:
//
//   formula  ::= quant | imp
//   quant    ::= ("forall" | "exists") ident "." formula      (maximal scope)
//   imp      ::= or ("->" imp)?                               (right assoc)
//   or       ::= and ("|" and)*                               (left assoc)
//   and      ::= unit ("&" unit)*                             (left assoc)
//   unit     ::= "top" | "1" | atom | "(" formula ")" | quant
//   atom     ::= ident ("(" term ("," term)* ")")?
//   term     ::= ident ("(" term ("," term)* ")")?
//
// "bot" is not special; it parses as an ordinary atom. Binders are
// alpha-normalized on ingestion so bound names are locally unique.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "explog/formula.hpp"

namespace explog {

class ParseError : public std::runtime_error {
 public:
  ParseError(size_t pos, const std::string& what)
      : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + what),
        position(pos) {}
  size_t position;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = formula();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return alpha_normalize(f);
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat(std::string_view s) {
    skip_ws();
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
    size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool at_keyword(std::string_view kw) {
    skip_ws();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    size_t after = pos_ + kw.size();
    return after >= text_.size() || !ident_char(text_[after]);
  }

  Formula formula() {
    if (at_keyword("forall") || at_keyword("exists")) return quant();
    return imp();
  }

  Formula quant() {
    bool universal = at_keyword("forall");
    ident();  // consume keyword
    std::string v = ident();
    if (!eat('.')) fail("expected '.' after bound variable");
    Formula body = formula();
    return universal ? Formula::forall(std::move(v), std::move(body))
                     : Formula::exists(std::move(v), std::move(body));
  }

  Formula imp() {
    Formula l = disj();
    if (eat("->")) {
      Formula r = at_keyword("forall") || at_keyword("exists") ? quant() : imp();
      return Formula::imp(std::move(l), std::move(r));
    }
    return l;
  }

  Formula disj() {
    Formula l = conj();
    while (peek('|')) {
      eat('|');
      l = Formula::disj(std::move(l), conj());
    }
    return l;
  }

  Formula conj() {
    Formula l = unit();
    while (peek('&')) {
      eat('&');
      l = Formula::conj(std::move(l), unit());
    }
    return l;
  }

  Formula unit() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (eat('(')) {
      Formula f = formula();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (at_keyword("forall") || at_keyword("exists")) return quant();
    if (at_keyword("top")) {
      ident();
      return Formula::top();
    }
    if (text_[pos_] == '1') {
      ++pos_;
      return Formula::top();
    }
    if (!ident_start(text_[pos_])) fail("expected formula");
    std::string name = ident();
    std::vector<Term> args;
    if (peek('(')) {
      eat('(');
      args.push_back(term());
      while (eat(',')) args.push_back(term());
      if (!eat(')')) fail("expected ')' after atom arguments");
    }
    return Formula::atom(std::move(name), std::move(args));
  }

  Term term() {
    std::string name = ident();
    if (peek('(')) {
      eat('(');
      std::vector<Term> args;
      args.push_back(term());
      while (eat(',')) args.push_back(term());
      if (!eat(')')) fail("expected ')' after function arguments");
      return Term::fn(std::move(name), std::move(args));
    }
    return Term::var(std::move(name));
  }
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) { return detail::Parser(text).parse(); }

}  // namespace explog
