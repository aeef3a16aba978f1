// Minimal s-expression reader for the SMT-LIB v2 subset rvt-smt accepts.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace rvtsmt {

struct Sexp {
  // leaf iff children empty and atom set; "()" is a list with no children
  std::string atom;
  bool is_atom = false;
  std::vector<Sexp> children;

  const Sexp& operator[](size_t i) const { return children.at(i); }
  size_t size() const { return children.size(); }
  bool is_sym(const std::string& s) const { return is_atom && atom == s; }
};

class SexpError : public std::runtime_error {
 public:
  explicit SexpError(const std::string& m) : std::runtime_error(m) {}
};

class SexpReader {
 public:
  explicit SexpReader(std::string text) : text_(std::move(text)) {}

  // Returns false at end of input.
  bool next(Sexp& out) {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    out = parse();
    return true;
  }

 private:
  std::string text_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  Sexp parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw SexpError("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Sexp list;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) throw SexpError("unbalanced '('");
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.children.push_back(parse());
      }
    }
    if (c == ')') throw SexpError("unexpected ')'");
    if (c == '|') {  // quoted symbol
      size_t end = text_.find('|', pos_ + 1);
      if (end == std::string::npos) throw SexpError("unterminated |symbol|");
      Sexp s;
      s.is_atom = true;
      s.atom = text_.substr(pos_ + 1, end - pos_ - 1);
      pos_ = end + 1;
      return s;
    }
    if (c == '"') {
      size_t end = pos_ + 1;
      while (end < text_.size() && text_[end] != '"') ++end;
      if (end >= text_.size()) throw SexpError("unterminated string");
      Sexp s;
      s.is_atom = true;
      s.atom = text_.substr(pos_, end - pos_ + 1);
      pos_ = end + 1;
      return s;
    }
    size_t start = pos_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      ++pos_;
    }
    Sexp s;
    s.is_atom = true;
    s.atom = text_.substr(start, pos_ - start);
    return s;
  }
};

}  // namespace rvtsmt
