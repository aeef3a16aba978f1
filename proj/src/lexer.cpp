#include "lexer.hpp"

namespace rvt {

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  size_t i = 0;
  auto push = [&](Tok k, size_t start, size_t len) {
    Token t;
    t.kind = k;
    t.text = src.substr(start, len);
    t.span = {static_cast<int>(start), static_cast<int>(len)};
    out.push_back(std::move(t));
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    size_t s = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      push(Tok::Ident, s, i - s);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      if (i < src.size() && src[i] == '.' && i + 1 < src.size() &&
          std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
        ++i;
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      }
      push(Tok::Number, s, i - s);
      auto q = rat_parse(out.back().text);
      if (!q) throw Error("bad number literal '" + out.back().text + "'", out.back().span);
      out.back().number = *q;
      continue;
    }
    auto two = src.substr(i, 2);
    auto three = src.substr(i, 3);
    if (three == "|->") {
      push(Tok::SuffixArrow, s, 3);
      i += 3;
      continue;
    }
    if (three == "|=>") {
      push(Tok::SuffixArrowNext, s, 3);
      i += 3;
      continue;
    }
    if (two == "[*") {
      push(Tok::StarRep, s, 2);
      i += 2;
      continue;
    }
    if (two == "<=") {
      push(Tok::Le, s, 2);
      i += 2;
      continue;
    }
    if (two == ">=") {
      push(Tok::Ge, s, 2);
      i += 2;
      continue;
    }
    if (two == "!=") {
      push(Tok::Ne, s, 2);
      i += 2;
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, s, 1); break;
      case ')': push(Tok::RParen, s, 1); break;
      case '{': push(Tok::LBrace, s, 1); break;
      case '}': push(Tok::RBrace, s, 1); break;
      case ';': push(Tok::Semi, s, 1); break;
      case ':': push(Tok::Colon, s, 1); break;
      case '|': push(Tok::Pipe, s, 1); break;
      case ']': push(Tok::RBracket, s, 1); break;
      case '!': push(Tok::Bang, s, 1); break;
      case '.': push(Tok::Dot, s, 1); break;
      case '+': push(Tok::Plus, s, 1); break;
      case '-': push(Tok::Minus, s, 1); break;
      case '*': push(Tok::Star, s, 1); break;
      case '/': push(Tok::Slash, s, 1); break;
      case '<': push(Tok::Lt, s, 1); break;
      case '>': push(Tok::Gt, s, 1); break;
      case '=': push(Tok::EqTok, s, 1); break;
      default: throw Error(std::string("unexpected character '") + c + "'", {static_cast<int>(i), 1});
    }
    ++i;
  }
  Token end;
  end.kind = Tok::End;
  end.span = {static_cast<int>(src.size()), 0};
  out.push_back(end);
  return out;
}

}  // namespace rvt
