// Token stream for the constraint language (internal to the parser).
#pragma once

#include <string>
#include <vector>

#include "rvt/diagnostics.hpp"
#include "rvt/rational.hpp"

namespace rvt {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Semi,
  Colon,
  Pipe,
  SuffixArrow,      // |->
  SuffixArrowNext,  // |=>
  StarRep,          // [*
  RBracket,
  Bang,
  Dot,
  Plus,
  Minus,
  Star,
  Slash,
  Lt,
  Le,
  EqTok,
  Ge,
  Gt,
  Ne,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Rat number;
  Span span;
};

std::vector<Token> lex(const std::string& src);

}  // namespace rvt
