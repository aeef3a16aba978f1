#include <algorithm>
#include <set>

#include "lexer.hpp"
#include "rvt/lang.hpp"

namespace rvt {

namespace {

const std::set<std::string> kReserved = {"and",    "or",     "not",        "implies", "iff",  "always",
                                         "never",  "eventually", "until",  "releases", "next", "der",
                                         "forall", "exists", "null",       "true",    "false"};

class Parser {
 public:
  Parser(const Signature& sig, std::vector<Token> toks) : sig_(sig), toks_(std::move(toks)) {}

  FormulaPtr run() {
    FormulaPtr f = formula();
    expect(Tok::End, "trailing input");
    return f;
  }

 private:
  const Signature& sig_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<std::pair<std::string, std::string>> scope_;  // var -> class

  const Token& cur() const { return toks_[pos_]; }
  const Token& la(size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token take() { return toks_[pos_++]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_word(const std::string& w) const { return cur().kind == Tok::Ident && cur().text == w; }
  bool eat(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  bool eat_word(const std::string& w) {
    if (!at_word(w)) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const std::string& what) {
    if (!eat(k)) throw Error("syntax error: expected " + what, cur().span);
  }
  [[noreturn]] void fail(const std::string& msg) const { throw Error(msg, cur().span); }

  const std::string* scope_class(const std::string& var) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == var) return &it->second;
    return nullptr;
  }

  bool sig_has_enum_symbol(const std::string& s) const {
    for (const auto& c : sig_.classes)
      for (const auto& a : c.attributes)
        if (a.type.kind == AttrKind::Enumeration &&
            std::find(a.type.symbols.begin(), a.type.symbols.end(), s) != a.type.symbols.end())
          return true;
    return false;
  }

  // ---- formulas, loosest to tightest ----

  FormulaPtr formula() { return until_formula(); }

  FormulaPtr until_formula() {
    FormulaPtr l = iff_formula();
    Span sp = cur().span;
    if (eat_word("until")) return Formula::mk_bin(FormulaKind::U, l, until_formula(), sp);
    if (eat_word("releases")) return Formula::mk_bin(FormulaKind::R, l, until_formula(), sp);
    return l;
  }

  FormulaPtr iff_formula() {
    FormulaPtr l = impl_formula();
    while (at_word("iff")) {
      Span sp = take().span;
      l = Formula::mk_bin(FormulaKind::Iff, l, impl_formula(), sp);
    }
    return l;
  }

  FormulaPtr impl_formula() {
    FormulaPtr l = or_formula();
    if (at_word("implies")) {
      Span sp = take().span;
      return Formula::mk_bin(FormulaKind::Implies, l, impl_formula(), sp);  // right assoc
    }
    return l;
  }

  FormulaPtr or_formula() {
    FormulaPtr l = and_formula();
    while (at_word("or")) {
      Span sp = take().span;
      l = Formula::mk_bin(FormulaKind::Or, l, and_formula(), sp);
    }
    return l;
  }

  FormulaPtr and_formula() {
    FormulaPtr l = unary_formula();
    while (at_word("and")) {
      Span sp = take().span;
      l = Formula::mk_bin(FormulaKind::And, l, unary_formula(), sp);
    }
    return l;
  }

  FormulaPtr unary_formula() {
    Span sp = cur().span;
    if (eat_word("not")) return Formula::mk_not(unary_formula(), sp);
    if (eat_word("always")) return Formula::mk_unary(FormulaKind::G, unary_formula(), sp);
    if (eat_word("never")) return Formula::mk_unary(FormulaKind::G, Formula::mk_not(unary_formula(), sp), sp);
    if (eat_word("eventually")) return Formula::mk_unary(FormulaKind::F, unary_formula(), sp);
    if (at_word("in") && la(1).kind == Tok::Ident && la(1).text == "the" && la(2).kind == Tok::Ident &&
        la(2).text == "future") {
      pos_ += 3;
      return Formula::mk_unary(FormulaKind::F, unary_formula(), sp);
    }
    if (at_word("forall") || (at_word("for") && la(1).kind == Tok::Ident && la(1).text == "all"))
      return quantifier(FormulaKind::Forall, at_word("for") ? 2 : 1);
    if (at_word("exists") ||
        (at_word("there") && la(1).kind == Tok::Ident && la(1).text == "exists"))
      return quantifier(FormulaKind::Exists, at_word("there") ? 2 : 1);
    if (at_word("next")) {
      // 'next(term) <cmp> ...' is a term operator; anything else is the
      // temporal X. Try the term reading first and backtrack.
      if (la(1).kind == Tok::LParen) {
        size_t save = pos_;
        try {
          return atom();
        } catch (const Error&) {
          pos_ = save;
        }
      }
      take();
      return Formula::mk_unary(FormulaKind::X, unary_formula(), sp);
    }
    return primary();
  }

  FormulaPtr quantifier(FormulaKind k, int words) {
    Span sp = cur().span;
    pos_ += words;
    if (!at(Tok::Ident)) fail("syntax error: expected variable name");
    std::string var = take().text;
    if (kReserved.count(var)) fail("reserved word '" + var + "' cannot name a variable");
    if (!eat_word("in")) fail("syntax error: expected 'in'");
    if (!at(Tok::Ident)) fail("syntax error: expected class name");
    std::string cls = take().text;
    if (!sig_.find_class(cls)) fail("unknown class " + cls);
    expect(Tok::Dot, "'.' before quantifier body");
    scope_.emplace_back(var, cls);
    FormulaPtr body = formula();
    scope_.pop_back();
    return Formula::mk_quant(k, var, cls, body, sp);
  }

  FormulaPtr primary() {
    Span sp = cur().span;
    if (at(Tok::LBrace)) return sere_formula();
    if (eat_word("true")) return Formula::mk_const(true, sp);
    if (eat_word("false")) return Formula::mk_const(false, sp);
    if (at(Tok::LParen)) {
      // parenthesized term starting an atom, or parenthesized formula
      size_t save = pos_;
      try {
        TermPtr l = term();
        if (is_cmp(cur().kind)) {
          CmpOp op = take_cmp();
          return Formula::mk_atom(op, l, term(), sp);
        }
      } catch (const Error&) {
      }
      pos_ = save;
      expect(Tok::LParen, "'('");
      FormulaPtr f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    return atom();
  }

  FormulaPtr sere_formula() {
    Span sp = cur().span;
    expect(Tok::LBrace, "'{'");
    SerePtr r = sere();
    expect(Tok::RBrace, "'}'");
    if (eat(Tok::Bang)) return Formula::mk_sere_strong(r, sp);
    if (eat(Tok::SuffixArrow)) return Formula::mk_suffix_impl(r, formula(), false, sp);
    if (eat(Tok::SuffixArrowNext)) return Formula::mk_suffix_impl(r, formula(), true, sp);
    fail("syntax error: expected '!', '|->' or '|=>' after '}'");
  }

  SerePtr sere() {  // union, loosest
    SerePtr l = sere_concat();
    while (at(Tok::Pipe)) {
      Span sp = take().span;
      l = Sere::mk_bin(SereKind::Union, l, sere_concat(), sp);
    }
    return l;
  }

  SerePtr sere_concat() {
    SerePtr l = sere_fusion();
    while (at(Tok::Semi)) {
      Span sp = take().span;
      l = Sere::mk_bin(SereKind::Concat, l, sere_fusion(), sp);
    }
    return l;
  }

  SerePtr sere_fusion() {
    SerePtr l = sere_rep();
    while (at(Tok::Colon)) {
      Span sp = take().span;
      l = Sere::mk_bin(SereKind::Fusion, l, sere_rep(), sp);
    }
    return l;
  }

  SerePtr sere_rep() {
    SerePtr b = sere_base();
    while (at(Tok::StarRep)) {
      Span sp = take().span;
      if (at(Tok::Number)) {
        Rat n = take().number;
        if (n.get_den() != 1 || n < 0) throw Error("repeat count must be a natural number", sp);
        expect(Tok::RBracket, "']'");
        b = Sere::mk_repeat(b, n.get_num().get_si(), sp);
      } else {
        expect(Tok::RBracket, "']'");
        b = Sere::mk_star(b, sp);
      }
    }
    return b;
  }

  SerePtr sere_base() {
    Span sp = cur().span;
    if (at(Tok::LBrace)) {
      take();
      SerePtr r = sere();
      expect(Tok::RBrace, "'}'");
      return r;
    }
    return Sere::mk_letter(formula(), sp);
  }

  // ---- atoms and terms ----

  static bool is_cmp(Tok k) {
    return k == Tok::Lt || k == Tok::Le || k == Tok::EqTok || k == Tok::Ge || k == Tok::Gt || k == Tok::Ne;
  }

  CmpOp take_cmp() {
    switch (take().kind) {
      case Tok::Lt: return CmpOp::Lt;
      case Tok::Le: return CmpOp::Le;
      case Tok::EqTok: return CmpOp::Eq;
      case Tok::Ge: return CmpOp::Ge;
      case Tok::Gt: return CmpOp::Gt;
      case Tok::Ne: return CmpOp::Ne;
      default: fail("expected comparison operator");
    }
  }

  FormulaPtr atom() {
    Span sp = cur().span;
    TermPtr l = term();
    if (is_cmp(cur().kind)) {
      CmpOp op = take_cmp();
      return Formula::mk_atom(op, l, term(), sp);
    }
    return Formula::mk_term_atom(l, sp);
  }

  TermPtr term() { return addsub(); }

  TermPtr addsub() {
    TermPtr l = mul();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      bool plus = at(Tok::Plus);
      Span sp = take().span;
      TermPtr r = mul();
      l = plus ? Term::mk_add(l, r, sp) : Term::mk_sub(l, r, sp);
    }
    return l;
  }

  TermPtr mul() {
    Span sp = cur().span;
    if (at(Tok::Number)) {
      Rat v = take().number;
      if (eat(Tok::Slash)) {
        if (!at(Tok::Number)) fail("expected denominator");
        Rat d = take().number;
        if (d == 0) fail("division by zero");
        v /= d;
      }
      if (eat(Tok::Star)) return Term::mk_scale(v, prim(), sp);
      return Term::mk_const(v, sp);
    }
    TermPtr t = prim();
    if (at(Tok::Star)) {
      take();
      if (!at(Tok::Number)) fail("nonlinear product: one factor must be a constant");
      Rat v = take().number;
      if (eat(Tok::Slash)) {
        if (!at(Tok::Number)) fail("expected denominator");
        Rat d = take().number;
        if (d == 0) fail("division by zero");
        v /= d;
      }
      return Term::mk_scale(v, t, sp);
    }
    if (at(Tok::Slash)) {
      take();
      if (!at(Tok::Number)) fail("division requires a constant divisor");
      Rat d = take().number;
      if (d == 0) fail("division by zero");
      return Term::mk_scale(Rat(1) / d, t, sp);
    }
    return t;
  }

  TermPtr prim() {
    Span sp = cur().span;
    if (eat(Tok::Minus)) {
      TermPtr t = mul();
      if (t->kind == TermKind::Const) return Term::mk_const(-t->value, sp);
      if (t->kind == TermKind::Scale) return Term::mk_scale(-t->value, t->a, sp);
      return Term::mk_scale(Rat(-1), t, sp);
    }
    if (at(Tok::Number)) {
      Rat v = take().number;
      if (eat(Tok::Slash)) {
        if (!at(Tok::Number)) fail("expected denominator");
        Rat d = take().number;
        if (d == 0) fail("division by zero");
        v /= d;
      }
      return Term::mk_const(v, sp);
    }
    if (eat(Tok::LParen)) {
      TermPtr t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (eat_word("null")) return Term::mk_null(sp);
    if (at_word("next") || at_word("der")) {
      bool is_next = cur().text == "next";
      take();
      expect(Tok::LParen, "'(' after " + std::string(is_next ? "next" : "der"));
      TermPtr t = term();
      expect(Tok::RParen, "')'");
      return is_next ? Term::mk_next(t, sp) : Term::mk_der(t, sp);
    }
    if (at(Tok::Ident)) {
      std::string name = take().text;
      if (kReserved.count(name)) throw Error("reserved word '" + name + "' in term position", sp);
      if (const std::string* cls = scope_class(name)) {
        if (eat(Tok::Dot)) {
          if (!at(Tok::Ident)) fail("expected attribute name");
          std::string attr = take().text;
          const ClassDef* c = sig_.find_class(*cls);
          if (!c->find_attr(attr)) throw Error("unknown attribute " + attr + " in class " + *cls, sp);
          return Term::mk_attr(name, *cls, attr, false, sp);
        }
        return Term::mk_objvar(name, *cls, sp);
      }
      if (at(Tok::Dot)) throw Error("unbound variable " + name, sp);
      auto owners = sig_.classes_with_attr(name);
      if (owners.size() == 1) return Term::mk_attr("", owners[0]->name, name, true, sp);
      if (owners.size() > 1)
        throw Error("ambiguous attribute " + name + " (declared in multiple classes)", sp);
      if (sig_has_enum_symbol(name)) return Term::mk_enumlit(name, sp);
      throw Error("unknown attribute " + name, sp);
    }
    fail("syntax error: expected a term");
  }
};

}  // namespace

FormulaPtr parse_constraint(const std::string& src, const Signature& sig) {
  return Parser(sig, lex(src)).run();
}

}  // namespace rvt
