#include <sstream>

#include "rvt/lang.hpp"

namespace rvt {

namespace {

// formula precedence: until/releases/quantifier/|-> 0, iff 1, implies 2,
// or 3, and 4, unary 5, closed 6
int fprec(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::U:
    case FormulaKind::R:
    case FormulaKind::Forall:
    case FormulaKind::Exists:
    case FormulaKind::SuffixImpl: return 0;
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Not:
    case FormulaKind::X:
    case FormulaKind::G:
    case FormulaKind::F: return 5;
    default: return 6;
  }
}

void pt(std::ostream& os, const Term& t, int ctx);

void pt_term(std::ostream& os, const Term& t, int ctx) { pt(os, t, ctx); }

void pt(std::ostream& os, const Term& t, int ctx) {
  int prec;
  switch (t.kind) {
    case TermKind::Add:
    case TermKind::Sub: prec = 1; break;
    case TermKind::Scale: prec = 2; break;
    default: prec = 3; break;
  }
  bool paren = prec < ctx;
  if (paren) os << "(";
  switch (t.kind) {
    case TermKind::Const: os << rat_to_string(t.value); break;
    case TermKind::Null: os << "null"; break;
    case TermKind::ObjVar: os << t.name; break;
    case TermKind::EnumLit: os << t.name; break;
    case TermKind::GroundVar: os << t.name; break;
    case TermKind::AttrAccess:
      if (t.singleton)
        os << t.name;
      else
        os << t.obj_name << "." << t.name;
      break;
    case TermKind::Add:
      pt_term(os, *t.a, 1);
      os << " + ";
      pt_term(os, *t.b, 2);
      break;
    case TermKind::Sub:
      pt_term(os, *t.a, 1);
      os << " - ";
      pt_term(os, *t.b, 2);
      break;
    case TermKind::Scale:
      os << rat_to_string(t.value) << " * ";
      pt_term(os, *t.a, 3);
      break;
    case TermKind::Next:
      os << "next(";
      pt_term(os, *t.a, 0);
      os << ")";
      break;
    case TermKind::Der:
      os << "der(";
      pt_term(os, *t.a, 0);
      os << ")";
      break;
  }
  if (paren) os << ")";
}

void pf(std::ostream& os, const Formula& f, int ctx);

void ps(std::ostream& os, const Sere& s, int ctx) {
  int prec;
  switch (s.kind) {
    case SereKind::Union: prec = 0; break;
    case SereKind::Concat: prec = 1; break;
    case SereKind::Fusion: prec = 2; break;
    case SereKind::Star:
    case SereKind::Repeat: prec = 3; break;
    case SereKind::Letter: prec = 4; break;
  }
  bool brace = prec < ctx;
  if (brace) os << "{";
  switch (s.kind) {
    case SereKind::Letter: pf(os, *s.letter, 0); break;
    case SereKind::Union:
      ps(os, *s.a, 0);
      os << " | ";
      ps(os, *s.b, 1);
      break;
    case SereKind::Concat:
      ps(os, *s.a, 1);
      os << " ; ";
      ps(os, *s.b, 2);
      break;
    case SereKind::Fusion:
      ps(os, *s.a, 2);
      os << " : ";
      ps(os, *s.b, 3);
      break;
    case SereKind::Star:
      ps(os, *s.a, 3);
      os << "[*]";
      break;
    case SereKind::Repeat:
      ps(os, *s.a, 3);
      os << "[*" << s.repeat << "]";
      break;
  }
  if (brace) os << "}";
}

void pf(std::ostream& os, const Formula& f, int ctx) {
  // a letter formula must not swallow the sere separators, so letters are
  // printed at ctx 0 and contain no sere constructs by construction
  int prec = fprec(f);
  bool paren = prec < ctx;
  if (paren) os << "(";
  switch (f.kind) {
    case FormulaKind::Atom:
      pt(os, *f.ta, 0);
      os << " " << cmp_op_str(f.op) << " ";
      pt(os, *f.tb, 0);
      break;
    case FormulaKind::TermAtom: pt(os, *f.ta, 0); break;
    case FormulaKind::True: os << "true"; break;
    case FormulaKind::False: os << "false"; break;
    case FormulaKind::Not:
      os << "not ";
      pf(os, *f.a, 5);
      break;
    case FormulaKind::And:
      pf(os, *f.a, 4);
      os << " and ";
      pf(os, *f.b, 5);
      break;
    case FormulaKind::Or:
      pf(os, *f.a, 3);
      os << " or ";
      pf(os, *f.b, 4);
      break;
    case FormulaKind::Implies:
      pf(os, *f.a, 3);
      os << " implies ";
      pf(os, *f.b, 2);
      break;
    case FormulaKind::Iff:
      pf(os, *f.a, 1);
      os << " iff ";
      pf(os, *f.b, 2);
      break;
    case FormulaKind::X:
      os << "next ";
      pf(os, *f.a, 5);
      break;
    case FormulaKind::U:
      pf(os, *f.a, 1);
      os << " until ";
      pf(os, *f.b, 0);
      break;
    case FormulaKind::R:
      pf(os, *f.a, 1);
      os << " releases ";
      pf(os, *f.b, 0);
      break;
    case FormulaKind::G:
      if (f.a->kind == FormulaKind::Not) {
        os << "never ";
        pf(os, *f.a->a, 5);
      } else {
        os << "always ";
        pf(os, *f.a, 5);
      }
      break;
    case FormulaKind::F:
      os << "eventually ";
      pf(os, *f.a, 5);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      os << (f.kind == FormulaKind::Forall ? "forall " : "exists ") << f.var << " in " << f.cls << " . ";
      pf(os, *f.a, 0);
      break;
    case FormulaKind::SereStrong:
      os << "{ ";
      ps(os, *f.sere, 0);
      os << " }!";
      break;
    case FormulaKind::SuffixImpl:
      os << "{ ";
      ps(os, *f.sere, 0);
      os << (f.shifted ? " } |=> " : " } |-> ");
      pf(os, *f.a, 0);
      break;
  }
  if (paren) os << ")";
}

}  // namespace

std::string pretty(const FormulaPtr& f) {
  std::ostringstream os;
  pf(os, *f, 0);
  return os.str();
}

std::string pretty_term(const TermPtr& t) {
  std::ostringstream os;
  pt(os, *t, 0);
  return os.str();
}

}  // namespace rvt
