#include "rvt/ast.hpp"

#include <set>

namespace rvt {

namespace {
std::shared_ptr<Term> t_node(TermKind k, Span sp) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->span = sp;
  return t;
}
std::shared_ptr<Formula> f_node(FormulaKind k, Span sp) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->span = sp;
  return f;
}
std::shared_ptr<Sere> s_node(SereKind k, Span sp) {
  auto s = std::make_shared<Sere>();
  s->kind = k;
  s->span = sp;
  return s;
}
}  // namespace

TermPtr Term::mk_const(Rat v, Span sp) {
  auto t = t_node(TermKind::Const, sp);
  v.canonicalize();
  t->value = v;
  return t;
}
TermPtr Term::mk_null(Span sp) { return t_node(TermKind::Null, sp); }
TermPtr Term::mk_objvar(std::string n, std::string cls, Span sp) {
  auto t = t_node(TermKind::ObjVar, sp);
  t->name = std::move(n);
  t->cls = std::move(cls);
  return t;
}
TermPtr Term::mk_enumlit(std::string sym, Span sp) {
  auto t = t_node(TermKind::EnumLit, sp);
  t->name = std::move(sym);
  return t;
}
TermPtr Term::mk_attr(std::string obj, std::string cls, std::string attr, bool singleton, Span sp) {
  auto t = t_node(TermKind::AttrAccess, sp);
  t->obj_name = std::move(obj);
  t->cls = std::move(cls);
  t->name = std::move(attr);
  t->singleton = singleton;
  return t;
}
TermPtr Term::mk_gvar(int idx, std::string name) {
  auto t = t_node(TermKind::GroundVar, {});
  t->gvar = idx;
  t->name = std::move(name);
  return t;
}
TermPtr Term::mk_add(TermPtr l, TermPtr r, Span sp) {
  auto t = t_node(TermKind::Add, sp);
  t->a = std::move(l);
  t->b = std::move(r);
  return t;
}
TermPtr Term::mk_sub(TermPtr l, TermPtr r, Span sp) {
  auto t = t_node(TermKind::Sub, sp);
  t->a = std::move(l);
  t->b = std::move(r);
  return t;
}
TermPtr Term::mk_scale(Rat c, TermPtr x, Span sp) {
  auto t = t_node(TermKind::Scale, sp);
  c.canonicalize();
  t->value = c;
  t->a = std::move(x);
  return t;
}
TermPtr Term::mk_next(TermPtr x, Span sp) {
  auto t = t_node(TermKind::Next, sp);
  t->a = std::move(x);
  return t;
}
TermPtr Term::mk_der(TermPtr x, Span sp) {
  auto t = t_node(TermKind::Der, sp);
  t->a = std::move(x);
  return t;
}

std::string cmp_op_str(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

FormulaPtr Formula::mk_atom(CmpOp op, TermPtr l, TermPtr r, Span sp) {
  // canonical orientation: a bare constant goes to the right-hand side
  if (l->kind == TermKind::Const && r->kind != TermKind::Const) {
    std::swap(l, r);
    switch (op) {
      case CmpOp::Lt: op = CmpOp::Gt; break;
      case CmpOp::Gt: op = CmpOp::Lt; break;
      case CmpOp::Le: op = CmpOp::Ge; break;
      case CmpOp::Ge: op = CmpOp::Le; break;
      default: break;
    }
  }
  auto f = f_node(FormulaKind::Atom, sp);
  f->op = op;
  f->ta = std::move(l);
  f->tb = std::move(r);
  return f;
}
FormulaPtr Formula::mk_term_atom(TermPtr t, Span sp) {
  auto f = f_node(FormulaKind::TermAtom, sp);
  f->ta = std::move(t);
  return f;
}
FormulaPtr Formula::mk_const(bool v, Span sp) { return f_node(v ? FormulaKind::True : FormulaKind::False, sp); }
FormulaPtr Formula::mk_not(FormulaPtr x, Span sp) {
  auto f = f_node(FormulaKind::Not, sp);
  f->a = std::move(x);
  return f;
}
FormulaPtr Formula::mk_bin(FormulaKind k, FormulaPtr l, FormulaPtr r, Span sp) {
  auto f = f_node(k, sp);
  f->a = std::move(l);
  f->b = std::move(r);
  return f;
}
FormulaPtr Formula::mk_unary(FormulaKind k, FormulaPtr x, Span sp) {
  auto f = f_node(k, sp);
  f->a = std::move(x);
  return f;
}
FormulaPtr Formula::mk_quant(FormulaKind k, std::string var, std::string cls, FormulaPtr body, Span sp) {
  auto f = f_node(k, sp);
  f->var = std::move(var);
  f->cls = std::move(cls);
  f->a = std::move(body);
  return f;
}
FormulaPtr Formula::mk_sere_strong(SerePtr r, Span sp) {
  auto f = f_node(FormulaKind::SereStrong, sp);
  f->sere = std::move(r);
  return f;
}
FormulaPtr Formula::mk_suffix_impl(SerePtr r, FormulaPtr g, bool shifted, Span sp) {
  auto f = f_node(FormulaKind::SuffixImpl, sp);
  f->sere = std::move(r);
  f->a = std::move(g);
  f->shifted = shifted;
  return f;
}

SerePtr Sere::mk_letter(FormulaPtr f, Span sp) {
  auto s = s_node(SereKind::Letter, sp);
  s->letter = std::move(f);
  return s;
}
SerePtr Sere::mk_bin(SereKind k, SerePtr l, SerePtr r, Span sp) {
  auto s = s_node(k, sp);
  s->a = std::move(l);
  s->b = std::move(r);
  return s;
}
SerePtr Sere::mk_star(SerePtr r, Span sp) {
  auto s = s_node(SereKind::Star, sp);
  s->a = std::move(r);
  return s;
}
SerePtr Sere::mk_repeat(SerePtr r, long n, Span sp) {
  auto s = s_node(SereKind::Repeat, sp);
  s->a = std::move(r);
  s->repeat = n;
  return s;
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Const: return a->value == b->value;
    case TermKind::Null: return true;
    case TermKind::ObjVar: return a->name == b->name;
    case TermKind::EnumLit: return a->name == b->name;
    case TermKind::AttrAccess:
      return a->name == b->name && a->obj_name == b->obj_name && a->singleton == b->singleton;
    case TermKind::GroundVar: return a->gvar == b->gvar;
    case TermKind::Scale: return a->value == b->value && term_eq(a->a, b->a);
    case TermKind::Add:
    case TermKind::Sub: return term_eq(a->a, b->a) && term_eq(a->b, b->b);
    case TermKind::Next:
    case TermKind::Der: return term_eq(a->a, b->a);
  }
  return false;
}

bool sere_eq(const SerePtr& a, const SerePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SereKind::Letter: return formula_eq(a->letter, b->letter);
    case SereKind::Concat:
    case SereKind::Fusion:
    case SereKind::Union: return sere_eq(a->a, b->a) && sere_eq(a->b, b->b);
    case SereKind::Star: return sere_eq(a->a, b->a);
    case SereKind::Repeat: return a->repeat == b->repeat && sere_eq(a->a, b->a);
  }
  return false;
}

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::Atom: return a->op == b->op && term_eq(a->ta, b->ta) && term_eq(a->tb, b->tb);
    case FormulaKind::TermAtom: return term_eq(a->ta, b->ta);
    case FormulaKind::True:
    case FormulaKind::False: return true;
    case FormulaKind::Not:
    case FormulaKind::X:
    case FormulaKind::G:
    case FormulaKind::F: return formula_eq(a->a, b->a);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
    case FormulaKind::U:
    case FormulaKind::R: return formula_eq(a->a, b->a) && formula_eq(a->b, b->b);
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return a->var == b->var && a->cls == b->cls && formula_eq(a->a, b->a);
    case FormulaKind::SereStrong: return sere_eq(a->sere, b->sere);
    case FormulaKind::SuffixImpl:
      return a->shifted == b->shifted && sere_eq(a->sere, b->sere) && formula_eq(a->a, b->a);
  }
  return false;
}

namespace {
void count_term(const Term* t, std::set<const void*>& seen, int& n) {
  if (!t || !seen.insert(t).second) return;
  ++n;
  count_term(t->a.get(), seen, n);
  count_term(t->b.get(), seen, n);
}
void count_formula(const Formula* f, std::set<const void*>& seen, int& n);
void count_sere(const Sere* s, std::set<const void*>& seen, int& n) {
  if (!s || !seen.insert(s).second) return;
  ++n;
  count_formula(s->letter.get(), seen, n);
  count_sere(s->a.get(), seen, n);
  count_sere(s->b.get(), seen, n);
}
void count_formula(const Formula* f, std::set<const void*>& seen, int& n) {
  if (!f || !seen.insert(f).second) return;
  ++n;
  count_term(f->ta.get(), seen, n);
  count_term(f->tb.get(), seen, n);
  count_formula(f->a.get(), seen, n);
  count_formula(f->b.get(), seen, n);
  count_sere(f->sere.get(), seen, n);
}
}  // namespace

int formula_size(const FormulaPtr& f) {
  std::set<const void*> seen;
  int n = 0;
  count_formula(f.get(), seen, n);
  return n;
}

}  // namespace rvt
