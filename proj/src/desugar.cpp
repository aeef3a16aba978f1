#include "rvt/lang.hpp"

namespace rvt {

namespace {

FormulaPtr ds(const FormulaPtr& f);

SerePtr ds_sere(const SerePtr& s) {
  switch (s->kind) {
    case SereKind::Letter: return Sere::mk_letter(ds(s->letter), s->span);
    case SereKind::Concat:
    case SereKind::Fusion:
    case SereKind::Union: return Sere::mk_bin(s->kind, ds_sere(s->a), ds_sere(s->b), s->span);
    case SereKind::Star: return Sere::mk_star(ds_sere(s->a), s->span);
    case SereKind::Repeat: return Sere::mk_repeat(ds_sere(s->a), s->repeat, s->span);
  }
  return s;
}

FormulaPtr ds(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::TermAtom:
    case FormulaKind::True:
    case FormulaKind::False: return f;
    case FormulaKind::Not: return Formula::mk_not(ds(f->a), f->span);
    case FormulaKind::And:
    case FormulaKind::Or: return Formula::mk_bin(f->kind, ds(f->a), ds(f->b), f->span);
    case FormulaKind::Implies: {
      // a -> b  ==>  not a or b
      return Formula::mk_bin(FormulaKind::Or, Formula::mk_not(ds(f->a), f->span), ds(f->b), f->span);
    }
    case FormulaKind::Iff: {
      // a <-> b  ==>  (a and b) or (not a and not b), operands shared
      FormulaPtr a = ds(f->a), b = ds(f->b);
      return Formula::mk_bin(
          FormulaKind::Or, Formula::mk_bin(FormulaKind::And, a, b, f->span),
          Formula::mk_bin(FormulaKind::And, Formula::mk_not(a, f->span), Formula::mk_not(b, f->span),
                          f->span),
          f->span);
    }
    case FormulaKind::X: return Formula::mk_unary(FormulaKind::X, ds(f->a), f->span);
    case FormulaKind::U: return Formula::mk_bin(FormulaKind::U, ds(f->a), ds(f->b), f->span);
    case FormulaKind::R: {
      // f R g  ==>  not (not f U not g)
      FormulaPtr a = ds(f->a), b = ds(f->b);
      return Formula::mk_not(Formula::mk_bin(FormulaKind::U, Formula::mk_not(a, f->span),
                                             Formula::mk_not(b, f->span), f->span),
                             f->span);
    }
    case FormulaKind::G: {
      // G f  ==>  not (true U not f)
      FormulaPtr a = ds(f->a);
      return Formula::mk_not(Formula::mk_bin(FormulaKind::U, Formula::mk_const(true, f->span),
                                             Formula::mk_not(a, f->span), f->span),
                             f->span);
    }
    case FormulaKind::F:
      return Formula::mk_bin(FormulaKind::U, Formula::mk_const(true, f->span), ds(f->a), f->span);
    case FormulaKind::Forall:
    case FormulaKind::Exists: return Formula::mk_quant(f->kind, f->var, f->cls, ds(f->a), f->span);
    case FormulaKind::SereStrong: return Formula::mk_sere_strong(ds_sere(f->sere), f->span);
    case FormulaKind::SuffixImpl: {
      SerePtr r = ds_sere(f->sere);
      FormulaPtr g = ds(f->a);
      if (f->shifted) {
        // {r} |=> g  ==>  {r ; true} |-> g
        SerePtr rt = Sere::mk_bin(SereKind::Concat, r,
                                  Sere::mk_letter(Formula::mk_const(true, f->span), f->span), f->span);
        return Formula::mk_suffix_impl(rt, g, false, f->span);
      }
      return Formula::mk_suffix_impl(r, g, false, f->span);
    }
  }
  return f;
}

}  // namespace

FormulaPtr desugar(const FormulaPtr& f) { return ds(f); }

}  // namespace rvt
