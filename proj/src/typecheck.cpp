#include "rvt/lang.hpp"

namespace rvt {

namespace {

class Typechecker {
 public:
  explicit Typechecker(const Signature& sig) : sig_(sig) {}

  FormulaPtr formula(const FormulaPtr& f, bool in_letter = false) {
    auto out = std::make_shared<Formula>(*f);
    if (in_letter) {
      switch (f->kind) {
        case FormulaKind::X:
        case FormulaKind::U:
        case FormulaKind::R:
        case FormulaKind::G:
        case FormulaKind::F:
        case FormulaKind::SereStrong:
        case FormulaKind::SuffixImpl:
          throw Error("temporal operator not allowed inside a SERE letter", f->span);
        case FormulaKind::Forall:
        case FormulaKind::Exists:
          throw Error("quantifier not allowed inside a SERE letter", f->span);
        default: break;
      }
    }
    switch (f->kind) {
      case FormulaKind::Atom: {
        out->ta = term(f->ta, in_letter);
        out->tb = term(f->tb, in_letter);
        check_atom(out);
        break;
      }
      case FormulaKind::TermAtom: {
        out->ta = term(f->ta, in_letter);
        if (out->ta->type.kind != Type::Bool)
          throw Error("expected a boolean attribute", f->ta->span);
        break;
      }
      case FormulaKind::True:
      case FormulaKind::False: break;
      case FormulaKind::Not:
      case FormulaKind::X:
      case FormulaKind::G:
      case FormulaKind::F: out->a = formula(f->a, in_letter); break;
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies:
      case FormulaKind::Iff:
      case FormulaKind::U:
      case FormulaKind::R:
        out->a = formula(f->a, in_letter);
        out->b = formula(f->b, in_letter);
        break;
      case FormulaKind::Forall:
      case FormulaKind::Exists: out->a = formula(f->a, in_letter); break;
      case FormulaKind::SereStrong: out->sere = sere(f->sere); break;
      case FormulaKind::SuffixImpl:
        out->sere = sere(f->sere);
        out->a = formula(f->a, in_letter);
        break;
    }
    return out;
  }

 private:
  const Signature& sig_;

  SerePtr sere(const SerePtr& s) {
    auto out = std::make_shared<Sere>(*s);
    switch (s->kind) {
      case SereKind::Letter: out->letter = formula(s->letter, /*in_letter=*/true); break;
      case SereKind::Concat:
      case SereKind::Fusion:
      case SereKind::Union:
        out->a = sere(s->a);
        out->b = sere(s->b);
        break;
      case SereKind::Star: out->a = sere(s->a); break;
      case SereKind::Repeat:
        if (s->repeat < 0) throw Error("repeat count must be >= 0", s->span);
        out->a = sere(s->a);
        break;
    }
    return out;
  }

  TermPtr term(const TermPtr& t, bool in_letter) {
    auto out = std::make_shared<Term>(*t);
    switch (t->kind) {
      case TermKind::Const: out->type.kind = Type::Real; break;
      case TermKind::Null:
        out->type.kind = Type::Object;
        out->type.cls = "";
        break;
      case TermKind::ObjVar:
        out->type.kind = Type::Object;
        out->type.cls = t->cls;
        break;
      case TermKind::EnumLit: out->type.kind = Type::Unknown; break;  // typed by the atom
      case TermKind::GroundVar: throw Error("ground variable before instantiation", t->span);
      case TermKind::AttrAccess: {
        const ClassDef* c = sig_.find_class(t->cls);
        if (!c) throw Error("unknown class " + t->cls, t->span);
        const Attribute* a = c->find_attr(t->name);
        if (!a) throw Error("unknown attribute " + t->name, t->span);
        switch (a->type.kind) {
          case AttrKind::Boolean: out->type.kind = Type::Bool; break;
          case AttrKind::Enumeration:
            out->type.kind = Type::Enum;
            out->type.symbols = a->type.symbols;
            break;
          case AttrKind::Integer: out->type.kind = Type::Int; break;
          case AttrKind::Real:
            out->type.kind = Type::Real;
            out->type.continuous = a->type.continuous;
            break;
          case AttrKind::Reference:
            out->type.kind = Type::Object;
            out->type.cls = a->type.target;
            break;
        }
        break;
      }
      case TermKind::Add:
      case TermKind::Sub: {
        out->a = term(t->a, in_letter);
        out->b = term(t->b, in_letter);
        if (!out->a->type.is_numeric() || !out->b->type.is_numeric())
          throw Error("arithmetic requires numeric operands", t->span);
        out->type.kind = Type::Real;
        break;
      }
      case TermKind::Scale: {
        out->a = term(t->a, in_letter);
        if (!out->a->type.is_numeric()) throw Error("arithmetic requires numeric operands", t->span);
        out->type.kind = Type::Real;
        break;
      }
      case TermKind::Next: {
        if (in_letter) throw Error("next not allowed inside a SERE letter", t->span);
        if (t->a->kind == TermKind::Next) throw Error("nested next", t->span);
        if (t->a->kind == TermKind::Der) throw Error("next cannot wrap der", t->span);
        if (t->a->kind != TermKind::AttrAccess)
          throw Error("next requires an attribute term", t->span);
        out->a = term(t->a, in_letter);
        out->type = out->a->type;
        break;
      }
      case TermKind::Der: {
        if (in_letter) throw Error("der not allowed inside a SERE letter", t->span);
        if (t->a->kind == TermKind::Der) throw Error("nested der", t->span);
        if (t->a->kind == TermKind::Next) throw Error("der cannot wrap next", t->span);
        if (t->a->kind != TermKind::AttrAccess)
          throw Error("der requires a continuous real attribute", t->span);
        out->a = term(t->a, in_letter);
        if (out->a->type.kind != Type::Real || !out->a->type.continuous)
          throw Error("der requires continuous real", t->span);
        out->type.kind = Type::Real;
        break;
      }
    }
    return out;
  }

  void check_atom(const std::shared_ptr<Formula>& f) {
    const Type& l = f->ta->type;
    const Type& r = f->tb->type;
    bool eqop = f->op == CmpOp::Eq || f->op == CmpOp::Ne;
    if (l.is_numeric() && r.is_numeric()) return;
    if (l.kind == Type::Enum || r.kind == Type::Enum) {
      if (!eqop) throw Error("enumerations admit only = and !=", f->span);
      if (l.kind == Type::Enum && r.kind == Type::Enum) {
        if (l.symbols != r.symbols) throw Error("comparison across different enumerations", f->span);
        return;
      }
      // one side is an enumeration literal
      const Type& et = l.kind == Type::Enum ? l : r;
      auto lit = l.kind == Type::Enum ? f->tb : f->ta;
      if (lit->type.kind != Type::Unknown || lit->kind != TermKind::EnumLit)
        throw Error("enumeration compared with incompatible term", f->span);
      if (std::find(et.symbols.begin(), et.symbols.end(), lit->name) == et.symbols.end())
        throw Error("symbol " + lit->name + " not in enumeration", lit->span);
      auto typed = std::make_shared<Term>(*lit);
      typed->type = et;
      if (l.kind == Type::Enum)
        f->tb = typed;
      else
        f->ta = typed;
      return;
    }
    if (l.kind == Type::Object && r.kind == Type::Object) {
      if (!eqop) throw Error("object terms admit only = and !=", f->span);
      bool lnull = f->ta->kind == TermKind::Null, rnull = f->tb->kind == TermKind::Null;
      if (lnull && rnull) throw Error("null compared with null", f->span);
      if (lnull || rnull) {
        const auto& other = lnull ? f->tb : f->ta;
        bool is_ref_attr = (other->kind == TermKind::AttrAccess || other->kind == TermKind::Next);
        if (!is_ref_attr) throw Error("null can only be compared with a reference attribute", f->span);
        return;
      }
      if (l.cls != r.cls) throw Error("object comparison across classes", f->span);
      return;
    }
    if (l.kind == Type::Unknown || r.kind == Type::Unknown)
      throw Error("cannot type enumeration literal here", f->span);
    throw Error("incompatible comparison operands", f->span);
  }
};

}  // namespace

FormulaPtr typecheck(const FormulaPtr& f, const Signature& sig) { return Typechecker(sig).formula(f); }

}  // namespace rvt
