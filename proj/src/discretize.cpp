#include "rvt/discretize.hpp"

#include <map>

namespace rvt {

namespace {

struct LinParts {
  std::map<std::pair<int, bool>, Rat> vars;  // (gvar, next) -> coeff
  std::map<int, Rat> ders;                   // gvar -> coeff
  Rat constant;
};

void decompose(const TermPtr& t, const Rat& sign, LinParts& out) {
  switch (t->kind) {
    case TermKind::Const: out.constant += sign * t->value; break;
    case TermKind::GroundVar: out.vars[{t->gvar, false}] += sign; break;
    case TermKind::Next:
      if (t->a->kind != TermKind::GroundVar) throw Error("next requires an attribute term", t->span);
      out.vars[{t->a->gvar, true}] += sign;
      break;
    case TermKind::Der:
      if (t->a->kind != TermKind::GroundVar)
        throw Error("der requires a continuous real attribute", t->span);
      out.ders[t->a->gvar] += sign;
      break;
    case TermKind::Add:
      decompose(t->a, sign, out);
      decompose(t->b, sign, out);
      break;
    case TermKind::Sub:
      decompose(t->a, sign, out);
      decompose(t->b, -sign, out);
      break;
    case TermKind::Scale: decompose(t->a, sign * t->value, out); break;
    default: throw Error("nonlinear or non-numeric ground atom", t->span);
  }
}

class Discretizer {
 public:
  explicit Discretizer(const GroundProblem& g) : g_(g) {
    for (const auto& v : g.vars) dp_.vars.push_back({v.name, v.dom, VScope::State});
    dp_.n_ground = static_cast<int>(g.vars.size());
    if (g.has_continuous()) {
      Domain iota;
      iota.kind = Domain::Enum;
      iota.symbols = {"flow", "jump"};
      dp_.iota = static_cast<int>(dp_.vars.size());
      dp_.vars.push_back({"iota", iota, VScope::Trans});
      Domain delta;
      delta.kind = Domain::Real;
      dp_.delta = static_cast<int>(dp_.vars.size());
      dp_.vars.push_back({"delta", delta, VScope::Trans});
      build_axioms();
    }
  }

  DiscreteProblem run() {
    TFormulaPtr f;
    for (const auto& [c, req] : g_.conjuncts) {
      TFormulaPtr cf = tf(c);
      f = f ? TFormula::mk_bin(TfKind::And, f, cf) : cf;
    }
    dp_.formula = f ? f : TFormula::mk_leaf(Expr::mk_true());
    return dp_;
  }

 private:
  const GroundProblem& g_;
  DiscreteProblem dp_;

  ExprPtr flow() const { return Expr::mk_enum_is({dp_.iota, false}, kFlowSym); }

  void build_axioms() {
    VRef d{dp_.delta, false};
    // flow => delta > 0
    dp_.trans_axioms.push_back(
        Expr::mk_implies(flow(), Expr::mk_lin({{d, Rat(1)}}, CmpOp::Gt, Rat(0))));
    // jump => delta = 0
    dp_.trans_axioms.push_back(
        Expr::mk_implies(Expr::mk_not(flow()), Expr::mk_lin({{d, Rat(1)}}, CmpOp::Eq, Rat(0))));
    // flow => discrete variables frozen
    for (int i = 0; i < dp_.n_ground; ++i) {
      const Domain& dom = dp_.vars[i].dom;
      if (dom.kind == Domain::Real && dom.continuous) continue;
      ExprPtr frozen;
      VRef cur{i, false}, nxt{i, true};
      switch (dom.kind) {
        case Domain::Bool: frozen = Expr::mk_iff(Expr::mk_bvar(cur), Expr::mk_bvar(nxt)); break;
        case Domain::Enum: frozen = Expr::mk_enum_eq(cur, nxt); break;
        default:
          frozen = Expr::mk_lin({{nxt, Rat(1)}, {cur, Rat(-1)}}, CmpOp::Eq, Rat(0));
          break;
      }
      dp_.trans_axioms.push_back(Expr::mk_implies(flow(), frozen));
    }
  }

  int enum_sym(const TermPtr& gvar_term, const std::string& sym, Span sp) const {
    const Domain& dom = dp_.vars[gvar_term->gvar].dom;
    int idx = dom.sym_index(sym);
    (void)sp;
    return idx;  // -1 when absent (e.g. null on a non-nullable reference)
  }

  ExprPtr atom_expr(const Formula& f) {
    // enum-valued comparisons (enumerations and lowered references)
    auto is_enum_side = [&](const TermPtr& t) {
      const TermPtr& base = t->kind == TermKind::Next ? t->a : t;
      return base->kind == TermKind::GroundVar && dp_.vars[base->gvar].dom.kind == Domain::Enum;
    };
    auto enum_ref = [&](const TermPtr& t) {
      if (t->kind == TermKind::Next) return VRef{t->a->gvar, true};
      return VRef{t->gvar, false};
    };
    bool le = is_enum_side(f.ta), re = is_enum_side(f.tb);
    if (le || re) {
      if (f.op != CmpOp::Eq && f.op != CmpOp::Ne)
        throw Error("enumerations admit only = and !=", f.span);
      ExprPtr eq;
      if (le && re) {
        eq = Expr::mk_enum_eq(enum_ref(f.ta), enum_ref(f.tb));
      } else {
        const TermPtr& ev = le ? f.ta : f.tb;
        const TermPtr& lit = le ? f.tb : f.ta;
        if (lit->kind != TermKind::EnumLit) throw Error("enumeration compared with non-symbol", f.span);
        const TermPtr& base = ev->kind == TermKind::Next ? ev->a : ev;
        int idx = enum_sym(base, lit->name, f.span);
        eq = idx < 0 ? Expr::mk_false() : Expr::mk_enum_is(enum_ref(ev), idx);
      }
      return f.op == CmpOp::Eq ? eq : Expr::mk_not(eq);
    }

    LinParts p;
    decompose(f.ta, Rat(1), p);
    decompose(f.tb, Rat(-1), p);
    if (!p.ders.empty()) {
      if (!dp_.has_step()) throw Error("derivative atom without continuous variables", f.span);
      for (const auto& [v, c] : p.vars)
        if (c != 0)
          throw Error(v.second ? "atom mixes der and next" : "atom mixes derivative and state terms",
                      f.span);
      // sum c*der(x) + K ~ 0, multiplied through by delta > 0:
      // sum c*(x' - x) + K*delta ~ 0, and the step must be a flow
      std::vector<std::pair<VRef, Rat>> lin;
      for (const auto& [x, c] : p.ders) {
        if (c == 0) continue;
        if (!dp_.vars[x].dom.continuous) throw Error("der requires continuous real", f.span);
        lin.push_back({{x, true}, c});
        lin.push_back({{x, false}, -c});
      }
      if (p.constant != 0) lin.push_back({{dp_.delta, false}, p.constant});
      return Expr::mk_and({flow(), Expr::mk_lin(std::move(lin), f.op, Rat(0))});
    }
    std::vector<std::pair<VRef, Rat>> lin;
    for (const auto& [v, c] : p.vars) {
      if (c == 0) continue;
      if (dp_.vars[v.first].dom.kind == Domain::Bool || dp_.vars[v.first].dom.kind == Domain::Enum)
        throw Error("non-numeric term in arithmetic atom", f.span);
      lin.push_back({{v.first, v.second}, c});
    }
    return Expr::mk_lin(std::move(lin), f.op, -p.constant);
  }

  ExprPtr leaf_expr(const FormulaPtr& f) {
    switch (f->kind) {
      case FormulaKind::True: return Expr::mk_true();
      case FormulaKind::False: return Expr::mk_false();
      case FormulaKind::Atom: return atom_expr(*f);
      case FormulaKind::TermAtom: {
        const TermPtr& t = f->ta;
        if (t->kind == TermKind::GroundVar) return Expr::mk_bvar({t->gvar, false});
        if (t->kind == TermKind::Next && t->a->kind == TermKind::GroundVar)
          return Expr::mk_bvar({t->a->gvar, true});
        throw Error("expected a boolean attribute", f->span);
      }
      case FormulaKind::Not: return Expr::mk_not(leaf_expr(f->a));
      case FormulaKind::And: return Expr::mk_and({leaf_expr(f->a), leaf_expr(f->b)});
      case FormulaKind::Or: return Expr::mk_or({leaf_expr(f->a), leaf_expr(f->b)});
      default: throw Error("temporal operator where a boolean expression was expected", f->span);
    }
  }

  TSerePtr ts(const SerePtr& s) {
    switch (s->kind) {
      case SereKind::Letter: {
        ExprPtr e = leaf_expr(s->letter);
        if (expr_transition_scoped(e, dp_.vars))
          throw Error("SERE letters must not use next or der", s->span);
        return TSere::mk_letter(e);
      }
      case SereKind::Concat:
      case SereKind::Fusion:
      case SereKind::Union: return TSere::mk_bin(s->kind, ts(s->a), ts(s->b));
      case SereKind::Star: return TSere::mk_star(ts(s->a));
      case SereKind::Repeat: return TSere::mk_repeat(ts(s->a), s->repeat);
    }
    throw Error("bad sere");
  }

  TFormulaPtr tf(const FormulaPtr& f) {
    switch (f->kind) {
      case FormulaKind::True:
      case FormulaKind::False:
      case FormulaKind::Atom:
      case FormulaKind::TermAtom: return TFormula::mk_leaf(leaf_expr(f));
      case FormulaKind::Not: {
        TFormulaPtr a = tf(f->a);
        // fold leaf negations so leaves stay maximal boolean expressions
        if (a->kind == TfKind::Leaf) return TFormula::mk_leaf(Expr::mk_not(a->leaf));
        return TFormula::mk_not(a);
      }
      case FormulaKind::And:
      case FormulaKind::Or: {
        TFormulaPtr a = tf(f->a), b = tf(f->b);
        if (a->kind == TfKind::Leaf && b->kind == TfKind::Leaf)
          return TFormula::mk_leaf(f->kind == FormulaKind::And ? Expr::mk_and({a->leaf, b->leaf})
                                                               : Expr::mk_or({a->leaf, b->leaf}));
        return TFormula::mk_bin(f->kind == FormulaKind::And ? TfKind::And : TfKind::Or, a, b);
      }
      case FormulaKind::X: return TFormula::mk_x(tf(f->a));
      case FormulaKind::U: return TFormula::mk_bin(TfKind::U, tf(f->a), tf(f->b));
      case FormulaKind::SereStrong: return TFormula::mk_sere_strong(ts(f->sere));
      case FormulaKind::SuffixImpl:
        if (f->shifted) throw Error("formula not in core form (|=> remains)", f->span);
        return TFormula::mk_suffix_impl(ts(f->sere), tf(f->a));
      default: throw Error("formula not in core form (desugar first)", f->span);
    }
  }
};

}  // namespace

DiscreteProblem to_discrete(const GroundProblem& g) { return Discretizer(g).run(); }

HybridTrace lift_trace(const Lasso& t, const DiscreteProblem& dp) {
  HybridTrace out;
  out.loop_start = t.loop;
  int k = static_cast<int>(t.states.size());
  if (k == 0) throw Error("empty trace");
  for (int i = 0; i < k; ++i) {
    std::map<std::string, TraceVal> st;
    for (int v = 0; v < dp.n_ground; ++v) {
      const auto& var = dp.vars[v];
      const Val& val = t.states[i][v];
      switch (var.dom.kind) {
        case Domain::Bool: st[var.name] = TraceVal::of_bool(val.b); break;
        case Domain::Enum: st[var.name] = TraceVal::of_sym(var.dom.symbols[val.i]); break;
        case Domain::Int: st[var.name] = TraceVal::of_rat(Rat(val.i)); break;
        case Domain::Real: st[var.name] = TraceVal::of_rat(val.q); break;
      }
    }
    out.states.push_back(std::move(st));
  }
  for (int i = 0; i < k; ++i) {
    int tgt = i + 1 < k ? i + 1 : t.loop;
    HybridStep sp;
    if (dp.has_step()) {
      sp.flow = t.steps[i][dp.iota].i == kFlowSym;
      sp.delta = t.steps[i][dp.delta].q;
      if (sp.flow && sp.delta <= 0) throw Error("invariant violation: flow with zero duration");
      if (!sp.flow && sp.delta != 0) throw Error("invariant violation: jump with nonzero duration");
      for (int v = 0; v < dp.n_ground; ++v) {
        const auto& var = dp.vars[v];
        if (var.dom.kind == Domain::Real && var.dom.continuous) {
          if (sp.flow) sp.ders[var.name] = (t.states[tgt][v].q - t.states[i][v].q) / sp.delta;
        } else if (sp.flow) {
          Val a = t.states[i][v], b = t.states[tgt][v];
          if (!(a == b)) throw Error("invariant violation: flow changes a discrete variable");
        }
      }
    } else {
      sp.flow = false;
      sp.delta = Rat(0);
    }
    out.steps.push_back(std::move(sp));
  }
  return out;
}

}  // namespace rvt
