#include "rvt/ground.hpp"

#include <functional>

namespace rvt {

FormulaPtr GroundProblem::formula() const {
  if (conjuncts.empty()) return Formula::mk_const(true);
  FormulaPtr acc = conjuncts[0].first;
  for (size_t i = 1; i < conjuncts.size(); ++i)
    acc = Formula::mk_bin(FormulaKind::And, acc, conjuncts[i].first);
  return acc;
}

bool GroundProblem::has_continuous() const {
  for (const auto& v : vars)
    if (v.dom.kind == Domain::Real && v.dom.continuous) return true;
  return false;
}

namespace {

class Grounder {
 public:
  Grounder(const Signature& sig, const std::map<std::string, long>& bounds, GroundLimits limits)
      : sig_(sig), bounds_(bounds), limits_(limits) {}

  std::vector<GroundVar> vars;

  FormulaPtr ground(const FormulaPtr& f) {
    std::map<std::string, long> env;
    return walk(f, env);
  }

 private:
  const Signature& sig_;
  const std::map<std::string, long>& bounds_;
  GroundLimits limits_;
  std::map<std::string, int> var_index_;
  long nodes_ = 0;

  void budget(long n = 1) {
    nodes_ += n;
    if (nodes_ > limits_.max_nodes)
      throw Error("expansion limit exceeded (" + std::to_string(limits_.max_nodes) + " nodes)");
  }

  long bound_of(const std::string& cls) const {
    auto it = bounds_.find(cls);
    if (it == bounds_.end()) throw Error("missing bound for class " + cls);
    return it->second;
  }

  int ground_var(const std::string& cls, long idx, const std::string& attr) {
    std::string name = cls + "#" + std::to_string(idx) + "." + attr;
    auto it = var_index_.find(name);
    if (it != var_index_.end()) return it->second;
    const Attribute* a = sig_.find_class(cls)->find_attr(attr);
    Domain d;
    switch (a->type.kind) {
      case AttrKind::Boolean: d.kind = Domain::Bool; break;
      case AttrKind::Enumeration:
        d.kind = Domain::Enum;
        d.symbols = a->type.symbols;
        break;
      case AttrKind::Integer:
        d.kind = Domain::Int;
        d.lo = a->type.lo;
        d.hi = a->type.hi;
        break;
      case AttrKind::Real:
        d.kind = Domain::Real;
        d.continuous = a->type.continuous;
        break;
      case AttrKind::Reference: {
        d.kind = Domain::Enum;
        if (a->type.nullable) d.symbols.push_back("null");
        long n = bound_of(a->type.target);
        for (long i = 1; i <= n; ++i) d.symbols.push_back(a->type.target + "#" + std::to_string(i));
        break;
      }
    }
    int id = static_cast<int>(vars.size());
    vars.push_back({name, d});
    var_index_[name] = id;
    return id;
  }

  // terms: either a rewritten term, or a resolved object constant (cls, idx)
  struct ObjConst {
    std::string cls;
    long idx = 0;  // 0 encodes null
  };

  TermPtr walk_term(const TermPtr& t, const std::map<std::string, long>& env, ObjConst* obj) {
    budget();
    switch (t->kind) {
      case TermKind::Const:
      case TermKind::EnumLit: return t;
      case TermKind::Null:
        if (obj) {
          obj->cls = "";
          obj->idx = 0;
          return nullptr;
        }
        return t;
      case TermKind::ObjVar: {
        auto it = env.find(t->name);
        if (it == env.end()) throw Error("unbound variable " + t->name, t->span);
        if (!obj) throw Error("object variable used as a value", t->span);
        obj->cls = t->cls;
        obj->idx = it->second;
        return nullptr;
      }
      case TermKind::AttrAccess: {
        long idx;
        if (t->singleton) {
          long n = bound_of(t->cls);
          if (n != 1)
            throw Error("bare attribute " + t->name + " requires bound 1 for class " + t->cls, t->span);
          idx = 1;
        } else {
          auto it = env.find(t->obj_name);
          if (it == env.end()) throw Error("unbound variable " + t->obj_name, t->span);
          idx = it->second;
        }
        int g = ground_var(t->cls, idx, t->name);
        auto gv = Term::mk_gvar(g, vars[g].name);
        auto out = std::make_shared<Term>(*gv);
        out->type = t->type;
        return out;
      }
      case TermKind::GroundVar: return t;
      case TermKind::Add: return Term::mk_add(walk_term(t->a, env, nullptr), walk_term(t->b, env, nullptr), t->span);
      case TermKind::Sub: return Term::mk_sub(walk_term(t->a, env, nullptr), walk_term(t->b, env, nullptr), t->span);
      case TermKind::Scale: return Term::mk_scale(t->value, walk_term(t->a, env, nullptr), t->span);
      case TermKind::Next: return Term::mk_next(walk_term(t->a, env, nullptr), t->span);
      case TermKind::Der: return Term::mk_der(walk_term(t->a, env, nullptr), t->span);
    }
    return t;
  }

  bool is_objlike(const TermPtr& t) {
    return t->kind == TermKind::ObjVar || t->kind == TermKind::Null;
  }

  FormulaPtr walk(const FormulaPtr& f, std::map<std::string, long>& env) {
    budget();
    switch (f->kind) {
      case FormulaKind::True:
      case FormulaKind::False: return f;
      case FormulaKind::Atom: {
        // object constants compare statically
        bool lo = is_objlike(f->ta), ro = is_objlike(f->tb);
        if (lo && ro) {
          ObjConst a, b;
          walk_term(f->ta, env, &a);
          walk_term(f->tb, env, &b);
          bool eq = a.cls == b.cls && a.idx == b.idx;
          bool truth = f->op == CmpOp::Eq ? eq : !eq;
          return Formula::mk_const(truth, f->span);
        }
        if (lo || ro) {
          // reference attribute vs object constant: becomes an enum test
          ObjConst c;
          TermPtr refside = lo ? f->tb : f->ta;
          walk_term(lo ? f->ta : f->tb, env, &c);
          TermPtr g = walk_term(refside, env, nullptr);
          std::string sym = c.idx == 0 ? "null" : c.cls + "#" + std::to_string(c.idx);
          return Formula::mk_atom(f->op, g, Term::mk_enumlit(sym, f->span), f->span);
        }
        return Formula::mk_atom(f->op, walk_term(f->ta, env, nullptr), walk_term(f->tb, env, nullptr),
                                f->span);
      }
      case FormulaKind::TermAtom:
        return Formula::mk_term_atom(walk_term(f->ta, env, nullptr), f->span);
      case FormulaKind::Not: return Formula::mk_not(walk(f->a, env), f->span);
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies:
      case FormulaKind::Iff:
      case FormulaKind::U:
      case FormulaKind::R:
        return Formula::mk_bin(f->kind, walk(f->a, env), walk(f->b, env), f->span);
      case FormulaKind::X:
      case FormulaKind::G:
      case FormulaKind::F: return Formula::mk_unary(f->kind, walk(f->a, env), f->span);
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        long n = bound_of(f->cls);
        bool conj = f->kind == FormulaKind::Forall;
        FormulaPtr acc;
        for (long i = 1; i <= n; ++i) {
          env[f->var] = i;
          FormulaPtr inst = walk(f->a, env);
          acc = acc ? Formula::mk_bin(conj ? FormulaKind::And : FormulaKind::Or, acc, inst, f->span)
                    : inst;
        }
        env.erase(f->var);
        return acc;
      }
      case FormulaKind::SereStrong: return Formula::mk_sere_strong(walk_sere(f->sere, env), f->span);
      case FormulaKind::SuffixImpl:
        return Formula::mk_suffix_impl(walk_sere(f->sere, env), walk(f->a, env), f->shifted, f->span);
    }
    return f;
  }

  SerePtr walk_sere(const SerePtr& s, std::map<std::string, long>& env) {
    budget();
    switch (s->kind) {
      case SereKind::Letter: return Sere::mk_letter(walk(s->letter, env), s->span);
      case SereKind::Concat:
      case SereKind::Fusion:
      case SereKind::Union:
        return Sere::mk_bin(s->kind, walk_sere(s->a, env), walk_sere(s->b, env), s->span);
      case SereKind::Star: return Sere::mk_star(walk_sere(s->a, env), s->span);
      case SereKind::Repeat: return Sere::mk_repeat(walk_sere(s->a, env), s->repeat, s->span);
    }
    return s;
  }
};

}  // namespace

GroundProblem instantiate_many(const std::vector<std::pair<FormulaPtr, std::string>>& fs,
                               const Signature& sig, const std::map<std::string, long>& bounds,
                               GroundLimits limits) {
  Grounder g(sig, bounds, limits);
  GroundProblem out;
  for (const auto& [f, req] : fs) out.conjuncts.emplace_back(g.ground(f), req);
  out.vars = g.vars;
  return out;
}

GroundProblem instantiate(const FormulaPtr& f, const Signature& sig,
                          const std::map<std::string, long>& bounds, GroundLimits limits) {
  return instantiate_many({{f, ""}}, sig, bounds, limits);
}

std::pair<std::vector<int>, std::vector<int>> free_vars(const GroundProblem& g) {
  std::vector<int> disc, cont;
  for (size_t i = 0; i < g.vars.size(); ++i) {
    if (g.vars[i].dom.kind == Domain::Real && g.vars[i].dom.continuous)
      cont.push_back(static_cast<int>(i));
    else
      disc.push_back(static_cast<int>(i));
  }
  return {disc, cont};
}

}  // namespace rvt
