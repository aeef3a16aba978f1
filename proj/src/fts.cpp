#include "rvt/fts.hpp"

#include <sstream>

namespace rvt {

namespace {
std::shared_ptr<Expr> e_node(ExprKind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}
}  // namespace

ExprPtr Expr::mk_true() { return e_node(ExprKind::True); }
ExprPtr Expr::mk_false() { return e_node(ExprKind::False); }
ExprPtr Expr::mk_bvar(VRef v) {
  auto e = e_node(ExprKind::BVar);
  e->v = v;
  return e;
}
ExprPtr Expr::mk_enum_is(VRef v, int sym) {
  auto e = e_node(ExprKind::EnumIs);
  e->v = v;
  e->sym = sym;
  return e;
}
ExprPtr Expr::mk_enum_eq(VRef a, VRef b) {
  auto e = e_node(ExprKind::EnumEq);
  e->v = a;
  e->v2 = b;
  return e;
}
ExprPtr Expr::mk_lin(std::vector<std::pair<VRef, Rat>> lin, CmpOp op, Rat rhs) {
  auto e = e_node(ExprKind::Lin);
  e->lin = std::move(lin);
  e->op = op;
  rhs.canonicalize();
  e->rhs = std::move(rhs);
  return e;
}
ExprPtr Expr::mk_not(ExprPtr x) {
  if (x->kind == ExprKind::True) return mk_false();
  if (x->kind == ExprKind::False) return mk_true();
  if (x->kind == ExprKind::Not) return x->kids[0];
  auto e = e_node(ExprKind::Not);
  e->kids.push_back(std::move(x));
  return e;
}
ExprPtr Expr::mk_and(std::vector<ExprPtr> es) {
  std::vector<ExprPtr> flat;
  for (auto& e : es) {
    if (e->kind == ExprKind::False) return mk_false();
    if (e->kind == ExprKind::True) continue;
    if (e->kind == ExprKind::And) {
      for (const auto& k : e->kids) flat.push_back(k);
    } else {
      flat.push_back(e);
    }
  }
  if (flat.empty()) return mk_true();
  if (flat.size() == 1) return flat[0];
  auto e = e_node(ExprKind::And);
  e->kids = std::move(flat);
  return e;
}
ExprPtr Expr::mk_or(std::vector<ExprPtr> es) {
  std::vector<ExprPtr> flat;
  for (auto& e : es) {
    if (e->kind == ExprKind::True) return mk_true();
    if (e->kind == ExprKind::False) continue;
    if (e->kind == ExprKind::Or) {
      for (const auto& k : e->kids) flat.push_back(k);
    } else {
      flat.push_back(e);
    }
  }
  if (flat.empty()) return mk_false();
  if (flat.size() == 1) return flat[0];
  auto e = e_node(ExprKind::Or);
  e->kids = std::move(flat);
  return e;
}
ExprPtr Expr::mk_iff(const ExprPtr& a, const ExprPtr& b) {
  return mk_or({mk_and({a, b}), mk_and({mk_not(a), mk_not(b)})});
}
ExprPtr Expr::mk_implies(const ExprPtr& a, const ExprPtr& b) { return mk_or({mk_not(a), b}); }

bool eval_expr(const ExprPtr& e, const Lookup& look) {
  switch (e->kind) {
    case ExprKind::True: return true;
    case ExprKind::False: return false;
    case ExprKind::BVar: return look(e->v).b;
    case ExprKind::EnumIs: return look(e->v).i == e->sym;
    case ExprKind::EnumEq: return look(e->v).i == look(e->v2).i;
    case ExprKind::Lin: {
      Rat sum(0);
      for (const auto& [v, c] : e->lin) sum += c * look(v).num();
      switch (e->op) {
        case CmpOp::Lt: return sum < e->rhs;
        case CmpOp::Le: return sum <= e->rhs;
        case CmpOp::Eq: return sum == e->rhs;
        case CmpOp::Ne: return sum != e->rhs;
        case CmpOp::Ge: return sum >= e->rhs;
        case CmpOp::Gt: return sum > e->rhs;
      }
      return false;
    }
    case ExprKind::Not: return !eval_expr(e->kids[0], look);
    case ExprKind::And:
      for (const auto& k : e->kids)
        if (!eval_expr(k, look)) return false;
      return true;
    case ExprKind::Or:
      for (const auto& k : e->kids)
        if (eval_expr(k, look)) return true;
      return false;
  }
  return false;
}

bool expr_transition_scoped(const ExprPtr& e, const std::vector<FtsVar>& vars) {
  auto is_trans = [&](VRef v) { return v.next || vars[v.var].scope == VScope::Trans; };
  switch (e->kind) {
    case ExprKind::True:
    case ExprKind::False: return false;
    case ExprKind::BVar: return is_trans(e->v);
    case ExprKind::EnumIs: return is_trans(e->v);
    case ExprKind::EnumEq: return is_trans(e->v) || is_trans(e->v2);
    case ExprKind::Lin:
      for (const auto& [v, c] : e->lin)
        if (is_trans(v)) return true;
      return false;
    default:
      for (const auto& k : e->kids)
        if (expr_transition_scoped(k, vars)) return true;
      return false;
  }
}

ExprPtr expr_prime(const ExprPtr& e) {
  auto pr = [](VRef v) { return VRef{v.var, true}; };
  switch (e->kind) {
    case ExprKind::True:
    case ExprKind::False: return e;
    case ExprKind::BVar: return Expr::mk_bvar(pr(e->v));
    case ExprKind::EnumIs: return Expr::mk_enum_is(pr(e->v), e->sym);
    case ExprKind::EnumEq: return Expr::mk_enum_eq(pr(e->v), pr(e->v2));
    case ExprKind::Lin: {
      auto lin = e->lin;
      for (auto& [v, c] : lin) v.next = true;
      return Expr::mk_lin(std::move(lin), e->op, e->rhs);
    }
    case ExprKind::Not: return Expr::mk_not(expr_prime(e->kids[0]));
    case ExprKind::And:
    case ExprKind::Or: {
      std::vector<ExprPtr> ks;
      for (const auto& k : e->kids) ks.push_back(expr_prime(k));
      return e->kind == ExprKind::And ? Expr::mk_and(std::move(ks)) : Expr::mk_or(std::move(ks));
    }
  }
  return e;
}

void expr_atoms(const ExprPtr& e, std::vector<ExprPtr>& out) {
  switch (e->kind) {
    case ExprKind::BVar:
    case ExprKind::EnumIs:
    case ExprKind::EnumEq:
    case ExprKind::Lin: out.push_back(e); break;
    case ExprKind::Not:
    case ExprKind::And:
    case ExprKind::Or:
      for (const auto& k : e->kids) expr_atoms(k, out);
      break;
    default: break;
  }
}

std::string expr_str(const ExprPtr& e, const std::vector<FtsVar>& vars) {
  auto vn = [&](VRef v) { return vars[v.var].name + (v.next ? "'" : ""); };
  std::ostringstream os;
  switch (e->kind) {
    case ExprKind::True: return "true";
    case ExprKind::False: return "false";
    case ExprKind::BVar: return vn(e->v);
    case ExprKind::EnumIs: {
      const auto& syms = vars[e->v.var].dom.symbols;
      return vn(e->v) + " = " + (e->sym < static_cast<int>(syms.size()) ? syms[e->sym] : "?");
    }
    case ExprKind::EnumEq: return vn(e->v) + " = " + vn(e->v2);
    case ExprKind::Lin: {
      bool first = true;
      for (const auto& [v, c] : e->lin) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << rat_to_string(c) << "*";
        os << vn(v);
      }
      if (first) os << "0";
      os << " " << cmp_op_str(e->op) << " " << rat_to_string(e->rhs);
      return os.str();
    }
    case ExprKind::Not: return "!(" + expr_str(e->kids[0], vars) + ")";
    case ExprKind::And:
    case ExprKind::Or: {
      os << "(";
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) os << (e->kind == ExprKind::And ? " & " : " | ");
        os << expr_str(e->kids[i], vars);
      }
      os << ")";
      return os.str();
    }
  }
  return "?";
}

std::string Fts::dump() const {
  std::ostringstream os;
  os << "VARIABLES\n";
  for (const auto& v : vars) {
    os << "  " << v.name << " : ";
    switch (v.dom.kind) {
      case Domain::Bool: os << "bool"; break;
      case Domain::Enum: {
        os << "{";
        for (size_t i = 0; i < v.dom.symbols.size(); ++i) os << (i ? "," : "") << v.dom.symbols[i];
        os << "}";
        break;
      }
      case Domain::Int: os << "int[" << v.dom.lo << ".." << v.dom.hi << "]"; break;
      case Domain::Real: os << (v.dom.continuous ? "real continuous" : "real"); break;
    }
    if (v.scope == VScope::Trans) os << " (transition)";
    os << "\n";
  }
  os << "INIT\n  " << expr_str(init, vars) << "\nTRANS\n  " << expr_str(trans, vars) << "\nFAIRNESS\n";
  for (const auto& f : fairness) os << "  " << expr_str(f, vars) << "\n";
  return os.str();
}

TFormulaPtr TFormula::mk_leaf(ExprPtr e) {
  auto f = std::make_shared<TFormula>();
  f->kind = TfKind::Leaf;
  f->leaf = std::move(e);
  return f;
}
TFormulaPtr TFormula::mk_not(TFormulaPtr x) {
  auto f = std::make_shared<TFormula>();
  f->kind = TfKind::Not;
  f->a = std::move(x);
  return f;
}
TFormulaPtr TFormula::mk_bin(TfKind k, TFormulaPtr a, TFormulaPtr b) {
  auto f = std::make_shared<TFormula>();
  f->kind = k;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}
TFormulaPtr TFormula::mk_x(TFormulaPtr x) {
  auto f = std::make_shared<TFormula>();
  f->kind = TfKind::X;
  f->a = std::move(x);
  return f;
}
TFormulaPtr TFormula::mk_sere_strong(TSerePtr r) {
  auto f = std::make_shared<TFormula>();
  f->kind = TfKind::SereStrong;
  f->sere = std::move(r);
  return f;
}
TFormulaPtr TFormula::mk_suffix_impl(TSerePtr r, TFormulaPtr g) {
  auto f = std::make_shared<TFormula>();
  f->kind = TfKind::SuffixImpl;
  f->sere = std::move(r);
  f->a = std::move(g);
  return f;
}

TSerePtr TSere::mk_letter(ExprPtr e) {
  auto s = std::make_shared<TSere>();
  s->kind = SereKind::Letter;
  s->letter = std::move(e);
  return s;
}
TSerePtr TSere::mk_bin(SereKind k, TSerePtr a, TSerePtr b) {
  auto s = std::make_shared<TSere>();
  s->kind = k;
  s->a = std::move(a);
  s->b = std::move(b);
  return s;
}
TSerePtr TSere::mk_star(TSerePtr a) {
  auto s = std::make_shared<TSere>();
  s->kind = SereKind::Star;
  s->a = std::move(a);
  return s;
}
TSerePtr TSere::mk_repeat(TSerePtr a, long n) {
  auto s = std::make_shared<TSere>();
  s->kind = SereKind::Repeat;
  s->a = std::move(a);
  s->repeat = n;
  return s;
}

}  // namespace rvt
