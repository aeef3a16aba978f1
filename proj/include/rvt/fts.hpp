// Symbolic fair transition systems: typed variables and quantifier-free
// constraint expressions over current and next state.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rvt/ast.hpp"
#include "rvt/ground.hpp"

namespace rvt {

enum class VScope { State, Trans };  // Trans vars are per-step (iota, delta)

struct FtsVar {
  std::string name;
  Domain dom;
  VScope scope = VScope::State;
};

struct VRef {
  int var = -1;
  bool next = false;  // next-state occurrence (trans constraints only)
  bool operator<(const VRef& o) const { return var < o.var || (var == o.var && next < o.next); }
  bool operator==(const VRef&) const = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind { True, False, BVar, EnumIs, EnumEq, Lin, Not, And, Or };

struct Expr {
  ExprKind kind = ExprKind::True;
  VRef v, v2;   // BVar(v); EnumIs(v, sym); EnumEq(v, v2)
  int sym = 0;  // EnumIs
  std::vector<std::pair<VRef, Rat>> lin;  // Lin: sum c*v  op  rhs
  CmpOp op = CmpOp::Eq;
  Rat rhs;
  std::vector<ExprPtr> kids;

  static ExprPtr mk_true();
  static ExprPtr mk_false();
  static ExprPtr mk_bvar(VRef v);
  static ExprPtr mk_enum_is(VRef v, int sym);
  static ExprPtr mk_enum_eq(VRef a, VRef b);
  static ExprPtr mk_lin(std::vector<std::pair<VRef, Rat>> lin, CmpOp op, Rat rhs);
  static ExprPtr mk_not(ExprPtr e);
  static ExprPtr mk_and(std::vector<ExprPtr> es);
  static ExprPtr mk_or(std::vector<ExprPtr> es);
  static ExprPtr mk_iff(const ExprPtr& a, const ExprPtr& b);
  static ExprPtr mk_implies(const ExprPtr& a, const ExprPtr& b);
};

// evaluation values
struct Val {
  enum Tag { B, I, Q } tag = B;
  bool b = false;
  long i = 0;  // enum symbol index or integer value
  Rat q;

  static Val of_bool(bool x) { return {B, x, 0, Rat(0)}; }
  static Val of_int(long x) { return {I, false, x, Rat(0)}; }
  static Val of_rat(Rat x) { return {Q, false, 0, std::move(x)}; }
  Rat num() const { return tag == Q ? q : Rat(i); }
  bool operator==(const Val& o) const {
    if (tag == B || o.tag == B) return tag == o.tag && b == o.b;
    return num() == o.num();
  }
};

using Lookup = std::function<Val(VRef)>;
bool eval_expr(const ExprPtr& e, const Lookup& look);

// Does the expression mention next-state vars or transition-scoped vars?
bool expr_transition_scoped(const ExprPtr& e, const std::vector<FtsVar>& vars);
// shift current-state refs to next; expression must not already use next
ExprPtr expr_prime(const ExprPtr& e);
void expr_atoms(const ExprPtr& e, std::vector<ExprPtr>& out);  // Lin/EnumIs/BVar leaves
std::string expr_str(const ExprPtr& e, const std::vector<FtsVar>& vars);

struct Fts {
  std::vector<FtsVar> vars;
  ExprPtr init;                  // state refs only
  ExprPtr trans;                 // state, next-state, trans-scoped refs
  std::vector<ExprPtr> fairness; // state refs only

  bool finite_domain() const {
    for (const auto& v : vars)
      if (v.dom.kind == Domain::Real) return false;
    return true;
  }
  std::string dump() const;  // debug text: variables, init, trans, fairness
};

// lasso-shaped run: states[i] assigns every state var, steps[i] assigns the
// transition-scoped vars of the step leaving states[i]; the last step re-enters
// at states[loop]
struct Lasso {
  std::vector<std::vector<Val>> states;
  std::vector<std::vector<Val>> steps;
  int loop = 0;
};

// Direct evaluation of init, every transition, loop-back equality and all
// fairness constraints; independent of any solver. Returns false and a reason
// when some obligation fails.
bool replay_lasso(const Fts& fts, const Lasso& l, std::string* why = nullptr);

// ---- discrete temporal formulas over Expr leaves ----

struct TFormula;
struct TSere;
using TFormulaPtr = std::shared_ptr<const TFormula>;
using TSerePtr = std::shared_ptr<const TSere>;

enum class TfKind { Leaf, Not, And, Or, X, U, SereStrong, SuffixImpl };

struct TFormula {
  TfKind kind = TfKind::Leaf;
  ExprPtr leaf;  // Leaf (may be transition-scoped)
  TFormulaPtr a, b;
  TSerePtr sere;

  static TFormulaPtr mk_leaf(ExprPtr e);
  static TFormulaPtr mk_not(TFormulaPtr f);
  static TFormulaPtr mk_bin(TfKind k, TFormulaPtr a, TFormulaPtr b);
  static TFormulaPtr mk_x(TFormulaPtr f);
  static TFormulaPtr mk_sere_strong(TSerePtr r);
  static TFormulaPtr mk_suffix_impl(TSerePtr r, TFormulaPtr f);
};

struct TSere {
  SereKind kind = SereKind::Letter;
  ExprPtr letter;  // state-scoped boolean expression
  TSerePtr a, b;
  long repeat = 0;

  static TSerePtr mk_letter(ExprPtr e);
  static TSerePtr mk_bin(SereKind k, TSerePtr a, TSerePtr b);
  static TSerePtr mk_star(TSerePtr a);
  static TSerePtr mk_repeat(TSerePtr a, long n);
};

}  // namespace rvt
