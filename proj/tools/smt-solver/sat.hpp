// CDCL SAT core used by rvt-smt: two-watched literals, 1UIP learning,
// activity decisions, Luby restarts, MiniSat-style assumption handling.
#pragma once

#include <cstdint>
#include <vector>

namespace rvtsmt {

using Var = int;          // 0-based
using Lit = int;          // var<<1 | sign, sign=1 means negated
inline Lit mk_lit(Var v, bool neg) { return (v << 1) | (neg ? 1 : 0); }
inline Var lit_var(Lit l) { return l >> 1; }
inline bool lit_neg(Lit l) { return l & 1; }
inline Lit lit_not(Lit l) { return l ^ 1; }

enum class LBool : uint8_t { False = 0, True = 1, Undef = 2 };
inline LBool lbool_of(bool b) { return b ? LBool::True : LBool::False; }

class Sat {
 public:
  Var new_var();
  int num_vars() const { return static_cast<int>(assign_.size()); }

  // Returns false if the clause makes the instance trivially unsat at level 0.
  bool add_clause(std::vector<Lit> lits);

  // Solve under assumptions. On false with non-empty assumptions,
  // conflict_core() holds the subset of assumptions proved contradictory.
  bool solve(const std::vector<Lit>& assumptions);

  LBool value(Lit l) const {
    LBool v = assign_[lit_var(l)];
    if (v == LBool::Undef) return v;
    return (v == LBool::True) != lit_neg(l) ? LBool::True : LBool::False;
  }
  bool model_value(Var v) const { return model_[v]; }
  const std::vector<Lit>& conflict_core() const { return conflict_core_; }

  // Clause learned from a theory conflict; current assignment must violate it.
  // Returns false if the instance became unsat at level 0.
  bool add_theory_clause(const std::vector<Lit>& lits);

  bool ok() const { return ok_; }

 private:
  struct Clause {
    std::vector<Lit> lits;
  };

  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;  // indexed by lit
  std::vector<LBool> assign_;
  std::vector<bool> model_;
  std::vector<int> level_;
  std::vector<int> reason_;  // clause index or -1
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  size_t prop_head_ = 0;
  std::vector<double> activity_;
  std::vector<bool> phase_;
  std::vector<bool> seen_;
  double var_inc_ = 1.0;
  bool ok_ = true;
  std::vector<Lit> conflict_core_;
  std::vector<Lit> assumptions_;

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void new_decision_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }
  bool enqueue(Lit l, int reason);
  int propagate();  // returns conflicting clause index or -1
  void cancel_until(int lvl);
  void analyze(int confl, std::vector<Lit>& learnt, int& bt_level);
  void analyze_final(Lit p);
  void bump(Var v);
  void decay() { var_inc_ /= 0.95; }
  Var pick_branch();
  int attach_clause(std::vector<Lit> lits);
};

}  // namespace rvtsmt
