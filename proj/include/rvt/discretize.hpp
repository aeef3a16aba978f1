// Reduction of grounded hybrid problems to discrete-trace temporal problems.
#pragma once

#include "rvt/fts.hpp"
#include "rvt/trace.hpp"

namespace rvt {

struct DiscreteProblem {
  std::vector<FtsVar> vars;  // ground vars first, then iota/delta when hybrid
  int n_ground = 0;
  int iota = -1;   // enum {flow, jump}, transition-scoped
  int delta = -1;  // real >= 0, transition-scoped
  TFormulaPtr formula;
  // transition laws under an implicit global "always":
  // flow => delta > 0 and discrete frame; jump => delta = 0
  std::vector<ExprPtr> trans_axioms;

  bool has_step() const { return iota >= 0; }
};

inline constexpr int kFlowSym = 0;
inline constexpr int kJumpSym = 1;

DiscreteProblem to_discrete(const GroundProblem& g);

// solver-side lasso over the variables of a DiscreteProblem/Fts
struct Lasso {
  std::vector<std::vector<Val>> states;  // one Val per var (trans slots unused)
  std::vector<std::vector<Val>> steps;   // trans-scoped assignments per step
  int loop = 0;
};

// Renders a discrete lasso as a hybrid trace; checks the step invariants
// (flow: delta > 0, frozen discrete part; jump: delta = 0).
HybridTrace lift_trace(const Lasso& t, const DiscreteProblem& dp);

}  // namespace rvt
