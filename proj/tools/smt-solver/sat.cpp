#include "sat.hpp"

#include <algorithm>

namespace rvtsmt {

Var Sat::new_var() {
  Var v = static_cast<Var>(assign_.size());
  assign_.push_back(LBool::Undef);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  phase_.push_back(false);
  seen_.push_back(false);
  model_.push_back(false);
  watches_.emplace_back();
  watches_.emplace_back();
  return v;
}

int Sat::attach_clause(std::vector<Lit> lits) {
  int ci = static_cast<int>(clauses_.size());
  clauses_.push_back({std::move(lits)});
  const auto& c = clauses_[ci].lits;
  watches_[lit_not(c[0])].push_back(ci);
  watches_[lit_not(c[1])].push_back(ci);
  return ci;
}

bool Sat::add_clause(std::vector<Lit> lits) {
  if (!ok_) return false;
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> out;
  for (size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == lit_not(lits[i])) return true;  // tautology
    LBool v = value(lits[i]);
    if (v == LBool::True && level_[lit_var(lits[i])] == 0) return true;
    if (v == LBool::False && level_[lit_var(lits[i])] == 0) continue;
    out.push_back(lits[i]);
  }
  if (out.empty()) {
    ok_ = false;
    return false;
  }
  if (out.size() == 1) {
    if (!enqueue(out[0], -1) || propagate() != -1) {
      ok_ = false;
      return false;
    }
    return true;
  }
  attach_clause(std::move(out));
  return true;
}

bool Sat::enqueue(Lit l, int reason) {
  LBool v = value(l);
  if (v != LBool::Undef) return v == LBool::True;
  assign_[lit_var(l)] = lit_neg(l) ? LBool::False : LBool::True;
  level_[lit_var(l)] = decision_level();
  reason_[lit_var(l)] = reason;
  trail_.push_back(l);
  return true;
}

int Sat::propagate() {
  while (prop_head_ < trail_.size()) {
    Lit p = trail_[prop_head_++];
    auto& wl = watches_[p];
    size_t i = 0, j = 0;
    while (i < wl.size()) {
      int ci = wl[i++];
      auto& c = clauses_[ci].lits;
      Lit false_lit = lit_not(p);
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (value(c[0]) == LBool::True) {
        wl[j++] = ci;
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != LBool::False) {
          std::swap(c[1], c[k]);
          watches_[lit_not(c[1])].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      wl[j++] = ci;
      if (value(c[0]) == LBool::False) {
        while (i < wl.size()) wl[j++] = wl[i++];
        wl.resize(j);
        return ci;
      }
      enqueue(c[0], ci);
    }
    wl.resize(j);
  }
  return -1;
}

void Sat::cancel_until(int lvl) {
  if (decision_level() <= lvl) return;
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[lvl]; --i) {
    Var v = lit_var(trail_[i]);
    phase_[v] = assign_[v] == LBool::True;
    assign_[v] = LBool::Undef;
    reason_[v] = -1;
  }
  trail_.resize(trail_lim_[lvl]);
  trail_lim_.resize(lvl);
  prop_head_ = trail_.size();
}

void Sat::bump(Var v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
}

void Sat::analyze(int confl, std::vector<Lit>& learnt, int& bt_level) {
  learnt.clear();
  learnt.push_back(0);  // slot for the asserting literal
  int path = 0;
  Lit p = -1;
  int idx = static_cast<int>(trail_.size()) - 1;
  int cur = confl;
  do {
    const auto& c = clauses_[cur].lits;
    for (size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      Lit q = c[k];
      Var v = lit_var(q);
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = true;
        bump(v);
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[lit_var(trail_[idx])]) --idx;
    p = trail_[idx];
    cur = reason_[lit_var(p)];
    seen_[lit_var(p)] = false;
    --path;
  } while (path > 0);
  learnt[0] = lit_not(p);

  if (learnt.size() == 1) {
    bt_level = 0;
  } else {
    int mi = 1;
    for (size_t k = 2; k < learnt.size(); ++k)
      if (level_[lit_var(learnt[k])] > level_[lit_var(learnt[mi])]) mi = static_cast<int>(k);
    std::swap(learnt[1], learnt[mi]);
    bt_level = level_[lit_var(learnt[1])];
  }
  for (Lit l : learnt) seen_[lit_var(l)] = false;
}

void Sat::analyze_final(Lit p) {
  conflict_core_.clear();
  conflict_core_.push_back(p);
  if (decision_level() == 0) return;
  seen_[lit_var(p)] = true;
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[0]; --i) {
    Var v = lit_var(trail_[i]);
    if (!seen_[v]) continue;
    if (reason_[v] == -1) {
      conflict_core_.push_back(lit_not(trail_[i]));
    } else {
      for (Lit q : clauses_[reason_[v]].lits)
        if (level_[lit_var(q)] > 0) seen_[lit_var(q)] = true;
    }
    seen_[v] = false;
  }
  seen_[lit_var(p)] = false;
}

Var Sat::pick_branch() {
  Var best = -1;
  double best_act = -1.0;
  for (Var v = 0; v < num_vars(); ++v) {
    if (assign_[v] == LBool::Undef && activity_[v] > best_act) {
      best = v;
      best_act = activity_[v];
    }
  }
  return best;
}

static int luby(int i) {
  int k = 1;
  while ((1 << k) - 1 < i + 1) ++k;
  while ((1 << k) - 1 != i + 1) {
    i -= (1 << (k - 1)) - 1;
    k = 1;
    while ((1 << k) - 1 < i + 1) ++k;
  }
  return 1 << (k - 1);
}

bool Sat::solve(const std::vector<Lit>& assumptions) {
  conflict_core_.clear();
  if (!ok_) return false;
  assumptions_ = assumptions;
  cancel_until(0);
  int restarts = 0;
  int64_t conflicts = 0;
  int64_t budget = 64LL * luby(restarts);

  while (true) {
    int confl = propagate();
    if (confl != -1) {
      ++conflicts;
      if (decision_level() == 0) {
        ok_ = false;
        return false;
      }
      std::vector<Lit> learnt;
      int bt;
      analyze(confl, learnt, bt);
      cancel_until(std::max(bt, 0));
      if (learnt.size() == 1) {
        cancel_until(0);
        if (!enqueue(learnt[0], -1)) {
          ok_ = false;
          return false;
        }
      } else {
        int ci = attach_clause(learnt);
        enqueue(learnt[0], ci);
      }
      decay();
      if (conflicts > budget) {
        ++restarts;
        budget = conflicts + 64LL * luby(restarts);
        cancel_until(0);
      }
      continue;
    }

    if (decision_level() < static_cast<int>(assumptions_.size())) {
      Lit a = assumptions_[decision_level()];
      LBool v = value(a);
      if (v == LBool::True) {
        new_decision_level();
        continue;
      }
      if (v == LBool::False) {
        analyze_final(lit_not(a));
        return false;
      }
      new_decision_level();
      enqueue(a, -1);
      continue;
    }

    Var next = pick_branch();
    if (next == -1) {
      model_.assign(num_vars(), false);
      for (Var v = 0; v < num_vars(); ++v) model_[v] = assign_[v] == LBool::True;
      return true;
    }
    new_decision_level();
    enqueue(mk_lit(next, !phase_[next]), -1);
  }
}

bool Sat::add_theory_clause(const std::vector<Lit>& lits) {
  cancel_until(0);
  return add_clause(lits);
}

}  // namespace rvtsmt
