// Hybrid traces: lasso-shaped witnesses with step kinds, durations and
// derivative values. JSON serialization uses "p/q" strings for rationals.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "rvt/rational.hpp"

namespace rvt {

struct TraceVal {
  enum Tag { B, Q, S } tag = B;
  bool b = false;
  Rat q;
  std::string s;  // enum / reference symbol

  static TraceVal of_bool(bool x) { return {B, x, Rat(0), ""}; }
  static TraceVal of_rat(Rat x) { return {Q, false, std::move(x), ""}; }
  static TraceVal of_sym(std::string x) { return {S, false, Rat(0), std::move(x)}; }
  bool operator==(const TraceVal& o) const {
    return tag == o.tag && b == o.b && q == o.q && s == o.s;
  }
};

struct HybridStep {
  bool flow = false;  // false: jump
  Rat delta;
  std::map<std::string, Rat> ders;  // continuous var -> derivative on this step
};

struct HybridTrace {
  std::vector<std::map<std::string, TraceVal>> states;
  std::vector<HybridStep> steps;  // steps[i] leads from states[i] to states[i+1] (or loop_start)
  int loop_start = 0;
};

std::string trace_to_json(const HybridTrace& t);
HybridTrace trace_from_json(const std::string& text);  // throws Error; validates step invariants
std::string render_trace(const HybridTrace& t);        // human-readable table

}  // namespace rvt
