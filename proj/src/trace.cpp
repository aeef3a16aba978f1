#include "rvt/trace.hpp"

#include <sstream>

#include "json.hpp"
#include "rvt/diagnostics.hpp"

namespace rvt {

using nlohmann::json;

namespace {
json val_json(const TraceVal& v) {
  switch (v.tag) {
    case TraceVal::B: return v.b;
    case TraceVal::Q: return rat_to_string(v.q);
    case TraceVal::S: return v.s;
  }
  return nullptr;
}

TraceVal val_from(const json& j) {
  if (j.is_boolean()) return TraceVal::of_bool(j.get<bool>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (auto q = rat_parse(s)) return TraceVal::of_rat(*q);
    return TraceVal::of_sym(s);
  }
  if (j.is_number_integer()) return TraceVal::of_rat(Rat(j.get<long>()));
  throw Error("bad trace value");
}
}  // namespace

std::string trace_to_json(const HybridTrace& t) {
  json j;
  json states = json::array();
  for (const auto& st : t.states) {
    json s = json::object();
    for (const auto& [k, v] : st) s[k] = val_json(v);
    states.push_back(s);
  }
  j["states"] = states;
  json steps = json::array();
  for (const auto& sp : t.steps) {
    json s;
    s["kind"] = sp.flow ? "flow" : "jump";
    s["delta"] = rat_to_string(sp.delta);
    json ders = json::object();
    for (const auto& [k, v] : sp.ders) ders[k] = rat_to_string(v);
    s["ders"] = ders;
    steps.push_back(s);
  }
  j["steps"] = steps;
  j["loop_start"] = t.loop_start;
  return j.dump(2) + "\n";
}

HybridTrace trace_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed trace file: ") + e.what());
  }
  HybridTrace t;
  for (const auto& s : j.at("states")) {
    std::map<std::string, TraceVal> st;
    for (auto it = s.begin(); it != s.end(); ++it) st[it.key()] = val_from(it.value());
    t.states.push_back(std::move(st));
  }
  for (const auto& s : j.at("steps")) {
    HybridStep sp;
    std::string kind = s.at("kind").get<std::string>();
    if (kind != "flow" && kind != "jump") throw Error("bad step kind " + kind);
    sp.flow = kind == "flow";
    auto d = rat_parse(s.at("delta").get<std::string>());
    if (!d) throw Error("bad delta");
    sp.delta = *d;
    if (s.contains("ders"))
      for (auto it = s.at("ders").begin(); it != s.at("ders").end(); ++it) {
        auto q = rat_parse(it.value().get<std::string>());
        if (!q) throw Error("bad derivative value");
        sp.ders[it.key()] = *q;
      }
    t.steps.push_back(std::move(sp));
  }
  t.loop_start = j.value("loop_start", 0);
  if (t.steps.size() != t.states.size()) throw Error("trace needs one step per state");
  if (t.loop_start < 0 || t.loop_start >= static_cast<int>(t.states.size()))
    throw Error("loop_start out of range");
  for (const auto& sp : t.steps) {
    if (sp.flow && sp.delta <= 0) throw Error("invariant violation: flow with zero duration");
    if (!sp.flow && sp.delta != 0) throw Error("invariant violation: jump with nonzero duration");
  }
  return t;
}

std::string render_trace(const HybridTrace& t) {
  std::ostringstream os;
  std::map<std::string, TraceVal> prev;
  for (size_t i = 0; i < t.states.size(); ++i) {
    const auto& st = t.states[i];
    const auto& sp = t.steps[i];
    os << "step " << i << "  " << (sp.flow ? "flow" : "jump") << "  delta=" << rat_to_string(sp.delta);
    std::ostringstream changed;
    bool any = false;
    for (const auto& [k, v] : st) {
      auto it = prev.find(k);
      if (it == prev.end() || !(it->second == v)) {
        if (any) changed << ", ";
        any = true;
        changed << k << "=";
        switch (v.tag) {
          case TraceVal::B: changed << (v.b ? "true" : "false"); break;
          case TraceVal::Q: changed << rat_to_string(v.q); break;
          case TraceVal::S: changed << v.s; break;
        }
      }
    }
    os << "  " << (any ? changed.str() : "(unchanged)");
    if (!sp.ders.empty()) {
      os << "  [";
      bool first = true;
      for (const auto& [k, v] : sp.ders) {
        if (!first) os << ", ";
        first = false;
        os << "der(" << k << ")=" << rat_to_string(v);
      }
      os << "]";
    }
    size_t last = t.states.size() - 1;
    if (i == last) os << "  ↺ to step " << t.loop_start;
    os << "\n";
    prev = st;
  }
  return os.str();
}

}  // namespace rvt
