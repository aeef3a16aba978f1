// Finite instantiation: quantifier expansion over bounded object sets.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "rvt/ast.hpp"
#include "rvt/project.hpp"

namespace rvt {

struct Domain {
  enum Kind { Bool, Enum, Int, Real } kind = Bool;
  std::vector<std::string> symbols;  // Enum (references: "null" first when nullable)
  long lo = 0, hi = 0;               // Int, inclusive
  bool continuous = false;           // Real

  long size() const {  // finite domains only
    switch (kind) {
      case Bool: return 2;
      case Enum: return static_cast<long>(symbols.size());
      case Int: return hi - lo + 1;
      case Real: return -1;
    }
    return -1;
  }
  int sym_index(const std::string& s) const {
    for (size_t i = 0; i < symbols.size(); ++i)
      if (symbols[i] == s) return static_cast<int>(i);
    return -1;
  }
};

struct GroundVar {
  std::string name;  // canonical "Class#index.attribute"
  Domain dom;
};

struct GroundProblem {
  std::vector<GroundVar> vars;
  // top-level conjuncts with their originating requirement id
  std::vector<std::pair<FormulaPtr, std::string>> conjuncts;

  FormulaPtr formula() const;  // the conjunction
  bool has_continuous() const;
};

struct GroundLimits {
  long max_nodes = 100000;
};

// Expand quantifiers over bounds; attribute accesses become GroundVar terms;
// object (in)equalities between instance constants evaluate statically.
GroundProblem instantiate(const FormulaPtr& f, const Signature& sig,
                          const std::map<std::string, long>& bounds, GroundLimits limits = {});

// Same, over several tagged formulas sharing one ground variable space.
GroundProblem instantiate_many(const std::vector<std::pair<FormulaPtr, std::string>>& fs,
                               const Signature& sig, const std::map<std::string, long>& bounds,
                               GroundLimits limits = {});

// partition of var indices into (discrete, continuous)
std::pair<std::vector<int>, std::vector<int>> free_vars(const GroundProblem& g);

}  // namespace rvt
