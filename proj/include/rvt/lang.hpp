// Front end for the property specification language.
#pragma once

#include <string>

#include "rvt/ast.hpp"
#include "rvt/project.hpp"

namespace rvt {

// Parse one constraint against a signature. Resolves names (quantified
// variables, attributes, enumeration symbols) and rejects unbound variables.
// Throws Error with a span on lexical/syntax/resolution failures.
FormulaPtr parse_constraint(const std::string& src, const Signature& sig);

// Type checking: annotates every term with its type and enforces the term and
// formula invariants (der on continuous reals only, no nested next/der,
// compatible comparison operands, SERE letters temporal-free). Returns a fresh
// annotated tree; throws Error on the first violation.
FormulaPtr typecheck(const FormulaPtr& f, const Signature& sig);

// Rewrites to the core constructs {atom, not, and, or, X, U, quantifiers,
// {r}!, {r}|->f}. Idempotent.
FormulaPtr desugar(const FormulaPtr& f);

// Rendering such that parse_constraint(pretty(f)) is structurally f.
std::string pretty(const FormulaPtr& f);
std::string pretty_term(const TermPtr& t);

}  // namespace rvt
