// Typed AST of the specification language: terms, formulas, SEREs.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rvt/diagnostics.hpp"
#include "rvt/project.hpp"
#include "rvt/rational.hpp"

namespace rvt {

struct Term;
struct Formula;
struct Sere;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;
using SerePtr = std::shared_ptr<const Sere>;

enum class TermKind {
  Const,       // rational constant
  Null,        // null reference literal
  ObjVar,      // quantified object variable occurrence
  EnumLit,     // enumeration symbol (typed against the comparison partner)
  AttrAccess,  // obj.attr, or a bare attribute of an implicit singleton
  GroundVar,   // introduced by instantiation
  Add,
  Sub,
  Scale,  // rational constant * term
  Next,
  Der,
};

// value type assigned by the typechecker
struct Type {
  enum Kind { Unknown, Bool, Enum, Int, Real, Object } kind = Unknown;
  std::vector<std::string> symbols;  // Enum
  bool continuous = false;           // Real
  std::string cls;                   // Object ("" for null)
  bool is_numeric() const { return kind == Int || kind == Real; }
};

struct Term {
  TermKind kind;
  Span span;
  Rat value;              // Const, Scale factor
  std::string name;       // ObjVar name, EnumLit symbol, attr name, GroundVar name
  std::string obj_name;   // AttrAccess: object variable ("" if singleton)
  std::string cls;        // AttrAccess: resolved class; ObjVar: class
  bool singleton = false;  // AttrAccess through a bare attribute
  int gvar = -1;           // GroundVar index
  TermPtr a, b;
  Type type;  // filled by typecheck

  static TermPtr mk_const(Rat v, Span sp = {});
  static TermPtr mk_null(Span sp = {});
  static TermPtr mk_objvar(std::string n, std::string cls, Span sp = {});
  static TermPtr mk_enumlit(std::string sym, Span sp = {});
  static TermPtr mk_attr(std::string obj, std::string cls, std::string attr, bool singleton, Span sp = {});
  static TermPtr mk_gvar(int idx, std::string name);
  static TermPtr mk_add(TermPtr l, TermPtr r, Span sp = {});
  static TermPtr mk_sub(TermPtr l, TermPtr r, Span sp = {});
  static TermPtr mk_scale(Rat c, TermPtr t, Span sp = {});
  static TermPtr mk_next(TermPtr t, Span sp = {});
  static TermPtr mk_der(TermPtr t, Span sp = {});
};

enum class CmpOp { Lt, Le, Eq, Ne, Ge, Gt };
std::string cmp_op_str(CmpOp op);

enum class FormulaKind {
  Atom,      // cmp(a, b)
  TermAtom,  // bare boolean-typed term
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  X,
  U,
  R,
  G,
  F,
  Forall,
  Exists,
  SereStrong,  // {r}!
  SuffixImpl,  // {r} |-> f, and {r} |=> f when 'shifted'
};

struct Formula {
  FormulaKind kind;
  Span span;
  std::string req_id;  // owning requirement, "" when free-standing
  CmpOp op = CmpOp::Eq;
  TermPtr ta, tb;  // Atom / TermAtom(ta)
  FormulaPtr a, b;
  std::string var, cls;  // quantifiers
  SerePtr sere;
  bool shifted = false;  // SuffixImpl: true for |=>

  static FormulaPtr mk_atom(CmpOp op, TermPtr l, TermPtr r, Span sp = {});
  static FormulaPtr mk_term_atom(TermPtr t, Span sp = {});
  static FormulaPtr mk_const(bool v, Span sp = {});
  static FormulaPtr mk_not(FormulaPtr f, Span sp = {});
  static FormulaPtr mk_bin(FormulaKind k, FormulaPtr l, FormulaPtr r, Span sp = {});
  static FormulaPtr mk_unary(FormulaKind k, FormulaPtr f, Span sp = {});
  static FormulaPtr mk_quant(FormulaKind k, std::string var, std::string cls, FormulaPtr body, Span sp = {});
  static FormulaPtr mk_sere_strong(SerePtr r, Span sp = {});
  static FormulaPtr mk_suffix_impl(SerePtr r, FormulaPtr f, bool shifted, Span sp = {});
};

enum class SereKind { Letter, Concat, Fusion, Union, Star, Repeat };

struct Sere {
  SereKind kind;
  Span span;
  FormulaPtr letter;  // Letter: boolean, temporal-free formula
  SerePtr a, b;
  long repeat = 0;  // Repeat count, >= 0

  static SerePtr mk_letter(FormulaPtr f, Span sp = {});
  static SerePtr mk_bin(SereKind k, SerePtr l, SerePtr r, Span sp = {});
  static SerePtr mk_star(SerePtr r, Span sp = {});
  static SerePtr mk_repeat(SerePtr r, long n, Span sp = {});
};

// structural equality ignoring spans, requirement tags and computed types
bool term_eq(const TermPtr& a, const TermPtr& b);
bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);
bool sere_eq(const SerePtr& a, const SerePtr& b);

int formula_size(const FormulaPtr& f);  // distinct nodes (formulas share subtrees)

}  // namespace rvt
