// rvt-smt frontend: SMT-LIB v2 subset on stdin, verdicts/models/cores on stdout.
#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sat.hpp"
#include "sexp.hpp"

namespace rvtsmt {

enum class Sort { Bool, Real, Int };

enum class AtomOp { Le, Lt, Ge, Gt, Eq };

// linear polynomial over declared arithmetic variables
struct Poly {
  std::map<int, mpq_class> coeffs;  // var id -> coeff
  mpq_class constant = 0;
};

class Engine {
 public:
  // returns the full stdout response for the script
  std::string run(const std::string& script);

 private:
  struct Decl {
    std::string name;
    Sort sort;
    int arith_id = -1;  // simplex-facing id for Real/Int
    Var bool_var = -1;  // for Bool
  };

  struct Atom {
    int form = -1;  // arith id carrying the linear form (var or slack)
    AtomOp op = AtomOp::Le;
    mpq_class c;
  };

  Sat sat_;
  std::vector<Decl> decls_;
  std::map<std::string, int> decl_index_;
  std::vector<Atom> atoms_;
  std::map<std::string, int> atom_index_;  // canonical key -> atom id
  std::vector<Var> atom_var_;              // atom id -> sat var
  int num_arith_vars_ = 0;
  std::vector<std::vector<std::pair<int, mpq_class>>> slack_rows_;  // per slack id above decls
  std::map<std::string, int> slack_index_;
  std::vector<std::pair<std::string, Var>> named_;  // name -> selector var
  bool produce_cores_ = false;
  bool has_int_ = false;

  std::string last_verdict_;
  std::vector<std::string> last_core_;
  std::vector<std::string> model_lines_;

  using Term = std::variant<Poly, Lit>;  // arithmetic or boolean

  Term parse_term(const Sexp& e);
  Poly parse_poly(const Sexp& e);
  Lit parse_bool(const Sexp& e);
  Lit atom_lit(Poly lhs_minus_rhs, AtomOp op);
  Lit fresh_def();
  int intern_form(const Poly& p, mpq_class& scale_out);

  void cmd_assert(const Sexp& e);
  void cmd_check_sat(std::string& out);
  bool theory_round();  // returns false when a theory clause was learned
  Sort sort_of_name(const std::string& s) const;
};

}  // namespace rvtsmt
