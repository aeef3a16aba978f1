#include "smt.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "simplex.hpp"

namespace rvtsmt {

namespace {

constexpr int kBranchTagBase = -2;  // branch tags are kBranchTagBase - n

class SmtError : public std::runtime_error {
 public:
  explicit SmtError(const std::string& m) : std::runtime_error(m) {}
};

mpq_class parse_number(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) return mpq_class(s);
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  size_t frac = s.size() - dot - 1;
  mpz_class den(1);
  for (size_t i = 0; i < frac; ++i) den *= 10;
  mpq_class q(mpz_class(digits), den);
  q.canonicalize();
  return q;
}

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  char c = s[0];
  return (c >= '0' && c <= '9');
}

std::string rat_smt(const mpq_class& q) {
  mpq_class a = q;
  a.canonicalize();
  bool neg = a < 0;
  mpq_class m = neg ? mpq_class(-a) : a;
  std::ostringstream os;
  if (m.get_den() == 1)
    os << m.get_num();
  else
    os << "(/ " << m.get_num() << " " << m.get_den() << ")";
  if (neg) return "(- " + os.str() + ")";
  return os.str();
}

}  // namespace

Sort Engine::sort_of_name(const std::string& s) const {
  if (s == "Bool") return Sort::Bool;
  if (s == "Real") return Sort::Real;
  if (s == "Int") return Sort::Int;
  throw SmtError("unsupported sort " + s);
}

Lit Engine::fresh_def() { return mk_lit(sat_.new_var(), false); }

Poly Engine::parse_poly(const Sexp& e) {
  Term t = parse_term(e);
  if (auto* p = std::get_if<Poly>(&t)) return *p;
  throw SmtError("expected arithmetic term");
}

Lit Engine::parse_bool(const Sexp& e) {
  Term t = parse_term(e);
  if (auto* l = std::get_if<Lit>(&t)) return *l;
  throw SmtError("expected boolean term");
}

int Engine::intern_form(const Poly& p, mpq_class& scale_out) {
  // normalize to primitive integer coefficients with positive lead
  std::vector<std::pair<int, mpq_class>> cs;
  for (const auto& [v, c] : p.coeffs)
    if (c != 0) cs.emplace_back(v, c);
  if (cs.empty()) throw SmtError("constant form");
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [v, c] : cs) {
    mpz_class n = c.get_num();
    if (n < 0) n = -n;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  mpq_class scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (cs[0].second < 0) scale = -scale;
  scale_out = scale;

  if (cs.size() == 1) {
    // single variable: form is the variable itself, fold coeff into scale
    scale_out = mpq_class(1) / cs[0].second;
    return cs[0].first;
  }
  std::ostringstream key;
  std::vector<std::pair<int, mpq_class>> scaled;
  for (const auto& [v, c] : cs) {
    mpq_class sc = c * scale;
    scaled.emplace_back(v, sc);
    key << v << "*" << sc << ";";
  }
  auto it = slack_index_.find(key.str());
  if (it != slack_index_.end()) return num_arith_vars_ + it->second;
  int id = static_cast<int>(slack_rows_.size());
  slack_index_[key.str()] = id;
  slack_rows_.push_back(std::move(scaled));
  return num_arith_vars_ + id;
}

Lit Engine::atom_lit(Poly p, AtomOp op) {
  // p ~op~ 0
  bool any = false;
  for (const auto& [v, c] : p.coeffs)
    if (c != 0) any = true;
  if (!any) {
    bool truth;
    switch (op) {
      case AtomOp::Le: truth = p.constant <= 0; break;
      case AtomOp::Lt: truth = p.constant < 0; break;
      case AtomOp::Ge: truth = p.constant >= 0; break;
      case AtomOp::Gt: truth = p.constant > 0; break;
      case AtomOp::Eq: truth = p.constant == 0; break;
      default: throw SmtError("bad op");
    }
    Lit t = fresh_def();
    sat_.add_clause({t});
    return truth ? t : lit_not(t);
  }
  mpq_class scale;
  int form = intern_form(p, scale);
  mpq_class c = (-p.constant) * scale;
  if (scale < 0) {
    switch (op) {
      case AtomOp::Le: op = AtomOp::Ge; break;
      case AtomOp::Ge: op = AtomOp::Le; break;
      case AtomOp::Lt: op = AtomOp::Gt; break;
      case AtomOp::Gt: op = AtomOp::Lt; break;
      case AtomOp::Eq: break;
    }
  }
  std::ostringstream key;
  key << form << "|" << static_cast<int>(op) << "|" << c;
  auto it = atom_index_.find(key.str());
  if (it != atom_index_.end()) return mk_lit(atom_var_[it->second], false);
  int id = static_cast<int>(atoms_.size());
  atoms_.push_back(Atom{form, op, c});
  atom_index_[key.str()] = id;
  Var v = sat_.new_var();
  atom_var_.push_back(v);
  return mk_lit(v, false);
}

Engine::Term Engine::parse_term(const Sexp& e) {
  if (e.is_atom) {
    if (e.atom == "true") {
      Lit t = fresh_def();
      sat_.add_clause({t});
      return t;
    }
    if (e.atom == "false") {
      Lit t = fresh_def();
      sat_.add_clause({t});
      return lit_not(t);
    }
    if (looks_numeric(e.atom)) {
      Poly p;
      p.constant = parse_number(e.atom);
      return p;
    }
    auto it = decl_index_.find(e.atom);
    if (it == decl_index_.end()) throw SmtError("undeclared symbol " + e.atom);
    const Decl& d = decls_[it->second];
    if (d.sort == Sort::Bool) return mk_lit(d.bool_var, false);
    Poly p;
    p.coeffs[d.arith_id] = 1;
    return p;
  }
  if (e.size() == 0) throw SmtError("empty term");
  const std::string& head = e[0].atom;

  auto bool_args = [&](size_t from) {
    std::vector<Lit> ls;
    for (size_t i = from; i < e.size(); ++i) ls.push_back(parse_bool(e[i]));
    return ls;
  };

  if (head == "and") {
    auto ls = bool_args(1);
    if (ls.empty()) throw SmtError("empty and");
    if (ls.size() == 1) return ls[0];
    Lit d = fresh_def();
    std::vector<Lit> big{d};
    for (Lit l : ls) {
      sat_.add_clause({lit_not(d), l});
      big.push_back(lit_not(l));
    }
    sat_.add_clause(big);
    return d;
  }
  if (head == "or") {
    auto ls = bool_args(1);
    if (ls.empty()) throw SmtError("empty or");
    if (ls.size() == 1) return ls[0];
    Lit d = fresh_def();
    std::vector<Lit> big{lit_not(d)};
    for (Lit l : ls) {
      sat_.add_clause({d, lit_not(l)});
      big.push_back(l);
    }
    sat_.add_clause(big);
    return d;
  }
  if (head == "not") {
    if (e.size() != 2) throw SmtError("not arity");
    return lit_not(parse_bool(e[1]));
  }
  if (head == "=>") {
    auto ls = bool_args(1);
    if (ls.size() < 2) throw SmtError("=> arity");
    // right-assoc: a => b => c == a => (b => c)
    Lit acc = ls.back();
    for (int i = static_cast<int>(ls.size()) - 2; i >= 0; --i) {
      Lit a = ls[i];
      Lit d = fresh_def();
      sat_.add_clause({lit_not(d), lit_not(a), acc});
      sat_.add_clause({d, a});
      sat_.add_clause({d, lit_not(acc)});
      acc = d;
    }
    return acc;
  }
  if (head == "ite") {
    if (e.size() != 4) throw SmtError("ite arity");
    Lit c = parse_bool(e[1]);
    Term tt = parse_term(e[2]);
    Term ee = parse_term(e[3]);
    if (std::holds_alternative<Lit>(tt) && std::holds_alternative<Lit>(ee)) {
      Lit t = std::get<Lit>(tt), el = std::get<Lit>(ee);
      Lit d = fresh_def();
      sat_.add_clause({lit_not(d), lit_not(c), t});
      sat_.add_clause({lit_not(d), c, el});
      sat_.add_clause({d, lit_not(c), lit_not(t)});
      sat_.add_clause({d, c, lit_not(el)});
      return d;
    }
    throw SmtError("arithmetic ite unsupported");
  }
  if (head == "=" || head == "distinct") {
    if (e.size() < 3) throw SmtError("= arity");
    std::vector<Term> ts;
    for (size_t i = 1; i < e.size(); ++i) ts.push_back(parse_term(e[i]));
    bool all_bool = std::all_of(ts.begin(), ts.end(), [](const Term& t) { return std::holds_alternative<Lit>(t); });
    bool all_arith = std::all_of(ts.begin(), ts.end(), [](const Term& t) { return std::holds_alternative<Poly>(t); });
    if (!all_bool && !all_arith) throw SmtError("mixed = operands");
    std::vector<Lit> parts;
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
      if (all_bool) {
        Lit a = std::get<Lit>(ts[i]), b = std::get<Lit>(ts[i + 1]);
        Lit d = fresh_def();
        sat_.add_clause({lit_not(d), lit_not(a), b});
        sat_.add_clause({lit_not(d), a, lit_not(b)});
        sat_.add_clause({d, a, b});
        sat_.add_clause({d, lit_not(a), lit_not(b)});
        parts.push_back(d);
      } else {
        Poly diff = std::get<Poly>(ts[i]);
        const Poly& rhs = std::get<Poly>(ts[i + 1]);
        for (const auto& [v, c] : rhs.coeffs) diff.coeffs[v] -= c;
        diff.constant -= rhs.constant;
        parts.push_back(atom_lit(std::move(diff), AtomOp::Eq));
      }
    }
    Lit conj;
    if (parts.size() == 1)
      conj = parts[0];
    else {
      Lit d = fresh_def();
      std::vector<Lit> big{d};
      for (Lit l : parts) {
        sat_.add_clause({lit_not(d), l});
        big.push_back(lit_not(l));
      }
      sat_.add_clause(big);
      conj = d;
    }
    if (head == "distinct") {
      if (ts.size() != 2) throw SmtError("distinct arity > 2 unsupported");
      return lit_not(conj);
    }
    return conj;
  }
  if (head == "<" || head == "<=" || head == ">" || head == ">=") {
    if (e.size() != 3) throw SmtError("comparison arity");
    Poly l = parse_poly(e[1]);
    const Poly r = parse_poly(e[2]);
    for (const auto& [v, c] : r.coeffs) l.coeffs[v] -= c;
    l.constant -= r.constant;
    AtomOp op = head == "<" ? AtomOp::Lt : head == "<=" ? AtomOp::Le : head == ">" ? AtomOp::Gt : AtomOp::Ge;
    return atom_lit(std::move(l), op);
  }
  if (head == "+" || head == "-" || head == "*" || head == "/") {
    std::vector<Poly> ps;
    for (size_t i = 1; i < e.size(); ++i) ps.push_back(parse_poly(e[i]));
    if (ps.empty()) throw SmtError("arith arity");
    if (head == "+") {
      Poly acc = ps[0];
      for (size_t i = 1; i < ps.size(); ++i) {
        for (const auto& [v, c] : ps[i].coeffs) acc.coeffs[v] += c;
        acc.constant += ps[i].constant;
      }
      return acc;
    }
    if (head == "-") {
      if (ps.size() == 1) {
        Poly acc;
        for (const auto& [v, c] : ps[0].coeffs) acc.coeffs[v] = -c;
        acc.constant = -ps[0].constant;
        return acc;
      }
      Poly acc = ps[0];
      for (size_t i = 1; i < ps.size(); ++i) {
        for (const auto& [v, c] : ps[i].coeffs) acc.coeffs[v] -= c;
        acc.constant -= ps[i].constant;
      }
      return acc;
    }
    if (head == "*") {
      Poly acc = ps[0];
      for (size_t i = 1; i < ps.size(); ++i) {
        const Poly& b = ps[i];
        bool acc_const = acc.coeffs.empty();
        bool b_const = b.coeffs.empty();
        if (!acc_const && !b_const) throw SmtError("nonlinear product");
        if (acc_const) {
          Poly r;
          for (const auto& [v, c] : b.coeffs) r.coeffs[v] = c * acc.constant;
          r.constant = b.constant * acc.constant;
          acc = std::move(r);
        } else {
          for (auto& [v, c] : acc.coeffs) c *= b.constant;
          acc.constant *= b.constant;
        }
      }
      return acc;
    }
    // division by constant
    Poly acc = ps[0];
    for (size_t i = 1; i < ps.size(); ++i) {
      if (!ps[i].coeffs.empty() || ps[i].constant == 0) throw SmtError("bad division");
      for (auto& [v, c] : acc.coeffs) c /= ps[i].constant;
      acc.constant /= ps[i].constant;
    }
    return acc;
  }
  throw SmtError("unsupported operator " + head);
}

void Engine::cmd_assert(const Sexp& e) {
  const Sexp* body = &e;
  std::string name;
  if (!e.is_atom && e.size() >= 2 && e[0].is_sym("!")) {
    body = &e[1];
    for (size_t i = 2; i + 1 < e.size(); i += 2) {
      if (e[i].is_sym(":named")) name = e[i + 1].atom;
    }
  }
  Lit l = parse_bool(*body);
  if (!name.empty() && produce_cores_) {
    Var s = sat_.new_var();
    sat_.add_clause({mk_lit(s, true), l});
    named_.emplace_back(name, s);
  } else {
    sat_.add_clause({l});
  }
}

namespace {

struct Diseq {
  int form;
  mpq_class c;
  int tag;
};

// returns nullopt when satisfiable (simplex holds a model), else conflict tags
std::optional<std::vector<int>> theory_finish(Simplex& sx, std::vector<Diseq> diseqs,
                                              const std::vector<int>& int_vars, int depth) {
  if (depth > 4000) throw SmtError("theory branch limit exceeded");
  if (auto c = sx.check()) return c->tags;

  for (size_t i = 0; i < diseqs.size(); ++i) {
    const auto& d = diseqs[i];
    const DRat& v = sx.value(d.form);
    if (v.r == d.c && v.k == 0) {
      int btag = kBranchTagBase - depth;  // unique per nesting level
      auto lt = sx;  // branch form < c
      std::optional<std::vector<int>> c1;
      if (auto cc = lt.assert_upper(d.form, DRat(d.c, -1), btag))
        c1 = cc->tags;
      else
        c1 = theory_finish(lt, diseqs, int_vars, depth + 1);
      if (!c1) {
        sx = std::move(lt);
        return std::nullopt;
      }
      auto gt = sx;  // branch form > c
      std::optional<std::vector<int>> c2;
      if (auto cc = gt.assert_lower(d.form, DRat(d.c, 1), btag))
        c2 = cc->tags;
      else
        c2 = theory_finish(gt, diseqs, int_vars, depth + 1);
      if (!c2) {
        sx = std::move(gt);
        return std::nullopt;
      }
      std::set<int> u(c1->begin(), c1->end());
      u.insert(c2->begin(), c2->end());
      u.erase(btag);
      u.insert(d.tag);
      return std::vector<int>(u.begin(), u.end());
    }
  }

  for (int x : int_vars) {
    const DRat& v = sx.value(x);
    bool integral = v.k == 0 && v.r.get_den() == 1;
    if (integral) continue;
    // floor of the realized value for infinitesimal eps
    mpz_class f;
    if (v.r.get_den() == 1)
      f = v.k < 0 ? mpz_class(v.r.get_num() - 1) : mpz_class(v.r.get_num());
    else {
      mpz_fdiv_q(f.get_mpz_t(), v.r.get_num().get_mpz_t(), v.r.get_den().get_mpz_t());
    }
    int btag = kBranchTagBase - depth;
    auto le = sx;
    std::optional<std::vector<int>> c1;
    if (auto cc = le.assert_upper(x, DRat(mpq_class(f)), btag))
      c1 = cc->tags;
    else
      c1 = theory_finish(le, diseqs, int_vars, depth + 1);
    if (!c1) {
      sx = std::move(le);
      return std::nullopt;
    }
    auto ge = sx;
    std::optional<std::vector<int>> c2;
    if (auto cc = ge.assert_lower(x, DRat(mpq_class(f + 1)), btag))
      c2 = cc->tags;
    else
      c2 = theory_finish(ge, diseqs, int_vars, depth + 1);
    if (!c2) {
      sx = std::move(ge);
      return std::nullopt;
    }
    std::set<int> u(c1->begin(), c1->end());
    u.insert(c2->begin(), c2->end());
    u.erase(btag);
    return std::vector<int>(u.begin(), u.end());
  }
  return std::nullopt;
}

}  // namespace

void Engine::cmd_check_sat(std::string& out) {
  std::vector<Lit> assumps;
  for (const auto& [name, s] : named_) assumps.push_back(mk_lit(s, false));

  model_lines_.clear();
  last_core_.clear();

  while (true) {
    if (!sat_.solve(assumps)) {
      last_verdict_ = "unsat";
      std::set<Var> core_vars;
      for (Lit l : sat_.conflict_core()) core_vars.insert(lit_var(l));
      for (const auto& [name, s] : named_)
        if (core_vars.count(s)) last_core_.push_back(name);
      out += "unsat\n";
      return;
    }

    // theory check on the full assignment
    Simplex sx;
    int total = num_arith_vars_ + static_cast<int>(slack_rows_.size());
    for (int i = 0; i < total; ++i) sx.new_var();
    for (size_t s = 0; s < slack_rows_.size(); ++s)
      sx.add_row(num_arith_vars_ + static_cast<int>(s), slack_rows_[s]);

    std::vector<Diseq> diseqs;
    std::optional<std::vector<int>> conflict;
    for (size_t a = 0; a < atoms_.size() && !conflict; ++a) {
      const Atom& at = atoms_[a];
      bool val = sat_.model_value(atom_var_[a]);
      int tag = mk_lit(atom_var_[a], !val);  // the literal that holds
      std::optional<SimplexConflict> c;
      switch (at.op) {
        case AtomOp::Le:
          c = val ? sx.assert_upper(at.form, DRat(at.c), tag) : sx.assert_lower(at.form, DRat(at.c, 1), tag);
          break;
        case AtomOp::Lt:
          c = val ? sx.assert_upper(at.form, DRat(at.c, -1), tag) : sx.assert_lower(at.form, DRat(at.c), tag);
          break;
        case AtomOp::Ge:
          c = val ? sx.assert_lower(at.form, DRat(at.c), tag) : sx.assert_upper(at.form, DRat(at.c, -1), tag);
          break;
        case AtomOp::Gt:
          c = val ? sx.assert_lower(at.form, DRat(at.c, 1), tag) : sx.assert_upper(at.form, DRat(at.c), tag);
          break;
        case AtomOp::Eq:
          if (val) {
            c = sx.assert_lower(at.form, DRat(at.c), tag);
            if (!c) c = sx.assert_upper(at.form, DRat(at.c), tag);
          } else {
            diseqs.push_back(Diseq{at.form, at.c, tag});
          }
          break;
      }
      if (c) conflict = c->tags;
    }

    std::vector<int> int_vars;
    for (const auto& d : decls_)
      if (d.sort == Sort::Int) int_vars.push_back(d.arith_id);

    if (!conflict) {
      try {
        conflict = theory_finish(sx, diseqs, int_vars, 0);
      } catch (const SmtError&) {
        last_verdict_ = "unknown";
        out += "unknown\n";
        return;
      }
    }

    if (!conflict) {
      last_verdict_ = "sat";
      std::vector<std::pair<int, mpq_class>> avoid;
      for (const auto& d : diseqs) avoid.emplace_back(d.form, d.c);
      mpq_class eps = sx.realize_epsilon(avoid);
      for (const auto& d : decls_) {
        std::ostringstream line;
        if (d.sort == Sort::Bool) {
          line << "  (define-fun " << d.name << " () Bool " << (sat_.model_value(d.bool_var) ? "true" : "false")
               << ")";
        } else {
          const DRat& v = sx.value(d.arith_id);
          mpq_class real = v.r + v.k * eps;
          line << "  (define-fun " << d.name << " () " << (d.sort == Sort::Int ? "Int" : "Real") << " "
               << rat_smt(real) << ")";
        }
        model_lines_.push_back(line.str());
      }
      out += "sat\n";
      return;
    }

    // learn the theory conflict and continue
    std::vector<Lit> clause;
    for (int t : *conflict) {
      if (t < 0) continue;  // branch tags never surface here, but be safe
      clause.push_back(lit_not(t));
    }
    if (clause.empty() || !sat_.add_theory_clause(clause)) {
      last_verdict_ = "unsat";
      out += "unsat\n";
      return;
    }
  }
}

std::string Engine::run(const std::string& script) {
  std::string out;
  SexpReader rd(script);
  Sexp cmd;
  while (rd.next(cmd)) {
    if (cmd.is_atom || cmd.size() == 0) throw SmtError("bad command");
    const std::string& op = cmd[0].atom;
    if (op == "set-option") {
      if (cmd.size() >= 3 && cmd[1].is_sym(":produce-unsat-cores")) produce_cores_ = cmd[2].is_sym("true");
      // :produce-models and others accepted silently
    } else if (op == "set-logic" || op == "set-info") {
      // accepted
    } else if (op == "declare-const" || op == "declare-fun") {
      std::string name = cmd[1].atom;
      const Sexp& sort_s = op == "declare-const" ? cmd[2] : cmd[3];
      if (op == "declare-fun" && cmd[2].size() != 0) throw SmtError("only 0-ary functions supported");
      if (decl_index_.count(name)) throw SmtError("redeclared " + name);
      Decl d;
      d.name = name;
      d.sort = sort_of_name(sort_s.atom);
      if (d.sort == Sort::Bool)
        d.bool_var = sat_.new_var();
      else
        d.arith_id = num_arith_vars_++;
      decl_index_[name] = static_cast<int>(decls_.size());
      decls_.push_back(d);
      if (d.sort == Sort::Int) has_int_ = true;
    } else if (op == "assert") {
      cmd_assert(cmd[1]);
    } else if (op == "check-sat") {
      cmd_check_sat(out);
    } else if (op == "get-model") {
      if (last_verdict_ != "sat") {
        out += "(error \"no model available\")\n";
      } else {
        out += "(model\n";
        for (const auto& l : model_lines_) out += l + "\n";
        out += ")\n";
      }
    } else if (op == "get-unsat-core") {
      if (last_verdict_ != "unsat") {
        out += "(error \"no core available\")\n";
      } else {
        out += "(";
        for (size_t i = 0; i < last_core_.size(); ++i) {
          if (i) out += " ";
          out += last_core_[i];
        }
        out += ")\n";
      }
    } else if (op == "exit") {
      break;
    } else {
      throw SmtError("unsupported command " + op);
    }
  }
  return out;
}

}  // namespace rvtsmt
