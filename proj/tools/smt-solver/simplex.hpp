// Exact-rational general simplex for linear real arithmetic, with
// delta-rationals for strict bounds. Offline use: assert bounds, then check.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace rvtsmt {

// value r + k*eps for an infinitesimal eps > 0
struct DRat {
  mpq_class r;
  mpq_class k;

  DRat() : r(0), k(0) {}
  DRat(mpq_class rr, mpq_class kk) : r(std::move(rr)), k(std::move(kk)) {}
  explicit DRat(const mpq_class& rr) : r(rr), k(0) {}

  bool operator<(const DRat& o) const { return r < o.r || (r == o.r && k < o.k); }
  bool operator<=(const DRat& o) const { return r < o.r || (r == o.r && k <= o.k); }
  bool operator==(const DRat& o) const { return r == o.r && k == o.k; }
  DRat operator+(const DRat& o) const { return {r + o.r, k + o.k}; }
  DRat operator-(const DRat& o) const { return {r - o.r, k - o.k}; }
  DRat operator*(const mpq_class& c) const { return {r * c, k * c}; }
};

struct SimplexConflict {
  std::vector<int> tags;  // tags of the contradicting bound assertions
};

class Simplex {
 public:
  int new_var();
  // defines var s as sum(coeffs[i].second * var coeffs[i].first); s becomes basic
  void add_row(int s, const std::vector<std::pair<int, mpq_class>>& coeffs);

  // b with tag; returns conflict on immediately contradictory bounds
  std::optional<SimplexConflict> assert_lower(int x, const DRat& b, int tag);
  std::optional<SimplexConflict> assert_upper(int x, const DRat& b, int tag);

  std::optional<SimplexConflict> check();

  const DRat& value(int x) const { return val_[x]; }
  bool has_lower(int x) const { return lo_tag_[x] != kNoBound; }
  bool has_upper(int x) const { return hi_tag_[x] != kNoBound; }
  const DRat& lower(int x) const { return lo_[x]; }
  const DRat& upper(int x) const { return hi_[x]; }

  // concrete positive epsilon making all bounds hold over the reals,
  // additionally avoiding finitely many forbidden points (var,value) pairs
  mpq_class realize_epsilon(const std::vector<std::pair<int, mpq_class>>& avoid) const;

  int num_vars() const { return static_cast<int>(val_.size()); }

 private:
  static constexpr int kNoBound = INT32_MIN;

  std::vector<std::vector<mpq_class>> rows_;  // rows_[i][j]: coeff of var j
  std::vector<int> row_basic_;
  std::vector<int> var_row_;  // row index if basic, else -1
  std::vector<DRat> val_;
  std::vector<DRat> lo_, hi_;
  std::vector<int> lo_tag_, hi_tag_;

  void update_nonbasic(int x, const DRat& v);
  void pivot_and_update(int r, int xi, int xj, const DRat& v);
};

}  // namespace rvtsmt
