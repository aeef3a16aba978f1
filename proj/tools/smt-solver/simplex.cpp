#include "simplex.hpp"

namespace rvtsmt {

int Simplex::new_var() {
  int v = static_cast<int>(val_.size());
  val_.emplace_back();
  lo_.emplace_back();
  hi_.emplace_back();
  lo_tag_.push_back(kNoBound);
  hi_tag_.push_back(kNoBound);
  var_row_.push_back(-1);
  for (auto& row : rows_) row.emplace_back(0);
  return v;
}

void Simplex::add_row(int s, const std::vector<std::pair<int, mpq_class>>& coeffs) {
  std::vector<mpq_class> row(val_.size(), mpq_class(0));
  DRat v;
  for (const auto& [x, c] : coeffs) {
    if (var_row_[x] >= 0) {
      // substitute basic var by its row
      const auto& brow = rows_[var_row_[x]];
      for (size_t j = 0; j < brow.size(); ++j) row[j] += c * brow[j];
    } else {
      row[x] += c;
    }
    v = v + val_[x] * c;
  }
  row[s] = 0;
  var_row_[s] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(row));
  row_basic_.push_back(s);
  val_[s] = v;
}

void Simplex::update_nonbasic(int x, const DRat& v) {
  DRat d = v - val_[x];
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i][x] != 0) val_[row_basic_[i]] = val_[row_basic_[i]] + d * rows_[i][x];
  }
  val_[x] = v;
}

std::optional<SimplexConflict> Simplex::assert_lower(int x, const DRat& b, int tag) {
  if (hi_tag_[x] != kNoBound && hi_[x] < b) return SimplexConflict{{tag, hi_tag_[x]}};
  if (lo_tag_[x] != kNoBound && b <= lo_[x]) return std::nullopt;  // not tighter
  lo_[x] = b;
  lo_tag_[x] = tag;
  if (var_row_[x] < 0 && val_[x] < b) update_nonbasic(x, b);
  return std::nullopt;
}

std::optional<SimplexConflict> Simplex::assert_upper(int x, const DRat& b, int tag) {
  if (lo_tag_[x] != kNoBound && b < lo_[x]) return SimplexConflict{{tag, lo_tag_[x]}};
  if (hi_tag_[x] != kNoBound && hi_[x] <= b) return std::nullopt;
  hi_[x] = b;
  hi_tag_[x] = tag;
  if (var_row_[x] < 0 && b < val_[x]) update_nonbasic(x, b);
  return std::nullopt;
}

void Simplex::pivot_and_update(int r, int xi, int xj, const DRat& v) {
  const mpq_class a = rows_[r][xj];
  DRat theta = (v - val_[xi]) * (mpq_class(1) / a);
  val_[xi] = v;
  val_[xj] = val_[xj] + theta;
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (static_cast<int>(i) != r && rows_[i][xj] != 0)
      val_[row_basic_[i]] = val_[row_basic_[i]] + theta * rows_[i][xj];
  }
  // re-express row r with xj basic
  auto& row = rows_[r];
  mpq_class inv = mpq_class(1) / a;
  row[xj] = 0;
  for (auto& c : row) c = -c * inv;
  row[xi] = inv;
  row_basic_[r] = xj;
  var_row_[xj] = r;
  var_row_[xi] = -1;
  // substitute xj out of other rows
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (static_cast<int>(i) == r) continue;
    mpq_class c = rows_[i][xj];
    if (c == 0) continue;
    rows_[i][xj] = 0;
    for (size_t jj = 0; jj < row.size(); ++jj) {
      if (row[jj] != 0) rows_[i][jj] += c * row[jj];
    }
  }
}

std::optional<SimplexConflict> Simplex::check() {
  while (true) {
    // Bland: smallest violating basic var
    int xi = -1;
    bool below = false;
    for (int x = 0; x < num_vars(); ++x) {
      if (var_row_[x] < 0) continue;
      if (lo_tag_[x] != kNoBound && val_[x] < lo_[x]) {
        xi = x;
        below = true;
        break;
      }
      if (hi_tag_[x] != kNoBound && hi_[x] < val_[x]) {
        xi = x;
        below = false;
        break;
      }
    }
    if (xi < 0) return std::nullopt;
    int r = var_row_[xi];
    const auto& row = rows_[r];
    int xj = -1;
    for (int x = 0; x < num_vars(); ++x) {
      if (var_row_[x] >= 0 || row[x] == 0) continue;
      bool can_grow = hi_tag_[x] == kNoBound || val_[x] < hi_[x];
      bool can_shrink = lo_tag_[x] == kNoBound || lo_[x] < val_[x];
      if (below ? (row[x] > 0 ? can_grow : can_shrink) : (row[x] > 0 ? can_shrink : can_grow)) {
        xj = x;
        break;
      }
    }
    if (xj < 0) {
      SimplexConflict c;
      c.tags.push_back(below ? lo_tag_[xi] : hi_tag_[xi]);
      for (int x = 0; x < num_vars(); ++x) {
        if (var_row_[x] >= 0 || row[x] == 0) continue;
        bool upper_blocks = below ? row[x] > 0 : row[x] < 0;
        c.tags.push_back(upper_blocks ? hi_tag_[x] : lo_tag_[x]);
      }
      return c;
    }
    pivot_and_update(r, xi, xj, below ? lo_[xi] : hi_[xi]);
  }
}

mpq_class Simplex::realize_epsilon(const std::vector<std::pair<int, mpq_class>>& avoid) const {
  mpq_class eps(1);
  auto tighten = [&eps](const DRat& lo, const DRat& hi) {
    // need lo.r + lo.k*e <= hi.r + hi.k*e given lo <= hi lexicographically
    if (lo.r < hi.r && lo.k > hi.k) {
      mpq_class cand = (hi.r - lo.r) / (lo.k - hi.k);
      if (cand < eps) eps = cand;
    }
  };
  for (int x = 0; x < num_vars(); ++x) {
    if (lo_tag_[x] != kNoBound) tighten(lo_[x], val_[x]);
    if (hi_tag_[x] != kNoBound) tighten(val_[x], hi_[x]);
  }
  // avoid the finitely many epsilon values hitting forbidden points
  while (true) {
    bool hit = false;
    for (const auto& [x, c] : avoid) {
      if (val_[x].k != 0 && val_[x].r + val_[x].k * eps == c) {
        hit = true;
        break;
      }
    }
    if (!hit) break;
    eps /= 2;
  }
  return eps / 2;
}

}  // namespace rvtsmt
