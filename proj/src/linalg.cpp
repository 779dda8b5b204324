// Copyright 2026 The crnt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crnt/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace crnt {

RatMatrix RatMatrix::from_columns(const std::vector<RatVector>& columns, int rows) {
  RatMatrix m(rows, static_cast<int>(columns.size()));
  for (int c = 0; c < m.cols(); ++c) {
    if (static_cast<int>(columns[c].size()) != rows) throw std::invalid_argument("column length mismatch");
    for (int r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows, int cols) {
  RatMatrix m(static_cast<int>(rows.size()), cols);
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols) throw std::invalid_argument("row length mismatch");
    for (int c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RatVector RatMatrix::multiply(const RatVector& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("dimension mismatch");
  RatVector y(rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (!is_zero((*this)(r, c)) && !is_zero(x[c])) y[r] += (*this)(r, c) * x[c];
    }
  }
  return y;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<int> rref(RatMatrix& a) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int sel = -1;
    for (int r = row; r < a.rows(); ++r) {
      if (!is_zero(a(r, col))) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != row) {
      for (int c = 0; c < a.cols(); ++c) std::swap(a(sel, c), a(row, c));
    }
    Rational inv = 1 / a(row, col);
    for (int c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r == row || is_zero(a(r, col))) continue;
      Rational f = a(r, col);
      for (int c = col; c < a.cols(); ++c) {
        if (!is_zero(a(row, c))) a(r, c) -= f * a(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(RatMatrix a) { return static_cast<int>(rref(a).size()); }

std::vector<RatVector> nullspace(const RatMatrix& a) {
  RatMatrix r = a;
  std::vector<int> pivots = rref(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(a.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(static_cast<int>(i), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("dimension mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  RatVector x(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(static_cast<int>(i), a.cols());
  return x;
}

Rational determinant(RatMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  int n = a.rows();
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int sel = -1;
    for (int r = col; r < n; ++r) {
      if (!is_zero(a(r, col))) {
        sel = r;
        break;
      }
    }
    if (sel < 0) return 0;
    if (sel != col) {
      for (int c = 0; c < n; ++c) std::swap(a(sel, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      Rational f = a(r, col) / a(col, col);
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

std::vector<int> independent_columns(const RatMatrix& a) {
  RatMatrix r = a;
  return rref(r);
}

bool is_zero(const RatVector& v) {
  for (const Rational& x : v)
    if (!is_zero(x)) return false;
  return true;
}

std::optional<RatVector> nonnegative_solution(const RatMatrix& a, const RatVector& b) {
  const int r = a.rows();
  const int c = a.cols();
  if (static_cast<int>(b.size()) != r) throw std::invalid_argument("nonnegative_solution: dimension mismatch");
  // Columns 0..c-1 structural, c..c+r-1 artificial, c+r right-hand side.
  const int width = c + r + 1;
  RatMatrix t(r + 1, width);
  std::vector<int> basis(r);
  for (int i = 0; i < r; ++i) {
    const bool flip = b[i] < 0;
    for (int j = 0; j < c; ++j) t(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
    t(i, c + i) = 1;
    t(i, c + r) = flip ? Rational(-b[i]) : b[i];
    basis[i] = c + i;
  }
  // Objective row holds reduced costs of minimizing the artificial sum.
  for (int j = 0; j < width; ++j) {
    if (j >= c && j < c + r) continue;
    Rational s = 0;
    for (int i = 0; i < r; ++i) s += t(i, j);
    t(r, j) = -s;
  }
  for (;;) {
    int enter = -1;
    for (int j = 0; j < c + r; ++j)
      if (t(r, j) < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < r; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational ratio = t(i, c + r) / t(i, enter);
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;
    const Rational piv = t(leave, enter);
    for (int j = 0; j < width; ++j) t(leave, j) /= piv;
    for (int i = 0; i <= r; ++i) {
      if (i == leave || is_zero(t(i, enter))) continue;
      const Rational f = t(i, enter);
      for (int j = 0; j < width; ++j) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
  }
  if (!is_zero(t(r, c + r))) return std::nullopt;
  RatVector x(c);
  for (int i = 0; i < r; ++i)
    if (basis[i] < c) x[basis[i]] = t(i, c + r);
  return x;
}

}  // namespace crnt
