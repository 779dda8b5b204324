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

#pragma once

#include <optional>
#include <vector>

#include "crnt/rational.hpp"

namespace crnt {

using RatVector = std::vector<Rational>;

// Dense row-major matrix over the rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  // Builds a matrix whose columns are the given vectors (all of length rows).
  static RatMatrix from_columns(const std::vector<RatVector>& columns, int rows);
  static RatMatrix from_rows(const std::vector<RatVector>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  RatVector multiply(const RatVector& x) const;
  RatMatrix transpose() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<int> rref(RatMatrix& a);

int rank(RatMatrix a);

// Basis of {x : A x = 0}, one vector per free column.
std::vector<RatVector> nullspace(const RatMatrix& a);

// Some solution of A x = b (free variables zero), or nullopt when inconsistent.
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);

Rational determinant(RatMatrix a);

// Column indices of a maximal independent subset, greedily left to right.
std::vector<int> independent_columns(const RatMatrix& a);

bool is_zero(const RatVector& v);

// Some x >= 0 with A x = b (exact phase-one simplex, Bland's rule), or nullopt.
std::optional<RatVector> nonnegative_solution(const RatMatrix& a, const RatVector& b);

}  // namespace crnt
