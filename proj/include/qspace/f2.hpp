// Copyright 2026 The qspace Authors
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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qspace {

/**
 * A vector over GF(2) of length at most 64, packed into one word.
 *
 * Coordinate j lives in bit j of the word, so the integer index of an
 * element of F_2^m (as used by walsh_transform) is simply its word.
 */
class F2Vector {
 public:
  static constexpr int kMaxLength = 64;

  F2Vector() = default;
  explicit F2Vector(int length, std::uint64_t word = 0);
  static F2Vector unit(int length, int j);
  // Parses "0110"; character j is coordinate j.
  static F2Vector from_string(std::string_view bits);

  int size() const { return length_; }
  std::uint64_t word() const { return word_; }
  bool get(int j) const { return (word_ >> j) & 1U; }
  void set(int j, bool value);
  bool is_zero() const { return word_ == 0; }
  int weight() const;
  // Index of the lowest set coordinate, or -1 for the zero vector.
  int lowest_set() const;
  std::string to_string() const;

  F2Vector& operator^=(const F2Vector& other);
  friend F2Vector operator^(F2Vector a, const F2Vector& b) { return a ^= b; }
  friend bool operator==(const F2Vector&, const F2Vector&) = default;
  friend auto operator<=>(const F2Vector&, const F2Vector&) = default;

 private:
  int length_ = 0;
  std::uint64_t word_ = 0;
};

// s.r mod 2.
bool dot(const F2Vector& a, const F2Vector& b);

struct F2Matrix {
  int cols = 0;
  std::vector<F2Vector> rows;

  F2Matrix() = default;
  F2Matrix(int cols, std::vector<F2Vector> rows);
  int row_count() const { return static_cast<int>(rows.size()); }
  F2Vector column(int j) const;
};

int rank(const F2Matrix& m);

/**
 * A subspace of F_2^m held as a basis in reduced row-echelon form.
 *
 * Pivots are the lowest set coordinate of each basis row, strictly
 * increasing down the basis, and every pivot column is zero outside its own
 * row.
 */
class F2Subspace {
 public:
  explicit F2Subspace(int ambient_dim = 0);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<F2Vector>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // Adds v to the span; returns false if v was already contained.
  bool insert(const F2Vector& v);
  bool contains(const F2Vector& v) const;
  // v with every pivot coordinate cleared by adding basis rows.
  F2Vector reduce(const F2Vector& v) const;
  // All 2^dim elements, ordered by the binary counter over basis rows.
  std::vector<F2Vector> elements() const;
  // {r : r.v = 0 for every v in this subspace}.
  F2Subspace orthogonal_complement() const;

  friend bool operator==(const F2Subspace&, const F2Subspace&) = default;

 private:
  int ambient_;
  std::vector<F2Vector> basis_;
  std::vector<int> pivots_;
};

F2Subspace span(const std::vector<F2Vector>& vectors, int ambient_dim);
bool contains(const F2Subspace& s, const F2Vector& v);

// Coordinates of the coset s + J on the non-pivot unit vectors of J's echelon
// form; length ambient_dim - dim J.
F2Vector coset_label(const F2Vector& s, const F2Subspace& j);

// f~(j) = sum_i (-1)^{i.j} f(i).
std::vector<double> walsh_transform(const std::vector<double>& f);

// Exhaustive check that f(x + v) = f(x) within tol for every x and v in V.
bool coset_constant(const std::vector<double>& f, const F2Subspace& v,
                    double tol = 1e-12);

}  // namespace qspace
