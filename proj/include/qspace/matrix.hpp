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

#include <complex>
#include <cstddef>
#include <vector>

namespace qspace {

using Complex = std::complex<double>;

// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<Complex>& d);
  // |index><0|-style column vector with a single one.
  static ComplexMatrix basis_column(std::size_t dim, std::size_t index);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  Complex* data() { return data_.data(); }
  const Complex* data() const { return data_.data(); }
  Complex* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
  const Complex* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr,
                      std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);
  ComplexMatrix column(std::size_t c) const { return block(0, c, rows_, 1); }

  Complex trace() const;
  double max_abs() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
// Uses the parallel kernel.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qspace
