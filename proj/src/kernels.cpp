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

#include "qspace/kernels.hpp"

#include <omp.h>

#include <stdexcept>

namespace qspace::kernels {

namespace {

// Complex products are spelled out on the real and imaginary parts: the
// std::complex operator carries an inf/nan recovery path that blocks
// vectorization.

// Row i of a * b.
inline void matmul_row(const ComplexMatrix& a, const ComplexMatrix& b,
                       ComplexMatrix& c, std::size_t i) {
  const std::size_t inner = a.cols(), n = b.cols();
  double* out = reinterpret_cast<double*>(c.row_ptr(i));
  const double* arow = reinterpret_cast<const double*>(a.row_ptr(i));
  for (std::size_t k = 0; k < inner; ++k) {
    const double ar = arow[2 * k], ai = arow[2 * k + 1];
    if (ar == 0.0 && ai == 0.0) continue;
    const double* brow = reinterpret_cast<const double*>(b.row_ptr(k));
    for (std::size_t j = 0; j < n; ++j) {
      const double br = brow[2 * j], bi = brow[2 * j + 1];
      out[2 * j] += ar * br - ai * bi;
      out[2 * j + 1] += ar * bi + ai * br;
    }
  }
}

// Row i of a^dagger * b.
inline void adjoint_matmul_row(const ComplexMatrix& a, const ComplexMatrix& b,
                               ComplexMatrix& c, std::size_t i) {
  const std::size_t inner = a.rows(), n = b.cols();
  double* out = reinterpret_cast<double*>(c.row_ptr(i));
  for (std::size_t k = 0; k < inner; ++k) {
    const Complex av = a(k, i);
    const double ar = av.real(), ai = -av.imag();
    if (ar == 0.0 && ai == 0.0) continue;
    const double* brow = reinterpret_cast<const double*>(b.row_ptr(k));
    for (std::size_t j = 0; j < n; ++j) {
      const double br = brow[2 * j], bi = brow[2 * j + 1];
      out[2 * j] += ar * br - ai * bi;
      out[2 * j + 1] += ar * bi + ai * br;
    }
  }
}

// Row i of a * b^dagger.
inline void matmul_adjoint_row(const ComplexMatrix& a, const ComplexMatrix& b,
                               ComplexMatrix& c, std::size_t i) {
  const std::size_t inner = a.cols(), n = b.rows();
  const double* arow = reinterpret_cast<const double*>(a.row_ptr(i));
  for (std::size_t j = 0; j < n; ++j) {
    const double* brow = reinterpret_cast<const double*>(b.row_ptr(j));
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < inner; ++k) {
      const double ar = arow[2 * k], ai = arow[2 * k + 1];
      const double br = brow[2 * k], bi = -brow[2 * k + 1];
      re += ar * br - ai * bi;
      im += ar * bi + ai * br;
    }
    c(i, j) = Complex(re, im);
  }
}

void check(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

template <typename RowFn>
void run_rows_serial(std::size_t rows, RowFn fn) {
  for (std::size_t i = 0; i < rows; ++i) fn(i);
}

template <typename RowFn>
void run_rows_parallel(std::size_t rows, std::size_t work, RowFn fn) {
  if (work < kParallelThreshold || rows < 2) {
    run_rows_serial(rows, fn);
    return;
  }
  const auto n = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) fn(static_cast<std::size_t>(i));
}

}  // namespace

ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
  check(a.cols() == b.rows(), "matmul: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  run_rows_serial(a.rows(), [&](std::size_t i) { matmul_row(a, b, c, i); });
  return c;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  check(a.cols() == b.rows(), "matmul: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  run_rows_parallel(a.rows(), a.rows() * a.cols() * b.cols(),
                    [&](std::size_t i) { matmul_row(a, b, c, i); });
  return c;
}

ComplexMatrix adjoint_matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
  check(a.rows() == b.rows(), "adjoint_matmul: row counts differ");
  ComplexMatrix c(a.cols(), b.cols());
  run_rows_serial(a.cols(), [&](std::size_t i) { adjoint_matmul_row(a, b, c, i); });
  return c;
}

ComplexMatrix adjoint_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  check(a.rows() == b.rows(), "adjoint_matmul: row counts differ");
  ComplexMatrix c(a.cols(), b.cols());
  run_rows_parallel(a.cols(), a.rows() * a.cols() * b.cols(),
                    [&](std::size_t i) { adjoint_matmul_row(a, b, c, i); });
  return c;
}

ComplexMatrix matmul_adjoint_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
  check(a.cols() == b.cols(), "matmul_adjoint: column counts differ");
  ComplexMatrix c(a.rows(), b.rows());
  run_rows_serial(a.rows(), [&](std::size_t i) { matmul_adjoint_row(a, b, c, i); });
  return c;
}

ComplexMatrix matmul_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) {
  check(a.cols() == b.cols(), "matmul_adjoint: column counts differ");
  ComplexMatrix c(a.rows(), b.rows());
  run_rows_parallel(a.rows(), a.rows() * a.cols() * b.rows(),
                    [&](std::size_t i) { matmul_adjoint_row(a, b, c, i); });
  return c;
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace qspace::kernels
