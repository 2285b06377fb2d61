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

#include <doctest.h>

#include "oracles.hpp"
#include "qspace/kernels.hpp"

using namespace qspace;

namespace {

struct Shape {
  std::size_t m, k, n;
};

// Small shapes stay below the parallel threshold; the last two cross it.
const Shape kShapes[] = {{1, 1, 1}, {3, 5, 2}, {8, 8, 8}, {17, 3, 29}, {130, 64, 140}, {256, 40, 256}};

}  // namespace

TEST_CASE("parallel kernels agree with the serial reference bit for bit") {
  oracle::Rng rng(21);
  for (const auto& s : kShapes) {
    const ComplexMatrix a = oracle::random_matrix(s.m, s.k, rng);
    const ComplexMatrix b = oracle::random_matrix(s.k, s.n, rng);
    const ComplexMatrix at = oracle::random_matrix(s.k, s.m, rng);
    const ComplexMatrix bt = oracle::random_matrix(s.n, s.k, rng);
    CHECK(kernels::matmul(a, b) == kernels::matmul_serial(a, b));
    CHECK(kernels::adjoint_matmul(at, b) == kernels::adjoint_matmul_serial(at, b));
    CHECK(kernels::matmul_adjoint(a, bt) == kernels::matmul_adjoint_serial(a, bt));
  }
}

TEST_CASE("kernels match the naive product") {
  oracle::Rng rng(22);
  for (const auto& s : kShapes) {
    const ComplexMatrix a = oracle::random_matrix(s.m, s.k, rng);
    const ComplexMatrix b = oracle::random_matrix(s.k, s.n, rng);
    const ComplexMatrix ref = oracle::naive_matmul(a, b);
    const double tol = 1e-12 * static_cast<double>(s.k);
    CHECK(max_abs_diff(kernels::matmul(a, b), ref) < tol);
    CHECK(max_abs_diff(a * b, ref) < tol);
    CHECK(max_abs_diff(kernels::adjoint_matmul(oracle::naive_adjoint(a), b), ref) < tol);
    CHECK(max_abs_diff(kernels::matmul_adjoint(a, oracle::naive_adjoint(b)), ref) < tol);
  }
}

TEST_CASE("mismatched shapes are rejected") {
  CHECK_THROWS(kernels::matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)));
  CHECK_THROWS(kernels::adjoint_matmul(ComplexMatrix(2, 3), ComplexMatrix(3, 3)));
  CHECK_THROWS(kernels::matmul_adjoint(ComplexMatrix(2, 3), ComplexMatrix(2, 2)));
}

TEST_CASE("thread count is positive") { CHECK(kernels::thread_count() >= 1); }
