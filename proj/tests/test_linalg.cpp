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

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qspace/linalg.hpp"

using namespace qspace;
using oracle::naive_adjoint;
using oracle::naive_matmul;

namespace {

ComplexMatrix random_hermitian(std::size_t n, oracle::Rng& rng) {
  const ComplexMatrix a = oracle::random_matrix(n, n, rng);
  ComplexMatrix h = a + naive_adjoint(a);
  h *= 0.5;
  return h;
}

// G^dagger G with G of the given rank.
ComplexMatrix random_psd(std::size_t n, std::size_t rank, oracle::Rng& rng) {
  const ComplexMatrix g = oracle::random_matrix(rank, n, rng);
  return naive_matmul(naive_adjoint(g), g);
}

}  // namespace

TEST_CASE("Jacobi eigenvalues match the reference solver") {
  oracle::Rng rng(31);
  for (std::size_t n : {1, 2, 3, 8, 16, 33}) {
    const ComplexMatrix h = random_hermitian(n, rng);
    const HermitianEig eig = hermitian_eig(h);
    const auto ref = oracle::eigenvalues(h);
    REQUIRE(eig.eigenvalues.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(eig.eigenvalues[i] - ref[i]) < 1e-10);
    CHECK(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
    // H V = V diag(lambda)
    const ComplexMatrix hv = naive_matmul(h, eig.vectors);
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t r = 0; r < n; ++r) {
        CHECK(std::abs(hv(r, c) - eig.eigenvalues[c] * eig.vectors(r, c)) < 1e-9);
      }
    }
    CHECK(is_unitary(eig.vectors, 1e-10));
  }
}

TEST_CASE("hermitian_eig rejects non-hermitian input") {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("PSD square roots and ranks") {
  oracle::Rng rng(32);
  for (std::size_t n : {1, 2, 4, 8}) {
    for (std::size_t r = 1; r <= n; ++r) {
      const ComplexMatrix e = random_psd(n, r, rng);
      const ComplexMatrix s = sqrt_psd(e);
      CHECK(max_abs_diff(naive_matmul(s, s), e) < 1e-10 * std::max(1.0, e.max_abs()));
      CHECK(max_abs_diff(s, oracle::sqrt_psd(e)) < 1e-8);
      CHECK(psd_rank(e) == static_cast<int>(r));
      CHECK(psd_rank(e) == oracle::psd_rank(e));
      // sqrt(E) pinv_sqrt(E) is the support projector.
      const ComplexMatrix p = naive_matmul(s, pinv_sqrt_psd(e));
      CHECK(max_abs_diff(naive_matmul(p, p), p) < 1e-8);
      CHECK(std::abs(p.trace().real() - static_cast<double>(r)) < 1e-8);
    }
  }
}

TEST_CASE("minimal_root keeps the Gram matrix with orthogonal rows") {
  oracle::Rng rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 1 + rng() % 12;
    const std::size_t cols = 1 + rng() % 8;
    const std::size_t rank = 1 + rng() % std::min(rows, cols);
    const ComplexMatrix r = naive_matmul(oracle::random_matrix(rows, rank, rng),
                                         oracle::random_matrix(rank, cols, rng));
    const ComplexMatrix m = minimal_root(r);
    CHECK(m.rows() == rank);
    CHECK(max_abs_diff(naive_matmul(naive_adjoint(m), m), naive_matmul(naive_adjoint(r), r)) <
          1e-9 * std::max(1.0, r.max_abs() * r.max_abs()));
    const ComplexMatrix gram = naive_matmul(m, naive_adjoint(m));
    for (std::size_t i = 0; i < gram.rows(); ++i) {
      for (std::size_t j = 0; j < gram.cols(); ++j) {
        if (i != j) CHECK(std::abs(gram(i, j)) < 1e-8 * std::max(1.0, std::abs(gram(i, i))));
      }
    }
  }
}

TEST_CASE("range_basis is orthonormal and spans the columns") {
  oracle::Rng rng(34);
  const ComplexMatrix m = naive_matmul(oracle::random_matrix(6, 3, rng), oracle::random_matrix(3, 5, rng));
  const ComplexMatrix q = range_basis(m);
  CHECK(q.cols() == 3);
  CHECK(max_abs_diff(naive_matmul(naive_adjoint(q), q), ComplexMatrix::identity(3)) < 1e-12);
  // Q Q^dagger M = M
  CHECK(max_abs_diff(naive_matmul(naive_matmul(q, naive_adjoint(q)), m), m) < 1e-10);
}

TEST_CASE("kron, partial trace and subsystem permutations") {
  oracle::Rng rng(35);
  const ComplexMatrix a = oracle::random_matrix(2, 2, rng);
  const ComplexMatrix b = oracle::random_matrix(4, 4, rng);
  const ComplexMatrix c = oracle::random_matrix(2, 2, rng);
  const ComplexMatrix ab = kron(a, b);
  CHECK(ab(5, 6) == a(1, 1) * b(1, 2));
  CHECK(kron_all({a, b, c}) == kron(kron(a, b), c));

  const ComplexMatrix abc = kron_all({a, b, c});
  const ComplexMatrix keep_b = partial_trace(abc, {2, 4, 2}, {1});
  CHECK(max_abs_diff(keep_b, (a.trace() * c.trace()) * b) < 1e-12);
  const ComplexMatrix keep_ca = partial_trace(abc, {2, 4, 2}, {0, 2});
  CHECK(max_abs_diff(keep_ca, b.trace() * kron(a, c)) < 1e-12);

  // P (a (x) b (x) c) P^dagger = c (x) a (x) b for order {2, 0, 1}.
  const ComplexMatrix p = subsystem_permutation({2, 4, 2}, {2, 0, 1});
  CHECK(is_unitary(p, 1e-14));
  CHECK(max_abs_diff(naive_matmul(naive_matmul(p, abc), naive_adjoint(p)), kron_all({c, a, b})) < 1e-12);
}

TEST_CASE("extend_isometry and isometry_between") {
  oracle::Rng rng(36);
  const ComplexMatrix u = oracle::random_unitary(8, rng);
  const ComplexMatrix v = u.block(0, 0, 8, 3);
  const ComplexMatrix w = extend_isometry(v);
  CHECK(is_unitary(w, 1e-10));
  CHECK(max_abs_diff(w.block(0, 0, 8, 3), v) < 1e-14);
  CHECK_THROWS(extend_isometry(oracle::random_matrix(4, 2, rng)));

  // Rank-deficient A and B = V A.
  const ComplexMatrix a = naive_matmul(oracle::random_matrix(6, 2, rng), oracle::random_matrix(2, 4, rng));
  const ComplexMatrix b = naive_matmul(oracle::random_unitary(6, rng), a);
  const ComplexMatrix x = isometry_between(a, b);
  CHECK(is_unitary(x, 1e-9));
  CHECK(max_abs_diff(naive_matmul(x, a), b) < 1e-9);
}

TEST_CASE("polar_partial_isometry") {
  oracle::Rng rng(37);
  const ComplexMatrix l = naive_matmul(oracle::random_matrix(4, 2, rng), oracle::random_matrix(2, 3, rng));
  const ComplexMatrix v = polar_partial_isometry(l);
  CHECK(max_abs_diff(naive_matmul(v, sqrt_psd(naive_matmul(naive_adjoint(l), l))), l) < 1e-9);
  const ComplexMatrix p = naive_matmul(naive_adjoint(v), v);
  CHECK(max_abs_diff(naive_matmul(p, p), p) < 1e-9);
}

TEST_CASE("haar_unitary and qubit_count") {
  CHECK(is_unitary(haar_unitary(16, 5), 1e-12));
  CHECK(haar_unitary(4, 9) == haar_unitary(4, 9));
  CHECK(qubit_count(1) == 0);
  CHECK(qubit_count(512) == 9);
  CHECK_THROWS(qubit_count(6));
  CHECK_THROWS(qubit_count(0));
}
