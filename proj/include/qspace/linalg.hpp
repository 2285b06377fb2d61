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

#include <cstdint>
#include <vector>

#include "qspace/matrix.hpp"

namespace qspace {

// Eigenvalues at or below kRankCutoff * lambda_max count as zero.
inline constexpr double kRankCutoff = 1e-9;
// Default tolerance for operator identities.
inline constexpr double kOperatorTol = 1e-8;

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix vectors;            // eigenvector i is column i
};

// Cyclic Jacobi. Throws if h deviates from hermitian by more than
// tol * max(1, |h|_max).
HermitianEig hermitian_eig(const ComplexMatrix& h, double tol = 1e-10);

ComplexMatrix sqrt_psd(const ComplexMatrix& e);
ComplexMatrix pinv_sqrt_psd(const ComplexMatrix& e);

// Rank of a PSD matrix under the global cutoff.
int psd_rank(const ComplexMatrix& e);

/**
 * Given any R with E = R^dagger R, returns R' with orthogonal rows, one row per
 * eigenvalue of E above the cutoff (largest first), and R'^dagger R' = E.
 * Only a Gram matrix of size min(rows, cols) of R is diagonalized.
 */
ComplexMatrix minimal_root(const ComplexMatrix& r);

// Orthonormal basis (as columns) of the column space of m, by column-pivoted
// Gram-Schmidt; columns whose residual falls below rel_tol * (largest column
// norm) are treated as dependent.
ComplexMatrix range_basis(const ComplexMatrix& m, double rel_tol = 1e-7);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors);

// Traces out every subsystem not listed in keep; kept factors retain their
// relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep);

/**
 * Permutation matrix P acting on a tensor product with factor dimensions dims:
 * P maps the product basis state (i_0, ..., i_{n-1}) to (i_{order[0]}, ...,
 * i_{order[n-1]}), so factor q of the output is factor order[q] of the input.
 */
ComplexMatrix subsystem_permutation(const std::vector<int>& dims,
                                    const std::vector<int>& order);

// Square unitary whose leading columns are v.
ComplexMatrix extend_isometry(const ComplexMatrix& v);

// V with L = V sqrt(L^dagger L) and V^dagger V the projector onto Ran(L^dagger L).
ComplexMatrix polar_partial_isometry(const ComplexMatrix& l);

/**
 * For A, B with the same shape and A^dagger A = B^dagger B, a unitary U with
 * B = U A. Maps Ran(A) onto Ran(B) via the polar parts and pairs the
 * orthogonal complements by extend_isometry.
 */
ComplexMatrix isometry_between(const ComplexMatrix& a, const ComplexMatrix& b);

// Orthonormalized seeded complex Gaussian matrix.
ComplexMatrix haar_unitary(std::size_t dim, std::uint64_t seed);

bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);

// log2 of a power of two; throws otherwise.
int qubit_count(std::size_t dim);

}  // namespace qspace
