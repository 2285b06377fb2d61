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

#include "qspace/matrix.hpp"

// Hot dense kernels. Every kernel has a serial reference and an OpenMP
// version; both accumulate each output entry in the same order, so their
// results agree bit for bit and the tests compare them with ==.
namespace qspace::kernels {

// a * b
ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// a^dagger * b, without materializing the adjoint.
ComplexMatrix adjoint_matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint_matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// a * b^dagger
ComplexMatrix matmul_adjoint_serial(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul_adjoint(const ComplexMatrix& a, const ComplexMatrix& b);

// Rows x cols work below which the parallel kernels run serially.
inline constexpr std::size_t kParallelThreshold = 1 << 14;

int thread_count();

}  // namespace qspace::kernels
