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

// Serial reference vs OpenMP path for the matrix kernels, the simulator and
// the ordering search. Prints one line per comparison.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "qspace/kernels.hpp"
#include "qspace/linalg.hpp"
#include "qspace/simulator.hpp"
#include "qspace/synthesis.hpp"

using namespace qspace;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const std::string& what, double serial, double parallel) {
  std::printf("%-34s serial %9.4f s  parallel %9.4f s  speedup %5.2fx\n", what.c_str(), serial,
              parallel, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", kernels::thread_count());

  for (std::size_t n : {64, 128, 256, 512}) {
    const ComplexMatrix a = haar_unitary(n, 1);
    const ComplexMatrix b = haar_unitary(n, 2);
    const int reps = n <= 128 ? 10 : 3;
    const double s = best_of(reps, [&] { kernels::matmul_serial(a, b); });
    const double p = best_of(reps, [&] { kernels::matmul(a, b); });
    report("matmul " + std::to_string(n), s, p);
    const double sa = best_of(reps, [&] { kernels::matmul_adjoint_serial(a, b); });
    const double pa = best_of(reps, [&] { kernels::matmul_adjoint(a, b); });
    report("matmul_adjoint " + std::to_string(n), sa, pa);
  }

  for (const char* name : {"five_one_three", "steane"}) {
    const DistillationSynthesis syn = synth_distillation(builtin_code(name));
    SimOptions serial, parallel;
    serial.parallel = false;
    const double s = best_of(3, [&] { run(syn.circuit, serial); });
    const double p = best_of(3, [&] { run(syn.circuit, parallel); });
    report(std::string("simulate ") + name, s, p);
  }

  const StabilizerCode shor = builtin_code("shor");
  const double s = best_of(3, [&] { max_delay(shor, {false}); });
  const double p = best_of(3, [&] { max_delay(shor, {true}); });
  report("ordering search shor", s, p);
  return 0;
}
