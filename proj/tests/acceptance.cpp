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

// One line per acceptance criterion. Tolerances and limits are fixed here;
// only the fixture seed can be changed from the command line.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "oracles.hpp"
#include "qspace/f2.hpp"
#include "qspace/linalg.hpp"
#include "qspace/simulator.hpp"
#include "qspace/synthesis.hpp"

using namespace qspace;

namespace {

constexpr double kTable1Seconds = 60.0;
constexpr double kLowerBoundSeconds = 10.0;
constexpr double kFiveQubitSeconds = 60.0;
constexpr double kShorSeconds = 15.0 * 60.0;
constexpr double kShorMemoryMb = 2048.0;
constexpr double kEndToEndTol = 1e-8;
constexpr double kTreePovmTol = 1e-9;
constexpr double kTelescopeTol = 1e-8;
constexpr double kMinOutputTol = 1e-8;
constexpr double kFactorTol = 1e-10;
constexpr double kOnsTol = 1e-8;
constexpr double kFourierTol = 1e-12;
constexpr double kWodiTol = 1e-8;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double peak_rss_mb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return static_cast<double>(u.ru_maxrss) / 1024.0;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double max_povm_diff(const Povm& a, const Povm& b) {
  double worst = 0.0;
  for (const auto& k : b.labels()) {
    const ComplexMatrix ea = a.contains(k) ? a.element(k) : ComplexMatrix(b.dim(), b.dim());
    worst = std::max(worst, max_abs_diff(ea, b.element(k)));
  }
  for (const auto& k : a.labels()) {
    if (!b.contains(k)) worst = std::max(worst, a.element(k).max_abs());
  }
  return worst;
}

Outcome table1_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = cli::table1();
  const double s = seconds_since(t0);
  Outcome o{true, ""};
  for (const auto& row : rows) {
    o.pass = o.pass && row.match && row.report.certificate_ok;
    o.detail += row.report.code + "=" + std::to_string(row.report.optimal_qubits) + " ";
  }
  o.pass = o.pass && s < kTable1Seconds;
  o.detail += fmt("(%.2f s)", s);
  return o;
}

Outcome lower_bounds() {
  Outcome o{true, ""};
  for (const auto& name : builtin_code_names()) {
    const StabilizerCode code = builtin_code(name);
    const auto t0 = std::chrono::steady_clock::now();
    const DelayResult d = max_delay(code);
    SearchStats serial, parallel;
    const auto none = find_ordering(code, d.t_star + 1, {false}, &serial);
    const auto none_par = find_ordering(code, d.t_star + 1, {true}, &parallel);
    const double s = seconds_since(t0);
    const oracle::BruteDelay brute = oracle::brute_max_delay(code);
    const bool ok = !none && !none_par && serial.nodes == parallel.nodes &&
                    serial.nodes == d.next.nodes && brute.t_star == d.t_star &&
                    s < kLowerBoundSeconds;
    o.pass = o.pass && ok;
    o.detail += name + ": T*+1=" + std::to_string(d.t_star + 1) + " infeasible, " +
                std::to_string(serial.nodes) + " nodes" + fmt(" %.3f s; ", s);
  }
  return o;
}

Outcome end_to_end(const std::string& name, int width, double limit_s, bool memory) {
  const auto t0 = std::chrono::steady_clock::now();
  const StabilizerCode code = builtin_code(name);
  DistillationSynthesis s;
  try {
    s = synth_distillation(code);
  } catch (const std::exception& e) {
    return {false, std::string("synthesis threw: ") + e.what()};
  }
  const RunResult r = run(s.circuit);
  const EqualityReport rep = compare_instruments(r.instrument, s.target, kEndToEndTol);
  const double secs = seconds_since(t0);
  const double mb = peak_rss_mb();
  const int audited = audit_width(s.circuit);
  bool pass = rep.equal && audited == width && r.peak_width == width && secs < limit_s;
  std::string detail = "width " + std::to_string(audited) + "/" + std::to_string(r.peak_width) +
                       fmt(", max deviation %.2e", rep.max_deviation) + fmt(", %.2f s", secs);
  if (memory) {
    pass = pass && mb < kShorMemoryMb;
    detail += fmt(", peak RSS %.0f MB", mb);
  }
  return {pass, detail};
}

Outcome tree_suite(std::uint64_t seed) {
  oracle::Rng rng(seed);
  double worst_povm = 0.0;
  double worst_tel = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Povm e = oracle::random_povm(4, 8, rng);
    PovmTree tree;
    const Circuit c = synth_povm_tree(e, &tree);
    const RunResult r = run(c);
    worst_povm = std::max(worst_povm, max_povm_diff(associated_povm(r.instrument), e));

    // Products of the per-round Kraus operators along each path.
    const std::size_t d = tree.dim;
    std::vector<ComplexMatrix> leaves;
    for (const auto& k : e.labels()) leaves.push_back(e.element(k));
    leaves.resize(std::size_t{1} << tree.rounds, ComplexMatrix(d, d));
    std::function<void(const OutcomeLabel&, const ComplexMatrix&)> walk =
        [&](const OutcomeLabel& l, const ComplexMatrix& acc) {
          const int t = l.size();
          const std::size_t span = std::size_t{1} << (tree.rounds - t);
          const std::size_t first = t == 0 ? 0 : l.to_index() * span;
          ComplexMatrix r_l(d, d);
          for (std::size_t i = first; i < first + span; ++i) r_l += leaves[i];
          worst_tel = std::max(worst_tel, max_abs_diff(acc, oracle::sqrt_psd(r_l)));
          if (t == tree.rounds) return;
          const ComplexMatrix& u = tree.unitaries.at(l);
          for (int j = 0; j < 2; ++j) {
            const ComplexMatrix kj = u.block(static_cast<std::size_t>(j) * d, 0, d, d);
            walk(l.with_bit(j == 1), oracle::naive_matmul(kj, acc));
          }
        };
    walk(OutcomeLabel(), ComplexMatrix::identity(d));
  }
  return {worst_povm <= kTreePovmTol && worst_tel <= kTelescopeTol,
          fmt("100 POVMs, POVM error %.2e", worst_povm) + fmt(", telescoping error %.2e", worst_tel)};
}

Outcome min_output_suite(std::uint64_t seed) {
  oracle::Rng rng(seed + 1);
  int dim_mismatch = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = std::size_t{1} << (1 + trial % 3);
    const Povm e = oracle::random_povm(dim, 6, rng);
    int max_rank = 0;
    for (const auto& k : e.labels()) max_rank = std::max(max_rank, oracle::psd_rank(e.element(k)));
    const Instrument inst = rank1_min_output(e);
    if (inst.dim_out != static_cast<std::size_t>(max_rank)) ++dim_mismatch;
    worst = std::max(worst, max_povm_diff(associated_povm(inst), e));
  }
  return {dim_mismatch == 0 && worst <= kMinOutputTol,
          std::to_string(dim_mismatch) + " dimension mismatches in 50" +
              fmt(", POVM error %.2e", worst)};
}

Outcome no_signaling_suite(std::uint64_t seed) {
  oracle::Rng rng(seed + 2);
  double worst_f = 0.0;
  int missed = 0;
  int accepted_generic = 0;
  std::uniform_int_distribution<int> pick(0, 2);
  for (int trial = 0; trial < 50; ++trial) {
    // Three qubits; F lives on two of them, B is the third at position pos.
    const int pos = pick(rng);
    const Povm f = oracle::random_povm(4, 4, rng);
    std::map<OutcomeLabel, ComplexMatrix> elems;
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    for (const auto& k : f.labels()) {
      // E = F (x) I_B with B moved to pos.
      const ComplexMatrix fk = f.element(k);
      ComplexMatrix ek(8, 8);
      for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) {
          auto split = [&](std::size_t x, std::size_t& b) {
            const int shift = 2 - pos;
            b = (x >> shift) & 1U;
            const std::size_t hi = x >> (shift + 1);
            const std::size_t lo = x & ((std::size_t{1} << shift) - 1);
            return (hi << shift) | lo;
          };
          std::size_t br, bc;
          const std::size_t ar = split(r, br);
          const std::size_t ac = split(c, bc);
          if (br == bc) ek(r, c) = fk(ar, ac);
        }
      }
      elems[k] = ek;
    }
    const auto got = check_factorization(Povm(8, elems), {2, 2, 2}, pos);
    if (!got) {
      ++missed;
      continue;
    }
    worst_f = std::max(worst_f, max_povm_diff(*got, f));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const Povm e = oracle::random_povm(8, 4, rng);
    if (check_factorization(e, {2, 2, 2}, pick(rng))) ++accepted_generic;
  }
  double worst_ons = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    // gamma_k = V_k (G_k (x) I_B) on A (x) B with B a qubit at position pos.
    const int pos = pick(rng) % 2;
    const Povm g_povm = oracle::random_povm(2, 3, rng);
    const Instrument g = rank1_dilation(g_povm, 2);
    Instrument gamma;
    gamma.dim_in = 4;
    gamma.dim_out = 4;
    for (const auto& [k, ops] : g.branches) {
      ComplexMatrix gi = kron(ops.front(), ComplexMatrix::identity(2));
      if (pos == 0) gi = oracle::naive_matmul(gi, subsystem_permutation({2, 2}, {1, 0}));
      gamma.branches[k] = {oracle::naive_matmul(oracle::random_unitary(4, rng), gi)};
    }
    const OnsDecomposition ons = ons_decompose(gamma, {2, 2}, pos);
    for (const auto& [k, ops] : gamma.branches) {
      const ComplexMatrix rebuilt = oracle::naive_matmul(
          ons.unitaries.at(k),
          oracle::naive_matmul(kron(ons.g.branches.at(k).front(), ComplexMatrix::identity(2)),
                               ons.alignment));
      worst_ons = std::max(worst_ons, max_abs_diff(rebuilt, ops.front()));
    }
  }
  return {missed == 0 && worst_f <= kFactorTol && accepted_generic == 0 && worst_ons <= kOnsTol,
          std::to_string(50 - missed) + "/50 detected" + fmt(" (F error %.2e), ", worst_f) +
              std::to_string(50 - accepted_generic) + "/50 rejected" +
              fmt(", reconstruction error %.2e", worst_ons)};
}

Outcome fourier_suite(std::uint64_t seed) {
  oracle::Rng rng(seed + 3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  int checked = 0;
  int disagreements = 0;
  int constant_cases = 0;
  double walsh_err = 0.0;
  for (int m = 1; m <= 4; ++m) {
    const std::size_t size = std::size_t{1} << m;
    for (const auto& elems : oracle::all_subspaces(m)) {
      F2Subspace v(m);
      for (std::uint64_t e : elems) v.insert(F2Vector(m, e));
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> f(size);
        for (auto& x : f) x = unif(rng);
        if (trial % 2 == 0) {
          // Average over cosets to get a coset-constant function.
          std::vector<double> avg(size, 0.0);
          for (std::size_t x = 0; x < size; ++x) {
            for (std::uint64_t e : elems) avg[x] += f[x ^ e];
            avg[x] /= static_cast<double>(elems.size());
          }
          f = avg;
        }
        const std::vector<double> ft = walsh_transform(f);
        const std::vector<double> ref = oracle::brute_walsh(f);
        for (std::size_t j = 0; j < size; ++j) walsh_err = std::max(walsh_err, std::abs(ft[j] - ref[j]));
        bool contained = true;
        for (std::size_t j = 0; j < size; ++j) {
          if (std::abs(ref[j]) <= kFourierTol * static_cast<double>(size)) continue;
          for (std::uint64_t e : elems) {
            if (__builtin_popcountll(e & j) & 1) contained = false;
          }
        }
        const bool constant = coset_constant(f, v, kFourierTol);
        constant_cases += constant;
        if (constant != contained) ++disagreements;
        ++checked;
      }
    }
  }
  return {disagreements == 0 && walsh_err <= kFourierTol * 16,
          std::to_string(checked) + " functions, " + std::to_string(constant_cases) +
              " coset-constant, " + std::to_string(disagreements) + " disagreements" +
              fmt(", transform error %.1e", walsh_err)};
}

Outcome wodi_suite(std::uint64_t seed) {
  oracle::Rng rng(seed + 4);
  double worst = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const auto split = oracle::random_split_instrument(2, 2, 4, rng);
    try {
      const Circuit c = synth_wodi(split.inst, 3, split.first);
      const RunResult r = run(c);
      const double d = oracle::superop_distance(r.instrument, split.inst);
      worst = std::max(worst, d);
      if (!instruments_equal(r.instrument, split.inst, kWodiTol) || r.peak_width > 3) ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  return {failures == 0 && worst <= kWodiTol,
          std::to_string(25 - failures) + "/25 realized" + fmt(", max deviation %.2e", worst)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::uint64_t seed = 20260214;
  app.add_option("--seed", seed, "fixture seed (default 20260214)");
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"table1_reproduction", table1_reproduction},
      {"lower_bound_certificates", lower_bounds},
      {"end_to_end_five_one_three",
       [] { return end_to_end("five_one_three", 4, kFiveQubitSeconds, false); }},
      {"end_to_end_shor", [] { return end_to_end("shor", 3, kShorSeconds, true); }},
      {"binary_tree_povm_suite", [&] { return tree_suite(seed); }},
      {"minimal_output_dimension_suite", [&] { return min_output_suite(seed); }},
      {"no_signaling_suite", [&] { return no_signaling_suite(seed); }},
      {"fourier_support_equivalence", [&] { return fourier_suite(seed); }},
      {"half_cut_suite", [&] { return wodi_suite(seed); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %-32s %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
