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
#include <functional>
#include <numeric>

#include "oracles.hpp"
#include "qspace/solver.hpp"

using namespace qspace;

namespace {

std::vector<StabilizerCode> small_codes() {
  auto make = [](const char* name, int n, int k, std::initializer_list<const char*> gens) {
    std::vector<PauliString> ps;
    for (const char* g : gens) ps.push_back(PauliString::parse(g));
    return StabilizerCode(name, n, k, std::move(ps));
  };
  return {
      make("zz", 2, 1, {"ZZ"}),
      make("rep3", 3, 1, {"ZZI", "IZZ"}),
      make("bell", 2, 0, {"XX", "ZZ"}),
      make("partial", 4, 2, {"ZZII", "IIXX"}),
      make("idle", 3, 2, {"ZII"}),
      make("four_two_two", 4, 2, {"XXXX", "ZZZZ"}),
      StabilizerCode("free", 2, 2, {}),
  };
}

}  // namespace

TEST_CASE("registry codes reach the known delay") {
  const std::pair<const char*, int> rows[] = {{"five_one_three", 1}, {"steane", 3}, {"shor", 6}};
  for (const auto& [name, t_star] : rows) {
    const DelayResult d = max_delay(builtin_code(name));
    CHECK(d.t_star == t_star);
    CHECK(d.ordering.size() == t_star);
    CHECK_FALSE(d.next.feasible);
  }
}

TEST_CASE("max_delay agrees with exhaustive enumeration") {
  std::vector<StabilizerCode> codes = small_codes();
  for (const auto& name : builtin_code_names()) codes.push_back(builtin_code(name));
  for (const auto& code : codes) {
    CAPTURE(code.name());
    const DelayResult d = max_delay(code);
    const oracle::BruteDelay brute = oracle::brute_max_delay(code);
    CHECK(d.t_star == brute.t_star);
    CHECK(d.ordering.qubits == brute.ordering);
  }
}

TEST_CASE("span bounds match the oracle on every short ordering") {
  for (const auto& name : {"five_one_three", "steane"}) {
    const StabilizerCode code = builtin_code(name);
    std::vector<int> qubits(static_cast<std::size_t>(code.n()));
    std::iota(qubits.begin(), qubits.end(), 1);
    for (int a = 1; a <= code.n(); ++a) {
      for (int b = 1; b <= code.n(); ++b) {
        if (a == b) continue;
        for (const std::vector<int>& ord : {std::vector<int>{a}, std::vector<int>{a, b}}) {
          CHECK(satisfies_span_bounds(code, Ordering{ord}) == oracle::brute_span_bounds(code, ord));
        }
      }
    }
  }
}

TEST_CASE("enumerate_orderings lists exactly the feasible orderings") {
  const StabilizerCode code = builtin_code("steane");
  for (int T = 1; T <= 3; ++T) {
    const auto all = enumerate_orderings(code, T);
    std::size_t brute = 0;
    std::vector<int> ord(static_cast<std::size_t>(T));
    // Count feasible tuples directly.
    std::function<void(int)> rec = [&](int depth) {
      if (depth == T) {
        brute += oracle::brute_span_bounds(code, ord);
        return;
      }
      for (int q = 1; q <= code.n(); ++q) {
        if (std::find(ord.begin(), ord.begin() + depth, q) != ord.begin() + depth) continue;
        ord[static_cast<std::size_t>(depth)] = q;
        rec(depth + 1);
      }
    };
    rec(0);
    CHECK(all.size() == brute);
    for (const auto& o : all) CHECK(satisfies_span_bounds(code, o));
    const auto first = find_ordering(code, T);
    REQUIRE(first);
    CHECK(all.front() == *first);
  }
}

TEST_CASE("parallel search matches the serial search") {
  for (const auto& name : builtin_code_names()) {
    const StabilizerCode code = builtin_code(name);
    for (int T = 1; T <= code.n() - code.k(); ++T) {
      SearchStats s, p;
      const auto a = find_ordering(code, T, {false}, &s);
      const auto b = find_ordering(code, T, {true}, &p);
      CHECK(a == b);
      CHECK(s.feasible == p.feasible);
      if (!a) CHECK(s.nodes == p.nodes);
    }
  }
}

TEST_CASE("chain certificates verify and name broken conditions") {
  for (const auto& name : builtin_code_names()) {
    const StabilizerCode code = builtin_code(name);
    const DelayResult d = max_delay(code);
    const Instrument target = distillation_instrument(code);
    const ChainCertificate cert = build_chain(code, d.ordering, target);
    CHECK(cert.T == d.t_star);
    for (int t = 1; t <= cert.T; ++t) {
      const Povm& p = cert.measurements[static_cast<std::size_t>(t - 1)];
      CHECK(p.size() == (std::size_t{1} << t));
      CHECK(p.is_projective());
      for (const auto& k : p.labels()) CHECK(p.rank(k) == (1 << (code.n() - t)));
      CHECK(cert.subspaces[static_cast<std::size_t>(t - 1)].dim() == code.r() - t);
    }
    const ChainCheck check = check_chain(code, cert, target);
    CHECK_MESSAGE(check.ok, check.failure);
    CHECK(verify_chain(code, cert));
  }

  // Claiming a different factorized qubit breaks no-signaling for some choice.
  const StabilizerCode code = builtin_code("steane");
  const DelayResult d = max_delay(code);
  const Instrument target = distillation_instrument(code);
  const ChainCertificate good = build_chain(code, d.ordering, target);
  bool named = false;
  for (int q = 1; q <= code.n(); ++q) {
    if (q == d.ordering.at(1)) continue;
    ChainCertificate cert = good;
    cert.ordering.qubits[0] = q;
    const ChainCheck check = check_chain(code, cert, target);
    if (!check.ok) named = named || check.failure.find("no-signaling") != std::string::npos;
  }
  CHECK(named);

  ChainCertificate short_cert = good;
  short_cert.measurements.pop_back();
  CHECK_FALSE(check_chain(code, short_cert, target).ok);

  CHECK_THROWS_AS(build_chain(code, Ordering{{1, 2, 3, 4}}), std::invalid_argument);
}

TEST_CASE("scan vectors are independent") {
  const StabilizerCode code = builtin_code("shor");
  const DelayResult d = max_delay(code);
  const auto u = scan_vectors(code, d.ordering);
  CHECK(static_cast<int>(u.size()) == code.r());
  CHECK(span(u, code.r()).dim() == code.r());
}

TEST_CASE("codes with nothing to delay") {
  const StabilizerCode free("free", 3, 3, {});
  const DelayResult d = max_delay(free);
  CHECK(d.t_star == 0);
  CHECK(d.ordering.size() == 0);
  const StabilizerCode zz("zz", 2, 1, {PauliString::parse("ZZ")});
  CHECK(max_delay(zz).t_star == 0);
}
