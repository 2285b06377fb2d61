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

#include "qspace/report.hpp"

#include <chrono>

namespace qspace {

using nlohmann::json;

AnalysisReport analyze(const StabilizerCode& code, const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  AnalysisReport r;
  r.code = code.name();
  r.n = code.n();
  r.k = code.k();
  const DelayResult delay = max_delay(code, options);
  r.t_star = delay.t_star;
  r.optimal_qubits = code.n() - delay.t_star;
  r.ordering = delay.ordering.qubits;
  r.next_nodes = delay.next.nodes;

  const Instrument target = distillation_instrument(code);
  const ChainCertificate cert = build_chain(code, delay.ordering, target);
  const ChainCheck check = check_chain(code, cert, target);
  r.certificate_ok = check.ok;
  r.failure = check.failure;
  for (int t = 1; t <= cert.T; ++t) {
    const Povm& p = cert.measurements[static_cast<std::size_t>(t - 1)];
    ChainLevel level;
    level.t = t;
    level.factorized_qubit = cert.ordering.at(t);
    level.outcomes = static_cast<int>(p.size());
    level.element_rank = p.rank(p.labels().front());
    level.coset_dim = cert.subspaces[static_cast<std::size_t>(t - 1)].dim();
    r.chain.push_back(level);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json report_to_json(const AnalysisReport& r) {
  json chain = json::array();
  for (const auto& c : r.chain) {
    chain.push_back({{"t", c.t},
                     {"factorized_qubit", c.factorized_qubit},
                     {"outcomes", c.outcomes},
                     {"element_rank", c.element_rank},
                     {"coset_dim", c.coset_dim}});
  }
  return {{"code", r.code},
          {"n", r.n},
          {"k", r.k},
          {"optimal_qubits", r.optimal_qubits},
          {"T_star", r.t_star},
          {"ordering", r.ordering},
          {"chain", std::move(chain)},
          {"next_nodes", r.next_nodes},
          {"certificate_ok", r.certificate_ok},
          {"failure", r.failure},
          {"seconds", r.seconds}};
}

AnalysisReport report_from_json(const json& j) {
  AnalysisReport r;
  r.code = j.at("code").get<std::string>();
  r.n = j.at("n").get<int>();
  r.k = j.at("k").get<int>();
  r.optimal_qubits = j.at("optimal_qubits").get<int>();
  r.t_star = j.at("T_star").get<int>();
  r.ordering = j.at("ordering").get<std::vector<int>>();
  for (const auto& c : j.at("chain")) {
    r.chain.push_back({c.at("t").get<int>(), c.at("factorized_qubit").get<int>(),
                       c.at("outcomes").get<int>(), c.at("element_rank").get<int>(),
                       c.at("coset_dim").get<int>()});
  }
  r.next_nodes = j.at("next_nodes").get<std::uint64_t>();
  r.certificate_ok = j.at("certificate_ok").get<bool>();
  r.failure = j.at("failure").get<std::string>();
  r.seconds = j.at("seconds").get<double>();
  return r;
}

}  // namespace qspace
