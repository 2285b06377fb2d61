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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qspace/json_io.hpp"
#include "qspace/simulator.hpp"
#include "qspace/synthesis.hpp"

namespace qspace::cli {

namespace {

// Thrown for anything the user handed us that we cannot use.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text << '\n';
}

struct CodeSource {
  std::string file;
  std::string builtin;

  void attach(CLI::App* cmd) {
    auto* f = cmd->add_option("--code", file, "stabilizer code JSON file");
    auto* b = cmd->add_option("--builtin", builtin, "registry code: five_one_three, steane, shor");
    f->excludes(b);
  }

  StabilizerCode load() const {
    try {
      if (!file.empty()) return parse_code(read_file(file));
      if (!builtin.empty()) return builtin_code(builtin);
    } catch (const CodeError& e) {
      std::string msg = e.what();
      if (e.generator() >= 0) msg += " (generator " + std::to_string(e.generator()) + ")";
      throw InputError(msg);
    }
    throw InputError("one of --code or --builtin is required");
  }
};

int analyze_cmd(const CodeSource& src, const std::string& output, std::ostream& out) {
  const AnalysisReport r = analyze(src.load());
  out << r.code << ": n=" << r.n << " k=" << r.k << " T*=" << r.t_star
      << " optimal_qubits=" << r.optimal_qubits << " ordering=(";
  for (std::size_t i = 0; i < r.ordering.size(); ++i) out << (i ? "," : "") << r.ordering[i];
  out << ") next_nodes=" << r.next_nodes << '\n';
  for (const auto& c : r.chain) {
    out << "  t=" << c.t << " A_t=" << c.factorized_qubit << " outcomes=" << c.outcomes
        << " rank=" << c.element_rank << '\n';
  }
  const std::string text = report_to_json(r).dump(2);
  if (!output.empty()) write_file(output, text);
  if (!r.certificate_ok) {
    out << "certificate check failed: " << r.failure << '\n';
    return kCertificateFailure;
  }
  out << "certificate ok\n";
  return kOk;
}

int synthesize_cmd(const CodeSource& src, const std::string& path, std::ostream& out) {
  const StabilizerCode code = src.load();
  DistillationSynthesis s;
  try {
    s = synth_distillation(code);
  } catch (const SynthesisError& e) {
    out << "synthesis failed: " << e.what() << '\n';
    return kCertificateFailure;
  }
  const std::string text = write_circuit(s.circuit);
  if (path.empty()) {
    out << text << '\n';
  } else {
    write_file(path, text);
    out << code.name() << ": wrote " << s.circuit.steps.size() << " steps on m=" << s.circuit.m
        << " slots (width " << audit_width(s.circuit) << ", " << s.circuit.load_count()
        << " loads) to " << path << '\n';
  }
  return kOk;
}

int verify_cmd(const CodeSource& src, const std::string& path, double tol, std::ostream& out) {
  const StabilizerCode code = src.load();
  Circuit c;
  try {
    c = read_circuit(read_file(path));
    check_circuit(c);
  } catch (const FormatError& e) {
    throw InputError(e.what());
  } catch (const CircuitError& e) {
    throw InputError(e.what());
  }
  const Instrument target = distillation_instrument(code, encoding_unitary(code));
  RunResult r;
  try {
    r = run(c);
  } catch (const CircuitError& e) {
    out << "simulation failed: " << e.what() << '\n';
    return kVerificationFailure;
  }
  const EqualityReport rep = compare_instruments(r.instrument, target, tol);
  for (const auto& [k, d] : rep.deviation) {
    out << "  outcome " << (k.empty() ? "-" : k.bits()) << " max deviation " << std::scientific
        << std::setprecision(3) << d << std::defaultfloat << '\n';
  }
  out << "peak width " << r.peak_width << ", completeness error " << std::scientific
      << std::setprecision(3) << r.instrument.completeness_error() << std::defaultfloat << '\n';
  if (!rep.equal) {
    out << "FAIL: " << rep.message << " (tol " << tol << ")\n";
    return kVerificationFailure;
  }
  out << "PASS (tol " << tol << ")\n";
  return kOk;
}

int table1_cmd(bool as_json, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto rows = table1();
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool all = true;
  for (const auto& row : rows) all = all && row.match && row.report.certificate_ok;
  if (as_json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : rows) {
      j.push_back({{"code", row.report.code},
                   {"n", row.report.n},
                   {"optimal_qubits", row.report.optimal_qubits},
                   {"expected", row.expected},
                   {"T_star", row.report.t_star},
                   {"certificate_ok", row.report.certificate_ok},
                   {"seconds", row.report.seconds}});
    }
    out << nlohmann::json{{"rows", j}, {"match", all}, {"seconds", total}}.dump(2) << '\n';
  } else {
    out << std::left << std::setw(16) << "code" << std::setw(4) << "n" << std::setw(6) << "T*"
        << std::setw(10) << "qubits" << "expected\n";
    for (const auto& row : rows) {
      out << std::setw(16) << row.report.code << std::setw(4) << row.report.n << std::setw(6)
          << row.report.t_star << std::setw(10) << row.report.optimal_qubits << row.expected
          << (row.match ? "" : "  MISMATCH") << '\n';
    }
    out << "total " << std::fixed << std::setprecision(2) << total << " s\n" << std::defaultfloat;
  }
  return all ? kOk : kVerificationFailure;
}

int simulate_cmd(const std::string& path, const std::string& output, bool serial,
                 std::ostream& out) {
  Circuit c;
  try {
    c = read_circuit(read_file(path));
    check_circuit(c);
  } catch (const FormatError& e) {
    throw InputError(e.what());
  } catch (const CircuitError& e) {
    throw InputError(e.what());
  }
  SimOptions options;
  options.parallel = !serial;
  RunResult r;
  try {
    r = run(c, options);
  } catch (const CircuitError& e) {
    out << "simulation failed: " << e.what() << '\n';
    return kVerificationFailure;
  }
  const std::string text = run_result_to_json(r).dump();
  if (output.empty()) {
    out << text << '\n';
  } else {
    write_file(output, text);
    out << r.instrument.branches.size() << " outcomes, peak width " << r.peak_width << '\n';
  }
  return kOk;
}

}  // namespace

double default_tolerance() {
  if (const char* env = std::getenv("QSPACE_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
  }
  return kDefaultTol;
}

const std::map<std::string, int>& expected_table() {
  static const std::map<std::string, int> table = {
      {"five_one_three", 4}, {"steane", 4}, {"shor", 3}};
  return table;
}

std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  for (const auto& name : builtin_code_names()) {
    Table1Row row;
    row.report = analyze(builtin_code(name));
    row.expected = expected_table().at(name);
    row.match = row.report.optimal_qubits == row.expected;
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qspace: space-optimal circuits for delayed-input instruments"};
  app.require_subcommand(1);

  CodeSource analyze_src, synth_src, verify_src;
  std::string report_path, circuit_out, circuit_in, sim_in, sim_out;
  double tol = default_tolerance();
  bool as_json = false;
  bool serial = false;

  auto* analyze = app.add_subcommand("analyze", "optimal qubit count and chain certificate");
  analyze_src.attach(analyze);
  analyze->add_option("--output", report_path, "write the report JSON here");

  auto* synth = app.add_subcommand("synthesize", "staircase circuit for the distillation");
  synth_src.attach(synth);
  synth->add_option("--out-circuit", circuit_out, "circuit JSON path (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "simulate a circuit and compare with the target");
  verify_src.attach(verify);
  verify->add_option("--circuit", circuit_in, "circuit JSON")->required();
  verify->add_option("--tol", tol, "Choi tolerance (default 1e-8 or QSPACE_TOL)");

  auto* t1 = app.add_subcommand("table1", "optimal qubits for the registry codes");
  t1->add_flag("--json", as_json, "machine-readable output");

  auto* simulate = app.add_subcommand("simulate", "run a circuit and print the instrument");
  simulate->add_option("--circuit", sim_in, "circuit JSON")->required();
  simulate->add_option("--output", sim_out, "result JSON path (stdout if omitted)");
  simulate->add_flag("--serial", serial, "serial reference path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze) return analyze_cmd(analyze_src, report_path, out);
    if (*synth) return synthesize_cmd(synth_src, circuit_out, out);
    if (*verify) return verify_cmd(verify_src, circuit_in, tol, out);
    if (*t1) return table1_cmd(as_json, out);
    if (*simulate) return simulate_cmd(sim_in, sim_out, serial, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace qspace::cli
