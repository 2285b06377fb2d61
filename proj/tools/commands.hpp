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

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "qspace/report.hpp"

namespace qspace::cli {

enum ExitCode : int {
  kOk = 0,
  kCertificateFailure = 2,
  kVerificationFailure = 3,
  kInputError = 4,
};

inline constexpr double kDefaultTol = 1e-8;

// kDefaultTol, or QSPACE_TOL when it is set to a positive number.
double default_tolerance();

// Optimal qubit counts for the registry codes.
const std::map<std::string, int>& expected_table();

struct Table1Row {
  AnalysisReport report;
  int expected = 0;
  bool match = false;
};

std::vector<Table1Row> table1();

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qspace::cli
