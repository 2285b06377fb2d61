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

#include <array>
#include <string>
#include <vector>

#include "qspace/stabilizer.hpp"

namespace qspace {

namespace {

struct Entry {
  const char* name;
  int n, k;
  std::vector<const char*> generators;
};

const std::array<Entry, 3>& registry() {
  static const std::array<Entry, 3> codes = {{
      {"five_one_three", 5, 1, {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}},
      {"steane", 7, 1,
       {"IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"}},
      {"shor", 9, 1,
       {"ZZIIIIIII", "IZZIIIIII", "IIIZZIIII", "IIIIZZIII", "IIIIIIZZI", "IIIIIIIZZ",
        "XXXXXXIII", "IIIXXXXXX"}},
  }};
  return codes;
}

}  // namespace

StabilizerCode builtin_code(std::string_view name) {
  for (const auto& e : registry()) {
    if (name != e.name) continue;
    std::vector<PauliString> gens;
    for (const char* g : e.generators) gens.push_back(PauliString::parse(g));
    return StabilizerCode(e.name, e.n, e.k, std::move(gens));
  }
  throw CodeError("unknown built-in code '" + std::string(name) + "'");
}

std::vector<std::string> builtin_code_names() {
  std::vector<std::string> names;
  for (const auto& e : registry()) names.emplace_back(e.name);
  return names;
}

}  // namespace qspace
