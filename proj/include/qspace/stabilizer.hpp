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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qspace/f2.hpp"
#include "qspace/instruments.hpp"
#include "qspace/matrix.hpp"

namespace qspace {

/**
 * sign * i^{x.z} * prod_q X^{x_q} Z^{z_q}, which is hermitian and squares to
 * the identity. Qubit 0 is the most significant bit of a basis index.
 */
class PauliString {
 public:
  PauliString() = default;
  PauliString(F2Vector x, F2Vector z, int sign = 1);
  // "XIZY"; throws on any other character.
  static PauliString parse(std::string_view text, int sign = 1);

  int n() const { return x_.size(); }
  const F2Vector& x() const { return x_; }
  const F2Vector& z() const { return z_; }
  int sign() const { return sign_; }
  std::string to_string() const;

  bool commutes_with(const PauliString& other) const;
  // Row of the check matrix: (x_1..x_n, z_1..z_n).
  F2Vector symplectic_row() const;

  // P|b> = phase(b) |b xor flip_mask>, with basis indices as integers.
  std::uint64_t flip_mask() const;
  Complex phase(std::uint64_t basis_index) const;
  // P applied to a state vector of length 2^n.
  std::vector<Complex> apply(const std::vector<Complex>& v) const;
  ComplexMatrix dense() const;

 private:
  F2Vector x_, z_;
  int sign_ = 1;
};

// Validation failure, carrying the offending generator index when there is
// one.
class CodeError : public std::invalid_argument {
 public:
  CodeError(const std::string& what, int generator = -1)
      : std::invalid_argument(what), generator_(generator) {}
  int generator() const { return generator_; }

 private:
  int generator_;
};

class StabilizerCode {
 public:
  // Validates commutation, independence and Tr[P_0] = 2^k.
  StabilizerCode(std::string name, int n, int k, std::vector<PauliString> generators);

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int r() const { return n_ - k_; }
  const std::vector<PauliString>& generators() const { return generators_; }

  // (n-k) x 2n, columns (x_1..x_n, z_1..z_n).
  F2Matrix check_matrix() const;
  // Column x_q of the check matrix as a vector over the generators (0-based q).
  F2Vector x_column(int q) const;
  F2Vector z_column(int q) const;

 private:
  std::string name_;
  int n_, k_;
  std::vector<PauliString> generators_;
};

// {"name", "n", "k", "generators": [..], "signs": [..]}
StabilizerCode parse_code(std::string_view json_text);
std::string code_to_json(const StabilizerCode& code);

// 2^{-(n-k)} sum_r (-1)^{s.r} g^r, with s_i the character i of the label.
ComplexMatrix syndrome_projector(const StabilizerCode& code, const F2Vector& s);

// U = U_enc^dagger with U g_i U^dagger = Z_i (x) I; row s 2^k + j of U is
// <s, j| in the syndrome (x) logical basis.
ComplexMatrix encoding_unitary(const StabilizerCode& code);

// One Kraus (<s| (x) I) U per syndrome, labelled by s as a bit string.
Instrument distillation_instrument(const StabilizerCode& code);
Instrument distillation_instrument(const StabilizerCode& code, const ComplexMatrix& u);

// Built-in codes: "five_one_three", "steane", "shor".
StabilizerCode builtin_code(std::string_view name);
std::vector<std::string> builtin_code_names();

}  // namespace qspace
