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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qspace/label.hpp"
#include "qspace/linalg.hpp"

namespace qspace {

/**
 * A POVM whose elements are held as Gram roots E_k = R_k^dagger R_k.
 *
 * The root form keeps rank-deficient elements on large spaces cheap: a
 * syndrome projector on nine qubits is a 2 x 512 root instead of a 512 x 512
 * matrix. Elements supplied densely keep their dense form as well, so reads
 * of those are exact.
 */
class Povm {
 public:
  Povm() = default;
  // Validates hermiticity, positivity and completeness.
  Povm(std::size_t dim, const std::map<OutcomeLabel, ComplexMatrix>& elements);
  static Povm from_roots(std::size_t dim, std::map<OutcomeLabel, ComplexMatrix> roots,
                         bool validate = true);
  // Roots plus dense forms that were already computed for some elements.
  static Povm from_parts(std::size_t dim, std::map<OutcomeLabel, ComplexMatrix> roots,
                         std::map<OutcomeLabel, ComplexMatrix> dense);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  std::vector<OutcomeLabel> labels() const;
  bool contains(const OutcomeLabel& k) const { return elements_.count(k) > 0; }

  ComplexMatrix element(const OutcomeLabel& k) const;
  const ComplexMatrix& root(const OutcomeLabel& k) const;
  int rank(const OutcomeLabel& k) const;

  // E_k^2 = E_k for every k, tested on the smaller Gram matrix of the root.
  bool is_projective(double tol = kOperatorTol) const;
  // max |sum_k E_k - I|
  double completeness_error() const;

  const std::set<OutcomeLabel>& padded() const { return padded_; }
  void add_padding(const OutcomeLabel& k);

 private:
  struct Element {
    ComplexMatrix root;
    std::optional<ComplexMatrix> dense;
  };
  std::size_t dim_ = 0;
  std::map<OutcomeLabel, Element> elements_;
  std::set<OutcomeLabel> padded_;
};

struct Instrument {
  std::size_t dim_in = 1;
  std::size_t dim_out = 1;
  std::map<OutcomeLabel, std::vector<ComplexMatrix>> branches;
  // Zero-probability outcomes added to reach a required outcome count.
  std::set<OutcomeLabel> padded;

  std::vector<OutcomeLabel> labels() const;
  bool is_rank1() const;
  // max |sum K^dagger K - I|
  double completeness_error() const;
  // Throws unless Kraus shapes match and completeness holds within tol.
  void validate(double tol = kOperatorTol) const;
};

// Column-stochastic 0/1 matrix, stored as the coarse label of each fine label.
class GroupingMatrix {
 public:
  GroupingMatrix() = default;
  GroupingMatrix(std::vector<OutcomeLabel> coarse_labels,
                 std::map<OutcomeLabel, OutcomeLabel> coarse_of);

  int entry(const OutcomeLabel& coarse, const OutcomeLabel& fine) const;
  const OutcomeLabel& coarse_of(const OutcomeLabel& fine) const;
  // Fine labels grouped into coarse, in label order.
  std::vector<OutcomeLabel> block(const OutcomeLabel& coarse) const;
  const std::vector<OutcomeLabel>& coarse_labels() const { return coarse_; }
  const std::map<OutcomeLabel, OutcomeLabel>& mapping() const { return map_; }

  friend bool operator==(const GroupingMatrix&, const GroupingMatrix&) = default;

 private:
  std::vector<OutcomeLabel> coarse_;
  std::map<OutcomeLabel, OutcomeLabel> map_;
};

Povm associated_povm(const Instrument& inst);
Instrument luders(const Povm& e);

enum class OutputShape { kMinimal, kQubits };

// One Kraus J_k sqrt(E_k) per outcome into the smallest space that fits the
// largest element rank, rounded up to a power of two for kQubits.
Instrument rank1_min_output(const Povm& e, OutputShape shape = OutputShape::kMinimal);
// Same construction into a space of the given dimension (>= every rank).
Instrument rank1_dilation(const Povm& e, std::size_t out_dim);

std::optional<GroupingMatrix> projective_grouping(const Povm& coarse, const Povm& fine);

// F_k = Tr_B(E_k) / d_B in root form, without any factorization check.
Povm partial_average(const Povm& e, const std::vector<int>& dims, int factor_index);

// {F_k} if every E_k equals F_k (x) I_B at factor_index within 1e-8.
std::optional<Povm> check_factorization(const Povm& e, const std::vector<int>& dims,
                                        int factor_index);

std::map<OutcomeLabel, Instrument> compose_postprocessing(const Instrument& target,
                                                          const Instrument& first,
                                                          const GroupingMatrix& nu);

struct OnsDecomposition {
  Instrument g;
  std::map<OutcomeLabel, ComplexMatrix> unitaries;
  // Permutation of the input factors that moves factor B to the end.
  ComplexMatrix alignment;
};

// gamma_k = U_k (G_k (x) I_B) alignment for every outcome.
OnsDecomposition ons_decompose(const Instrument& gamma, const std::vector<int>& dims,
                               int factor_index);

struct EqualityReport {
  bool equal = false;
  double max_deviation = 0.0;
  std::map<OutcomeLabel, double> deviation;
  std::string message;
};

// Per-outcome Choi comparison after dropping Kraus operators with Frobenius
// norm at most tol.
EqualityReport compare_instruments(const Instrument& a, const Instrument& b, double tol);
bool instruments_equal(const Instrument& a, const Instrument& b, double tol);

// sum_i vec(K_i) vec(K_i)^dagger with row-major vec.
ComplexMatrix choi_matrix(const std::vector<ComplexMatrix>& kraus);

}  // namespace qspace
