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

#include "qspace/instruments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qspace/kernels.hpp"

namespace qspace {

namespace {

ComplexMatrix vstack(const std::vector<ComplexMatrix>& parts, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) rows += p.rows();
  ComplexMatrix out(rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    out.set_block(r, 0, p);
    r += p.rows();
  }
  return out;
}

std::size_t product(const std::vector<int>& dims) {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

// For every index of a tensor product: the digit of one factor and the index
// within the remaining factors.
struct FactorSplit {
  std::vector<int> digit;
  std::vector<std::size_t> rest;
};

FactorSplit split_factor(const std::vector<int>& dims, int factor_index) {
  if (factor_index < 0 || factor_index >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("factor index out of range");
  }
  const std::size_t total = product(dims);
  FactorSplit s;
  s.digit.resize(total);
  s.rest.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t x = i, rest = 0, scale = 1;
    for (int q = static_cast<int>(dims.size()) - 1; q >= 0; --q) {
      const std::size_t dq = x % dims[q];
      x /= dims[q];
      if (q == factor_index) {
        s.digit[i] = static_cast<int>(dq);
      } else {
        rest += dq * scale;
        scale *= dims[q];
      }
    }
    s.rest[i] = rest;
  }
  return s;
}

double scaled_tol(const ComplexMatrix& m) { return kOperatorTol * std::max(1.0, m.max_abs()); }

}  // namespace

// ---------------------------------------------------------------------------
// Povm

Povm::Povm(std::size_t dim, const std::map<OutcomeLabel, ComplexMatrix>& elements) : dim_(dim) {
  for (const auto& [k, e] : elements) {
    if (e.rows() != dim || e.cols() != dim) {
      throw std::invalid_argument("POVM element " + k.bits() + " has the wrong shape");
    }
    HermitianEig eig = hermitian_eig(e, kOperatorTol);
    const double lmax = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
    const double scale = std::max(std::abs(lmax), std::abs(eig.eigenvalues.front()));
    if (eig.eigenvalues.front() < -std::max(kRankCutoff * scale, 1e-12)) {
      throw std::invalid_argument("POVM element " + k.bits() + " is not positive");
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = eig.eigenvalues.size(); i-- > 0;) {
      if (eig.eigenvalues[i] > kRankCutoff * lmax && eig.eigenvalues[i] > 0) keep.push_back(i);
    }
    ComplexMatrix root(keep.size(), dim);
    for (std::size_t r = 0; r < keep.size(); ++r) {
      const double s = std::sqrt(eig.eigenvalues[keep[r]]);
      for (std::size_t c = 0; c < dim; ++c) root(r, c) = s * std::conj(eig.vectors(c, keep[r]));
    }
    elements_[k] = Element{std::move(root), e};
  }
  if (completeness_error() > kOperatorTol) {
    throw std::invalid_argument("POVM elements do not sum to the identity");
  }
}

Povm Povm::from_roots(std::size_t dim, std::map<OutcomeLabel, ComplexMatrix> roots,
                      bool validate) {
  Povm p;
  p.dim_ = dim;
  for (auto& [k, r] : roots) {
    if (r.cols() != dim) {
      throw std::invalid_argument("POVM root " + k.bits() + " has the wrong width");
    }
    p.elements_[k] = Element{std::move(r), std::nullopt};
  }
  if (validate && p.completeness_error() > kOperatorTol) {
    throw std::invalid_argument("POVM elements do not sum to the identity");
  }
  return p;
}

Povm Povm::from_parts(std::size_t dim, std::map<OutcomeLabel, ComplexMatrix> roots,
                      std::map<OutcomeLabel, ComplexMatrix> dense) {
  Povm p = from_roots(dim, std::move(roots), false);
  for (auto& [k, d] : dense) p.elements_.at(k).dense = std::move(d);
  return p;
}

std::vector<OutcomeLabel> Povm::labels() const {
  std::vector<OutcomeLabel> out;
  for (const auto& [k, e] : elements_) out.push_back(k);
  return out;
}

ComplexMatrix Povm::element(const OutcomeLabel& k) const {
  const Element& e = elements_.at(k);
  if (e.dense) return *e.dense;
  return kernels::adjoint_matmul(e.root, e.root);
}

const ComplexMatrix& Povm::root(const OutcomeLabel& k) const { return elements_.at(k).root; }

int Povm::rank(const OutcomeLabel& k) const {
  return static_cast<int>(minimal_root(elements_.at(k).root).rows());
}

bool Povm::is_projective(double tol) const {
  for (const auto& [k, e] : elements_) {
    ComplexMatrix g;
    if (e.dense) {
      g = *e.dense;
    } else if (e.root.rows() <= e.root.cols()) {
      g = kernels::matmul_adjoint(e.root, e.root);
    } else {
      g = kernels::adjoint_matmul(e.root, e.root);
    }
    if (max_abs_diff(kernels::matmul(g, g), g) > tol) return false;
  }
  return true;
}

double Povm::completeness_error() const {
  ComplexMatrix sum(dim_, dim_);
  for (const auto& [k, e] : elements_) {
    if (e.dense) {
      sum += *e.dense;
    } else {
      sum += kernels::adjoint_matmul(e.root, e.root);
    }
  }
  return max_abs_diff(sum, ComplexMatrix::identity(dim_));
}

void Povm::add_padding(const OutcomeLabel& k) {
  if (elements_.count(k)) throw std::invalid_argument("padding label already present");
  elements_[k] = Element{ComplexMatrix(0, dim_), ComplexMatrix(dim_, dim_)};
  padded_.insert(k);
}

// ---------------------------------------------------------------------------
// Instrument

std::vector<OutcomeLabel> Instrument::labels() const {
  std::vector<OutcomeLabel> out;
  for (const auto& [k, b] : branches) out.push_back(k);
  return out;
}

bool Instrument::is_rank1() const {
  return std::all_of(branches.begin(), branches.end(),
                     [](const auto& kv) { return kv.second.size() == 1; });
}

double Instrument::completeness_error() const {
  ComplexMatrix sum(dim_in, dim_in);
  for (const auto& [k, kraus] : branches) {
    for (const auto& op : kraus) sum += kernels::adjoint_matmul(op, op);
  }
  return max_abs_diff(sum, ComplexMatrix::identity(dim_in));
}

void Instrument::validate(double tol) const {
  for (const auto& [k, kraus] : branches) {
    for (const auto& op : kraus) {
      if (op.rows() != dim_out || op.cols() != dim_in) {
        throw std::invalid_argument("Kraus operator of outcome " + k.bits() +
                                    " has the wrong shape");
      }
    }
  }
  if (completeness_error() > tol) {
    throw std::invalid_argument("instrument is not trace preserving");
  }
}

// ---------------------------------------------------------------------------
// GroupingMatrix

GroupingMatrix::GroupingMatrix(std::vector<OutcomeLabel> coarse_labels,
                               std::map<OutcomeLabel, OutcomeLabel> coarse_of)
    : coarse_(std::move(coarse_labels)), map_(std::move(coarse_of)) {
  for (const auto& [fine, coarse] : map_) {
    if (std::find(coarse_.begin(), coarse_.end(), coarse) == coarse_.end()) {
      throw std::invalid_argument("grouping refers to an unknown coarse label");
    }
  }
}

int GroupingMatrix::entry(const OutcomeLabel& coarse, const OutcomeLabel& fine) const {
  return map_.at(fine) == coarse ? 1 : 0;
}

const OutcomeLabel& GroupingMatrix::coarse_of(const OutcomeLabel& fine) const {
  return map_.at(fine);
}

std::vector<OutcomeLabel> GroupingMatrix::block(const OutcomeLabel& coarse) const {
  std::vector<OutcomeLabel> out;
  for (const auto& [fine, c] : map_) {
    if (c == coarse) out.push_back(fine);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constructions

Povm associated_povm(const Instrument& inst) {
  std::map<OutcomeLabel, ComplexMatrix> roots;
  for (const auto& [k, kraus] : inst.branches) roots[k] = vstack(kraus, inst.dim_in);
  Povm p = Povm::from_roots(inst.dim_in, std::move(roots), false);
  return p;
}

Instrument luders(const Povm& e) {
  Instrument out;
  out.dim_in = out.dim_out = e.dim();
  for (const auto& k : e.labels()) {
    const ComplexMatrix& r = e.root(k);
    ComplexMatrix s;
    if (r.rows() < r.cols()) {
      // sqrt(R^dagger R) = R^dagger (R R^dagger)^{-1/2} R
      ComplexMatrix mid = pinv_sqrt_psd(kernels::matmul_adjoint(r, r));
      s = kernels::adjoint_matmul(r, kernels::matmul(mid, r));
    } else {
      s = sqrt_psd(e.element(k));
    }
    out.branches[k] = {std::move(s)};
  }
  out.padded = e.padded();
  return out;
}

Instrument rank1_dilation(const Povm& e, std::size_t out_dim) {
  Instrument out;
  out.dim_in = e.dim();
  out.dim_out = out_dim;
  for (const auto& k : e.labels()) {
    ComplexMatrix m = minimal_root(e.root(k));
    if (m.rows() > out_dim) {
      throw std::invalid_argument("rank of outcome " + k.bits() + " exceeds the output dimension");
    }
    ComplexMatrix l(out_dim, e.dim());
    l.set_block(0, 0, m);
    out.branches[k] = {std::move(l)};
  }
  out.padded = e.padded();
  return out;
}

Instrument rank1_min_output(const Povm& e, OutputShape shape) {
  std::size_t r = 1;
  for (const auto& k : e.labels()) r = std::max(r, static_cast<std::size_t>(e.rank(k)));
  if (shape == OutputShape::kQubits) {
    std::size_t p = 1;
    while (p < r) p <<= 1;
    r = p;
  }
  return rank1_dilation(e, r);
}

std::optional<GroupingMatrix> projective_grouping(const Povm& coarse, const Povm& fine) {
  if (coarse.dim() != fine.dim()) throw std::invalid_argument("projective_grouping: dims differ");
  if (!coarse.is_projective() || !fine.is_projective()) {
    throw std::invalid_argument("projective_grouping: inputs must be projective");
  }
  const auto coarse_labels = coarse.labels();
  if (coarse_labels.empty()) return std::nullopt;
  std::map<OutcomeLabel, OutcomeLabel> coarse_of;
  for (const auto& l : fine.labels()) {
    const ComplexMatrix& rl = fine.root(l);
    const double tr = std::pow(rl.frobenius_norm(), 2);
    if (tr <= kOperatorTol) {
      coarse_of[l] = coarse_labels.front();
      continue;
    }
    std::optional<OutcomeLabel> home;
    for (const auto& k : coarse_labels) {
      // Tr[E_k F_l] = Tr[F_l] exactly when F_l <= E_k for projectors.
      const double overlap =
          std::pow(kernels::matmul_adjoint(coarse.root(k), rl).frobenius_norm(), 2);
      if (std::abs(overlap - tr) <= kOperatorTol * std::max(1.0, tr)) {
        home = k;
        break;
      }
    }
    if (!home) return std::nullopt;
    coarse_of[l] = *home;
  }
  GroupingMatrix g(coarse_labels, coarse_of);
  for (const auto& k : coarse_labels) {
    ComplexMatrix sum(fine.dim(), fine.dim());
    for (const auto& l : g.block(k)) sum += fine.element(l);
    if (max_abs_diff(sum, coarse.element(k)) > kOperatorTol) return std::nullopt;
  }
  return g;
}

Povm partial_average(const Povm& e, const std::vector<int>& dims, int factor_index) {
  if (product(dims) != e.dim()) throw std::invalid_argument("partial_average: bad dims");
  const FactorSplit split = split_factor(dims, factor_index);
  const int db = dims[factor_index];
  const std::size_t rest_dim = e.dim() / db;
  const double scale = 1.0 / std::sqrt(static_cast<double>(db));
  std::map<OutcomeLabel, ComplexMatrix> roots;
  for (const auto& k : e.labels()) {
    const ComplexMatrix& r = e.root(k);
    ComplexMatrix out(r.rows() * db, rest_dim);
    for (std::size_t row = 0; row < r.rows(); ++row) {
      for (std::size_t c = 0; c < e.dim(); ++c) {
        out(split.digit[c] * r.rows() + row, split.rest[c]) = scale * r(row, c);
      }
    }
    roots[k] = std::move(out);
  }
  Povm p = Povm::from_roots(rest_dim, std::move(roots), false);
  return p;
}

std::optional<Povm> check_factorization(const Povm& e, const std::vector<int>& dims,
                                        int factor_index) {
  if (product(dims) != e.dim()) throw std::invalid_argument("check_factorization: bad dims");
  const FactorSplit split = split_factor(dims, factor_index);
  const int db = dims[factor_index];
  std::vector<int> keep;
  for (int q = 0; q < static_cast<int>(dims.size()); ++q) {
    if (q != factor_index) keep.push_back(q);
  }
  Povm averaged = partial_average(e, dims, factor_index);
  std::map<OutcomeLabel, ComplexMatrix> roots, dense;
  for (const auto& k : e.labels()) {
    const ComplexMatrix ek = e.element(k);
    ComplexMatrix fk = partial_trace(ek, dims, keep);
    fk *= 1.0 / db;
    for (std::size_t i = 0; i < e.dim(); ++i) {
      for (std::size_t j = 0; j < e.dim(); ++j) {
        const Complex expected =
            split.digit[i] == split.digit[j] ? fk(split.rest[i], split.rest[j]) : Complex(0.0);
        if (std::abs(ek(i, j) - expected) > kOperatorTol) return std::nullopt;
      }
    }
    roots[k] = averaged.root(k);
    dense[k] = std::move(fk);
  }
  return Povm::from_parts(e.dim() / db, std::move(roots), std::move(dense));
}

std::map<OutcomeLabel, Instrument> compose_postprocessing(const Instrument& target,
                                                          const Instrument& first,
                                                          const GroupingMatrix& nu) {
  if (!target.is_rank1() || !first.is_rank1()) {
    throw std::invalid_argument("compose_postprocessing: branches must have Kraus rank 1");
  }
  if (target.dim_in != first.dim_in) {
    throw std::invalid_argument("compose_postprocessing: input dimensions differ");
  }
  const Povm p = associated_povm(target);
  if (!p.is_projective()) {
    throw std::invalid_argument("compose_postprocessing: target POVM is not projective");
  }
  std::map<OutcomeLabel, ComplexMatrix> w;
  for (const auto& [k, kraus] : target.branches) w[k] = polar_partial_isometry(kraus.front());

  std::map<OutcomeLabel, Instrument> out;
  for (const auto& [l, kraus] : first.branches) {
    const ComplexMatrix& ll = kraus.front();
    const ComplexMatrix fl = kernels::adjoint_matmul(ll, ll);
    ComplexMatrix sum(target.dim_in, target.dim_in);
    const auto block = nu.block(l);
    for (const auto& k : block) sum += p.element(k);
    if (max_abs_diff(sum, fl) > scaled_tol(fl)) {
      throw std::invalid_argument("compose_postprocessing: first outcome " + l.bits() +
                                  " is not the grouped target POVM");
    }
    const ComplexMatrix vl = polar_partial_isometry(ll);
    Instrument theta;
    theta.dim_in = first.dim_out;
    theta.dim_out = target.dim_out;
    // With mu the identity, X_{k|l} is P_k on the block of l and W_k P_k = W_k.
    for (const auto& k : block) theta.branches[k] = {kernels::matmul_adjoint(w.at(k), vl)};

    // Kraus completion on the part of the middle space that Gamma_l never
    // reaches.
    ComplexMatrix rest = ComplexMatrix::identity(first.dim_out) - kernels::matmul_adjoint(vl, vl);
    if (rest.max_abs() > kOperatorTol) {
      ComplexMatrix root = minimal_root(rest);
      std::vector<ComplexMatrix> pad;
      for (std::size_t r = 0; r < root.rows(); ++r) {
        ComplexMatrix op(theta.dim_out, theta.dim_in);
        op.set_block(0, 0, root.block(r, 0, 1, root.cols()));
        pad.push_back(std::move(op));
      }
      const int width = target.branches.empty() ? 0 : target.branches.begin()->first.size();
      OutcomeLabel label;
      bool found = false;
      for (std::uint64_t v = 0; width < 64 && v < (std::uint64_t{1} << width); ++v) {
        label = OutcomeLabel::from_index(v, width);
        if (!target.branches.count(label)) {
          found = true;
          break;
        }
      }
      if (!found) label = OutcomeLabel(std::string(static_cast<std::size_t>(width) + 1, '1'));
      theta.branches[label] = std::move(pad);
      theta.padded.insert(label);
    }
    out[l] = std::move(theta);
  }
  return out;
}

OnsDecomposition ons_decompose(const Instrument& gamma, const std::vector<int>& dims,
                               int factor_index) {
  if (!gamma.is_rank1()) throw std::invalid_argument("ons_decompose: branches must have Kraus rank 1");
  const Povm e = associated_povm(gamma);
  auto f = check_factorization(e, dims, factor_index);
  if (!f) throw std::invalid_argument("ons_decompose: associated POVM does not factorize");
  const std::size_t db = static_cast<std::size_t>(dims[factor_index]);
  if (gamma.dim_out % db != 0) {
    throw std::invalid_argument("ons_decompose: output dimension not divisible by d_B");
  }
  OnsDecomposition out;
  out.g = rank1_dilation(*f, gamma.dim_out / db);
  out.g.padded = gamma.padded;
  std::vector<int> order;
  for (int q = 0; q < static_cast<int>(dims.size()); ++q) {
    if (q != factor_index) order.push_back(q);
  }
  order.push_back(factor_index);
  out.alignment = subsystem_permutation(dims, order);
  const ComplexMatrix id_b = ComplexMatrix::identity(db);
  for (const auto& [k, kraus] : gamma.branches) {
    ComplexMatrix aligned = kernels::matmul(kron(out.g.branches.at(k).front(), id_b), out.alignment);
    out.unitaries[k] = isometry_between(aligned, kraus.front());
  }
  return out;
}

ComplexMatrix choi_matrix(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) return ComplexMatrix();
  const std::size_t d = kraus.front().size();
  ComplexMatrix stacked(d, kraus.size());
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    if (kraus[i].size() != d) throw std::invalid_argument("choi_matrix: Kraus shapes differ");
    for (std::size_t a = 0; a < d; ++a) stacked(a, i) = kraus[i].data()[a];
  }
  return kernels::matmul_adjoint(stacked, stacked);
}

EqualityReport compare_instruments(const Instrument& a, const Instrument& b, double tol) {
  EqualityReport rep;
  if (a.dim_in != b.dim_in || a.dim_out != b.dim_out) {
    rep.message = "dimension mismatch: " + std::to_string(a.dim_out) + "x" +
                  std::to_string(a.dim_in) + " vs " + std::to_string(b.dim_out) + "x" +
                  std::to_string(b.dim_in);
    return rep;
  }
  auto prune = [tol](const Instrument& inst) {
    std::map<OutcomeLabel, std::vector<ComplexMatrix>> kept;
    for (const auto& [k, kraus] : inst.branches) {
      std::vector<ComplexMatrix> ops;
      for (const auto& op : kraus) {
        if (op.frobenius_norm() > tol) ops.push_back(op);
      }
      if (!ops.empty()) kept[k] = std::move(ops);
    }
    return kept;
  };
  const auto pa = prune(a), pb = prune(b);
  for (const auto& [k, ops] : pa) {
    if (!pb.count(k)) {
      rep.message = "outcome " + k.bits() + " only present in the first instrument";
      return rep;
    }
  }
  for (const auto& [k, ops] : pb) {
    if (!pa.count(k)) {
      rep.message = "outcome " + k.bits() + " only present in the second instrument";
      return rep;
    }
  }
  for (const auto& [k, ops] : pa) {
    const double dev = max_abs_diff(choi_matrix(ops), choi_matrix(pb.at(k)));
    rep.deviation[k] = dev;
    rep.max_deviation = std::max(rep.max_deviation, dev);
  }
  rep.equal = rep.max_deviation <= tol;
  if (!rep.equal) rep.message = "Choi deviation " + std::to_string(rep.max_deviation);
  return rep;
}

bool instruments_equal(const Instrument& a, const Instrument& b, double tol) {
  return compare_instruments(a, b, tol).equal;
}

}  // namespace qspace
