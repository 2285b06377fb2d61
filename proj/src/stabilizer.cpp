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

#include "qspace/stabilizer.hpp"

#include <bit>
#include <cmath>
#include <functional>

#include <json.hpp>

#include "qspace/kernels.hpp"
#include "qspace/linalg.hpp"

namespace qspace {

namespace {

// i^w for w mod 4.
Complex i_power(int w) {
  switch (((w % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::uint64_t index_mask(const F2Vector& v) {
  const int n = v.size();
  std::uint64_t m = 0;
  for (int q = 0; q < n; ++q) {
    if (v.get(q)) m |= std::uint64_t{1} << (n - 1 - q);
  }
  return m;
}

// Visits every stabilizer group element g^r as a monomial matrix
// g^r |b> = phases[b] |b xor flip>, in Gray-code order of r.
void for_each_group_element(
    const StabilizerCode& code,
    const std::function<void(std::uint64_t r, std::uint64_t flip,
                             const std::vector<Complex>& phases)>& visit) {
  const std::size_t dim = std::size_t{1} << code.n();
  const int r = code.r();
  std::vector<Complex> phases(dim, Complex(1.0));
  std::vector<Complex> next(dim);
  std::uint64_t flip = 0;
  visit(0, 0, phases);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << r); ++i) {
    const int g = std::countr_zero(i);
    const PauliString& p = code.generators()[g];
    for (std::size_t b = 0; b < dim; ++b) next[b] = phases[b] * p.phase(b ^ flip);
    phases.swap(next);
    flip ^= p.flip_mask();
    visit(i ^ (i >> 1), flip, phases);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// PauliString

PauliString::PauliString(F2Vector x, F2Vector z, int sign)
    : x_(std::move(x)), z_(std::move(z)), sign_(sign) {
  if (x_.size() != z_.size()) throw std::invalid_argument("Pauli x/z length mismatch");
  if (sign != 1 && sign != -1) throw std::invalid_argument("Pauli sign must be +1 or -1");
}

PauliString PauliString::parse(std::string_view text, int sign) {
  const int n = static_cast<int>(text.size());
  F2Vector x(n), z(n);
  for (int q = 0; q < n; ++q) {
    switch (text[q]) {
      case 'I': break;
      case 'X': x.set(q, true); break;
      case 'Z': z.set(q, true); break;
      case 'Y':
        x.set(q, true);
        z.set(q, true);
        break;
      default:
        throw std::invalid_argument("bad Pauli character '" + std::string(1, text[q]) + "'");
    }
  }
  return PauliString(x, z, sign);
}

std::string PauliString::to_string() const {
  std::string s = sign_ < 0 ? "-" : "";
  for (int q = 0; q < n(); ++q) {
    s += x_.get(q) ? (z_.get(q) ? 'Y' : 'X') : (z_.get(q) ? 'Z' : 'I');
  }
  return s;
}

bool PauliString::commutes_with(const PauliString& other) const {
  return dot(x_, other.z_) == dot(z_, other.x_);
}

F2Vector PauliString::symplectic_row() const {
  F2Vector row(2 * n());
  for (int q = 0; q < n(); ++q) {
    row.set(q, x_.get(q));
    row.set(n() + q, z_.get(q));
  }
  return row;
}

std::uint64_t PauliString::flip_mask() const { return index_mask(x_); }

Complex PauliString::phase(std::uint64_t basis_index) const {
  const int w = std::popcount(x_.word() & z_.word());
  const bool minus = std::popcount(index_mask(z_) & basis_index) & 1;
  return static_cast<double>(sign_ * (minus ? -1 : 1)) * i_power(w);
}

std::vector<Complex> PauliString::apply(const std::vector<Complex>& v) const {
  const std::uint64_t f = flip_mask();
  std::vector<Complex> out(v.size());
  for (std::uint64_t b = 0; b < v.size(); ++b) out[b ^ f] = phase(b) * v[b];
  return out;
}

ComplexMatrix PauliString::dense() const {
  const std::size_t dim = std::size_t{1} << n();
  const std::uint64_t f = flip_mask();
  ComplexMatrix m(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b) m(b ^ f, b) = phase(b);
  return m;
}

// ---------------------------------------------------------------------------
// StabilizerCode

StabilizerCode::StabilizerCode(std::string name, int n, int k, std::vector<PauliString> generators)
    : name_(std::move(name)), n_(n), k_(k), generators_(std::move(generators)) {
  if (n < 1 || n > 12) throw CodeError("n must be between 1 and 12");
  if (k < 0 || k > n) throw CodeError("k must be between 0 and n");
  if (static_cast<int>(generators_.size()) != n - k) {
    throw CodeError("expected n - k = " + std::to_string(n - k) + " generators, got " +
                    std::to_string(generators_.size()));
  }
  for (int i = 0; i < r(); ++i) {
    if (generators_[i].n() != n) {
      throw CodeError("generator " + std::to_string(i) + " has length " +
                          std::to_string(generators_[i].n()) + ", expected " + std::to_string(n),
                      i);
    }
  }
  for (int i = 0; i < r(); ++i) {
    for (int j = 0; j < i; ++j) {
      if (!generators_[i].commutes_with(generators_[j])) {
        throw CodeError("generators " + std::to_string(j) + " and " + std::to_string(i) +
                            " anticommute",
                        i);
      }
    }
  }
  F2Subspace rows(2 * n);
  for (int i = 0; i < r(); ++i) {
    if (!rows.insert(generators_[i].symplectic_row())) {
      throw CodeError("generator " + std::to_string(i) + " depends on earlier generators", i);
    }
  }
  // Tr[P_0]: only group elements without bit flips have a trace.
  Complex tr = 0.0;
  for_each_group_element(*this, [&](std::uint64_t, std::uint64_t flip,
                                    const std::vector<Complex>& phases) {
    if (flip != 0) return;
    for (const auto& p : phases) tr += p;
  });
  tr /= std::ldexp(1.0, r());
  if (std::abs(tr - std::ldexp(1.0, k)) > 1e-6) {
    throw CodeError("Tr[P_0] = " + std::to_string(tr.real()) + ", expected 2^k");
  }
}

F2Matrix StabilizerCode::check_matrix() const {
  std::vector<F2Vector> rows;
  for (const auto& g : generators_) rows.push_back(g.symplectic_row());
  return F2Matrix(2 * n_, rows);
}

F2Vector StabilizerCode::x_column(int q) const {
  F2Vector c(r());
  for (int i = 0; i < r(); ++i) c.set(i, generators_[i].x().get(q));
  return c;
}

F2Vector StabilizerCode::z_column(int q) const {
  F2Vector c(r());
  for (int i = 0; i < r(); ++i) c.set(i, generators_[i].z().get(q));
  return c;
}

StabilizerCode parse_code(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw CodeError(std::string("code file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw CodeError("code file must hold a JSON object");
  for (const char* key : {"n", "k", "generators"}) {
    if (!j.contains(key)) throw CodeError(std::string("code file lacks \"") + key + "\"");
  }
  if (!j["n"].is_number_integer() || !j["k"].is_number_integer() ||
      !j["generators"].is_array()) {
    throw CodeError("code fields have the wrong types");
  }
  const int n = j["n"].get<int>(), k = j["k"].get<int>();
  const auto& gens = j["generators"];
  std::vector<int> signs(gens.size(), 1);
  if (j.contains("signs")) {
    if (!j["signs"].is_array() || j["signs"].size() != gens.size()) {
      throw CodeError("\"signs\" must list one sign per generator");
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto& s = j["signs"][i];
      if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1)) {
        throw CodeError("sign of generator " + std::to_string(i) + " must be +1 or -1",
                        static_cast<int>(i));
      }
      signs[i] = s.get<int>();
    }
  }
  std::vector<PauliString> paulis;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!gens[i].is_string()) {
      throw CodeError("generator " + std::to_string(i) + " is not a string", static_cast<int>(i));
    }
    try {
      paulis.push_back(PauliString::parse(gens[i].get<std::string>(), signs[i]));
    } catch (const std::invalid_argument& e) {
      throw CodeError("generator " + std::to_string(i) + ": " + e.what(), static_cast<int>(i));
    }
  }
  std::string name = j.value("name", std::string("unnamed"));
  return StabilizerCode(std::move(name), n, k, std::move(paulis));
}

std::string code_to_json(const StabilizerCode& code) {
  nlohmann::json j;
  j["name"] = code.name();
  j["n"] = code.n();
  j["k"] = code.k();
  j["generators"] = nlohmann::json::array();
  j["signs"] = nlohmann::json::array();
  for (const auto& g : code.generators()) {
    std::string s = g.to_string();
    if (!s.empty() && s[0] == '-') s.erase(0, 1);
    j["generators"].push_back(s);
    j["signs"].push_back(g.sign());
  }
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Projectors and the encoding unitary

ComplexMatrix syndrome_projector(const StabilizerCode& code, const F2Vector& s) {
  if (s.size() != code.r()) throw std::invalid_argument("syndrome has the wrong length");
  const std::size_t dim = std::size_t{1} << code.n();
  const double scale = std::ldexp(1.0, -code.r());
  ComplexMatrix p(dim, dim);
  for_each_group_element(code, [&](std::uint64_t r, std::uint64_t flip,
                                   const std::vector<Complex>& phases) {
    const double sgn = (std::popcount(r & s.word()) & 1) ? -scale : scale;
    for (std::size_t b = 0; b < dim; ++b) p(b ^ flip, b) += sgn * phases[b];
  });
  return p;
}

namespace {

// For each generator i, a Pauli anticommuting with g_i and commuting with
// every other generator, from a right inverse of the symplectic form.
std::vector<PauliString> pure_errors(const StabilizerCode& code) {
  const int n = code.n(), r = code.r();
  // Row j: u -> <g_j, D> for D = (a | b), i.e. (z_j | x_j) . (a | b).
  std::vector<F2Vector> rows, tags;
  for (int j = 0; j < r; ++j) {
    const auto& g = code.generators()[j];
    F2Vector row(2 * n);
    for (int q = 0; q < n; ++q) {
      row.set(q, g.z().get(q));
      row.set(n + q, g.x().get(q));
    }
    rows.push_back(row);
    tags.push_back(F2Vector::unit(r, j));
  }
  std::vector<int> pivot_col(r, -1);
  int rank = 0;
  for (int col = 0; col < 2 * n && rank < r; ++col) {
    int sel = -1;
    for (int i = rank; i < r; ++i) {
      if (rows[i].get(col)) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(rows[sel], rows[rank]);
    std::swap(tags[sel], tags[rank]);
    for (int i = 0; i < r; ++i) {
      if (i != rank && rows[i].get(col)) {
        rows[i] ^= rows[rank];
        tags[i] ^= tags[rank];
      }
    }
    pivot_col[rank++] = col;
  }
  if (rank != r) throw std::logic_error("check matrix lost rank");
  std::vector<PauliString> out;
  for (int i = 0; i < r; ++i) {
    F2Vector a(n), b(n);
    for (int p = 0; p < r; ++p) {
      if (!tags[p].get(i)) continue;
      const int c = pivot_col[p];
      if (c < n) {
        a.set(c, true);
      } else {
        b.set(c - n, true);
      }
    }
    out.emplace_back(a, b, 1);
  }
  return out;
}

}  // namespace

ComplexMatrix encoding_unitary(const StabilizerCode& code) {
  const int n = code.n(), k = code.k(), r = code.r();
  const std::size_t dim = std::size_t{1} << n, logical = std::size_t{1} << k;
  const ComplexMatrix p0 = syndrome_projector(code, F2Vector(r));

  // Code space basis: compress onto the column space of P_0 and diagonalize
  // there.
  const ComplexMatrix q = range_basis(p0);
  const HermitianEig eig = hermitian_eig(kernels::adjoint_matmul(q, kernels::matmul(p0, q)));
  std::vector<std::size_t> keep;
  for (std::size_t i = eig.eigenvalues.size(); i-- > 0;) {
    if (eig.eigenvalues[i] > 0.5) keep.push_back(i);
  }
  if (keep.size() != logical) {
    throw std::runtime_error("code space has dimension " + std::to_string(keep.size()) +
                             ", expected 2^k");
  }
  ComplexMatrix w(q.cols(), logical);
  for (std::size_t c = 0; c < logical; ++c) {
    for (std::size_t i = 0; i < q.cols(); ++i) w(i, c) = eig.vectors(i, keep[c]);
  }
  const ComplexMatrix v0 = kernels::matmul(q, w);

  const std::vector<PauliString> errors = pure_errors(code);
  ComplexMatrix udag(dim, dim);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << r); ++s) {
    for (std::size_t j = 0; j < logical; ++j) {
      std::vector<Complex> v(dim);
      for (std::size_t b = 0; b < dim; ++b) v[b] = v0(b, j);
      for (int i = 0; i < r; ++i) {
        // Generator i is bit i of the syndrome label, counted from the left.
        if ((s >> (r - 1 - i)) & 1U) v = errors[i].apply(v);
      }
      for (std::size_t b = 0; b < dim; ++b) udag(b, s * logical + j) = v[b];
    }
  }

  // U g_i U^dagger - Z_i (x) I = U R_i where column c of R_i is
  // g_i u_c -/+ u_c; for unitary U every entry is bounded by the largest
  // column norm of R_i, which is what we certify.
  double residual =
      max_abs_diff(kernels::adjoint_matmul(v0, v0), ComplexMatrix::identity(logical));
  for (int i = 0; i < r; ++i) {
    const PauliString& g = code.generators()[i];
    for (std::size_t c = 0; c < dim; ++c) {
      std::vector<Complex> col(dim);
      for (std::size_t b = 0; b < dim; ++b) col[b] = udag(b, c);
      const std::vector<Complex> gc = g.apply(col);
      const double eigen = (((c / logical) >> (r - 1 - i)) & 1U) ? -1.0 : 1.0;
      double norm = 0.0;
      for (std::size_t b = 0; b < dim; ++b) norm += std::norm(gc[b] - eigen * col[b]);
      residual = std::max(residual, std::sqrt(norm));
    }
  }
  if (residual > kOperatorTol) {
    throw std::runtime_error("encoding unitary residual " + std::to_string(residual));
  }
  return udag.adjoint();
}

Instrument distillation_instrument(const StabilizerCode& code, const ComplexMatrix& u) {
  const std::size_t dim = std::size_t{1} << code.n(), logical = std::size_t{1} << code.k();
  if (u.rows() != dim || u.cols() != dim) {
    throw std::invalid_argument("encoding unitary has the wrong dimension");
  }
  Instrument inst;
  inst.dim_in = dim;
  inst.dim_out = logical;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << code.r()); ++s) {
    inst.branches[OutcomeLabel::from_index(s, code.r())] = {u.block(s * logical, 0, logical, dim)};
  }
  return inst;
}

Instrument distillation_instrument(const StabilizerCode& code) {
  return distillation_instrument(code, encoding_unitary(code));
}

}  // namespace qspace
