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

#include "qspace/f2.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qspace {

namespace {

std::uint64_t mask_for(int length) {
  return length == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << length) - 1);
}

void require_same_length(const F2Vector& a, const F2Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(
        "F2 length mismatch: " + std::to_string(a.size()) + " vs " +
        std::to_string(b.size()));
  }
}

}  // namespace

F2Vector::F2Vector(int length, std::uint64_t word)
    : length_(length), word_(word) {
  if (length < 0 || length > kMaxLength) {
    throw std::invalid_argument("F2Vector length out of range");
  }
  if ((word & ~mask_for(length)) != 0) {
    throw std::invalid_argument("F2Vector word has bits beyond its length");
  }
}

F2Vector F2Vector::unit(int length, int j) {
  return F2Vector(length, std::uint64_t{1} << j);
}

F2Vector F2Vector::from_string(std::string_view bits) {
  F2Vector v(static_cast<int>(bits.size()));
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1') {
      v.set(static_cast<int>(j), true);
    } else if (bits[j] != '0') {
      throw std::invalid_argument("not a bit string: " + std::string(bits));
    }
  }
  return v;
}

void F2Vector::set(int j, bool value) {
  if (j < 0 || j >= length_) throw std::out_of_range("F2Vector::set");
  std::uint64_t bit = std::uint64_t{1} << j;
  word_ = value ? (word_ | bit) : (word_ & ~bit);
}

int F2Vector::weight() const { return std::popcount(word_); }

int F2Vector::lowest_set() const {
  return word_ == 0 ? -1 : std::countr_zero(word_);
}

std::string F2Vector::to_string() const {
  std::string out(length_, '0');
  for (int j = 0; j < length_; ++j) {
    if (get(j)) out[j] = '1';
  }
  return out;
}

F2Vector& F2Vector::operator^=(const F2Vector& other) {
  require_same_length(*this, other);
  word_ ^= other.word_;
  return *this;
}

bool dot(const F2Vector& a, const F2Vector& b) {
  require_same_length(a, b);
  return std::popcount(a.word() & b.word()) & 1;
}

F2Matrix::F2Matrix(int c, std::vector<F2Vector> r) : cols(c), rows(std::move(r)) {
  for (const auto& row : rows) {
    if (row.size() != cols) throw std::invalid_argument("F2Matrix not rectangular");
  }
}

F2Vector F2Matrix::column(int j) const {
  F2Vector col(row_count());
  for (int i = 0; i < row_count(); ++i) col.set(i, rows[i].get(j));
  return col;
}

int rank(const F2Matrix& m) { return span(m.rows, m.cols).dim(); }

F2Subspace::F2Subspace(int ambient_dim) : ambient_(ambient_dim) {
  if (ambient_dim < 0 || ambient_dim > F2Vector::kMaxLength) {
    throw std::invalid_argument("F2Subspace ambient dimension out of range");
  }
}

F2Vector F2Subspace::reduce(const F2Vector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("F2 length mismatch");
  F2Vector r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (r.get(pivots_[i])) r ^= basis_[i];
  }
  return r;
}

bool F2Subspace::contains(const F2Vector& v) const { return reduce(v).is_zero(); }

bool F2Subspace::insert(const F2Vector& v) {
  F2Vector r = reduce(v);
  if (r.is_zero()) return false;
  int p = r.lowest_set();
  // Keep the basis fully reduced: clear the new pivot from existing rows.
  for (auto& row : basis_) {
    if (row.get(p)) row ^= r;
  }
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
  basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), r);
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
  return true;
}

std::vector<F2Vector> F2Subspace::elements() const {
  std::vector<F2Vector> out;
  out.reserve(std::size_t{1} << basis_.size());
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << basis_.size()); ++c) {
    F2Vector v(ambient_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if ((c >> i) & 1U) v ^= basis_[i];
    }
    out.push_back(v);
  }
  return out;
}

F2Subspace F2Subspace::orthogonal_complement() const {
  // Free coordinates of the echelon form parametrize the null space of the
  // basis matrix.
  std::vector<bool> is_pivot(ambient_, false);
  for (int p : pivots_) is_pivot[p] = true;
  F2Subspace out(ambient_);
  for (int f = 0; f < ambient_; ++f) {
    if (is_pivot[f]) continue;
    F2Vector v = F2Vector::unit(ambient_, f);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].get(f)) v.set(pivots_[i], true);
    }
    out.insert(v);
  }
  return out;
}

F2Subspace span(const std::vector<F2Vector>& vectors, int ambient_dim) {
  F2Subspace s(ambient_dim);
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim) throw std::invalid_argument("span: mixed lengths");
    s.insert(v);
  }
  return s;
}

bool contains(const F2Subspace& s, const F2Vector& v) { return s.contains(v); }

F2Vector coset_label(const F2Vector& s, const F2Subspace& j) {
  F2Vector r = j.reduce(s);
  F2Vector label(j.ambient_dim() - j.dim());
  const auto& piv = j.pivots();
  int out = 0;
  std::size_t next = 0;
  for (int c = 0; c < j.ambient_dim(); ++c) {
    if (next < piv.size() && piv[next] == c) {
      ++next;
      continue;
    }
    label.set(out++, r.get(c));
  }
  return label;
}

std::vector<double> walsh_transform(const std::vector<double>& f) {
  std::size_t n = f.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("walsh_transform: length must be a power of two");
  }
  std::vector<double> out = f;
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        double a = out[j], b = out[j + h];
        out[j] = a + b;
        out[j + h] = a - b;
      }
    }
  }
  return out;
}

bool coset_constant(const std::vector<double>& f, const F2Subspace& v, double tol) {
  if (f.size() != (std::size_t{1} << v.ambient_dim())) {
    throw std::invalid_argument("coset_constant: length must be 2^ambient_dim");
  }
  for (const auto& e : v.elements()) {
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      if (std::abs(f[x ^ e.word()] - f[x]) > tol) return false;
    }
  }
  return true;
}

}  // namespace qspace
