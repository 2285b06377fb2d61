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

#include "qspace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "qspace/kernels.hpp"

namespace qspace {

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::basis_column(std::size_t dim, std::size_t index) {
  ComplexMatrix m(dim, 1);
  m(index, 0) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                   std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block");
  ComplexMatrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    std::copy_n(row_ptr(r0 + r) + c0, nc, out.row_ptr(r));
  }
  return out;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw std::out_of_range("set_block");
  for (std::size_t r = 0; r < b.rows(); ++r) {
    std::copy_n(b.row_ptr(r), b.cols(), row_ptr(r0 + r) + c0);
  }
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("+: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("-: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return kernels::matmul(a, b);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Spectral routines

namespace {

// V diag(f) V^dagger for real f.
ComplexMatrix spectral_apply(const HermitianEig& eig, const std::vector<double>& f) {
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t r = 0; r < scaled.rows(); ++r) {
    for (std::size_t c = 0; c < scaled.cols(); ++c) scaled(r, c) *= f[c];
  }
  return kernels::matmul_adjoint(scaled, eig.vectors);
}

double lambda_max(const std::vector<double>& ev) {
  return ev.empty() ? 0.0 : ev.back();
}

void check_psd(const std::vector<double>& ev) {
  if (ev.empty()) return;
  double scale = std::max(std::abs(ev.front()), std::abs(ev.back()));
  if (ev.front() < -kRankCutoff * scale) {
    throw std::invalid_argument("matrix is not positive semidefinite: eigenvalue " +
                                std::to_string(ev.front()));
  }
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& h, double tol) {
  if (!h.is_square()) throw std::invalid_argument("hermitian_eig: matrix not square");
  if (!is_hermitian(h, tol * std::max(1.0, h.max_abs()))) {
    throw std::invalid_argument("hermitian_eig: matrix not hermitian");
  }
  const std::size_t n = h.rows();
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = 1e-13 * a.frobenius_norm();

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if (p != q) off += std::norm(a(p, q));
      }
    }
    if (std::sqrt(off) <= threshold) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase the pair to a real symmetric 2x2 block, then rotate it away:
        // J = diag(1, conj(u)) * [[c, s], [-s, c]] on coordinates (p, q).
        const Complex u = apq / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex su = s * std::conj(u);
        const Complex cu = c * std::conj(u);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - su * akq;
          a(k, q) = s * akp + cu * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - std::conj(su) * aqk;
          a(q, k) = s * apk + std::conj(cu) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - su * vkq;
          v(k, q) = s * vkp + cu * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  HermitianEig out;
  out.eigenvalues.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenvalues[i] = a(order[i], order[i]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& e) {
  HermitianEig eig = hermitian_eig(e);
  check_psd(eig.eigenvalues);
  const double cut = kRankCutoff * lambda_max(eig.eigenvalues);
  std::vector<double> f;
  for (double l : eig.eigenvalues) f.push_back(l > cut && l > 0 ? std::sqrt(l) : 0.0);
  return spectral_apply(eig, f);
}

ComplexMatrix pinv_sqrt_psd(const ComplexMatrix& e) {
  HermitianEig eig = hermitian_eig(e);
  check_psd(eig.eigenvalues);
  const double cut = kRankCutoff * lambda_max(eig.eigenvalues);
  std::vector<double> f;
  for (double l : eig.eigenvalues) f.push_back(l > cut && l > 0 ? 1.0 / std::sqrt(l) : 0.0);
  return spectral_apply(eig, f);
}

int psd_rank(const ComplexMatrix& e) {
  HermitianEig eig = hermitian_eig(e);
  const double cut = kRankCutoff * lambda_max(eig.eigenvalues);
  return static_cast<int>(std::count_if(eig.eigenvalues.begin(), eig.eigenvalues.end(),
                                        [&](double l) { return l > cut && l > 0; }));
}

ComplexMatrix minimal_root(const ComplexMatrix& r) {
  const std::size_t d = r.cols();
  if (r.rows() == 0) return ComplexMatrix(0, d);
  if (r.rows() <= d) {
    HermitianEig eig = hermitian_eig(kernels::matmul_adjoint(r, r));
    const double lmax = lambda_max(eig.eigenvalues);
    std::vector<std::size_t> keep;
    for (std::size_t i = eig.eigenvalues.size(); i-- > 0;) {
      if (eig.eigenvalues[i] > kRankCutoff * lmax && eig.eigenvalues[i] > 0) keep.push_back(i);
    }
    ComplexMatrix w(r.rows(), keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c) {
      for (std::size_t k = 0; k < r.rows(); ++k) w(k, c) = eig.vectors(k, keep[c]);
    }
    return kernels::adjoint_matmul(w, r);
  }
  HermitianEig eig = hermitian_eig(kernels::adjoint_matmul(r, r));
  const double lmax = lambda_max(eig.eigenvalues);
  std::vector<std::size_t> keep;
  for (std::size_t i = eig.eigenvalues.size(); i-- > 0;) {
    if (eig.eigenvalues[i] > kRankCutoff * lmax && eig.eigenvalues[i] > 0) keep.push_back(i);
  }
  ComplexMatrix out(keep.size(), d);
  for (std::size_t row = 0; row < keep.size(); ++row) {
    const double s = std::sqrt(eig.eigenvalues[keep[row]]);
    for (std::size_t k = 0; k < d; ++k) out(row, k) = s * std::conj(eig.vectors(k, keep[row]));
  }
  return out;
}

ComplexMatrix range_basis(const ComplexMatrix& m, double rel_tol) {
  const std::size_t n = m.rows();
  ComplexMatrix res = m;
  std::vector<double> norms(m.cols(), 0.0);
  double largest = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < n; ++r) norms[c] += std::norm(res(r, c));
    largest = std::max(largest, std::sqrt(norms[c]));
  }
  std::vector<std::vector<Complex>> basis;
  std::vector<bool> used(m.cols(), false);
  while (basis.size() < n) {
    std::size_t best = m.cols();
    double best_norm = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!used[c] && norms[c] > best_norm) {
        best_norm = norms[c];
        best = c;
      }
    }
    if (best == m.cols() || std::sqrt(best_norm) <= rel_tol * largest) break;
    used[best] = true;
    std::vector<Complex> w(n);
    for (std::size_t r = 0; r < n; ++r) w[r] = res(r, best);
    for (const auto& b : basis) {
      Complex ip = 0.0;
      for (std::size_t r = 0; r < n; ++r) ip += std::conj(b[r]) * w[r];
      for (std::size_t r = 0; r < n; ++r) w[r] -= ip * b[r];
    }
    double nrm = 0.0;
    for (const auto& z : w) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (auto& z : w) z /= nrm;
    // Deflate the remaining columns; the second sweep happens implicitly the
    // next time a column is picked, since its residual is re-projected above.
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (used[c]) continue;
      Complex ip = 0.0;
      for (std::size_t r = 0; r < n; ++r) ip += std::conj(w[r]) * res(r, c);
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        res(r, c) -= ip * w[r];
        s += std::norm(res(r, c));
      }
      norms[c] = s;
    }
    basis.push_back(std::move(w));
  }
  ComplexMatrix q(n, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    for (std::size_t r = 0; r < n; ++r) q(r, c) = basis[c][r];
  }
  return q;
}

// ---------------------------------------------------------------------------
// Tensor structure

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex x = a(i, j);
      if (x == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

namespace {

std::size_t product(const std::vector<int>& dims) {
  std::size_t p = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("subsystem dimensions must be positive");
    p *= static_cast<std::size_t>(d);
  }
  return p;
}

// Digits of a product-basis index, most significant factor first.
std::vector<int> digits_of(std::size_t index, const std::vector<int>& dims) {
  std::vector<int> d(dims.size());
  for (std::size_t q = dims.size(); q-- > 0;) {
    d[q] = static_cast<int>(index % dims[q]);
    index /= dims[q];
  }
  return d;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  const std::size_t total = product(dims);
  if (!m.is_square() || m.rows() != total) {
    throw std::invalid_argument("partial_trace: dims do not match the matrix");
  }
  std::vector<bool> kept(dims.size(), false);
  for (int q : keep) {
    if (q < 0 || q >= static_cast<int>(dims.size()) || kept[q]) {
      throw std::invalid_argument("partial_trace: bad keep index");
    }
    kept[q] = true;
  }
  std::size_t kdim = 1;
  for (std::size_t q = 0; q < dims.size(); ++q) {
    if (kept[q]) kdim *= dims[q];
  }
  std::vector<std::size_t> kidx(total), tidx(total);
  for (std::size_t i = 0; i < total; ++i) {
    auto dg = digits_of(i, dims);
    std::size_t k = 0, t = 0;
    for (std::size_t q = 0; q < dims.size(); ++q) {
      if (kept[q]) {
        k = k * dims[q] + dg[q];
      } else {
        t = t * dims[q] + dg[q];
      }
    }
    kidx[i] = k;
    tidx[i] = t;
  }
  ComplexMatrix out(kdim, kdim);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      if (tidx[i] == tidx[j]) out(kidx[i], kidx[j]) += m(i, j);
    }
  }
  return out;
}

ComplexMatrix subsystem_permutation(const std::vector<int>& dims,
                                    const std::vector<int>& order) {
  if (order.size() != dims.size()) {
    throw std::invalid_argument("subsystem_permutation: order has wrong length");
  }
  std::vector<bool> seen(dims.size(), false);
  std::vector<int> out_dims;
  for (int q : order) {
    if (q < 0 || q >= static_cast<int>(dims.size()) || seen[q]) {
      throw std::invalid_argument("subsystem_permutation: not a permutation");
    }
    seen[q] = true;
    out_dims.push_back(dims[q]);
  }
  const std::size_t total = product(dims);
  ComplexMatrix p(total, total);
  for (std::size_t i = 0; i < total; ++i) {
    auto dg = digits_of(i, dims);
    std::size_t o = 0;
    for (std::size_t q = 0; q < order.size(); ++q) o = o * out_dims[q] + dg[order[q]];
    p(o, i) = 1.0;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Isometries

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    }
  }
  return true;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  return max_abs_diff(kernels::adjoint_matmul(m, m), ComplexMatrix::identity(m.rows())) <= tol;
}

ComplexMatrix extend_isometry(const ComplexMatrix& v) {
  const std::size_t n = v.rows(), k = v.cols();
  if (k > n) throw std::invalid_argument("extend_isometry: more columns than rows");
  if (max_abs_diff(kernels::adjoint_matmul(v, v), ComplexMatrix::identity(k)) > kOperatorTol) {
    throw std::invalid_argument("extend_isometry: columns are not orthonormal");
  }
  ComplexMatrix u(n, n);
  u.set_block(0, 0, v);
  if (k == n) return u;

  // Residuals of every standard basis vector against the current columns;
  // the largest one (lowest index on ties) is orthonormalized next.
  ComplexMatrix res = ComplexMatrix::identity(n) - kernels::matmul_adjoint(v, v);
  std::vector<bool> used(n, false);
  auto orthogonalize = [&](std::vector<Complex>& w, std::size_t filled) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c = 0; c < filled; ++c) {
        Complex ip = 0.0;
        for (std::size_t r = 0; r < n; ++r) ip += std::conj(u(r, c)) * w[r];
        for (std::size_t r = 0; r < n; ++r) w[r] -= ip * u(r, c);
      }
    }
  };
  for (std::size_t filled = k; filled < n; ++filled) {
    std::size_t best = n;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += std::norm(res(r, i));
      if (s > best_norm) {
        best_norm = s;
        best = i;
      }
    }
    used[best] = true;
    std::vector<Complex> w(n, 0.0);
    w[best] = 1.0;
    orthogonalize(w, filled);
    double norm = 0.0;
    for (const auto& z : w) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) u(r, filled) = w[r] / norm;
    // res -= w w^dagger res
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      Complex ip = 0.0;
      for (std::size_t r = 0; r < n; ++r) ip += std::conj(u(r, filled)) * res(r, i);
      for (std::size_t r = 0; r < n; ++r) res(r, i) -= ip * u(r, filled);
    }
  }
  return u;
}

ComplexMatrix polar_partial_isometry(const ComplexMatrix& l) {
  if (l.rows() <= l.cols()) {
    return kernels::matmul(pinv_sqrt_psd(kernels::matmul_adjoint(l, l)), l);
  }
  return kernels::matmul(l, pinv_sqrt_psd(kernels::adjoint_matmul(l, l)));
}

ComplexMatrix isometry_between(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("isometry_between: shape mismatch");
  }
  ComplexMatrix ga = kernels::adjoint_matmul(a, a);
  ComplexMatrix gb = kernels::adjoint_matmul(b, b);
  if (max_abs_diff(ga, gb) > kOperatorTol * std::max(1.0, ga.max_abs())) {
    throw std::invalid_argument("isometry_between: A^dagger A differs from B^dagger B");
  }
  ComplexMatrix va = polar_partial_isometry(a);
  ComplexMatrix vb = polar_partial_isometry(b);
  HermitianEig eig = hermitian_eig(kernels::matmul_adjoint(a, a));
  const double lmax = lambda_max(eig.eigenvalues);
  std::vector<std::size_t> keep;
  for (std::size_t i = eig.eigenvalues.size(); i-- > 0;) {
    if (eig.eigenvalues[i] > kRankCutoff * lmax && eig.eigenvalues[i] > 0) keep.push_back(i);
  }
  ComplexMatrix qa(a.rows(), keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) qa(r, c) = eig.vectors(r, keep[c]);
  }
  ComplexMatrix qb = kernels::matmul(vb, kernels::adjoint_matmul(va, qa));
  return kernels::matmul_adjoint(extend_isometry(qb), extend_isometry(qa));
}

ComplexMatrix haar_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("haar_unitary: dim must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) z(i, j) = Complex(normal(gen), normal(gen));
  }
  // Modified Gram-Schmidt, applied twice per column. The implicit R has a
  // positive diagonal, which makes the result Haar distributed.
  for (std::size_t c = 0; c < dim; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < c; ++p) {
        Complex ip = 0.0;
        for (std::size_t r = 0; r < dim; ++r) ip += std::conj(z(r, p)) * z(r, c);
        for (std::size_t r = 0; r < dim; ++r) z(r, c) -= ip * z(r, p);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) norm += std::norm(z(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < dim; ++r) z(r, c) /= norm;
  }
  return z;
}

int qubit_count(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int q = 0;
  while ((std::size_t{1} << q) < dim) ++q;
  return q;
}

}  // namespace qspace
