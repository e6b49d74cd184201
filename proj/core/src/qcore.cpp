// Copyright 2026 The loccdetect developers
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

#include "locc/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace locc {

namespace {

std::vector<int> dims_of(const FactorList& f) {
  std::vector<int> d(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) d[i] = f[i].dimension;
  return d;
}

// stride[i] = product of dimensions to the right of factor i; the first
// factor is the most significant index (big-endian Kronecker convention).
std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    s[i] = s[i + 1] * dims[i + 1];
  return s;
}

inline int digit_at(long index, long stride, int dim) {
  return static_cast<int>((index / stride) % dim);
}

void check_factors(const FactorList& f) {
  for (const auto& x : f) {
    if (x.dimension < 2) throw InvalidState("factor dimension must be >= 2");
    if (x.name.empty()) throw InvalidState("factor name must be non-empty");
  }
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (f[i].name == f[j].name)
        throw DuplicateFactor("duplicate factor name: " + f[i].name);
}

// Euclidean projection of a real vector onto the probability simplex.
Eigen::VectorXd project_simplex(Eigen::VectorXd v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, tau = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cum += u[k];
    const double t = (cum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) tau = t;
  }
  for (int i = 0; i < v.size(); ++i) v[i] = std::max(v[i] - tau, 0.0);
  return v;
}

}  // namespace

FactorList single_pair(int d) {
  return {{"A", d}, {"B", d}};
}

FactorList sample_pairs(int d, int n) {
  if (n == 1) return single_pair(d);
  FactorList f;
  f.reserve(2 * n);
  for (int i = 1; i <= n; ++i) {
    f.push_back({"A" + std::to_string(i), d});
    f.push_back({"B" + std::to_string(i), d});
  }
  return f;
}

int total_dimension(const FactorList& factors) {
  long d = 1;
  for (const auto& f : factors) d *= f.dimension;
  if (d > kDimensionCap)
    throw DimensionCap("total dimension " + std::to_string(d) +
                       " exceeds cap " + std::to_string(kDimensionCap));
  return static_cast<int>(d);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  return max_abs_diff(m, m.adjoint()) <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  const Matrix id = Matrix::Identity(m.rows(), m.cols());
  return max_abs_diff(m * m.adjoint(), id) <= tol;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian,
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// ---- Operator -------------------------------------------------------------

Operator::Operator(FactorList factors, Matrix m)
    : factors_(std::move(factors)), m_(std::move(m)) {
  check_factors(factors_);
  const int d = total_dimension(factors_);
  if (m_.rows() != d || m_.cols() != d)
    throw InvalidState("matrix side " + std::to_string(m_.rows()) +
                       " does not match factor dimension " +
                       std::to_string(d));
}

Operator Operator::identity(FactorList factors) {
  const int d = total_dimension(factors);
  return Operator(std::move(factors), Matrix::Identity(d, d));
}

int Operator::factor_index(const std::string& name) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].name == name) return static_cast<int>(i);
  throw UnknownFactor("unknown factor: " + name);
}

bool Operator::has_factor(const std::string& name) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const HilbertLabel& f) { return f.name == name; });
}

bool Operator::same_factors(const Operator& other) const {
  return factors_ == other.factors_;
}

Operator operator+(const Operator& a, const Operator& b) {
  if (!a.same_factors(b)) throw FactorMismatch("operator factor lists differ");
  return Operator(a.factors_, a.m_ + b.m_);
}

Operator operator-(const Operator& a, const Operator& b) {
  if (!a.same_factors(b)) throw FactorMismatch("operator factor lists differ");
  return Operator(a.factors_, a.m_ - b.m_);
}

Operator operator*(const Operator& a, const Operator& b) {
  if (!a.same_factors(b)) throw FactorMismatch("operator factor lists differ");
  return Operator(a.factors_, a.m_ * b.m_);
}

Operator operator*(Complex c, const Operator& a) {
  return Operator(a.factors_, c * a.m_);
}

Operator operator*(double c, const Operator& a) {
  return Operator(a.factors_, c * a.m_);
}

// ---- Ket / DensityMatrix ---------------------------------------------------

Ket::Ket(FactorList factors, Vector v)
    : factors_(std::move(factors)), v_(std::move(v)) {
  check_factors(factors_);
  if (v_.size() != total_dimension(factors_))
    throw InvalidState("ket length does not match factor dimension");
  if (std::abs(v_.norm() - 1.0) > 1e-12)
    throw InvalidState("ket is not unit-norm");
}

Operator projector(const Ket& k) {
  return Operator(k.factors(), k.vector() * k.vector().adjoint());
}

DensityMatrix::DensityMatrix(FactorList factors, Matrix m)
    : op_(std::move(factors), std::move(m)) {
  const Matrix& rho = op_.matrix();
  if (!is_hermitian(rho, kHermitianTol))
    throw InvalidState("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-12 ||
      std::abs(rho.trace().imag()) > 1e-12)
    throw InvalidState("density matrix trace is not one");
  if (min_eigenvalue(rho) < kPositivityFloor)
    throw InvalidState("density matrix has a negative eigenvalue");
}

DensityMatrix::DensityMatrix(const Ket& k)
    : DensityMatrix(k.factors(), k.vector() * k.vector().adjoint()) {}

DensityMatrix DensityMatrix::tensor_power(int n) const {
  if (n < 1) throw InvalidState("tensor power requires n >= 1");
  if (n == 1) return *this;
  if (factors().size() != 2)
    throw InvalidState("tensor_power expects a single-pair state");
  const int d = factors()[0].dimension;
  Matrix out = matrix();
  for (int i = 1; i < n; ++i) out = kron(out, matrix());
  FactorList f = sample_pairs(d, n);
  total_dimension(f);  // enforces the cap
  return DensityMatrix(std::move(f), std::move(out));
}

Ket maximally_entangled_ket(int d) {
  Vector v = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
  return Ket(single_pair(d), v);
}

// ---- tensor / partial operations -------------------------------------------

Operator tensor(const Operator& a, const Operator& b) {
  FactorList f = a.factors();
  for (const auto& x : b.factors()) {
    for (const auto& y : f)
      if (x.name == y.name)
        throw DuplicateFactor("factor " + x.name + " appears on both sides");
    f.push_back(x);
  }
  return Operator(std::move(f), kron(a.matrix(), b.matrix()));
}

Ket tensor(const Ket& a, const Ket& b) {
  FactorList f = a.factors();
  for (const auto& x : b.factors()) {
    for (const auto& y : f)
      if (x.name == y.name)
        throw DuplicateFactor("factor " + x.name + " appears on both sides");
    f.push_back(x);
  }
  return Ket(std::move(f), kron(a.vector(), b.vector()));
}

Operator partial_transpose(const Operator& x,
                           const std::set<std::string>& on) {
  const FactorList& f = x.factors();
  std::vector<bool> mask(f.size(), false);
  for (const auto& name : on) mask[x.factor_index(name)] = true;

  const auto dims = dims_of(f);
  const auto strides = strides_of(dims);
  const long d = x.dim();
  Matrix out(d, d);
  for (long r = 0; r < d; ++r) {
    for (long c = 0; c < d; ++c) {
      long r2 = r, c2 = c;
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (!mask[k]) continue;
        const int dr = digit_at(r, strides[k], dims[k]);
        const int dc = digit_at(c, strides[k], dims[k]);
        r2 += static_cast<long>(dc - dr) * strides[k];
        c2 += static_cast<long>(dr - dc) * strides[k];
      }
      out(r2, c2) = x.matrix()(r, c);
    }
  }
  return Operator(f, std::move(out));
}

Operator partial_trace(const Operator& x, const std::set<std::string>& drop) {
  const FactorList& f = x.factors();
  std::vector<bool> dropped(f.size(), false);
  for (const auto& name : drop) dropped[x.factor_index(name)] = true;

  FactorList kept;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!dropped[i]) kept.push_back(f[i]);
  if (kept.empty())
    throw InvalidState("partial_trace would drop every factor");

  const auto dims = dims_of(f);
  const auto strides = strides_of(dims);
  const auto kept_dims = dims_of(kept);
  const auto kept_strides = strides_of(kept_dims);

  auto strip = [&](long index) {
    long out = 0;
    int k = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (dropped[i]) continue;
      out += static_cast<long>(digit_at(index, strides[i], dims[i])) *
             kept_strides[k];
      ++k;
    }
    return out;
  };
  auto dropped_digits_equal = [&](long r, long c) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!dropped[i]) continue;
      if (digit_at(r, strides[i], dims[i]) != digit_at(c, strides[i], dims[i]))
        return false;
    }
    return true;
  };

  const long d = x.dim();
  Matrix out = Matrix::Zero(total_dimension(kept), total_dimension(kept));
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c)
      if (dropped_digits_equal(r, c)) out(strip(r), strip(c)) += x.matrix()(r, c);
  return Operator(std::move(kept), std::move(out));
}

Operator embed(const Operator& op, const FactorList& global) {
  check_factors(global);
  // map op factor -> position in global
  std::vector<int> pos;
  pos.reserve(op.factors().size());
  for (const auto& f : op.factors()) {
    int found = -1;
    for (std::size_t i = 0; i < global.size(); ++i) {
      if (global[i].name == f.name) {
        if (global[i].dimension != f.dimension)
          throw FactorMismatch("factor " + f.name +
                               " has different dimensions");
        found = static_cast<int>(i);
        break;
      }
    }
    if (found < 0) throw UnknownFactor("factor " + f.name + " not in target");
    pos.push_back(found);
  }

  const auto gdims = dims_of(global);
  const auto gstrides = strides_of(gdims);
  const auto odims = dims_of(op.factors());
  const auto ostrides = strides_of(odims);
  std::vector<bool> covered(global.size(), false);
  for (int p : pos) covered[p] = true;

  const long d = total_dimension(global);
  auto sub_index = [&](long gindex) {
    long out = 0;
    for (std::size_t k = 0; k < pos.size(); ++k)
      out += static_cast<long>(
                 digit_at(gindex, gstrides[pos[k]], gdims[pos[k]])) *
             ostrides[k];
    return out;
  };
  auto rest_equal = [&](long r, long c) {
    for (std::size_t i = 0; i < global.size(); ++i) {
      if (covered[i]) continue;
      if (digit_at(r, gstrides[i], gdims[i]) !=
          digit_at(c, gstrides[i], gdims[i]))
        return false;
    }
    return true;
  };

  Matrix out = Matrix::Zero(d, d);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c)
      if (rest_equal(r, c)) out(r, c) = op.matrix()(sub_index(r), sub_index(c));
  return Operator(global, std::move(out));
}

double expectation(const DensityMatrix& rho, const Operator& e) {
  if (!rho.op().same_factors(e))
    throw FactorMismatch("state and observable factor lists differ");
  const Complex t = (rho.matrix() * e.matrix()).trace();
  if (std::abs(t.imag()) > 1e-10)
    throw ImaginaryResidue("expectation has imaginary residue " +
                           std::to_string(t.imag()));
  return t.real();
}

Complex sandwich(const Vector& bra, const Matrix& m, const Vector& ket) {
  return bra.dot(m * ket);  // Eigen's dot conjugates the left argument
}

DensityMatrix nearest_density(const FactorList& factors, const Matrix& h) {
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  const Eigen::VectorXd lam = project_simplex(es.eigenvalues());
  Matrix out = es.eigenvectors() * lam.asDiagonal().toDenseMatrix().cast<Complex>() *
               es.eigenvectors().adjoint();
  // symmetrize away the last rounding (eval: the adjoint aliases out)
  out = (0.5 * (out + out.adjoint())).eval();
  return DensityMatrix(factors, std::move(out));
}

}  // namespace locc
