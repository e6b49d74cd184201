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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <set>
#include <string>
#include <vector>

#include "locc/errors.hpp"

namespace locc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Numerical contracts shared by the whole library.  All operator
// comparisons use the max-abs-entry metric.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kPositivityFloor = -1e-10;
inline constexpr double kOperatorEqTol = 1e-10;
inline constexpr int kDimensionCap = 4096;

/// One tensor factor of a composite Hilbert space.  Factors are identified
/// by name ("A", "B1", ...) and carry their local dimension.
struct HilbertLabel {
  std::string name;
  int dimension = 2;

  friend bool operator==(const HilbertLabel&, const HilbertLabel&) = default;
};

using FactorList = std::vector<HilbertLabel>;

/// {A, B}, each of dimension d.
FactorList single_pair(int d);

/// {A1, B1, ..., An, Bn}; reduces to {A, B} for n = 1.  This ordering is
/// the global convention: every operator on the n-pair space is
/// materialized with the factors interleaved pair by pair.
FactorList sample_pairs(int d, int n);

int total_dimension(const FactorList& factors);

double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);
bool is_hermitian(const Matrix& m, double tol = kHermitianTol);
bool is_unitary(const Matrix& m, double tol = kUnitaryTol);
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);
double min_eigenvalue(const Matrix& hermitian);

/// Dense operator over an ordered list of labeled tensor factors.
/// Immutable after construction; any value may be shared between threads.
class Operator {
 public:
  Operator(FactorList factors, Matrix m);

  static Operator identity(FactorList factors);

  const FactorList& factors() const { return factors_; }
  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  /// Position of the named factor; throws UnknownFactor.
  int factor_index(const std::string& name) const;
  bool has_factor(const std::string& name) const;
  bool same_factors(const Operator& other) const;

  Operator adjoint() const { return Operator(factors_, m_.adjoint()); }
  Complex trace() const { return m_.trace(); }

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Complex c, const Operator& a);
  friend Operator operator*(double c, const Operator& a);

 private:
  FactorList factors_;
  Matrix m_;
};

/// Pure-state vector over labeled factors; unit norm within 1e-12.
class Ket {
 public:
  Ket(FactorList factors, Vector v);

  const FactorList& factors() const { return factors_; }
  const Vector& vector() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }

 private:
  FactorList factors_;
  Vector v_;
};

/// |k><k| as an Operator.
Operator projector(const Ket& k);

/// Hermitian, unit-trace, positive-semidefinite operator.
class DensityMatrix {
 public:
  DensityMatrix(FactorList factors, Matrix m);
  explicit DensityMatrix(const Ket& k);

  const Operator& op() const { return op_; }
  const FactorList& factors() const { return op_.factors(); }
  const Matrix& matrix() const { return op_.matrix(); }
  int dim() const { return op_.dim(); }

  /// n independent copies with factors relabeled A1,B1,...,An,Bn
  /// (identity for n = 1).  Throws DimensionCap above the global cap.
  DensityMatrix tensor_power(int n) const;

 private:
  Operator op_;
};

/// (1/sqrt(d)) sum_i |i>_A |i>_B on {A, B}.
Ket maximally_entangled_ket(int d);

/// Kronecker product with concatenated factor lists.  Factor names must be
/// disjoint (DuplicateFactor otherwise).
Operator tensor(const Operator& a, const Operator& b);
Ket tensor(const Ket& a, const Ket& b);

/// Transposition of the indices belonging to `on` only (standard basis).
Operator partial_transpose(const Operator& x, const std::set<std::string>& on);

/// Trace over the factors in `drop`; preserves the total trace.
Operator partial_trace(const Operator& x, const std::set<std::string>& drop);

/// Extend `op` by identity on the missing factors of `global` and reorder
/// so the result is expressed on `global` exactly.
Operator embed(const Operator& op, const FactorList& global);

/// Tr(rho * e).  The imaginary residue must stay below 1e-10
/// (ImaginaryResidue otherwise; that signals a non-Hermitian observable).
double expectation(const DensityMatrix& rho, const Operator& e);

/// <bra| m |ket>.
Complex sandwich(const Vector& bra, const Matrix& m, const Vector& ket);

/// Frobenius-nearest density matrix to a Hermitian input: eigenvalues are
/// projected onto the probability simplex.
DensityMatrix nearest_density(const FactorList& factors, const Matrix& h);

}  // namespace locc
