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

#include "locc/bellspace.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace locc::bell {

namespace {

constexpr Complex kI{0.0, 1.0};

FactorList two_pair_factors() { return sample_pairs(2, 2); }

// e^{ij} = |phi^i>_1 |phi^j>_2 as a 16-vector in the global ordering.
Vector e_vec(int i, int j) {
  const auto& basis = bell_basis();
  return kron(basis.kets[i].vector(), basis.kets[j].vector());
}

Operator projector_from_span(const std::vector<Vector>& orthonormal) {
  Matrix p = Matrix::Zero(16, 16);
  for (const auto& v : orthonormal) p += v * v.adjoint();
  return Operator(two_pair_factors(), std::move(p));
}

void validate_projector(const SubspaceProjector& p) {
  const Matrix& m = p.op.matrix();
  if (max_abs_diff(m * m, m) > 1e-12)
    throw InvalidState("projector is not idempotent");
  if (!is_hermitian(m)) throw InvalidState("projector is not Hermitian");
  if (std::abs(m.trace().real() - p.rank) > 1e-12)
    throw InvalidState("projector trace does not match rank");
}

// Builds the full family once, in dependency order.  The composite labels
// (K6p, K5p, L3p, L3m) are sums/differences of commuting projectors; the
// 3-dim pieces of the symmetric/antisymmetric blocks have no canonical
// spanning vectors (the split into equivalent representations is not
// unique), so subtraction is the canonical definition.
std::map<Subspace, SubspaceProjector> build_all_projectors() {
  const double s2 = std::sqrt(2.0);
  const double s3 = std::sqrt(3.0);
  const Complex omega = std::exp(2.0 * std::numbers::pi * kI / 3.0);

  std::map<Subspace, SubspaceProjector> out;
  auto add = [&](Subspace label, Operator op, int rank) {
    SubspaceProjector p{label, std::move(op), rank};
    validate_projector(p);
    out.emplace(label, std::move(p));
  };

  add(Subspace::L1p, projector_from_span({e_vec(0, 0)}), 1);
  add(Subspace::K1p,
      projector_from_span({(e_vec(1, 1) + e_vec(2, 2) + e_vec(3, 3)) / s3}), 1);

  std::vector<Vector> sym3, alt3, sym4, alt4;
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      sym3.push_back((e_vec(i, j) + e_vec(j, i)) / s2);
      alt3.push_back((e_vec(i, j) - e_vec(j, i)) / s2);
    }
  for (int i = 0; i <= 3; ++i) sym4.push_back(e_vec(i, i));
  for (int i = 0; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      sym4.push_back((e_vec(i, j) + e_vec(j, i)) / s2);
      alt4.push_back((e_vec(i, j) - e_vec(j, i)) / s2);
    }
  add(Subspace::K3p, projector_from_span(sym3), 3);
  add(Subspace::K3m, projector_from_span(alt3), 3);
  add(Subspace::M10p, projector_from_span(sym4), 10);
  add(Subspace::M6m, projector_from_span(alt4), 6);

  // The two omega-weighted diagonals are conjugates of each other, so the
  // projector onto their span is real.
  add(Subspace::K2p,
      projector_from_span(
          {(e_vec(1, 1) + omega * e_vec(2, 2) + omega * omega * e_vec(3, 3)) / s3,
           (e_vec(1, 1) + omega * omega * e_vec(2, 2) + omega * e_vec(3, 3)) / s3}),
      2);

  add(Subspace::K6p,
      out.at(Subspace::K1p).op + out.at(Subspace::K3p).op +
          out.at(Subspace::K2p).op,
      6);
  add(Subspace::K5p, out.at(Subspace::K3p).op + out.at(Subspace::K2p).op, 5);
  add(Subspace::L3p,
      out.at(Subspace::M10p).op - out.at(Subspace::K6p).op -
          out.at(Subspace::L1p).op,
      3);
  add(Subspace::L3m, out.at(Subspace::M6m).op - out.at(Subspace::K3m).op, 3);
  return out;
}

}  // namespace

const BellBasis& bell_basis() {
  static const BellBasis basis = [] {
    const double s2 = std::sqrt(2.0);
    Vector v0(4), v1(4), v2(4), v3(4);
    v0 << 1.0 / s2, 0, 0, 1.0 / s2;
    v1 << 0, kI / s2, kI / s2, 0;
    v2 << 0, -1.0 / s2, 1.0 / s2, 0;
    v3 << kI / s2, 0, 0, -kI / s2;
    FactorList f = single_pair(2);
    return BellBasis{{Ket(f, v0), Ket(f, v1), Ket(f, v2), Ket(f, v3)}};
  }();
  return basis;
}

BellMatrix bell_expression(const DensityMatrix& sigma) {
  if (sigma.dim() != 4)
    throw InvalidState("bell_expression expects a single qubit pair");
  const auto& basis = bell_basis();
  BellMatrix x;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      x(i, j) = sandwich(basis.kets[i].vector(), sigma.matrix(),
                         basis.kets[j].vector());
  return x;
}

DensityMatrix from_bell_expression(const BellMatrix& x) {
  const auto& basis = bell_basis();
  Matrix m = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m += x(i, j) * basis.kets[i].vector() * basis.kets[j].vector().adjoint();
  return DensityMatrix(single_pair(2), std::move(m));
}

double fidelity_theta(const DensityMatrix& sigma) {
  const auto& phi0 = bell_basis().kets[0];
  const Complex t = sandwich(phi0.vector(), sigma.matrix(), phi0.vector());
  return t.real();
}

std::string_view subspace_name(Subspace label) {
  switch (label) {
    case Subspace::K5p: return "K5+";
    case Subspace::K6p: return "K6+";
    case Subspace::K3p: return "K3+";
    case Subspace::K2p: return "K2+";
    case Subspace::K1p: return "K1+";
    case Subspace::K3m: return "K3-";
    case Subspace::L1p: return "L1+";
    case Subspace::L3p: return "L3+";
    case Subspace::L3m: return "L3-";
    case Subspace::M10p: return "M10+";
    case Subspace::M6m: return "M6-";
  }
  throw UnknownLabel("unknown subspace label");
}

const std::array<Subspace, 6>& partition_labels() {
  static const std::array<Subspace, 6> labels = {
      Subspace::K5p, Subspace::K1p, Subspace::K3m,
      Subspace::L1p, Subspace::L3p, Subspace::L3m};
  return labels;
}

const SubspaceProjector& projector(Subspace label) {
  // write-once cache; thread-safe through static initialization
  static const std::map<Subspace, SubspaceProjector> cache =
      build_all_projectors();
  auto it = cache.find(label);
  if (it == cache.end()) throw UnknownLabel("unknown subspace label");
  return it->second;
}

const Operator& ab_transposition() {
  static const Operator op = [] {
    // |i j k l> -> (-1)^{i+j+k+l} |1-j, 1-i, 1-l, 1-k>
    Matrix m = Matrix::Zero(16, 16);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            const int src = ((i * 2 + j) * 2 + k) * 2 + l;
            const int dst = (((1 - j) * 2 + (1 - i)) * 2 + (1 - l)) * 2 + (1 - k);
            m(dst, src) = ((i + j + k + l) % 2 == 0) ? 1.0 : -1.0;
          }
    return Operator(two_pair_factors(), std::move(m));
  }();
  return op;
}

const Operator& sample_swap() {
  static const Operator op = [] {
    Matrix m = Matrix::Zero(16, 16);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            const int src = ((i * 2 + j) * 2 + k) * 2 + l;
            const int dst = ((k * 2 + l) * 2 + i) * 2 + j;
            m(dst, src) = 1.0;
          }
    return Operator(two_pair_factors(), std::move(m));
  }();
  return op;
}

std::map<Subspace, TracePair> subspace_traces(const DensityMatrix& sigma) {
  const BellMatrix x = bell_expression(sigma);
  const DensityMatrix two = sigma.tensor_power(2);

  auto re2 = [](Complex z) { return z.real() * z.real(); };
  auto im2 = [](Complex z) { return z.imag() * z.imag(); };

  double diag_sq = 0, pair_sq = 0, off_re2 = 0, off_im2 = 0, off_abs2 = 0,
         diag_prod = 0, trace3 = 0;
  for (int i = 1; i <= 3; ++i) {
    trace3 += x(i, i).real();
    diag_sq += re2(x(i, i));
    for (int j = i + 1; j <= 3; ++j) {
      const double sii = x(i, i).real(), sjj = x(j, j).real();
      pair_sq += (sii + sjj) * (sii + sjj);
      diag_prod += sii * sjj;
      off_re2 += re2(x(i, j));
      off_im2 += im2(x(i, j));
      off_abs2 += std::norm(x(i, j));
    }
  }
  const double theta = x(0, 0).real();
  double cross_abs2 = 0;  // sum_i |x_{0i}|^2
  for (int i = 1; i <= 3; ++i) cross_abs2 += std::norm(x(0, i));

  // sum over the full 3x3 block of x_{ij}^2 (complex squares; the total is
  // real because x is Hermitian)
  Complex block_sq = 0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) block_sq += x(i, j) * x(i, j);

  std::map<Subspace, double> formula;
  formula[Subspace::K5p] = trace3 * trace3 / 3.0 + pair_sq / 6.0 +
                           4.0 / 3.0 * off_im2 + off_abs2 / 3.0;
  formula[Subspace::L3p] = theta * trace3 + cross_abs2;
  formula[Subspace::K1p] = block_sq.real() / 3.0;
  formula[Subspace::L1p] = theta * theta;
  formula[Subspace::K3m] = diag_prod - off_abs2;
  formula[Subspace::L3m] = theta * trace3 - cross_abs2;

  std::map<Subspace, TracePair> out;
  for (Subspace label : partition_labels()) {
    const auto& p = projector(label);
    const double direct = expectation(two, p.op);
    const double f = formula[label];
    if (std::abs(direct - f) > 1e-10)
      throw FormulaMismatch(std::string("subspace trace formula for ") +
                            std::string(subspace_name(label)) +
                            " deviates by " + std::to_string(direct - f));
    out[label] = TracePair{direct, f};
  }
  return out;
}

}  // namespace locc::bell
