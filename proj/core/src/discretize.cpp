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

#include "locc/discretize.hpp"

#include <cmath>
#include <numbers>

#include "locc/bellspace.hpp"
#include "locc/groups.hpp"

namespace locc::discretize {

namespace {

constexpr Complex kI{0.0, 1.0};

void validate_branches(const std::vector<Branch>& branches) {
  double total = 0.0;
  for (const auto& b : branches) {
    total += b.probability;
    for (const auto& basis : b.bases) {
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (std::abs(basis[i].norm() - 1.0) > 1e-12)
          throw InvalidState("branch basis vector is not unit norm");
        for (std::size_t j = i + 1; j < basis.size(); ++j)
          if (std::abs(basis[i].dot(basis[j])) > 1e-12)
            throw InvalidState("branch basis is not orthogonal");
      }
    }
    for (const auto& tuple : b.accepted)
      if (tuple.size() != b.bases.size())
        throw InvalidState("outcome tuple arity mismatch");
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidState("branch probabilities do not sum to one");
}

FiniteRealization make_realization(tests::TestName target, FactorList space,
                                   std::vector<Branch> branches,
                                   const Operator& reference, double tol) {
  validate_branches(branches);
  Operator rec = reconstruct(space, branches);
  const double err = max_abs_diff(rec.matrix(), reference.matrix());
  if (err > tol)
    throw ReconstructionMismatch(
        "finite realization deviates from its target by " +
        std::to_string(err));
  return FiniteRealization{target, std::move(space), std::move(branches),
                           std::move(rec)};
}

// Branch where every subsystem of `space` is measured in a two-outcome
// basis and the accepted tuples are given explicitly.
Branch correlation_branch(double probability,
                          std::vector<std::vector<Vector>> bases,
                          std::vector<std::vector<int>> accepted) {
  return Branch{probability, std::move(bases), std::move(accepted)};
}

std::vector<Vector> basis2(const Vector& a, const Vector& b) { return {a, b}; }

}  // namespace

Operator reconstruct(const FactorList& space, const std::vector<Branch>& bs) {
  const int dim = total_dimension(space);
  Matrix acc = Matrix::Zero(dim, dim);
  for (const auto& b : bs) {
    for (const auto& tuple : b.accepted) {
      Vector v = b.bases[0][tuple[0]];
      for (std::size_t s = 1; s < b.bases.size(); ++s)
        v = kron(v, b.bases[s][tuple[s]]);
      acc += b.probability * (v * v.adjoint());
    }
  }
  return Operator(space, std::move(acc));
}

const SixStateSet& six_state_set() {
  static const SixStateSet set = [] {
    const double s2 = std::sqrt(2.0);
    Vector k0(2), k1(2), kd(2), kx(2), kr(2), kl(2);
    k0 << 1, 0;
    k1 << 0, 1;
    kd << 1 / s2, 1 / s2;
    kx << 1 / s2, -1 / s2;
    kr << 1 / s2, kI / s2;
    kl << 1 / s2, -kI / s2;
    return SixStateSet{{k0, k1, kd, kx, kr, kl}};
  }();
  return set;
}

FiniteRealization discretize_tu() {
  const auto& s = six_state_set();
  const FactorList space = single_pair(2);
  const std::vector<std::vector<int>> same = {{0, 0}, {1, 1}};
  const std::vector<std::vector<int>> crossed = {{0, 1}, {1, 0}};
  std::vector<Branch> branches;
  // standard and diagonal bases correlate directly; the circular pair
  // correlates R on one side with L on the other
  branches.push_back(correlation_branch(
      1.0 / 3, {basis2(s.kets[0], s.kets[1]), basis2(s.kets[0], s.kets[1])},
      same));
  branches.push_back(correlation_branch(
      1.0 / 3, {basis2(s.kets[2], s.kets[3]), basis2(s.kets[2], s.kets[3])},
      same));
  branches.push_back(correlation_branch(
      1.0 / 3, {basis2(s.kets[4], s.kets[5]), basis2(s.kets[4], s.kets[5])},
      crossed));
  const auto reference = tests::build_tu(2);
  return make_realization(tests::TestName::Tu, space, std::move(branches),
                          reference.t0, 1e-15);
}

FiniteRealization discretize_tu_octahedral() {
  const auto& oct = groups::octahedral_group();
  const FactorList space = single_pair(2);
  Vector k0(2), k1(2);
  k0 << 1, 0;
  k1 << 0, 1;
  const std::vector<std::vector<int>> same = {{0, 0}, {1, 1}};
  std::vector<Branch> branches;
  branches.reserve(24);
  for (const auto& g : oct.elements) {
    const Eigen::Matrix2cd ad = g.adjoint();
    const Eigen::Matrix2cd tr = g.transpose();
    // A measures in {g^dag |i>}, B in the conjugate basis {g^T |i>}
    branches.push_back(correlation_branch(
        1.0 / 24, {basis2(ad * k0, ad * k1), basis2(tr * k0, tr * k1)}, same));
  }
  const auto reference = tests::build_tu(2);
  return make_realization(tests::TestName::Tu, space, std::move(branches),
                          reference.t0, 1e-12);
}

Operator build_pi_ij(int i, int j) {
  if ((i != 0 && i != 1) || (j != 0 && j != 1))
    throw InvalidState("build_pi_ij needs i, j in {0, 1}");
  const auto& s = six_state_set();
  const Vector& basis_i = i == 0 ? s.kets[0] : s.kets[1];
  const Vector& psi_j = j == 0 ? s.kets[2] : s.kets[3];
  Vector v = kron(kron(basis_i, basis_i), kron(psi_j, psi_j));
  return projector(Ket(sample_pairs(2, 2), std::move(v)));
}

double tv_rotation_angle() {
  return std::acos(std::sqrt(3.0 / 5.0)) / 4.0;
}

namespace {

// h_x maps cos(x)|0> + sin(x)|1> to |0>: a real rotation in SU(2).
Eigen::Matrix2cd rotation_to_zero(double x) {
  Eigen::Matrix2cd m;
  m << std::cos(x), std::sin(x), -std::sin(x), std::cos(x);
  return m;
}

}  // namespace

FiniteRealization discretize_tv() {
  const auto& s = six_state_set();
  const auto& oct = groups::octahedral_group();
  const FactorList space = sample_pairs(2, 2);
  const Eigen::Matrix2cd hstar = rotation_to_zero(tv_rotation_angle());

  // accept iff A1 and B1 agree and A2 and B2 agree
  std::vector<std::vector<int>> accepted;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) accepted.push_back({a, a, b, b});

  std::vector<Branch> branches;
  branches.reserve(48);
  for (const auto& g : oct.elements) {
    const Eigen::Matrix2cd k = hstar * g;
    const Eigen::Matrix2cd ad = k.adjoint();
    const Eigen::Matrix2cd tr = k.transpose();
    const auto std_a = basis2(ad * s.kets[0], ad * s.kets[1]);
    const auto std_b = basis2(tr * s.kets[0], tr * s.kets[1]);
    const auto diag_a = basis2(ad * s.kets[2], ad * s.kets[3]);
    const auto diag_b = basis2(tr * s.kets[2], tr * s.kets[3]);
    // pair 1 in the rotated standard basis, pair 2 in the rotated diagonal
    // basis; the swapped variant exchanges the two roles
    branches.push_back(correlation_branch(
        1.0 / 48, {std_a, std_b, diag_a, diag_b}, accepted));
    branches.push_back(correlation_branch(
        1.0 / 48, {diag_a, diag_b, std_a, std_b}, accepted));
  }
  const auto reference = tests::build_tV();
  return make_realization(tests::TestName::TV, space, std::move(branches),
                          reference.t0, 1e-10);
}

OctWeightReport octahedral_weight_check() {
  using bell::Subspace;
  const Operator& k3p = bell::projector(Subspace::K3p).op;
  const Operator& k2p = bell::projector(Subspace::K2p).op;

  // per-branch traces; the closed forms claim the same value for all four
  // (i, j), so every branch is checked individually
  auto traces_ij = [&](double x) {
    const groups::Su2 hx(rotation_to_zero(x));
    const Matrix v = groups::v_action(hx).matrix();
    std::array<std::pair<double, double>, 4> out;
    int k = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Matrix rotated = v.adjoint() * build_pi_ij(i, j).matrix() * v;
        out[k++] = {(k3p.matrix() * rotated).trace().real(),
                    (k2p.matrix() * rotated).trace().real()};
      }
    return out;
  };
  auto traces_at = [&](double x) {
    const auto all = traces_ij(x);
    return all[0];
  };

  OctWeightReport report{};
  const double xstar = tv_rotation_angle();
  double max3 = 0.0, max2 = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double x = k * (std::numbers::pi / 8.0) / 20.0;
    const double f3 = std::cos(4 * x) * std::cos(4 * x) / 8;
    const double f2 = std::sin(4 * x) * std::sin(4 * x) / 8;
    for (const auto& [t3, t2] : traces_ij(x)) {
      max3 = std::max(max3, std::abs(t3 - f3));
      max2 = std::max(max2, std::abs(t2 - f2));
    }
  }
  report.max_err_k3p = max3;
  report.max_err_k2p = max2;

  // crossing of the raw traces and of the rank-normalized weights, by
  // bisection of the measured values on [0, pi/8]
  auto bisect = [&](auto f) {
    double lo = 0.0, hi = std::numbers::pi / 8.0;
    double flo = f(lo);
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if ((flo > 0) == (fm > 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  report.raw_crossing = bisect([&](double x) {
    const auto [t3, t2] = traces_at(x);
    return t3 - t2;
  });
  report.weight_crossing = bisect([&](double x) {
    const auto [t3, t2] = traces_at(x);
    return t3 / 3.0 - t2 / 2.0;
  });

  const auto [s3, s2] = traces_at(xstar);
  report.k3p_at_star = s3;
  report.k2p_at_star = s2;
  report.weights_equal_at_star = std::abs(s3 / 3.0 - s2 / 2.0) < 1e-10;
  return report;
}

}  // namespace locc::discretize
