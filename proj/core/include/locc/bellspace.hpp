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

#include <array>
#include <map>
#include <string_view>

#include "locc/qcore.hpp"

namespace locc::bell {

/// The magic Bell basis on one qubit pair {A, B}:
///   phi0 = (|00> + |11>)/sqrt2
///   phi1 = i(|01> + |10>)/sqrt2
///   phi2 = (-|01> + |10>)/sqrt2
///   phi3 = i(|00> - |11>)/sqrt2
/// With these phases the two-qubit rotation group acts on span{phi1,phi2,phi3}
/// by real orthogonal matrices.
struct BellBasis {
  std::array<Ket, 4> kets;
};

const BellBasis& bell_basis();

/// x_{ij} = <phi^i| sigma |phi^j> for a single-pair qubit state.
using BellMatrix = Eigen::Matrix4cd;

BellMatrix bell_expression(const DensityMatrix& sigma);

/// Inverse of bell_expression: sigma = sum_ij x_ij |phi^i><phi^j|.
DensityMatrix from_bell_expression(const BellMatrix& x);

/// Fidelity to the maximally entangled state, theta = x_00.
double fidelity_theta(const DensityMatrix& sigma);

/// Invariant subspaces of the two-pair space under the diagonal rotation
/// action, in the product basis e^{ij} = |phi^i>_1 |phi^j>_2.  Viewing a
/// 16-vector as a 4x4 coefficient matrix X:
///   K6p  : symmetric 3x3 lower block (indices 1..3)
///   K1p  : multiples of the 3x3 identity inside K6p
///   K3p  : off-diagonal symmetric part of K6p
///   K2p  : traceless diagonal part of K6p (spanned by the two
///          omega-weighted diagonals, omega = exp(2 pi i / 3))
///   K5p  : K6p - K1p = K3p + K2p
///   K3m  : antisymmetric 3x3 lower block
///   M10p : all symmetric 4x4
///   M6m  : all antisymmetric 4x4
///   L1p  : multiples of e^{00}
///   L3p  : M10p - K6p - L1p
///   L3m  : M6m - K3m
enum class Subspace { K5p, K6p, K3p, K2p, K1p, K3m, L1p, L3p, L3m, M10p, M6m };

struct SubspaceProjector {
  Subspace label;
  Operator op;
  int rank;
};

/// Projector for a label; built once and cached (UnknownLabel for bad input).
const SubspaceProjector& projector(Subspace label);

std::string_view subspace_name(Subspace label);

/// The six mutually orthogonal projectors that partition the 16-dim space:
/// K5p, K1p, K3m, L1p, L3p, L3m.
const std::array<Subspace, 6>& partition_labels();

/// Signed basis permutation exchanging the roles of the two local parties
/// on both pairs; an involutive 16x16 unitary.  On the e^{ij} basis it acts
/// as diag(-1, I3) (x) diag(-1, I3).
const Operator& ab_transposition();

/// Unitary swapping (A1,B1) <-> (A2,B2); transposition of the coefficient
/// matrix X in the e^{ij} picture.
const Operator& sample_swap();

struct TracePair {
  double direct;
  double formula;
};

/// Tr(sigma^{(x)2} P) for each of the six partition projectors, computed
/// both from the 16x16 matrices and from closed-form polynomials in x_{ij}.
/// The two routes must agree to 1e-10 (FormulaMismatch otherwise).
std::map<Subspace, TracePair> subspace_traces(const DensityMatrix& sigma);

}  // namespace locc::bell
