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
#include <vector>

#include "locc/hypotests.hpp"
#include "locc/qcore.hpp"

namespace locc::discretize {

/// One randomized branch of a finite LOCC protocol: each subsystem is
/// measured independently in a rank-one orthonormal basis, and a tuple of
/// outcomes either accepts or rejects.  Only this schema is allowed, which
/// is what makes every realization manifestly local.
struct Branch {
  double probability;
  /// bases[s][o] is outcome o of subsystem s, in the global factor order.
  std::vector<std::vector<Vector>> bases;
  /// accepted outcome tuples (one index per subsystem)
  std::vector<std::vector<int>> accepted;
};

struct FiniteRealization {
  tests::TestName target;
  FactorList space;
  std::vector<Branch> branches;
  Operator reconstructed_t0;
};

/// Sum over branches of prob * sum of accepted product projectors.
Operator reconstruct(const FactorList& space, const std::vector<Branch>& bs);

/// The three mutually unbiased qubit bases, as six states
/// {0, 1, D, X, R, L}.
struct SixStateSet {
  std::array<Vector, 6> kets;
};

const SixStateSet& six_state_set();

/// Three equiprobable branches (standard, diagonal and circular bases on
/// both parties); reproduces the optimal single-pair test exactly.
FiniteRealization discretize_tu();

/// 24 equiprobable branches, one per octahedral rotation of the
/// standard-basis correlation test.
FiniteRealization discretize_tu_octahedral();

/// Rank-one projector onto |i>_{A1} |i>_{B1} |psi_j>_{A2} |psi_j>_{B2}
/// with psi_j = (|0> + (-1)^j |1>)/sqrt2, for i, j in {0, 1}.
Operator build_pi_ij(int i, int j);

/// Rotation angle of the extra alignment element used by the finite
/// realization of the samplewise-local test: arccos(sqrt(3/5)) / 4.
double tv_rotation_angle();

/// 48 branches (24 octahedral rotations, each with an optional swap of the
/// two samples); reproduces the samplewise-local optimal test.
FiniteRealization discretize_tv();

/// Direct traces of the two 5-dim sub-blocks against the rotated branch
/// projectors, checked against their closed forms cos^2(4x)/8 and
/// sin^2(4x)/8, plus the measured crossing angles.
struct OctWeightReport {
  double max_err_k3p;          // formula vs direct, over the angle grid
  double max_err_k2p;
  double raw_crossing;         // angle where the two raw traces cross
  double weight_crossing;      // angle where the rank-normalized weights cross
  double k3p_at_star;          // values at the alignment angle
  double k2p_at_star;
  bool weights_equal_at_star;  // rank-normalized weights agree at the angle
};

OctWeightReport octahedral_weight_check();

}  // namespace locc::discretize
