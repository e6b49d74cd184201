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

#include "locc/qcore.hpp"
#include "locc/rng.hpp"

namespace locc::families {

/// theta |phi0><phi0| + (1 - theta) (I - |phi0><phi0|) / (d^2 - 1).
DensityMatrix isotropic(double theta, int d = 2);

/// Mixture of the four Bell projectors with weights (1-p-q-r, p, q, r).
DensityMatrix bell_diagonal(double p, double q, double r);

/// One-parameter line used for the performance plots: x_00 = theta,
/// x_ii = (1 - theta)/3 for i = 1..3, and every off-diagonal x_ij
/// (1 <= i != j <= 3) set to the common real value `offdiag`; the result
/// is projected to the nearest valid density matrix when the raw
/// coefficient matrix is not positive.
DensityMatrix figure_line(double theta, double offdiag = 0.0);

/// Hilbert-Schmidt random density matrix (Ginibre construction).
DensityMatrix random_density(const FactorList& factors, CounterRng& rng);

DensityMatrix random_single_pair(CounterRng& rng, int d = 2);

/// Random single qubit-pair state with a prescribed fidelity x_00 = theta;
/// realized by mixing a random state toward |phi0><phi0| (or toward the
/// orthogonal complement when the random draw overshoots).
DensityMatrix random_with_theta(double theta, CounterRng& rng);

}  // namespace locc::families
