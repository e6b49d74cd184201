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

#include <cstdint>
#include <optional>

#include "locc/discretize.hpp"
#include "locc/qcore.hpp"
#include "locc/rng.hpp"

namespace locc::protosim {

struct SimulationReport {
  long shots;
  long accept_count;
  double beta_hat;       // accept_count / shots
  double std_err;        // sqrt(beta_hat (1 - beta_hat) / shots)
  double analytic_beta;  // exact reference value
  // (beta_hat - analytic) over the null standard error
  // sqrt(analytic (1 - analytic) / shots); finite even at saturation
  double z_score;
};

/// Runs a finite LOCC realization shot by shot: sample a branch, sample
/// the joint product-measurement outcome by the Born rule, apply the
/// acceptance predicate.  Shot i draws from the substream (seed, i), so
/// the result is reproducible independently of evaluation order.
SimulationReport simulate(const discretize::FiniteRealization& realization,
                          const DensityMatrix& sigma, long shots,
                          std::uint64_t seed);

/// One teleportation round with channel state sigma and input psi:
/// maximally entangled measurement on the sender pair, classical
/// correction on the receiver, then the {keep, reject} measurement on the
/// teleported state.  Returns the exact acceptance probability.
double exact_teleportation_fidelity(const DensityMatrix& sigma,
                                    const Eigen::Vector2cd& psi);

/// Acceptance POVM element of the teleportation round as an operator on
/// the channel pair (success probability = Tr(sigma E)).
Operator teleportation_acceptance_operator(const Eigen::Vector2cd& psi);

/// Monte Carlo teleportation.  With no fixed input the input state is
/// Haar-random per shot, and the mean acceptance estimates the type 2
/// error of the optimal single-pair test.
SimulationReport simulate_teleportation(
    const DensityMatrix& sigma, std::optional<Eigen::Vector2cd> fixed_input,
    long shots, std::uint64_t seed);

/// Acceptance POVM element of one bare swapping round (no randomization)
/// on the two-pair space.  Its average over independent local rotations of
/// the two pairs equals the accepting element of the pairwise-invariant
/// optimal test; on rotation-invariant states the bare round already
/// matches it.
Operator swapping_acceptance_operator();

/// Monte Carlo entanglement swapping: per shot, independent random local
/// rotations of the two pairs, a maximally entangled measurement across
/// the two sender halves, correction on one receiver half, then the
/// fidelity measurement onto the maximally entangled state of the
/// receiver pair.  The mean acceptance estimates the type 2 error of the
/// pairwise-invariant optimal test for every input state.
SimulationReport simulate_swapping(const DensityMatrix& sigma, long shots,
                                   std::uint64_t seed);

}  // namespace locc::protosim
