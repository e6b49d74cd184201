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

#include <catch2/catch_amalgamated.hpp>

#include "locc/bellspace.hpp"
#include "locc/discretize.hpp"
#include "locc/families.hpp"
#include "locc/groups.hpp"
#include "locc/hypotests.hpp"
#include "locc/protosim.hpp"

using namespace locc;

TEST_CASE("finite-realization simulation") {
  const auto tu = discretize::discretize_tu();

  SECTION("level zero: the reference state is always accepted") {
    const DensityMatrix pure(maximally_entangled_ket(2));
    const auto report = protosim::simulate(tu, pure, 20000, 1);
    REQUIRE(report.accept_count == report.shots);
    REQUIRE(report.beta_hat == 1.0);
  }

  SECTION("isotropic state matches the closed form within three sigma") {
    const DensityMatrix sigma = families::isotropic(0.7);
    const auto report = protosim::simulate(tu, sigma, 200000, 2);
    REQUIRE(std::abs(report.analytic_beta - (2 * 0.7 + 1) / 3.0) < 1e-12);
    REQUIRE(std::abs(report.z_score) < 3.0);
  }

  SECTION("samplewise realization against its closed form") {
    const auto tv = discretize::discretize_tv();
    const DensityMatrix sigma = families::bell_diagonal(0.1, 0.1, 0.1);
    const auto report = protosim::simulate(tv, sigma, 200000, 3);
    const double expect = tests::beta_formula(tests::TestName::TV, 2, 2, sigma);
    REQUIRE(std::abs(report.analytic_beta - expect) < 1e-10);
    REQUIRE(std::abs(report.z_score) < 3.0);
  }

  SECTION("determinism and report invariants") {
    const DensityMatrix sigma = families::isotropic(0.55);
    const auto a = protosim::simulate(tu, sigma, 5000, 99);
    const auto b = protosim::simulate(tu, sigma, 5000, 99);
    REQUIRE(a.accept_count == b.accept_count);
    REQUIRE(a.beta_hat == double(a.accept_count) / a.shots);
    REQUIRE(a.std_err ==
            std::sqrt(a.beta_hat * (1 - a.beta_hat) / a.shots));
    const auto c = protosim::simulate(tu, sigma, 5000, 100);
    REQUIRE(c.accept_count != a.accept_count);  // different seed, new draw
  }
}

TEST_CASE("teleportation protocol") {
  SECTION("perfect channel teleports every input") {
    const DensityMatrix pure(maximally_entangled_ket(2));
    const auto report =
        protosim::simulate_teleportation(pure, std::nullopt, 20000, 4);
    REQUIRE(report.beta_hat == 1.0);
  }

  SECTION("haar-averaged acceptance operator equals the single-pair test") {
    // the six mutually unbiased states form a 2-design, so the average is
    // the exact Haar integral of the degree-(2,2) acceptance operator
    const auto& six = discretize::six_state_set();
    Matrix avg = Matrix::Zero(4, 4);
    for (const auto& k : six.kets)
      avg += protosim::teleportation_acceptance_operator(
                 Eigen::Vector2cd(k(0), k(1)))
                 .matrix();
    avg /= 6.0;
    REQUIRE(max_abs_diff(avg, tests::build_tu(2).t0.matrix()) < 1e-12);
  }

  SECTION("isotropic channel estimates the closed form") {
    const DensityMatrix sigma = families::isotropic(0.5);
    const auto report =
        protosim::simulate_teleportation(sigma, std::nullopt, 200000, 5);
    REQUIRE(std::abs(report.analytic_beta - 2.0 / 3.0) < 1e-12);
    REQUIRE(std::abs(report.z_score) < 3.0);
  }

  SECTION("fixed input through a flipped channel: regression value") {
    const DensityMatrix phi1(bell::bell_basis().kets[1]);
    const Eigen::Vector2cd zero(1.0, 0.0);
    // the flipped channel teleports X|psi>, orthogonal to |0>
    const double exact = protosim::exact_teleportation_fidelity(phi1, zero);
    REQUIRE(std::abs(exact - 0.0) < 1e-12);
    const auto report =
        protosim::simulate_teleportation(phi1, zero, 5000, 6);
    REQUIRE(report.accept_count == 0);
  }

  SECTION("exact fidelity matches the Monte Carlo estimate per input") {
    CounterRng rng(7);
    const DensityMatrix sigma = families::random_single_pair(rng);
    const Eigen::Vector2cd psi =
        Eigen::Vector2cd(Complex(0.6, 0.0), Complex(0.48, 0.64));
    const double exact = protosim::exact_teleportation_fidelity(sigma, psi);
    const auto report = protosim::simulate_teleportation(sigma, psi, 200000, 8);
    REQUIRE(std::abs(report.analytic_beta - exact) < 1e-15);
    REQUIRE(std::abs(report.z_score) < 3.5);
  }
}

TEST_CASE("entanglement swapping protocol") {
  SECTION("perfect inputs swap perfectly") {
    const DensityMatrix pure(maximally_entangled_ket(2));
    const auto report = protosim::simulate_swapping(pure, 20000, 9);
    REQUIRE(report.beta_hat == 1.0);
  }

  SECTION("the twirled acceptance operator equals the pairwise test") {
    const Operator bare = protosim::swapping_acceptance_operator();
    const Operator averaged = twirl(bare, groups::Action::w(),
                                    {groups::TwirlScheme::Exact});
    REQUIRE(max_abs_diff(averaged.matrix(),
                         tests::build_tW().t0.matrix()) < 1e-12);
    // on the rotation-invariant line the bare round already matches
    const DensityMatrix iso = families::isotropic(0.6);
    const DensityMatrix two = iso.tensor_power(2);
    REQUIRE(std::abs(expectation(two, bare) -
                     (0.36 + 0.16 / 3.0)) < 1e-12);
  }

  SECTION("estimates at the threshold and above") {
    const auto quarter =
        protosim::simulate_swapping(families::isotropic(0.25), 200000, 10);
    REQUIRE(std::abs(quarter.analytic_beta - 0.25) < 1e-12);
    REQUIRE(std::abs(quarter.z_score) < 3.0);

    const auto high =
        protosim::simulate_swapping(families::isotropic(0.9), 200000, 11);
    REQUIRE(std::abs(high.analytic_beta - (0.81 + 0.01 / 3.0)) < 1e-12);
    REQUIRE(std::abs(high.z_score) < 3.0);
  }

  SECTION("non-isotropic states still match the closed form") {
    const DensityMatrix sigma = families::bell_diagonal(0.2, 0.1, 0.05);
    const auto report = protosim::simulate_swapping(sigma, 200000, 12);
    const double theta = bell::fidelity_theta(sigma);
    REQUIRE(std::abs(report.analytic_beta -
                     (theta * theta + (1 - theta) * (1 - theta) / 3.0)) <
            1e-12);
    REQUIRE(std::abs(report.z_score) < 3.0);
  }
}

TEST_CASE("statistical consistency across seeds") {
  // four standard errors, many independent seeds: the fraction of outliers
  // must stay tiny
  const auto tu = discretize::discretize_tu();
  const DensityMatrix sigma = families::isotropic(0.8);
  int bad = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto report = protosim::simulate(tu, sigma, 20000, seed);
    if (std::abs(report.z_score) > 4.0) ++bad;
  }
  REQUIRE(bad <= 1);
}
