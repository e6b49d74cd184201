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
#include <numbers>

#include "locc/bellspace.hpp"
#include "locc/discretize.hpp"
#include "locc/families.hpp"
#include "locc/hypotests.hpp"

using namespace locc;

TEST_CASE("six-state set") {
  const auto& s = discretize::six_state_set();
  // three orthonormal pairs
  for (int p = 0; p < 3; ++p) {
    REQUIRE(std::abs(s.kets[2 * p].dot(s.kets[2 * p + 1])) < 1e-15);
    REQUIRE(std::abs(s.kets[2 * p].norm() - 1.0) < 1e-15);
  }
  // unbiased across pairs
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      if (i / 2 == j / 2) continue;
      REQUIRE(std::abs(std::norm(s.kets[i].dot(s.kets[j])) - 0.5) < 1e-15);
    }
}

TEST_CASE("six-state realization of the single-pair test") {
  const auto real = discretize::discretize_tu();
  const auto tu = tests::build_tu(2);

  SECTION("reconstruction is exact") {
    REQUIRE(max_abs_diff(real.reconstructed_t0.matrix(), tu.t0.matrix()) <
            1e-15);
  }

  SECTION("branch structure") {
    REQUIRE(real.branches.size() == 3);
    double total = 0;
    for (const auto& b : real.branches) total += b.probability;
    REQUIRE(std::abs(total - 1.0) < 1e-15);
  }

  SECTION("the standard branch accepts the reference state with certainty") {
    const Ket phi0 = maximally_entangled_ket(2);
    const auto& b = real.branches[0];
    double accept = 0;
    for (const auto& tuple : b.accepted) {
      const Vector v = kron(b.bases[0][tuple[0]], b.bases[1][tuple[1]]);
      accept += std::norm(v.dot(phi0.vector()));
    }
    REQUIRE(std::abs(accept - 1.0) < 1e-14);
  }

  SECTION("the circular branch pairs conjugate bases") {
    const auto& s = discretize::six_state_set();
    const auto& b = real.branches[2];
    // A measures {R, L}; the accepted tuples cross the outcomes
    REQUIRE((b.bases[0][0] - s.kets[4]).cwiseAbs().maxCoeff() < 1e-15);
    REQUIRE((b.bases[1][0] - s.kets[4]).cwiseAbs().maxCoeff() < 1e-15);
    REQUIRE(b.accepted == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  }
}

TEST_CASE("octahedral realization of the single-pair test") {
  const auto real = discretize::discretize_tu_octahedral();
  const auto tu = tests::build_tu(2);

  SECTION("24 equiprobable branches reconstruct the test") {
    REQUIRE(real.branches.size() == 24);
    REQUIRE(max_abs_diff(real.reconstructed_t0.matrix(), tu.t0.matrix()) <
            1e-12);
  }

  SECTION("the identity branch is the standard correlation test") {
    // one branch must measure in the standard basis on both sides
    bool found = false;
    for (const auto& b : real.branches) {
      if (std::abs(std::abs(b.bases[0][0](0)) - 1.0) < 1e-9 &&
          std::abs(std::abs(b.bases[1][0](0)) - 1.0) < 1e-9) {
        found = true;
        break;
      }
    }
    REQUIRE(found);
  }

  SECTION("branch operators collapse onto the three basis-pair tests") {
    std::vector<Matrix> distinct;
    for (const auto& b : real.branches) {
      Matrix op = Matrix::Zero(4, 4);
      for (const auto& tuple : b.accepted) {
        const Vector v = kron(b.bases[0][tuple[0]], b.bases[1][tuple[1]]);
        op += v * v.adjoint();
      }
      bool seen = false;
      for (const auto& q : distinct)
        if (max_abs_diff(op, q) < 1e-12) seen = true;
      if (!seen) distinct.push_back(op);
    }
    REQUIRE(distinct.size() == 3);
  }
}

TEST_CASE("branch projectors of the samplewise realization") {
  SECTION("rank-one product structure") {
    const Operator pi00 = discretize::build_pi_ij(0, 0);
    const auto& six = discretize::six_state_set();
    const Vector expect = kron(kron(six.kets[0], six.kets[0]),
                               kron(six.kets[2], six.kets[2]));
    REQUIRE(max_abs_diff(pi00.matrix(), Matrix(expect * expect.adjoint())) <
            1e-15);
  }

  SECTION("the four projectors are orthogonal with total trace four") {
    Matrix sum = Matrix::Zero(16, 16);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        sum += discretize::build_pi_ij(i, j).matrix();
    REQUIRE(std::abs(sum.trace().real() - 4.0) < 1e-14);
    REQUIRE(max_abs_diff(sum * sum, sum) < 1e-14);
  }

  SECTION("each branch accepts the reference state with weight 1/4") {
    const Ket phi0 = maximally_entangled_ket(2);
    const Vector ref = kron(phi0.vector(), phi0.vector());
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Complex v =
            sandwich(ref, discretize::build_pi_ij(i, j).matrix(), ref);
        REQUIRE(std::abs(v - Complex(0.25)) < 1e-14);
      }
  }

  SECTION("invalid indices are rejected") {
    REQUIRE_THROWS_AS(discretize::build_pi_ij(2, 0), InvalidState);
  }
}

TEST_CASE("finite realization of the samplewise-local test") {
  const auto real = discretize::discretize_tv();
  const auto tv = tests::build_tV();

  SECTION("48 branches reconstruct the test") {
    REQUIRE(real.branches.size() == 48);
    REQUIRE(max_abs_diff(real.reconstructed_t0.matrix(), tv.t0.matrix()) <
            1e-10);
  }

  SECTION("alignment angle") {
    const double x = discretize::tv_rotation_angle();
    // cos^2(4x) = 3/5 defines the angle
    REQUIRE(std::abs(std::cos(4 * x) * std::cos(4 * x) - 0.6) < 1e-15);
    REQUIRE(std::abs(x - 0.17117980075057071) < 1e-15);
  }

  SECTION("acceptance matches the correlation predicate") {
    for (const auto& b : real.branches) {
      REQUIRE(b.accepted.size() == 4);
      for (const auto& tuple : b.accepted) {
        REQUIRE(tuple[0] == tuple[1]);
        REQUIRE(tuple[2] == tuple[3]);
      }
    }
  }

  SECTION("linearity: branch-averaged acceptance equals the trace") {
    CounterRng rng(3);
    const DensityMatrix sigma = families::random_single_pair(rng);
    const DensityMatrix rho = sigma.tensor_power(2);
    double by_branches = 0;
    for (const auto& b : real.branches)
      for (const auto& tuple : b.accepted) {
        Vector v = b.bases[0][tuple[0]];
        for (std::size_t s = 1; s < b.bases.size(); ++s)
          v = kron(v, b.bases[s][tuple[s]]);
        by_branches += b.probability * sandwich(v, rho.matrix(), v).real();
      }
    const double by_trace = expectation(rho, real.reconstructed_t0);
    REQUIRE(std::abs(by_branches - by_trace) < 1e-12);
  }
}

TEST_CASE("rotated block weights") {
  const auto report = discretize::octahedral_weight_check();

  SECTION("closed forms hold on the angle grid") {
    REQUIRE(report.max_err_k3p < 1e-10);
    REQUIRE(report.max_err_k2p < 1e-10);
  }

  SECTION("raw traces cross at pi/16, rank-normalized weights at the "
          "alignment angle") {
    REQUIRE(std::abs(report.raw_crossing - std::numbers::pi / 16.0) < 1e-9);
    REQUIRE(std::abs(report.weight_crossing -
                     discretize::tv_rotation_angle()) < 1e-9);
  }

  SECTION("values at the alignment angle") {
    // cos^2 = 3/5 and sin^2 = 2/5, each over 8
    REQUIRE(std::abs(report.k3p_at_star - 0.6 / 8.0) < 1e-12);
    REQUIRE(std::abs(report.k2p_at_star - 0.4 / 8.0) < 1e-12);
    REQUIRE(report.weights_equal_at_star);
  }
}
