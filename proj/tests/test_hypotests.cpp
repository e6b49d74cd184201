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

using namespace locc;
using tests::TestName;

TEST_CASE("single-pair invariant test") {
  SECTION("trace and spectrum at d = 2") {
    const auto tu = tests::build_tu(2);
    REQUIRE(std::abs(tu.t0.trace().real() - 2.0) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> es(tu.t0.matrix());
    REQUIRE(std::abs(es.eigenvalues()(3) - 1.0) < 1e-12);
    for (int i = 0; i < 3; ++i)
      REQUIRE(std::abs(es.eigenvalues()(i) - 1.0 / 3.0) < 1e-12);
  }

  SECTION("level zero for d up to 5") {
    for (int d = 2; d <= 5; ++d) {
      const auto tu = tests::build_tu(d);
      const Ket phi0 = maximally_entangled_ket(d);
      const Complex v =
          sandwich(phi0.vector(), tu.t0.matrix(), phi0.vector());
      REQUIRE(std::abs(v - Complex(1.0)) < 1e-12);
    }
  }

  SECTION("beta against the closed form on random states") {
    CounterRng rng(5);
    for (int d = 2; d <= 4; ++d) {
      const auto tu = tests::build_tu(d);
      for (int t = 0; t < 20; ++t) {
        const DensityMatrix sigma = families::random_single_pair(rng, d);
        const auto rep = tests::error_report(tu, sigma);  // checks internally
        REQUIRE(std::abs(rep.alpha) < 1e-10);
        REQUIRE(std::abs(*rep.beta_formula -
                         (d * rep.theta + 1.0) / (d + 1.0)) < 1e-12);
      }
    }
  }

  SECTION("Haar twirl fixed point via the octahedral scheme") {
    const auto tu = tests::build_tu(2);
    const Operator t = twirl(tu.t0, groups::Action::u_pair(2),
                             {groups::TwirlScheme::Octahedral});
    REQUIRE(max_abs_diff(t.matrix(), tu.t0.matrix()) < 1e-12);
  }
}

TEST_CASE("n-sample invariant test") {
  SECTION("n = 1 coincides with the single-pair test") {
    const auto a = tests::build_tU(2, 1);
    const auto b = tests::build_tu(2);
    REQUIRE(max_abs_diff(a.t0.matrix(), b.t0.matrix()) < 1e-15);
  }

  SECTION("two samples: trace 4 and level zero") {
    const auto t = tests::build_tU(2, 2);
    REQUIRE(std::abs(t.t0.trace().real() - 4.0) < 1e-12);
  }

  SECTION("beta formula on random states, n up to 3") {
    CounterRng rng(6);
    for (int n = 1; n <= 3; ++n) {
      const auto t = tests::build_tU(2, n);
      for (int s = 0; s < 10; ++s) {
        const DensityMatrix sigma = families::random_single_pair(rng);
        const auto rep = tests::error_report(t, sigma);
        const double dn = std::pow(2.0, n);
        REQUIRE(std::abs(rep.beta_direct -
                         (dn * std::pow(rep.theta, n) + 1.0) / (dn + 1.0)) <
                1e-10);
      }
    }
  }

  SECTION("dimension cap") {
    REQUIRE_THROWS_AS(tests::build_tU(2, 7), DimensionCap);
  }

  SECTION("invariance under the joined group on two pairs") {
    CounterRng rng(61);
    const auto t = tests::build_tU(2, 2);
    for (int s = 0; s < 20; ++s) {
      const Matrix u = groups::u_action_n(groups::haar_su(4, rng), 2, 2)
                           .matrix();
      REQUIRE(max_abs_diff(u * t.t0.matrix() * u.adjoint(), t.t0.matrix()) <
              1e-10);
    }
  }
}

TEST_CASE("tensor-power comparison tests") {
  CounterRng rng(7);

  SECTION("the unrestricted test and its power") {
    const auto tg = tests::build_tG(2, 2);
    for (int t = 0; t < 20; ++t) {
      const DensityMatrix sigma = families::random_single_pair(rng);
      const auto rep = tests::error_report(tg, sigma);
      REQUIRE(std::abs(rep.beta_direct - rep.theta * rep.theta) < 1e-10);
    }
  }

  SECTION("power of the single-pair test") {
    const auto t1 = tests::build_tuN(2, 1);
    const auto tu = tests::build_tu(2);
    REQUIRE(max_abs_diff(t1.t0.matrix(), tu.t0.matrix()) == 0.0);

    const auto t2 = tests::build_tuN(2, 2);
    for (int t = 0; t < 20; ++t) {
      const DensityMatrix sigma = families::random_single_pair(rng);
      const auto rep = tests::error_report(t2, sigma);
      const double base = (2.0 * rep.theta + 1.0) / 3.0;
      REQUIRE(std::abs(rep.beta_direct - base * base) < 1e-10);
    }
  }
}

TEST_CASE("samplewise-local optimal test") {
  const auto tv = tests::build_tV();

  SECTION("trace and level zero") {
    REQUIRE(std::abs(tv.t0.trace().real() - 4.0) < 1e-12);
    const Ket phi0 = maximally_entangled_ket(2);
    const Vector ref = kron(phi0.vector(), phi0.vector());
    REQUIRE(std::abs(sandwich(ref, tv.t0.matrix(), ref) - Complex(1.0)) <
            1e-12);
  }

  SECTION("equals the exact twirl of the four branch projectors") {
    Matrix pis = Matrix::Zero(16, 16);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        pis += discretize::build_pi_ij(i, j).matrix();
    const Operator twirled =
        twirl(Operator(sample_pairs(2, 2), pis), groups::Action::v(),
              {groups::TwirlScheme::Exact});
    REQUIRE(max_abs_diff(twirled.matrix(), tv.t0.matrix()) < 1e-10);
  }

  SECTION("invariance under the diagonal action and both transpositions") {
    CounterRng rng(8);
    for (int t = 0; t < 50; ++t) {
      const Matrix v = groups::v_action(groups::haar_su2(rng)).matrix();
      REQUIRE(max_abs_diff(v * tv.t0.matrix() * v.adjoint(), tv.t0.matrix()) <
              1e-10);
    }
    const Matrix& r = bell::ab_transposition().matrix();
    REQUIRE(max_abs_diff(r * tv.t0.matrix() * r.adjoint(), tv.t0.matrix()) <
            1e-12);
    const Matrix& s = bell::sample_swap().matrix();
    REQUIRE(max_abs_diff(s * tv.t0.matrix() * s.adjoint(), tv.t0.matrix()) <
            1e-12);
  }

  SECTION("beta closed form on random states") {
    CounterRng rng(9);
    for (int t = 0; t < 100; ++t) {
      const DensityMatrix sigma = families::random_single_pair(rng);
      REQUIRE_NOTHROW(tests::error_report(tv, sigma));
    }
    // diagonal example frozen from the closed form
    const DensityMatrix sigma = families::bell_diagonal(0.1, 0.1, 0.1);
    const auto rep = tests::error_report(tv, sigma);
    REQUIRE(std::abs(*rep.beta_formula - 0.64) < 1e-12);
  }
}

TEST_CASE("pairwise-invariant optimal test") {
  const auto tw = tests::build_tW();

  SECTION("beta values") {
    const DensityMatrix mixed(single_pair(2),
                              Matrix(Matrix::Identity(4, 4) / 4.0));
    const auto rep = tests::error_report(tw, mixed);
    REQUIRE(std::abs(rep.beta_direct - 0.25) < 1e-12);
    REQUIRE(std::abs(tests::beta_formula_theta(TestName::TW, 2, 2, 1.0) -
                     1.0) == 0.0);
  }

  SECTION("invariance under independent pair rotations") {
    CounterRng rng(10);
    for (int t = 0; t < 100; ++t) {
      const Matrix w =
          groups::w_action(groups::haar_su2(rng), groups::haar_su2(rng))
              .matrix();
      REQUIRE(max_abs_diff(w * tw.t0.matrix() * w.adjoint(), tw.t0.matrix()) <
              1e-10);
    }
  }

  SECTION("beta formula on random states") {
    CounterRng rng(11);
    for (int t = 0; t < 100; ++t) {
      const DensityMatrix sigma = families::random_single_pair(rng);
      const auto rep = tests::error_report(tw, sigma);
      REQUIRE(std::abs(rep.beta_direct -
                       (rep.theta * rep.theta +
                        (1 - rep.theta) * (1 - rep.theta) / 3.0)) < 1e-10);
    }
  }
}

TEST_CASE("closed-form beta evaluation") {
  SECTION("spot values") {
    REQUIRE(std::abs(tests::beta_formula_theta(TestName::Tu, 2, 1, 0.5) -
                     2.0 / 3.0) < 1e-15);
    const DensityMatrix pure(bell::bell_basis().kets[0]);
    REQUIRE(std::abs(tests::beta_formula(TestName::TV, 2, 2, pure) - 1.0) <
            1e-12);
  }

  SECTION("theta-only evaluation rejects the matrix-dependent test") {
    REQUIRE_THROWS_AS(tests::beta_formula_theta(TestName::TV, 2, 2, 0.5),
                      NoFormula);
  }

  SECTION("ordering on the isotropic line near theta = 1") {
    for (double theta = 0.90; theta < 0.999; theta += 0.02) {
      const DensityMatrix sigma = families::isotropic(theta);
      const double bg = tests::beta_formula(TestName::TG, 2, 2, sigma);
      const double bw = tests::beta_formula(TestName::TW, 2, 2, sigma);
      const double bu = tests::beta_formula(TestName::TU, 2, 2, sigma);
      const double bv = tests::beta_formula(TestName::TV, 2, 2, sigma);
      const double bu2 = tests::beta_formula(TestName::TuN, 2, 2, sigma);
      REQUIRE(bw - bg >= -1e-12);
      REQUIRE(bu - bw >= -1e-12);
      REQUIRE(bv - bu >= -1e-12);
      REQUIRE(bu2 - bv >= -1e-12);
    }
  }

  SECTION("monotonicity in theta on the isotropic line") {
    const TestName names[] = {TestName::TG, TestName::TW, TestName::TU,
                              TestName::TV, TestName::TuN};
    for (TestName name : names) {
      double prev = -1.0;
      for (double theta = 0.25; theta <= 1.0 + 1e-9; theta += 0.05) {
        const DensityMatrix sigma = families::isotropic(std::min(theta, 1.0));
        const double b = tests::beta_formula(name, 2, 2, sigma);
        REQUIRE(b >= prev - 1e-12);
        prev = b;
      }
    }
  }
}

TEST_CASE("asymptotic ratio sequence") {
  SECTION("above the threshold the ratio approaches one") {
    const auto seq = tests::asymptotic_ratio(2, 0.9, 40);
    REQUIRE(std::abs(seq.back().second - 1.0) < 1e-3);
  }

  SECTION("below the threshold with the inverse-dimension normalizer") {
    const auto seq = tests::asymptotic_ratio(2, 0.3, 40);
    REQUIRE(std::abs(seq.back().second - 1.0) < 1e-3);
  }

  SECTION("theta = 1 gives ratio exactly one") {
    for (const auto& [n, ratio] : tests::asymptotic_ratio(2, 1.0, 10))
      REQUIRE(std::abs(ratio - 1.0) < 1e-15);
  }

  SECTION("at the boundary theta = 1/d the exact ratio approaches two") {
    const auto seq = tests::asymptotic_ratio(2, 0.5, 40);
    const double dn = std::pow(2.0, 40);
    REQUIRE(std::abs(seq.back().second - 2.0 * dn / (dn + 1.0)) < 1e-12);
    REQUIRE(std::abs(seq.back().second - 2.0) < 1e-9);
  }
}
