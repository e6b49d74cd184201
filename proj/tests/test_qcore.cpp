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

#include "locc/families.hpp"
#include "locc/qcore.hpp"
#include "locc/rng.hpp"

using namespace locc;

namespace {

Matrix random_matrix(int d, CounterRng& rng) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      m(i, j) = Complex(rng.gaussian(), rng.gaussian());
  return m;
}

Matrix random_hermitian(int d, CounterRng& rng) {
  const Matrix m = random_matrix(d, rng);
  return 0.5 * (m + m.adjoint());
}

}  // namespace

TEST_CASE("tensor product basics") {
  const Operator i2a = Operator::identity({{"A", 2}});
  const Operator i2b = Operator::identity({{"B", 2}});
  const Operator i4 = tensor(i2a, i2b);
  REQUIRE(max_abs_diff(i4.matrix(), Matrix::Identity(4, 4)) == 0.0);

  SECTION("basis bookkeeping follows the factor order") {
    Matrix p0 = Matrix::Zero(2, 2);
    p0(0, 0) = 1;
    Matrix p1 = Matrix::Zero(2, 2);
    p1(1, 1) = 1;
    const Operator t = tensor(Operator({{"A", 2}}, p0), Operator({{"B", 2}}, p1));
    Matrix expect = Matrix::Zero(4, 4);
    expect(1, 1) = 1;  // |01> in the ordering {00, 01, 10, 11}
    REQUIRE(max_abs_diff(t.matrix(), expect) == 0.0);
  }

  SECTION("duplicate factor names are rejected") {
    REQUIRE_THROWS_AS(tensor(i2a, i2a), DuplicateFactor);
  }

  SECTION("sigma (x) sigma stays a valid state") {
    CounterRng rng(11);
    const DensityMatrix sigma = families::random_single_pair(rng);
    const DensityMatrix two = sigma.tensor_power(2);
    REQUIRE(two.dim() == 16);
    REQUIRE(std::abs(two.matrix().trace().real() - 1.0) < 1e-12);
    REQUIRE(is_hermitian(two.matrix()));
    // oracle: entry-wise Kronecker product
    const Matrix direct = kron(sigma.matrix(), sigma.matrix());
    REQUIRE(max_abs_diff(two.matrix(), direct) == 0.0);
  }

  SECTION("mixed-product identity (a(x)b)(c(x)d) = (ac)(x)(bd)") {
    CounterRng rng(17);
    for (int t = 0; t < 10; ++t) {
      const Matrix a = random_matrix(2, rng), b = random_matrix(3, rng);
      const Matrix c = random_matrix(2, rng), d = random_matrix(3, rng);
      const Operator lhs = tensor(Operator({{"A", 2}}, a), Operator({{"B", 3}}, b)) *
                           tensor(Operator({{"A", 2}}, c), Operator({{"B", 3}}, d));
      const Operator rhs =
          tensor(Operator({{"A", 2}}, a * c), Operator({{"B", 3}}, b * d));
      REQUIRE(max_abs_diff(lhs.matrix(), rhs.matrix()) < 1e-12);
    }
  }
}

TEST_CASE("partial transpose") {
  CounterRng rng(23);
  const FactorList two_pairs = sample_pairs(2, 2);

  SECTION("involution and full transpose") {
    const Operator x(two_pairs, random_matrix(16, rng));
    const Operator twice =
        partial_transpose(partial_transpose(x, {"A2", "B1"}), {"A2", "B1"});
    REQUIRE(max_abs_diff(twice.matrix(), x.matrix()) == 0.0);

    const Operator all =
        partial_transpose(x, {"A1", "B1", "A2", "B2"});
    REQUIRE(max_abs_diff(all.matrix(), x.matrix().transpose()) == 0.0);
  }

  SECTION("transposed maximally entangled state has eigenvalues +-1/2") {
    const Ket phi0 = maximally_entangled_ket(2);
    const Operator pt = partial_transpose(projector(phi0), {"B"});
    Eigen::SelfAdjointEigenSolver<Matrix> es(pt.matrix());
    // one simple -1/2 eigenvalue, three +1/2
    REQUIRE(std::abs(es.eigenvalues()(0) + 0.5) < 1e-12);
    for (int i = 1; i < 4; ++i)
      REQUIRE(std::abs(es.eigenvalues()(i) - 0.5) < 1e-12);
  }

  SECTION("preserves trace and Hermiticity") {
    const Matrix h = random_hermitian(16, rng);
    const Operator x(two_pairs, h);
    const Operator pt = partial_transpose(x, {"B1", "B2"});
    REQUIRE(std::abs((pt.matrix().trace() - h.trace()).real()) < 1e-12);
    REQUIRE(is_hermitian(pt.matrix()));
  }

  SECTION("unknown factor is rejected") {
    const Operator x(two_pairs, random_matrix(16, rng));
    REQUIRE_THROWS_AS(partial_transpose(x, {"C"}), UnknownFactor);
  }
}

TEST_CASE("partial trace") {
  CounterRng rng(31);

  SECTION("product state reduces to its factors") {
    const DensityMatrix rho = families::random_density({{"A", 2}}, rng);
    const DensityMatrix sig = families::random_density({{"B", 3}}, rng);
    const Operator joint = tensor(rho.op(), sig.op());
    const Operator back = partial_trace(joint, {"B"});
    REQUIRE(max_abs_diff(back.matrix(), rho.matrix()) < 1e-14);
    // partial_trace(a (x) b, labels(b)) = a Tr(b) for non-normalized b too
    const Operator scaled = tensor(rho.op(), Operator({{"B", 3}}, Matrix(2.5 * sig.matrix())));
    REQUIRE(max_abs_diff(partial_trace(scaled, {"B"}).matrix(),
                         Matrix(2.5 * rho.matrix())) < 1e-13);
  }

  SECTION("maximally entangled pair reduces to the maximally mixed state") {
    const Ket phi0 = maximally_entangled_ket(2);
    const Operator reduced = partial_trace(projector(phi0), {"B"});
    REQUIRE(max_abs_diff(reduced.matrix(), Matrix(0.5 * Matrix::Identity(2, 2))) <
            1e-15);
  }

  SECTION("trace preservation on a random 16x16 Hermitian") {
    const Operator x(sample_pairs(2, 2), random_hermitian(16, rng));
    const Operator out = partial_trace(x, {"A1", "B2"});
    REQUIRE(std::abs((out.matrix().trace() - x.matrix().trace()).real()) <
            1e-12);
    // oracle: direct index summation
    Matrix ref = Matrix::Zero(4, 4);
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b1p = 0; b1p < 2; ++b1p)
          for (int a2p = 0; a2p < 2; ++a2p) {
            Complex s = 0;
            for (int a1 = 0; a1 < 2; ++a1)
              for (int b2 = 0; b2 < 2; ++b2)
                s += x.matrix()(((a1 * 2 + b1) * 2 + a2) * 2 + b2,
                                ((a1 * 2 + b1p) * 2 + a2p) * 2 + b2);
            ref(b1 * 2 + a2, b1p * 2 + a2p) = s;
          }
    REQUIRE(max_abs_diff(out.matrix(), ref) == 0.0);
  }
}

TEST_CASE("expectation values") {
  CounterRng rng(37);
  const DensityMatrix rho = families::random_single_pair(rng);

  SECTION("identity has unit expectation") {
    REQUIRE(std::abs(expectation(rho, Operator::identity(rho.factors())) - 1.0) <
            1e-12);
  }

  SECTION("orthogonal projectors") {
    Vector v0 = Vector::Zero(2), v1 = Vector::Zero(2);
    v0(0) = 1;
    v1(1) = 1;
    const DensityMatrix zero(Ket({{"A", 2}}, v0));
    REQUIRE(expectation(zero, Operator({{"A", 2}}, v1 * v1.adjoint())) == 0.0);
  }

  SECTION("non-Hermitian observable raises") {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 1) = 5.0;
    REQUIRE_THROWS_AS(expectation(rho, Operator(rho.factors(), m)),
                      ImaginaryResidue);
  }
}

TEST_CASE("embed reorders and extends by identity") {
  CounterRng rng(41);
  const FactorList global = sample_pairs(2, 2);
  const Matrix g = random_matrix(4, rng);
  // operator on {B2, A1} (out of order on purpose)
  const Operator op({{"B2", 2}, {"A1", 2}}, g);
  const Operator big = embed(op, global);
  // oracle: contract against random vectors built factor-wise
  for (int t = 0; t < 5; ++t) {
    Vector a1(2), b1(2), a2(2), b2(2);
    for (auto* v : {&a1, &b1, &a2, &b2})
      for (int i = 0; i < 2; ++i) (*v)(i) = Complex(rng.gaussian(), rng.gaussian());
    const Vector in = kron(kron(a1, b1), kron(a2, b2));
    const Vector lhs = big.matrix() * in;
    // apply g on (B2, A1) directly
    Vector out = Vector::Zero(16);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int ip = 0; ip < 2; ++ip)
          for (int jp = 0; jp < 2; ++jp) {
            // g[(b2,a1), (b2', a1')]
            const Complex coeff = g(i * 2 + j, ip * 2 + jp);
            if (coeff == Complex(0)) continue;
            for (int b1i = 0; b1i < 2; ++b1i)
              for (int a2i = 0; a2i < 2; ++a2i)
                out(((j * 2 + b1i) * 2 + a2i) * 2 + i) +=
                    coeff * b1(b1i) * a2(a2i) * a1(jp) * b2(ip);
          }
    REQUIRE((lhs - out).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("density matrix validation") {
  SECTION("dimension cap") {
    REQUIRE_THROWS_AS(total_dimension(sample_pairs(2, 7)), DimensionCap);
  }
  SECTION("non-positive matrix is rejected") {
    Matrix m = Matrix::Identity(4, 4);
    m(0, 0) = -0.5;
    m /= m.trace();
    REQUIRE_THROWS_AS(DensityMatrix(single_pair(2), m), InvalidState);
  }
  SECTION("nearest density projection") {
    CounterRng rng(57);
    Matrix h = Matrix::Identity(4, 4);
    h(0, 0) = 1.4;
    h(1, 1) = -0.4;  // indefinite, trace 4 - 1 = ... not normalized either
    const DensityMatrix d = nearest_density(single_pair(2), h);
    REQUIRE(min_eigenvalue(d.matrix()) >= -1e-14);
    REQUIRE(std::abs(d.matrix().trace().real() - 1.0) < 1e-12);
  }
}
