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

#include "locc/families.hpp"

#include <cmath>

#include "locc/bellspace.hpp"

namespace locc::families {

DensityMatrix isotropic(double theta, int d) {
  if (theta < 0.0 || theta > 1.0)
    throw InvalidState("isotropic family needs theta in [0,1]");
  const Ket phi0 = maximally_entangled_ket(d);
  const Matrix p = phi0.vector() * phi0.vector().adjoint();
  const int dim = d * d;
  Matrix m = theta * p + (1.0 - theta) / (dim - 1) *
                             (Matrix::Identity(dim, dim) - p);
  return DensityMatrix(single_pair(d), std::move(m));
}

DensityMatrix bell_diagonal(double p, double q, double r) {
  const double rest = 1.0 - p - q - r;
  if (p < 0 || q < 0 || r < 0 || rest < -1e-15)
    throw InvalidState("bell_diagonal weights must form a distribution");
  bell::BellMatrix x = bell::BellMatrix::Zero();
  x(0, 0) = std::max(rest, 0.0);
  x(1, 1) = p;
  x(2, 2) = q;
  x(3, 3) = r;
  return bell::from_bell_expression(x);
}

DensityMatrix figure_line(double theta, double offdiag) {
  if (theta <= 0.0 || theta > 1.0)
    throw InvalidState("figure_line needs theta in (0,1]");
  bell::BellMatrix x = bell::BellMatrix::Zero();
  x(0, 0) = theta;
  for (int i = 1; i <= 3; ++i) {
    x(i, i) = (1.0 - theta) / 3.0;
    for (int j = 1; j <= 3; ++j)
      if (i != j) x(i, j) = offdiag;
  }
  const auto& basis = bell::bell_basis();
  Matrix m = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m += x(i, j) * basis.kets[i].vector() * basis.kets[j].vector().adjoint();
  if (min_eigenvalue(m) >= kPositivityFloor)
    return DensityMatrix(single_pair(2), std::move(m));
  return nearest_density(single_pair(2), m);
}

DensityMatrix random_density(const FactorList& factors, CounterRng& rng) {
  const int d = total_dimension(factors);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  m = (0.5 * (m + m.adjoint())).eval();
  return DensityMatrix(factors, std::move(m));
}

DensityMatrix random_single_pair(CounterRng& rng, int d) {
  return random_density(single_pair(d), rng);
}

DensityMatrix random_with_theta(double theta, CounterRng& rng) {
  if (theta < 0.0 || theta > 1.0)
    throw InvalidState("random_with_theta needs theta in [0,1]");
  const DensityMatrix base = random_single_pair(rng, 2);
  const double t0 = bell::fidelity_theta(base);
  const Ket phi0 = maximally_entangled_ket(2);
  const Matrix p = phi0.vector() * phi0.vector().adjoint();
  Matrix m;
  if (t0 <= theta) {
    // mix toward |phi0><phi0|
    const double lam = (theta - t0) / (1.0 - t0);
    m = lam * p + (1.0 - lam) * base.matrix();
  } else {
    // mix toward the orthogonal complement, which has fidelity zero
    const double lam = 1.0 - theta / t0;
    const Matrix comp = (Matrix::Identity(4, 4) - p) / 3.0;
    m = lam * comp + (1.0 - lam) * base.matrix();
  }
  return DensityMatrix(single_pair(2), std::move(m));
}

}  // namespace locc::families
