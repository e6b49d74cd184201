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

#include "locc/hypotests.hpp"

#include <cmath>

#include "locc/bellspace.hpp"

namespace locc::tests {

namespace {

Ket phi0_power(int d, int n) {
  const Ket phi0 = maximally_entangled_ket(d);
  if (n == 1) return phi0;
  Vector v = phi0.vector();
  for (int i = 1; i < n; ++i) v = kron(v, phi0.vector());
  return Ket(sample_pairs(d, n), std::move(v));
}

// <phi0| sigma |phi0> for a single pair of any local dimension.
double theta_of(const DensityMatrix& sigma) {
  if (sigma.factors().size() != 2)
    throw InvalidState("theta is defined for single-pair states");
  const int d = sigma.factors()[0].dimension;
  const Ket phi0 = maximally_entangled_ket(d);
  return sandwich(phi0.vector(), sigma.matrix(), phi0.vector()).real();
}

TwoOutcomeTest finalize(TestName name, Operator t0, int d, int n) {
  Operator t1 = Operator::identity(t0.factors()) - t0;
  // Two-outcome contract: 0 <= T0 <= I and level zero.
  const double lo = min_eigenvalue(t0.matrix());
  const double hi = min_eigenvalue(t1.matrix());
  if (lo < kPositivityFloor || hi < kPositivityFloor)
    throw InvalidState("test element is not within [0, I]");
  const Ket ref = phi0_power(d, n);
  const Complex level =
      sandwich(ref.vector(), t0.matrix(), ref.vector());
  if (std::abs(level.real() - 1.0) > kOperatorEqTol ||
      std::abs(level.imag()) > kOperatorEqTol)
    throw InvalidState("test is not level-zero");
  return TwoOutcomeTest{name, std::move(t0), std::move(t1), d, n};
}

}  // namespace

std::string_view test_name(TestName name) {
  switch (name) {
    case TestName::Tg: return "Tg";
    case TestName::Tu: return "Tu";
    case TestName::TuN: return "Tu2";
    case TestName::TU: return "TU";
    case TestName::TG: return "TG";
    case TestName::TV: return "TV";
    case TestName::TW: return "TW";
  }
  throw UnknownLabel("unknown test name");
}

TestName test_from_name(std::string_view name) {
  if (name == "Tg") return TestName::Tg;
  if (name == "Tu") return TestName::Tu;
  if (name == "Tu2" || name == "TuN") return TestName::TuN;
  if (name == "TU") return TestName::TU;
  if (name == "TG") return TestName::TG;
  if (name == "TV") return TestName::TV;
  if (name == "TW") return TestName::TW;
  throw UnknownLabel("unknown test name: " + std::string(name));
}

TwoOutcomeTest build_tg(int d) {
  const Ket phi0 = maximally_entangled_ket(d);
  return finalize(TestName::Tg, projector(phi0), d, 1);
}

TwoOutcomeTest build_tu(int d) {
  if (d < 2) throw InvalidState("build_tu needs d >= 2");
  const Ket phi0 = maximally_entangled_ket(d);
  const Operator p = projector(phi0);
  const Operator id = Operator::identity(p.factors());
  return finalize(TestName::Tu, p + (1.0 / (d + 1)) * (id - p), d, 1);
}

TwoOutcomeTest build_tuN(int d, int n) {
  const TwoOutcomeTest base = build_tu(d);
  Matrix m = base.t0.matrix();
  for (int i = 1; i < n; ++i) m = kron(m, base.t0.matrix());
  FactorList f = sample_pairs(d, n);
  total_dimension(f);
  return finalize(TestName::TuN, Operator(std::move(f), std::move(m)), d, n);
}

TwoOutcomeTest build_tU(int d, int n) {
  if (d < 2 || n < 1) throw InvalidState("build_tU needs d >= 2, n >= 1");
  const Ket phi = phi0_power(d, n);
  const Operator p = projector(phi);
  const Operator id = Operator::identity(p.factors());
  const double dn = std::pow(double(d), n);
  return finalize(TestName::TU, p + (1.0 / (dn + 1.0)) * (id - p), d, n);
}

TwoOutcomeTest build_tG(int d, int n) {
  const Ket phi = phi0_power(d, n);
  return finalize(TestName::TG, projector(phi), d, n);
}

TwoOutcomeTest build_tV() {
  using bell::Subspace;
  const Operator t0 = 0.1 * bell::projector(Subspace::K5p).op +
                      (1.0 / 3.0) * bell::projector(Subspace::L3p).op +
                      bell::projector(Subspace::L1p).op +
                      (1.0 / 6.0) * bell::projector(Subspace::K3m).op +
                      (1.0 / 3.0) * bell::projector(Subspace::L3m).op;
  return finalize(TestName::TV, t0, 2, 2);
}

TwoOutcomeTest build_tW() {
  const Ket phi0 = maximally_entangled_ket(2);
  const Operator p = projector(phi0);
  const Operator id = Operator::identity(p.factors());
  const Operator rest = id - p;
  // tensor square of the single-pair complement, weighted 1/3
  Matrix m = kron(p.matrix(), p.matrix()) +
             kron(rest.matrix(), rest.matrix()) / 3.0;
  return finalize(TestName::TW, Operator(sample_pairs(2, 2), std::move(m)), 2,
                  2);
}

TwoOutcomeTest build(TestName name, int d, int n) {
  switch (name) {
    case TestName::Tg: return build_tg(d);
    case TestName::Tu: return build_tu(d);
    case TestName::TuN: return build_tuN(d, n);
    case TestName::TU: return build_tU(d, n);
    case TestName::TG: return build_tG(d, n);
    case TestName::TV: return build_tV();
    case TestName::TW: return build_tW();
  }
  throw UnknownLabel("unknown test name");
}

bool has_beta_formula(TestName) { return true; }

double beta_formula_theta(TestName name, int d, int n, double theta) {
  const double dn = std::pow(double(d), n);
  switch (name) {
    case TestName::Tg:
      return theta;
    case TestName::Tu:
      return (d * theta + 1.0) / (d + 1.0);
    case TestName::TuN:
      return std::pow((d * theta + 1.0) / (d + 1.0), n);
    case TestName::TU:
      return (dn * std::pow(theta, n) + 1.0) / (dn + 1.0);
    case TestName::TG:
      return std::pow(theta, n);
    case TestName::TW:
      return theta * theta + (1.0 - theta) * (1.0 - theta) / 3.0;
    case TestName::TV:
      throw NoFormula("TV's closed form needs the full matrix expression");
  }
  throw UnknownLabel("unknown test name");
}

double beta_formula(TestName name, int d, int n, const DensityMatrix& sigma) {
  if (name == TestName::TV) {
    const bell::BellMatrix x = bell::bell_expression(sigma);
    Eigen::Vector3d v;
    for (int i = 0; i < 3; ++i) v(i) = x(i + 1, i + 1).real() - 0.5;
    Eigen::Matrix3d z;
    z << 6, 7, 7, 7, 6, 7, 7, 7, 6;
    z /= 15.0;
    const double re2 = x(1, 2).real() * x(1, 2).real() +
                       x(2, 3).real() * x(2, 3).real() +
                       x(3, 1).real() * x(3, 1).real();
    return v.dot(z * v) - (2.0 / 15.0) * re2;
  }
  return beta_formula_theta(name, d, n, theta_of(sigma));
}

ErrorReport error_report(const TwoOutcomeTest& test,
                         const DensityMatrix& sigma) {
  const DensityMatrix rho0(phi0_power(test.d, test.n));
  const double alpha = expectation(rho0, test.t1);
  const DensityMatrix rho = sigma.tensor_power(test.n);
  const double beta_direct = expectation(rho, test.t0);
  const double theta = theta_of(sigma);

  ErrorReport report{alpha, beta_direct, std::nullopt, theta};
  if (has_beta_formula(test.name)) {
    const double f = beta_formula(test.name, test.d, test.n, sigma);
    if (std::abs(f - beta_direct) > 1e-10)
      throw FormulaMismatch("closed-form beta deviates from direct trace by " +
                            std::to_string(f - beta_direct));
    report.beta_formula = f;
  }
  return report;
}

std::vector<std::pair<int, double>> asymptotic_ratio(int d, double theta,
                                                     int n_max) {
  if (theta <= 0.0 || theta > 1.0)
    throw InvalidState("asymptotic_ratio needs theta in (0,1]");
  std::vector<std::pair<int, double>> out;
  out.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double dn = std::pow(double(d), n);
    const double beta = (dn * std::pow(theta, n) + 1.0) / (dn + 1.0);
    const double ratio = theta >= 1.0 / d ? beta / std::pow(theta, n)
                                          : beta * dn;
    out.emplace_back(n, ratio);
  }
  return out;
}

}  // namespace locc::tests
