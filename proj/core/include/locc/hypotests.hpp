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

#include <optional>
#include <string_view>
#include <vector>

#include "locc/qcore.hpp"

namespace locc::tests {

/// The two-outcome tests built by this module.  T0 is the "accept the
/// entangled hypothesis" POVM element; every test here is level-zero
/// (it accepts the maximally entangled state with certainty).
///
///   Tg  : |phi0><phi0| on one pair (global optimum, not AB-local)
///   Tu  : optimal AB-local invariant test on one pair
///   TuN : n-fold tensor power of Tu
///   TU  : optimal AB-local invariant test on n pairs
///   TG  : n-fold tensor power of Tg
///   TV  : optimal AB-local and samplewise-local test (d = n = 2)
///   TW  : optimal AB-local pairwise-invariant test (d = n = 2)
enum class TestName { Tg, Tu, TuN, TU, TG, TV, TW };

std::string_view test_name(TestName name);
TestName test_from_name(std::string_view name);

struct TwoOutcomeTest {
  TestName name;
  Operator t0;
  Operator t1;
  int d;
  int n;
};

TwoOutcomeTest build_tg(int d);
TwoOutcomeTest build_tu(int d);
TwoOutcomeTest build_tuN(int d, int n);
TwoOutcomeTest build_tU(int d, int n);
TwoOutcomeTest build_tG(int d, int n);
TwoOutcomeTest build_tV();
TwoOutcomeTest build_tW();
TwoOutcomeTest build(TestName name, int d, int n);

bool has_beta_formula(TestName name);

/// Closed-form type 2 error probability for a single-copy state sigma
/// (NoFormula when the test has none).  theta is always derived from
/// sigma, never passed in.
double beta_formula(TestName name, int d, int n, const DensityMatrix& sigma);

/// Same, for tests whose closed form depends on sigma only through theta
/// (every test except TV).
double beta_formula_theta(TestName name, int d, int n, double theta);

struct ErrorReport {
  double alpha;
  double beta_direct;
  std::optional<double> beta_formula;
  double theta;
};

/// alpha from the n-fold maximally entangled state, beta by direct trace
/// against sigma^{(x)n}, plus the closed form when available.  The two
/// beta routes must agree to 1e-10 (FormulaMismatch otherwise).
ErrorReport error_report(const TwoOutcomeTest& test, const DensityMatrix& sigma);

/// Normalized asymptotic sequence of the n-pair invariant test, computed
/// purely from the closed form: beta / theta^n for theta >= 1/d, and
/// beta * d^n for theta < 1/d.
std::vector<std::pair<int, double>> asymptotic_ratio(int d, double theta,
                                                     int n_max);

}  // namespace locc::tests
