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
#include <set>

#include "locc/hypotests.hpp"
#include "locc/qcore.hpp"

namespace locc::verify {

/// Weights of the rejection element T1 = w1 K5+ + w2 L3+ + w3 K1+ +
/// w4 K3- + w5 L3- (the accepting element of a level-zero test carries
/// weight one on L1+ and 1 - w elsewhere).
struct WeightVector {
  double w1, w2, w3, w4, w5;
};

/// T1 assembled from the five projector weights.
Operator weight_t1(const WeightVector& w);

// ---- separability trace bound ----------------------------------------------

struct TraceBoundReport {
  double trace;
  double bound;     // = d
  bool satisfied;   // trace >= d - 1e-10
  bool equality;    // |trace - d| <= 1e-10
};

/// Any level-zero test that is separable across the two parties must have
/// Tr(T0) >= d; the optimal invariant test attains equality.
TraceBoundReport separable_trace_bound_check(const Operator& t0, int d);

// ---- positivity under partial transposition ---------------------------------

struct PptReport {
  double min_eig_t0;
  double min_eig_t1;
  bool pass;  // both above -1e-10
};

PptReport ppt_check(const tests::TwoOutcomeTest& t,
                    const std::set<std::string>& cut);

/// The locality cuts under which each test must stay PPT.
std::vector<std::set<std::string>> declared_cuts(tests::TestName name);

// ---- transcribed constraint quantities --------------------------------------

/// 2x2 positivity matrix extracted from the samplewise partial transpose
/// of T1; its entries are verified against the closed forms
///   R12 = -(5 i / (6 sqrt3)) (w2 - w5),  R22 = (17 w1 + 9 w3 + w4) / 27
/// (SymbolicMismatch beyond 1e-10).  Positivity forces w2 = w5.
Eigen::Matrix2cd samplewise_cut_matrix(const WeightVector& w);

struct AbCutReport {
  double q1;  // (10 w1 + 6 w2 - w3) / 12, must lie in [0, 1]
  double q2;  // (w3 + 2 (w4 + w5)) / 4, must lie in [0, 1]
  double q3;  // (3/4)(w2 + w5), must be <= 1
  bool q1_ok, q2_ok, q3_ok;
};

/// Evaluates the three party-cut quantities both by explicit
/// partial-transpose sandwiches and from the symbolic expressions
/// (SymbolicMismatch beyond 1e-10), and reports the inequality verdicts.
AbCutReport ab_cut_bounds(const WeightVector& w);

// ---- the weight linear program ----------------------------------------------

struct LpReport {
  std::array<double, 5> maxima;       // exact optima, as doubles
  std::array<long, 10> maxima_frac;   // numerator/denominator pairs
  WeightVector argmax;                // joint maximizer
  std::array<double, 5> t0_weights;   // 1 - w on each projector
};

/// Maximizes the five objective functionals over the box [0,1]^5
/// intersected with the transcribed cut constraints, by exact rational
/// vertex enumeration.  The optima must come out as
/// (13/2, 2/3, 1, 12, 2/3) and the induced accepting-element weights as
/// (1/10, 1/3, 0, 1/6, 1/3) (LpMismatch otherwise).
LpReport weight_lp();

// ---- state family of the samplewise optimality argument ---------------------

/// Membership in the family where the samplewise-local test is optimal:
///   (1/2) sum (x_ii - x_jj)^2 + 3 sum |x_ij|^2 >= 4 sum (Im x_ij)^2,
/// equivalently 3 Tr(sigma^2 K1+) >= Tr(sigma^2 K3-).  Both routes are
/// evaluated; they must agree to 1e-10 (EquivalenceMismatch).
bool in_admissible_family(const DensityMatrix& sigma);

struct AdmissibleReport {
  double margin_x;        // LHS - RHS of the coordinate inequality
  double margin_traces;   // 3 Tr K1+ - Tr K3- by direct traces
  bool member;
  double spin2_margin;    // Tr(sigma^2 (3 K5+ - 5 K3-)), nonnegative always
  std::array<double, 5> v_prime;  // transformed trace vector
  bool v_prime_nonneg;
};

/// Full diagnostic for the optimality premise: membership, the always-
/// nonnegative 5-block margin, and the transformed trace vector whose
/// nonnegativity makes the simultaneous-maximization argument valid.
AdmissibleReport admissible_family_report(const DensityMatrix& sigma);

// ---- product-state weight table ---------------------------------------------

struct ProductWeightsReport {
  double max_err;        // worst deviation of the six closed forms
  bool q_constraints_ok; // normalization and first-moment identities
  double jensen_value;   // sum q F^2 at the optimum, equals 1
};

/// For F on the 11-point grid {0, 0.1, ..., 1}, sandwiches each partition
/// projector with |0,0,psi_F,psi_F> and compares with the closed forms;
/// also checks the optimum parameters q_i = 1, F_i = 1/2 against the
/// normalization and moment constraints (SymbolicMismatch on failure).
ProductWeightsReport product_weights_check();

// ---- premise of the pairwise-invariant optimality ----------------------------

struct PairwisePremiseReport {
  double lhs;           // (1/9) Tr(sigma^2 (K5+ + K1+ + K3-))
  double rhs;           // (1/6) Tr(sigma^2 (L3+ + L3-))
  double factored;      // (1/3)(x00 - D/3) D with D = x11 + x22 + x33
  bool inequality_ok;   // lhs <= rhs
  std::array<double, 2> v_prime;
  bool v_prime_nonneg;
};

/// Verifies the block inequality and its factored form (to 1e-12) for a
/// state with theta >= 1/4 (PremiseViolated below), and applies the 2x2
/// inverse-weight transform.
PairwisePremiseReport pairwise_premise_check(const DensityMatrix& sigma);

}  // namespace locc::verify
