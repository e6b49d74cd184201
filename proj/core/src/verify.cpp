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

#include "locc/verify.hpp"

#include <boost/rational.hpp>
#include <cmath>

#include "locc/bellspace.hpp"
#include "locc/discretize.hpp"

namespace locc::verify {

namespace {

constexpr Complex kI{0.0, 1.0};

using bell::Subspace;

Vector e_vec(int i, int j) {
  const auto& basis = bell::bell_basis();
  return kron(basis.kets[i].vector(), basis.kets[j].vector());
}

Vector std_vec(int i, int j, int k, int l) {
  Vector v = Vector::Zero(16);
  v(((i * 2 + j) * 2 + k) * 2 + l) = 1.0;
  return v;
}

}  // namespace

Operator weight_t1(const WeightVector& w) {
  return w.w1 * bell::projector(Subspace::K5p).op +
         w.w2 * bell::projector(Subspace::L3p).op +
         w.w3 * bell::projector(Subspace::K1p).op +
         w.w4 * bell::projector(Subspace::K3m).op +
         w.w5 * bell::projector(Subspace::L3m).op;
}

TraceBoundReport separable_trace_bound_check(const Operator& t0, int d) {
  const double tr = t0.trace().real();
  return TraceBoundReport{tr, double(d), tr >= d - 1e-10,
                          std::abs(tr - d) <= 1e-10};
}

PptReport ppt_check(const tests::TwoOutcomeTest& t,
                    const std::set<std::string>& cut) {
  const double e0 = min_eigenvalue(partial_transpose(t.t0, cut).matrix());
  const double e1 = min_eigenvalue(partial_transpose(t.t1, cut).matrix());
  return PptReport{e0, e1, e0 >= -1e-10 && e1 >= -1e-10};
}

std::vector<std::set<std::string>> declared_cuts(tests::TestName name) {
  using tests::TestName;
  switch (name) {
    case TestName::Tg:
    case TestName::Tu:
      return {{"B"}};  // party cut on one pair
    case TestName::TU:
    case TestName::TG:
    case TestName::TW:
      return {{"B1", "B2"}};  // party cut on two pairs
    case TestName::TuN:
    case TestName::TV:
      return {{"B1", "B2"}, {"A2", "B2"}};  // party cut and sample cut
  }
  throw UnknownLabel("unknown test name");
}

Eigen::Matrix2cd samplewise_cut_matrix(const WeightVector& w) {
  const Operator t1 = weight_t1(w);
  const Operator pt = partial_transpose(t1, {"A2", "B2"});

  const Vector u = e_vec(0, 0);
  const Vector v =
      (5.0 * e_vec(1, 1) - e_vec(2, 2) - e_vec(3, 3)) / (3.0 * std::sqrt(3.0));

  Eigen::Matrix2cd r;
  r(0, 0) = sandwich(u, pt.matrix(), u);
  r(0, 1) = sandwich(u, pt.matrix(), v);
  r(1, 0) = sandwich(v, pt.matrix(), u);
  r(1, 1) = sandwich(v, pt.matrix(), v);

  const Complex expected01 = -(5.0 / (6.0 * std::sqrt(3.0))) * (w.w2 - w.w5);
  const Complex expected11 = (17.0 * w.w1 + 9.0 * w.w3 + w.w4) / 27.0;
  const double expected_det =
      -25.0 / 108.0 * (w.w2 - w.w5) * (w.w2 - w.w5);
  const Complex det = r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0);
  if (std::abs(r(0, 0)) > 1e-10 || std::abs(r(0, 1) - expected01) > 1e-10 ||
      std::abs(r(1, 0) - std::conj(expected01)) > 1e-10 ||
      std::abs(r(1, 1) - expected11) > 1e-10 ||
      std::abs(det - expected_det) > 1e-10)
    throw SymbolicMismatch("samplewise positivity matrix deviates from its "
                           "closed-form entries");
  return r;
}

AbCutReport ab_cut_bounds(const WeightVector& w) {
  const Operator t1 = weight_t1(w);

  // party cut on both pairs
  const Operator pt_b = partial_transpose(t1, {"B1", "B2"});
  const Vector u1 = (std_vec(0, 1, 0, 1) - std_vec(1, 0, 1, 0)) / std::sqrt(2.0);
  const Vector u2 = (std_vec(0, 1, 1, 0) - std_vec(1, 0, 0, 1)) / std::sqrt(2.0);
  const double q1 = sandwich(u1, pt_b.matrix(), u1).real();
  const double q2 = sandwich(u2, pt_b.matrix(), u2).real();

  // single-party cut on the second pair
  const Operator pt_b2 = partial_transpose(t1, {"B2"});
  const Vector u3 = e_vec(0, 2);
  const double q3 = sandwich(u3, pt_b2.matrix(), u3).real();

  const double f1 = (10 * w.w1 + 6 * w.w2 - w.w3) / 12.0;
  const double f2 = (w.w3 + 2 * (w.w4 + w.w5)) / 4.0;
  const double f3 = 0.75 * (w.w2 + w.w5);
  if (std::abs(q1 - f1) > 1e-10 || std::abs(q2 - f2) > 1e-10 ||
      std::abs(q3 - f3) > 1e-10)
    throw SymbolicMismatch("party-cut sandwich deviates from its closed form");

  return AbCutReport{q1, q2, q3,
                     q1 >= -1e-12 && q1 <= 1 + 1e-12,
                     q2 >= -1e-12 && q2 <= 1 + 1e-12,
                     q3 <= 1 + 1e-12};
}

// ---- exact rational vertex enumeration for the weight LP --------------------

namespace {

using Rat = boost::rational<long long>;
using RatVec = std::array<Rat, 5>;

struct LinCon {
  RatVec a;
  Rat b;
  bool equality;
};

Rat dot(const RatVec& a, const RatVec& x) {
  Rat s(0);
  for (int i = 0; i < 5; ++i) s += a[i] * x[i];
  return s;
}

// Solve the 5x5 rational system rows * x = rhs; false when singular.
bool solve5(std::array<RatVec, 5> rows, std::array<Rat, 5> rhs, RatVec& x) {
  for (int col = 0; col < 5; ++col) {
    int pivot = -1;
    for (int r = col; r < 5; ++r)
      if (rows[r][col] != Rat(0)) {
        pivot = r;
        break;
      }
    if (pivot < 0) return false;
    std::swap(rows[col], rows[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    const Rat inv = rows[col][col];
    for (int c = col; c < 5; ++c) rows[col][c] /= inv;
    rhs[col] /= inv;
    for (int r = 0; r < 5; ++r) {
      if (r == col || rows[r][col] == Rat(0)) continue;
      const Rat f = rows[r][col];
      for (int c = col; c < 5; ++c) rows[r][c] -= f * rows[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  x = {rhs[0], rhs[1], rhs[2], rhs[3], rhs[4]};
  return true;
}

bool lex_less(const RatVec& a, const RatVec& b) {
  for (int i = 0; i < 5; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// max c^T w subject to the constraints plus the box [0,1]^5, by vertex
// enumeration: every vertex is the solution of five active constraints.
Rat solve_lp(const RatVec& c, const std::vector<LinCon>& cons, RatVec* arg) {
  std::vector<LinCon> all = cons;
  for (int i = 0; i < 5; ++i) {
    RatVec up{}, down{};
    up[i] = Rat(1);
    down[i] = Rat(-1);
    all.push_back({up, Rat(1), false});
    all.push_back({down, Rat(0), false});
  }

  std::vector<int> equalities, inequalities;
  for (std::size_t i = 0; i < all.size(); ++i)
    (all[i].equality ? equalities : inequalities).push_back(int(i));
  const int need = 5 - int(equalities.size());

  bool found = false;
  Rat best(0);
  RatVec best_w{};

  std::vector<int> pick(need);
  auto consider = [&](const std::vector<int>& active) {
    std::array<RatVec, 5> rows;
    std::array<Rat, 5> rhs;
    for (int i = 0; i < 5; ++i) {
      rows[i] = all[active[i]].a;
      rhs[i] = all[active[i]].b;
    }
    RatVec w;
    if (!solve5(rows, rhs, w)) return;
    for (const auto& con : all) {
      const Rat v = dot(con.a, w);
      if (con.equality ? v != con.b : v > con.b) return;
    }
    const Rat value = dot(c, w);
    if (!found || value > best || (value == best && lex_less(w, best_w))) {
      found = true;
      best = value;
      best_w = w;
    }
  };

  // choose `need` inequality rows to complete the always-active equalities
  std::vector<int> active(equalities.begin(), equalities.end());
  active.resize(5);
  auto recurse = [&](auto&& self, int start, int depth) -> void {
    if (depth == need) {
      consider(active);
      return;
    }
    for (std::size_t i = start; i < inequalities.size(); ++i) {
      active[equalities.size() + depth] = inequalities[i];
      self(self, int(i) + 1, depth + 1);
    }
  };
  recurse(recurse, 0, 0);

  if (!found) throw LpMismatch("weight polytope has no vertex");
  if (arg) *arg = best_w;
  return best;
}

}  // namespace

LpReport weight_lp() {
  // transcribed cut constraints on the rejection-element weights
  const LinCon party1{{Rat(10), Rat(6), Rat(-1), Rat(0), Rat(0)}, Rat(12), false};
  const LinCon party2{{Rat(0), Rat(0), Rat(1), Rat(2), Rat(2)}, Rat(4), false};
  const LinCon swap_eq{{Rat(0), Rat(1), Rat(0), Rat(0), Rat(-1)}, Rat(0), true};
  const LinCon pair_cut{{Rat(0), Rat(3), Rat(0), Rat(0), Rat(3)}, Rat(4), false};

  const RatVec c1{Rat(5), Rat(3), Rat(0), Rat(0), Rat(0)};
  const RatVec c2{Rat(0), Rat(1), Rat(0), Rat(0), Rat(0)};
  const RatVec c3{Rat(0), Rat(0), Rat(1), Rat(0), Rat(0)};
  const RatVec c4{Rat(5), Rat(3), Rat(1), Rat(3), Rat(3)};
  const RatVec c5{Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)};

  std::array<Rat, 5> maxima;
  maxima[0] = solve_lp(c1, {party1}, nullptr);
  maxima[1] = solve_lp(c2, {swap_eq, pair_cut}, nullptr);
  maxima[2] = solve_lp(c3, {party1, party2}, nullptr);
  maxima[3] = solve_lp(c4, {party1, party2, swap_eq, pair_cut}, nullptr);
  maxima[4] = solve_lp(c5, {swap_eq, pair_cut}, nullptr);

  const std::array<Rat, 5> expected = {Rat(13, 2), Rat(2, 3), Rat(1), Rat(12),
                                       Rat(2, 3)};
  for (int i = 0; i < 5; ++i)
    if (maxima[i] != expected[i])
      throw LpMismatch("objective " + std::to_string(i + 1) +
                       " optimum differs from the expected value");

  // joint maximizer: the unique point achieving all five optima
  const RatVec w_star = {Rat(9, 10), Rat(2, 3), Rat(1), Rat(5, 6), Rat(2, 3)};
  const std::array<RatVec, 5> objectives = {c1, c2, c3, c4, c5};
  for (int i = 0; i < 5; ++i)
    if (dot(objectives[i], w_star) != expected[i])
      throw LpMismatch("joint maximizer misses objective " +
                       std::to_string(i + 1));
  for (const auto& con : {party1, party2, swap_eq, pair_cut}) {
    const Rat v = dot(con.a, w_star);
    if (con.equality ? v != con.b : v > con.b)
      throw LpMismatch("joint maximizer violates a constraint");
  }

  LpReport out{};
  for (int i = 0; i < 5; ++i) {
    out.maxima[i] = boost::rational_cast<double>(maxima[i]);
    out.maxima_frac[2 * i] = maxima[i].numerator();
    out.maxima_frac[2 * i + 1] = maxima[i].denominator();
  }
  out.argmax = WeightVector{
      boost::rational_cast<double>(w_star[0]),
      boost::rational_cast<double>(w_star[1]),
      boost::rational_cast<double>(w_star[2]),
      boost::rational_cast<double>(w_star[3]),
      boost::rational_cast<double>(w_star[4])};
  for (int i = 0; i < 5; ++i)
    out.t0_weights[i] = boost::rational_cast<double>(Rat(1) - w_star[i]);

  // the induced accepting-element weights must be exactly those of the
  // samplewise-local optimal test
  const std::array<Rat, 5> t0_expected = {Rat(1, 10), Rat(1, 3), Rat(0),
                                          Rat(1, 6), Rat(1, 3)};
  for (int i = 0; i < 5; ++i)
    if (Rat(1) - w_star[i] != t0_expected[i])
      throw LpMismatch("induced accepting weights are off");
  return out;
}

// ---- admissible family -------------------------------------------------------

namespace {

struct XSums {
  double margin_x;     // (1/2) sum (x_ii - x_jj)^2 + 3 sum |x_ij|^2
                       //   - 4 sum (Im x_ij)^2
  double spin2_form;   // sum (x_ii - x_jj)^2 + 4 sum Im^2 + 6 sum |x|^2
};

XSums x_sums(const bell::BellMatrix& x) {
  double diff2 = 0, abs2 = 0, im2 = 0;
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      const double d = x(i, i).real() - x(j, j).real();
      diff2 += d * d;
      abs2 += std::norm(x(i, j));
      im2 += x(i, j).imag() * x(i, j).imag();
    }
  return XSums{0.5 * diff2 + 3.0 * abs2 - 4.0 * im2,
               diff2 + 4.0 * im2 + 6.0 * abs2};
}

}  // namespace

AdmissibleReport admissible_family_report(const DensityMatrix& sigma) {
  const bell::BellMatrix x = bell::bell_expression(sigma);
  const XSums sums = x_sums(x);

  const DensityMatrix two = sigma.tensor_power(2);
  auto tr = [&](Subspace s) {
    return expectation(two, bell::projector(s).op);
  };
  const double k5 = tr(Subspace::K5p), l3p = tr(Subspace::L3p),
               k1 = tr(Subspace::K1p), k3m = tr(Subspace::K3m),
               l3m = tr(Subspace::L3m);

  const double margin_traces = 3.0 * k1 - k3m;
  if (std::abs(margin_traces - sums.margin_x) > 1e-10)
    throw EquivalenceMismatch(
        "coordinate and trace membership routes disagree by " +
        std::to_string(margin_traces - sums.margin_x));

  const double spin2_direct = 3.0 * k5 - 5.0 * k3m;
  if (std::abs(spin2_direct - sums.spin2_form) > 1e-10)
    throw SymbolicMismatch("spin-2 margin deviates from its closed form");

  // v' = M^T v with M the inverse of the objective matrix; nonnegativity
  // of v' is exactly what legitimizes maximizing the five objectives
  // separately.
  AdmissibleReport out{};
  out.margin_x = sums.margin_x;
  out.margin_traces = margin_traces;
  out.member = margin_traces >= -1e-12;
  out.spin2_margin = spin2_direct;
  out.v_prime = {(3.0 * k5 - 5.0 * k3m) / 15.0,
                 (-9.0 * k5 + 15.0 * l3p) / 15.0,
                 (15.0 * k1 - 5.0 * k3m) / 15.0,
                 (5.0 * k3m) / 15.0,
                 (-15.0 * k3m + 15.0 * l3m) / 15.0};
  out.v_prime_nonneg = true;
  for (double v : out.v_prime)
    if (v < -1e-12) out.v_prime_nonneg = false;
  return out;
}

bool in_admissible_family(const DensityMatrix& sigma) {
  return admissible_family_report(sigma).member;
}

// ---- product-state weight table ----------------------------------------------

ProductWeightsReport product_weights_check() {
  ProductWeightsReport out{};
  out.max_err = 0.0;

  const FactorList space = sample_pairs(2, 2);
  for (int k = 0; k <= 10; ++k) {
    const double f = k / 10.0;
    Vector psi(2);
    psi << std::sqrt(f), std::sqrt(1.0 - f);
    Vector zero(2);
    zero << 1, 0;
    const Vector v = kron(kron(zero, zero), kron(psi, psi));

    auto m_of = [&](Subspace s) {
      return sandwich(v, bell::projector(s).op.matrix(), v).real();
    };
    const double expected[6] = {
        (f * f - f + 1.0) / 6.0,          // K5+
        f / 2.0,                          // L3+
        (2.0 * f - 1.0) * (2.0 * f - 1.0) / 12.0,  // K1+
        0.25,                             // L1+
        f * (1.0 - f) / 2.0,              // K3-
        (1.0 - f) / 2.0};                 // L3-
    const Subspace labels[6] = {Subspace::K5p, Subspace::L3p, Subspace::K1p,
                                Subspace::L1p, Subspace::K3m, Subspace::L3m};
    for (int i = 0; i < 6; ++i)
      out.max_err = std::max(out.max_err, std::abs(m_of(labels[i]) - expected[i]));
  }
  if (out.max_err > 1e-12)
    throw SymbolicMismatch("product-state weight table deviates by " +
                           std::to_string(out.max_err));

  // Optimal parameters q_i = 1, F_i = 1/2 for the four branch projectors:
  // normalization (1/4) sum q = 1, first moment sum q F = 2, and the
  // second moment reaches its convexity lower bound sum q F^2 = 1.
  const double q[4] = {1, 1, 1, 1};
  const double F[4] = {0.5, 0.5, 0.5, 0.5};
  double sum_q = 0, sum_qf = 0, sum_qf2 = 0;
  for (int i = 0; i < 4; ++i) {
    sum_q += q[i];
    sum_qf += q[i] * F[i];
    sum_qf2 += q[i] * F[i] * F[i];
  }
  out.q_constraints_ok =
      std::abs(sum_q / 4.0 - 1.0) < 1e-15 && std::abs(sum_qf - 2.0) < 1e-15;
  out.jensen_value = sum_qf2;

  // the normalization identity is an operator statement as well: the sum
  // of the four branch projectors has unit weight on the accepting line
  const Ket phi0 = maximally_entangled_ket(2);
  const Vector ref = kron(phi0.vector(), phi0.vector());
  Matrix pis = Matrix::Zero(16, 16);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      pis += discretize::build_pi_ij(i, j).matrix();
  const double level = sandwich(ref, pis, ref).real();
  out.q_constraints_ok = out.q_constraints_ok && std::abs(level - 1.0) < 1e-12;
  if (!out.q_constraints_ok || std::abs(out.jensen_value - 1.0) > 1e-15)
    throw SymbolicMismatch("optimal branch parameters violate a constraint");
  return out;
}

// ---- premise of the pairwise-invariant optimality ------------------------------

PairwisePremiseReport pairwise_premise_check(const DensityMatrix& sigma) {
  const bell::BellMatrix x = bell::bell_expression(sigma);
  const double theta = x(0, 0).real();
  if (theta < 0.25 - 1e-12)
    throw PremiseViolated("state has theta below 1/4");

  const DensityMatrix two = sigma.tensor_power(2);
  auto tr = [&](Subspace s) {
    return expectation(two, bell::projector(s).op);
  };
  const double k_block = tr(Subspace::K5p) + tr(Subspace::K1p) + tr(Subspace::K3m);
  const double l_block = tr(Subspace::L3p) + tr(Subspace::L3m);

  const double lhs = k_block / 9.0;
  const double rhs = l_block / 6.0;
  const double d3 = x(1, 1).real() + x(2, 2).real() + x(3, 3).real();
  const double factored = (theta - d3 / 3.0) * d3 / 3.0;
  if (std::abs((rhs - lhs) - factored) > 1e-12)
    throw SymbolicMismatch("factored form of the block inequality is off");

  PairwisePremiseReport out{};
  out.lhs = lhs;
  out.rhs = rhs;
  out.factored = factored;
  out.inequality_ok = lhs <= rhs + 1e-12;
  // M = (1/3) [[1, -2], [0, 3]], inverse of [[3, 2], [0, 1]]
  out.v_prime = {k_block / 3.0, (-2.0 * k_block + 3.0 * l_block) / 3.0};
  out.v_prime_nonneg = out.v_prime[0] >= -1e-12 && out.v_prime[1] >= -1e-12;
  return out;
}

}  // namespace locc::verify
