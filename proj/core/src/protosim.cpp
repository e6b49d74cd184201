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

#include "locc/protosim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "locc/bellspace.hpp"
#include "locc/groups.hpp"

namespace locc::protosim {

namespace {

SimulationReport make_report(long shots, long accepted, double analytic) {
  const double beta_hat = double(accepted) / double(shots);
  const double std_err = std::sqrt(beta_hat * (1.0 - beta_hat) / double(shots));
  // deviation measured against the null distribution of the analytic value;
  // stays finite when the empirical rate saturates at 0 or 1
  const double null_err =
      std::sqrt(std::max(analytic * (1.0 - analytic), 0.0) / double(shots));
  double z = 0.0;
  if (null_err > 0.0) {
    z = (beta_hat - analytic) / null_err;
  } else if (std::abs(beta_hat - analytic) > 1e-12) {
    z = beta_hat > analytic ? 1e100 : -1e100;  // degenerate null, sure miss
  }
  return SimulationReport{shots, accepted, beta_hat, std_err, analytic, z};
}

// phi^k of the magic basis as a 2x2 coefficient matrix F[a, j].
std::array<Eigen::Matrix2cd, 4> bell_coefficient_matrices() {
  std::array<Eigen::Matrix2cd, 4> f;
  for (int k = 0; k < 4; ++k) {
    const Vector& v = bell::bell_basis().kets[k].vector();
    f[k] << v(0), v(1), v(2), v(3);
  }
  return f;
}

// Unitary factor of the polar decomposition of a 2x2 matrix.
Eigen::Matrix2cd polar_unitary(const Eigen::Matrix2cd& m) {
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Receiver corrections for the teleportation round, derived from the
// perfect-channel case: outcome k leaves the receiver in K_k psi with
// K_k = conj(F_k)/sqrt2, so the correction is the inverse unitary factor.
const std::array<Eigen::Matrix2cd, 4>& teleport_corrections() {
  static const std::array<Eigen::Matrix2cd, 4> u = [] {
    const auto f = bell_coefficient_matrices();
    std::array<Eigen::Matrix2cd, 4> out;
    for (int k = 0; k < 4; ++k)
      out[k] = polar_unitary(f[k].conjugate()).adjoint();
    return out;
  }();
  return u;
}

struct TeleportContext {
  std::array<Eigen::Matrix2cd, 4> f;          // Bell coefficient matrices
  std::array<Eigen::Matrix2cd, 4> u;          // receiver corrections
  std::array<std::array<Eigen::Matrix2cd, 2>, 2> s;  // sigma blocks
};

TeleportContext make_teleport_context(const DensityMatrix& sigma) {
  TeleportContext ctx;
  ctx.f = bell_coefficient_matrices();
  ctx.u = teleport_corrections();
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      ctx.s[a][ap] = sigma.matrix().block(2 * a, 2 * ap, 2, 2);
  return ctx;
}

// Unnormalized receiver state after outcome k, for channel sigma and
// input psi.
Eigen::Matrix2cd receiver_state(const TeleportContext& ctx, int k,
                                const Eigen::Vector2cd& psi) {
  const Eigen::Vector2cd c = ctx.f[k] * psi.conjugate();
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      rho += std::conj(c(a)) * c(ap) * ctx.s[a][ap];
  return rho;
}

Eigen::Vector2cd haar_qubit(CounterRng& rng) {
  Eigen::Vector2cd v(Complex(rng.gaussian(), rng.gaussian()),
                     Complex(rng.gaussian(), rng.gaussian()));
  return v / v.norm();
}

}  // namespace

// ---- finite realizations -----------------------------------------------------

SimulationReport simulate(const discretize::FiniteRealization& realization,
                          const DensityMatrix& sigma, long shots,
                          std::uint64_t seed) {
  if (shots < 1) throw InvalidState("simulate needs shots >= 1");
  const int n = static_cast<int>(realization.space.size()) / 2;
  const DensityMatrix rho = sigma.tensor_power(n);
  const double analytic = expectation(rho, realization.reconstructed_t0);

  // per-branch joint outcome distribution over the product measurement
  struct BranchTable {
    double probability;
    std::vector<double> cumulative;  // over outcome tuples
    std::vector<bool> accept;
  };
  std::vector<BranchTable> tables;
  std::vector<double> branch_cumulative;
  double branch_total = 0.0;
  for (const auto& b : realization.branches) {
    const std::size_t n_sub = b.bases.size();
    std::vector<std::size_t> radix(n_sub);
    std::size_t n_tuples = 1;
    for (std::size_t s = 0; s < n_sub; ++s) {
      radix[s] = b.bases[s].size();
      n_tuples *= radix[s];
    }
    BranchTable table;
    table.probability = b.probability;
    table.cumulative.reserve(n_tuples);
    table.accept.reserve(n_tuples);
    double running = 0.0;
    for (std::size_t t = 0; t < n_tuples; ++t) {
      std::vector<int> tuple(n_sub);
      std::size_t rest = t;
      for (std::size_t s = n_sub; s-- > 0;) {
        tuple[s] = static_cast<int>(rest % radix[s]);
        rest /= radix[s];
      }
      Vector v = b.bases[0][tuple[0]];
      for (std::size_t s = 1; s < n_sub; ++s) v = kron(v, b.bases[s][tuple[s]]);
      running += sandwich(v, rho.matrix(), v).real();
      table.cumulative.push_back(running);
      table.accept.push_back(std::find(b.accepted.begin(), b.accepted.end(),
                                       tuple) != b.accepted.end());
    }
    tables.push_back(std::move(table));
    branch_total += b.probability;
    branch_cumulative.push_back(branch_total);
  }

  const CounterRng base(seed);
  long accepted = 0;
  for (long shot = 0; shot < shots; ++shot) {
    CounterRng rng = base.substream(static_cast<std::uint64_t>(shot));
    const double ub = rng.uniform() * branch_total;
    std::size_t bi = 0;
    while (bi + 1 < branch_cumulative.size() && ub > branch_cumulative[bi])
      ++bi;
    const BranchTable& table = tables[bi];
    const double uo = rng.uniform() * table.cumulative.back();
    std::size_t oi = 0;
    while (oi + 1 < table.cumulative.size() && uo > table.cumulative[oi]) ++oi;
    if (table.accept[oi]) ++accepted;
  }
  return make_report(shots, accepted, analytic);
}

// ---- teleportation -----------------------------------------------------------

double exact_teleportation_fidelity(const DensityMatrix& sigma,
                                    const Eigen::Vector2cd& psi) {
  const TeleportContext ctx = make_teleport_context(sigma);
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Matrix2cd rho = receiver_state(ctx, k, psi);
    const Eigen::Vector2cd corrected = ctx.u[k].adjoint() * psi;
    total += (corrected.dot(rho * corrected)).real();
  }
  return total;
}

Operator teleportation_acceptance_operator(const Eigen::Vector2cd& psi) {
  const auto f = bell_coefficient_matrices();
  const auto& u = teleport_corrections();
  Matrix e = Matrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector2cd c = f[k] * psi.conjugate();
    const Eigen::Vector2cd w = u[k].adjoint() * psi;
    e += kron(Matrix(c * c.adjoint()), Matrix(w * w.adjoint()));
  }
  return Operator(single_pair(2), std::move(e));
}

SimulationReport simulate_teleportation(
    const DensityMatrix& sigma, std::optional<Eigen::Vector2cd> fixed_input,
    long shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidState("simulate_teleportation needs shots >= 1");
  if (sigma.dim() != 4)
    throw InvalidState("teleportation needs a single qubit pair");
  if (fixed_input && std::abs(fixed_input->norm() - 1.0) > 1e-12)
    throw InvalidState("fixed input must be unit norm");

  const TeleportContext ctx = make_teleport_context(sigma);
  const double analytic =
      fixed_input ? exact_teleportation_fidelity(sigma, *fixed_input)
                  : (2.0 * bell::fidelity_theta(sigma) + 1.0) / 3.0;

  const CounterRng base(seed);
  long accepted = 0;
  for (long shot = 0; shot < shots; ++shot) {
    CounterRng rng = base.substream(static_cast<std::uint64_t>(shot));
    const Eigen::Vector2cd psi = fixed_input ? *fixed_input : haar_qubit(rng);

    std::array<Eigen::Matrix2cd, 4> rho;
    std::array<double, 4> cum{};
    double running = 0.0;
    for (int k = 0; k < 4; ++k) {
      rho[k] = receiver_state(ctx, k, psi);
      running += rho[k].trace().real();
      cum[k] = running;
    }
    const double u = rng.uniform() * running;
    int k = 0;
    while (k < 3 && u > cum[k]) ++k;

    const double pk = rho[k].trace().real();
    const Eigen::Vector2cd corrected = ctx.u[k].adjoint() * psi;
    const double success = (corrected.dot(rho[k] * corrected)).real() / pk;
    if (rng.uniform() < success) ++accepted;
  }
  return make_report(shots, accepted, analytic);
}

// ---- entanglement swapping ---------------------------------------------------

namespace {

struct SwapOutcome {
  double probability;
  double fidelity;
};

const FactorList& sender_factors() {
  static const FactorList f{{"A1", 2}, {"A2", 2}};
  return f;
}

// Receiver-pair state after outcome k, unnormalized.
Operator swap_collapsed(const DensityMatrix& two_pairs, int k) {
  const Vector& bk = bell::bell_basis().kets[k].vector();
  const Operator pk =
      embed(Operator(sender_factors(), bk * bk.adjoint()), two_pairs.factors());
  return partial_trace(pk * two_pairs.op() * pk, {"A1", "A2"});
}

// Corrections on B2, derived once from the perfect-channel case: outcome k
// leaves the receivers in (I (x) K_k)|phi0>, and the correction undoes the
// unitary factor of K_k.
const std::array<Eigen::Matrix2cd, 4>& swap_corrections() {
  static const std::array<Eigen::Matrix2cd, 4> u = [] {
    const DensityMatrix perfect(maximally_entangled_ket(2));
    const DensityMatrix two = perfect.tensor_power(2);
    std::array<Eigen::Matrix2cd, 4> out;
    for (int k = 0; k < 4; ++k) {
      const Operator collapsed = swap_collapsed(two, k);
      Eigen::SelfAdjointEigenSolver<Matrix> es(collapsed.matrix());
      const Vector chi = es.eigenvectors().col(3);  // the pure component
      Eigen::Matrix2cd kmat;
      for (int i = 0; i < 2; ++i)
        for (int b2 = 0; b2 < 2; ++b2)
          kmat(b2, i) = std::sqrt(2.0) * chi(i * 2 + b2);
      out[k] = polar_unitary(kmat).adjoint();
    }
    return out;
  }();
  return u;
}

// Target state of the fidelity measurement after outcome k: the corrected
// image of the maximally entangled receiver state.
Vector swap_target(int k) {
  const Ket phi0 = maximally_entangled_ket(2);
  const Matrix correction =
      kron(Matrix(Eigen::Matrix2cd::Identity()), Matrix(swap_corrections()[k]));
  return correction.adjoint() * phi0.vector();
}

// Per-outcome probability and corrected fidelity of one swapping round on
// the pair of (possibly rotated) single-pair states s1, s2.  Fixed-size
// arithmetic; this is the per-shot hot path.
std::array<SwapOutcome, 4> swap_round(const Eigen::Matrix4cd& s1,
                                      const Eigen::Matrix4cd& s2) {
  static const std::array<Eigen::Matrix2cd, 4> f = bell_coefficient_matrices();
  static const std::array<Eigen::Vector4cd, 4> targets = [] {
    std::array<Eigen::Vector4cd, 4> t;
    for (int k = 0; k < 4; ++k) t[k] = swap_target(k);
    return t;
  }();

  std::array<SwapOutcome, 4> out;
  for (int k = 0; k < 4; ++k) {
    // collapsed[b1 b2, b1' b2'] =
    //   sum conj(F[a1,a2]) s1[(a1 b1),(a1' b1')] s2[(a2 b2),(a2' b2')]
    //   F[a1',a2']
    Eigen::Matrix4cd collapsed = Eigen::Matrix4cd::Zero();
    for (int a1 = 0; a1 < 2; ++a1)
      for (int a1p = 0; a1p < 2; ++a1p)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int a2p = 0; a2p < 2; ++a2p) {
            const Complex coeff =
                std::conj(f[k](a1, a2)) * f[k](a1p, a2p);
            if (coeff == Complex(0)) continue;
            for (int b1 = 0; b1 < 2; ++b1)
              for (int b1p = 0; b1p < 2; ++b1p)
                for (int b2 = 0; b2 < 2; ++b2)
                  for (int b2p = 0; b2p < 2; ++b2p)
                    collapsed(b1 * 2 + b2, b1p * 2 + b2p) +=
                        coeff * s1(a1 * 2 + b1, a1p * 2 + b1p) *
                        s2(a2 * 2 + b2, a2p * 2 + b2p);
          }
    const double prob = collapsed.trace().real();
    const double fid =
        (targets[k].dot(collapsed * targets[k])).real() / prob;
    out[k] = SwapOutcome{prob, fid};
  }
  return out;
}

Eigen::Matrix4cd pair_unitary(const Eigen::Matrix2cd& g) {
  Eigen::Matrix4cd u;
  const Eigen::Matrix2cd gc = g.conjugate();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      u.block<2, 2>(2 * i, 2 * j) = g(i, j) * gc;
  return u;
}

}  // namespace

Operator swapping_acceptance_operator() {
  const FactorList space = sample_pairs(2, 2);
  const FactorList receivers{{"B1", 2}, {"B2", 2}};
  Matrix e = Matrix::Zero(16, 16);
  for (int k = 0; k < 4; ++k) {
    const Vector& bk = bell::bell_basis().kets[k].vector();
    const Vector back = swap_target(k);
    e += (embed(Operator(sender_factors(), bk * bk.adjoint()), space) *
          embed(Operator(receivers, back * back.adjoint()), space))
             .matrix();
  }
  return Operator(space, std::move(e));
}

SimulationReport simulate_swapping(const DensityMatrix& sigma, long shots,
                                   std::uint64_t seed) {
  if (shots < 1) throw InvalidState("simulate_swapping needs shots >= 1");
  if (sigma.dim() != 4)
    throw InvalidState("swapping needs a single qubit pair");

  const double theta = bell::fidelity_theta(sigma);
  const double analytic =
      theta * theta + (1.0 - theta) * (1.0 - theta) / 3.0;
  const Eigen::Matrix4cd s = sigma.matrix();

  const CounterRng base(seed);
  long accepted = 0;
  for (long shot = 0; shot < shots; ++shot) {
    CounterRng rng = base.substream(static_cast<std::uint64_t>(shot));
    // randomized local-rotation preamble (g on pair 1, h on pair 2); the
    // bare swapping round matches the invariant test only on average over
    // these rotations
    const Eigen::Matrix4cd u1 = pair_unitary(groups::haar_su2(rng).matrix());
    const Eigen::Matrix4cd u2 = pair_unitary(groups::haar_su2(rng).matrix());
    const Eigen::Matrix4cd s1 = u1 * s * u1.adjoint();
    const Eigen::Matrix4cd s2 = u2 * s * u2.adjoint();

    const auto outcomes = swap_round(s1, s2);
    std::array<double, 4> cum{};
    double running = 0.0;
    for (int k = 0; k < 4; ++k) {
      running += outcomes[k].probability;
      cum[k] = running;
    }
    const double u = rng.uniform() * running;
    int k = 0;
    while (k < 3 && u > cum[k]) ++k;
    if (rng.uniform() < outcomes[k].fidelity) ++accepted;
  }
  return make_report(shots, accepted, analytic);
}

}  // namespace locc::protosim
