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

#include "locc/groups.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace locc::groups {

namespace {

constexpr Complex kI{0.0, 1.0};

// Hermitian traceless basis of su(d) (generalized Gell-Mann matrices).
std::vector<Matrix> su_basis(int d) {
  std::vector<Matrix> out;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Matrix s = Matrix::Zero(d, d);
      s(i, j) = 1.0;
      s(j, i) = 1.0;
      out.push_back(s);
      Matrix a = Matrix::Zero(d, d);
      a(i, j) = -kI;
      a(j, i) = kI;
      out.push_back(a);
    }
  for (int i = 0; i + 1 < d; ++i) {
    Matrix z = Matrix::Zero(d, d);
    z(i, i) = 1.0;
    z(i + 1, i + 1) = -1.0;
    out.push_back(z);
  }
  return out;
}

// Keep one representative of {g, -g}: flip the sign so that the first
// entry of significant magnitude has positive real part (positive
// imaginary part when the real part vanishes).
Eigen::Matrix2cd canonical_sign(const Eigen::Matrix2cd& g) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Complex z = g(i, j);
      if (std::abs(z.real()) > 1e-7) return z.real() > 0 ? g : Eigen::Matrix2cd(-g);
      if (std::abs(z.imag()) > 1e-7) return z.imag() > 0 ? g : Eigen::Matrix2cd(-g);
    }
  return g;
}

Matrix conj_copy(const Matrix& m) { return m.conjugate(); }

}  // namespace

// ---- Su2 -------------------------------------------------------------------

Su2::Su2(Eigen::Matrix2cd m) : m_(std::move(m)) {
  if (!is_unitary(m_, kUnitaryTol)) throw InvalidState("Su2 is not unitary");
  const Complex det = m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(1, 0);
  if (std::abs(det - 1.0) > 1e-12)
    throw InvalidState("Su2 determinant is not one");
}

Su2 Su2::identity() { return Su2(Eigen::Matrix2cd::Identity()); }

Su2 haar_su2(CounterRng& rng) {
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double psi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double xi = rng.uniform();  // sin^2(polar) uniform in [0,1)
  const double st = std::sqrt(xi);
  const double ct = std::sqrt(1.0 - xi);
  const Complex a = ct * std::exp(kI * phi);
  const Complex b = st * std::exp(kI * psi);
  Eigen::Matrix2cd m;
  m << a, b, -std::conj(b), std::conj(a);
  return Su2(m);
}

Matrix haar_su(int d, CounterRng& rng) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  // rotate the determinant onto 1 (irrelevant for conjugations, but keeps
  // the special-unitary contract)
  const Complex det = q.determinant();
  q *= std::pow(det, -1.0 / d);
  return q;
}

Su2 contragradient(const Su2& g) {
  return Su2(g.matrix().conjugate());
}

Operator u_action(const Matrix& g, int d) {
  if (g.rows() != d || g.cols() != d)
    throw InvalidState("group element has wrong dimension");
  return Operator(single_pair(d), kron(g, conj_copy(g)));
}

Operator u_action_n(const Matrix& g, int d, int n) {
  if (n == 1) return u_action(g, d);
  const FactorList space = sample_pairs(d, n);
  FactorList a_side, b_side;
  for (int i = 1; i <= n; ++i) {
    a_side.push_back({"A" + std::to_string(i), d});
    b_side.push_back({"B" + std::to_string(i), d});
  }
  const Operator ua = embed(Operator(a_side, g), space);
  const Operator ub = embed(Operator(b_side, conj_copy(g)), space);
  return ua * ub;
}

Operator v_action(const Su2& g) { return w_action(g, g); }

Operator w_action(const Su2& g, const Su2& h) {
  const Matrix& mg = g.matrix();
  const Matrix& mh = h.matrix();
  Matrix m = kron(kron(mg, conj_copy(mg)), kron(mh, conj_copy(mh)));
  return Operator(sample_pairs(2, 2), std::move(m));
}

const OctahedralGroup& octahedral_group() {
  static const OctahedralGroup group = [] {
    // Lifts of the two four-fold rotations about orthogonal axes.  The
    // square of g1 is diag(i, -i); g1 itself is needed to reach all 24
    // rotations (its square alone only generates an 8-element subgroup
    // that fixes one axis).
    Eigen::Matrix2cd g1, g2;
    g1 << std::exp(kI * std::numbers::pi / 4.0), 0, 0,
        std::exp(-kI * std::numbers::pi / 4.0);
    g2 << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
        1.0 / std::sqrt(2.0);

    std::vector<Eigen::Matrix2cd> elems = {
        canonical_sign(Eigen::Matrix2cd::Identity()), canonical_sign(g1),
        canonical_sign(g2)};
    auto contains = [&](const Eigen::Matrix2cd& m) {
      for (const auto& e : elems)
        if ((e - m).cwiseAbs().maxCoeff() < 1e-9) return true;
      return false;
    };
    bool grew = true;
    while (grew) {
      grew = false;
      const std::size_t n = elems.size();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const Eigen::Matrix2cd p = canonical_sign(elems[i] * elems[j]);
          if (!contains(p)) {
            elems.push_back(p);
            grew = true;
            if (elems.size() > 48)
              throw ClosureOverflow("octahedral closure did not stabilize");
          }
        }
    }
    if (elems.size() != 24)
      throw ClosureOverflow("octahedral closure has " +
                            std::to_string(elems.size()) + " elements");
    return OctahedralGroup{std::move(elems)};
  }();
  return group;
}

// ---- Action ----------------------------------------------------------------

Action::Action(Kind kind, int d, int n) : kind_(kind), d_(d), n_(n) {
  switch (kind_) {
    case Kind::UPair:
    case Kind::UJoint: {
      space_ = sample_pairs(d_, n_);
      key_ = "U:" + std::to_string(d_) + ":" + std::to_string(n_);
      const int dn = static_cast<int>(std::lround(std::pow(d_, n_)));
      for (const Matrix& h : su_basis(dn)) {
        // derivative of g -> U_A(g) (x) conj(U_B(g)) along iH
        FactorList a_side, b_side;
        if (n_ == 1) {
          a_side = {{"A", d_}};
          b_side = {{"B", d_}};
        } else {
          for (int i = 1; i <= n_; ++i) {
            a_side.push_back({"A" + std::to_string(i), d_});
            b_side.push_back({"B" + std::to_string(i), d_});
          }
        }
        const Matrix ga = embed(Operator(a_side, h), space_).matrix();
        const Matrix gb = embed(Operator(b_side, conj_copy(h)), space_).matrix();
        generators_.push_back(ga - gb);
      }
      break;
    }
    case Kind::V:
    case Kind::W: {
      space_ = sample_pairs(2, 2);
      key_ = kind_ == Kind::V ? "V" : "W";
      const FactorList a1{{"A1", 2}}, b1{{"B1", 2}}, a2{{"A2", 2}}, b2{{"B2", 2}};
      for (const Matrix& h : su_basis(2)) {
        const Matrix t1 = embed(Operator(a1, h), space_).matrix() -
                          embed(Operator(b1, conj_copy(h)), space_).matrix();
        const Matrix t2 = embed(Operator(a2, h), space_).matrix() -
                          embed(Operator(b2, conj_copy(h)), space_).matrix();
        if (kind_ == Kind::V) {
          generators_.push_back(t1 + t2);
        } else {
          generators_.push_back(t1);
          generators_.push_back(t2);
        }
      }
      break;
    }
  }
}

Action Action::u_pair(int d) { return Action(Kind::UPair, d, 1); }
Action Action::u_joint(int d, int n) { return Action(Kind::UJoint, d, n); }
Action Action::v() { return Action(Kind::V, 2, 2); }
Action Action::w() { return Action(Kind::W, 2, 2); }

Operator Action::sample(CounterRng& rng) const {
  switch (kind_) {
    case Kind::UPair:
      return u_action(d_ == 2 ? Matrix(haar_su2(rng).matrix())
                              : haar_su(d_, rng),
                      d_);
    case Kind::UJoint: {
      const int dn = static_cast<int>(std::lround(std::pow(d_, n_)));
      return u_action_n(haar_su(dn, rng), d_, n_);
    }
    case Kind::V:
      return v_action(haar_su2(rng));
    case Kind::W: {
      const Su2 g = haar_su2(rng);
      const Su2 h = haar_su2(rng);
      return w_action(g, h);
    }
  }
  throw InvalidState("unreachable");
}

std::vector<Operator> Action::octahedral_elements() const {
  const auto& oct = octahedral_group();
  std::vector<Operator> out;
  out.reserve(24);
  switch (kind_) {
    case Kind::UPair:
      if (d_ != 2) return {};
      for (const auto& g : oct.elements) out.push_back(u_action(g, 2));
      return out;
    case Kind::V:
      for (const auto& g : oct.elements) out.push_back(v_action(Su2(g)));
      return out;
    default:
      return {};
  }
}

// ---- twirl -----------------------------------------------------------------

namespace {

// Orthonormal (Hilbert-Schmidt) basis of the commutant of the action,
// computed as the joint kernel of the adjoint maps Y -> [Y, A_k].  With
// column-major vectorization, vec([Y, A]) = (I (x) A - A^T (x) I) vec(Y).
const std::vector<Matrix>& commutant_basis(const Action& action) {
  static std::map<std::string, std::vector<Matrix>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(action.key());
  if (it != cache.end()) return it->second;

  const int dim = total_dimension(action.space());
  const int n2 = dim * dim;
  Matrix gram = Matrix::Zero(n2, n2);
  const Matrix id = Matrix::Identity(dim, dim);
  for (const Matrix& a : action.generators()) {
    const Matrix ad = kron(id, a) - kron(a.transpose(), id);
    gram += ad.adjoint() * ad;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  std::vector<Matrix> basis;
  for (int k = 0; k < n2; ++k) {
    if (es.eigenvalues()(k) < 1e-9) {
      const Vector v = es.eigenvectors().col(k);
      basis.push_back(Eigen::Map<const Matrix>(v.data(), dim, dim));
    }
  }
  it = cache.emplace(action.key(), std::move(basis)).first;
  return it->second;
}

}  // namespace

Operator twirl(const Operator& x, const Action& action,
               const TwirlOptions& options) {
  if (x.factors() != action.space())
    throw FactorMismatch("operator does not live on the action's space");

  switch (options.scheme) {
    case TwirlScheme::MonteCarlo: {
      CounterRng rng(options.seed);
      Matrix acc = Matrix::Zero(x.dim(), x.dim());
      for (long i = 0; i < options.samples; ++i) {
        const Matrix u = action.sample(rng).matrix();
        acc += u.adjoint() * x.matrix() * u;
      }
      return Operator(x.factors(), acc / double(options.samples));
    }
    case TwirlScheme::Octahedral: {
      const auto elems = action.octahedral_elements();
      if (elems.empty())
        throw InvalidState("octahedral scheme does not apply to this action");
      Matrix acc = Matrix::Zero(x.dim(), x.dim());
      for (const Operator& u : elems)
        acc += u.matrix().adjoint() * x.matrix() * u.matrix();
      return Operator(x.factors(), acc / double(elems.size()));
    }
    case TwirlScheme::Exact: {
      const auto& basis = commutant_basis(action);
      Matrix acc = Matrix::Zero(x.dim(), x.dim());
      for (const Matrix& c : basis) {
        const Complex coeff = (c.adjoint() * x.matrix()).trace();
        acc += coeff * c;
      }
      return Operator(x.factors(), std::move(acc));
    }
  }
  throw InvalidState("unreachable");
}

}  // namespace locc::groups
