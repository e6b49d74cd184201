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

#include <vector>

#include "locc/qcore.hpp"
#include "locc/rng.hpp"

namespace locc::groups {

/// 2x2 special unitary; unitary and det = 1 both to 1e-12.
class Su2 {
 public:
  explicit Su2(Eigen::Matrix2cd m);

  const Eigen::Matrix2cd& matrix() const { return m_; }

  static Su2 identity();

 private:
  Eigen::Matrix2cd m_;
};

/// Haar-distributed SU(2) element: two uniform phases and one
/// uniform-in-cos polar angle.  Deterministic for a given stream state.
Su2 haar_su2(CounterRng& rng);

/// Haar-distributed SU(d): Ginibre + QR with phase fixing, then the
/// determinant is normalized to one.
Matrix haar_su(int d, CounterRng& rng);

/// Entrywise complex conjugate in the standard basis; again special
/// unitary.  g (x) contragradient(g) fixes the maximally entangled state.
Su2 contragradient(const Su2& g);

/// g on A tensor conj(g) on B, for one pair of d-dimensional parties.
Operator u_action(const Matrix& g, int d = 2);

/// g in SU(d^n) acting on the joined A-side (A1..An) and its conjugate on
/// the joined B-side, materialized in the global pairwise factor order.
Operator u_action_n(const Matrix& g, int d, int n);

/// g (x) conj(g) (x) g (x) conj(g) on {A1,B1,A2,B2} (d = n = 2).
Operator v_action(const Su2& g);

/// g (x) conj(g) (x) h (x) conj(h) on {A1,B1,A2,B2}.
Operator w_action(const Su2& g, const Su2& h);

/// 24-element rotation group of the octahedron, realized projectively
/// inside SU(2): matrices differing by a global sign are identified and a
/// canonical representative is kept.  Closed under multiplication up to
/// that identification.
struct OctahedralGroup {
  std::vector<Eigen::Matrix2cd> elements;
};

const OctahedralGroup& octahedral_group();

/// Conjugation-invariant averaging families.
class Action {
 public:
  /// U on one pair {A, B}, group SU(d).
  static Action u_pair(int d);
  /// U on n pairs, group SU(d^n).
  static Action u_joint(int d, int n);
  /// Diagonal SU(2) action on two qubit pairs.
  static Action v();
  /// Independent SU(2) x SU(2) action on the two pairs.
  static Action w();

  const FactorList& space() const { return space_; }
  /// Unitary of a Haar-random group element.
  Operator sample(CounterRng& rng) const;
  /// Lie-algebra generators of the action (matrices on the full space).
  /// The commutant of the action equals their joint commutant.
  const std::vector<Matrix>& generators() const { return generators_; }
  /// Unitaries of the 24 octahedral representatives; empty when the scheme
  /// does not apply (joined action with n > 1).
  std::vector<Operator> octahedral_elements() const;
  const std::string& key() const { return key_; }

 private:
  enum class Kind { UPair, UJoint, V, W };
  Action(Kind kind, int d, int n);

  Kind kind_;
  int d_ = 2;
  int n_ = 1;
  std::string key_;
  FactorList space_;
  std::vector<Matrix> generators_;
};

enum class TwirlScheme { MonteCarlo, Octahedral, Exact };

struct TwirlOptions {
  TwirlScheme scheme = TwirlScheme::Exact;
  long samples = 100000;     // MonteCarlo only
  std::uint64_t seed = 7;    // MonteCarlo only
};

/// Average of action(g)^dag x action(g) over the group.
///  - MonteCarlo: empirical mean over Haar samples (deterministic per seed).
///  - Octahedral: exact 24-term sum.
///  - Exact: Hilbert-Schmidt projection onto the commutant of the action,
///    computed from the kernel of the adjoint maps of the generators; this
///    is the Haar integral to machine precision.
Operator twirl(const Operator& x, const Action& action,
               const TwirlOptions& options = {});

}  // namespace locc::groups
