// Copyright 2026 The aklt-optics Authors
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

// Matrix-product description of the spin-1 valence-bond chain with spin-1/2
// end particles, on biphoton sites.
//
// A site is a biphoton in the ordered basis (|HH>, |HV>, |VV>), identified
// with the S_z eigenstates (|M1>, |M0>, |M-1>). The end particles are single
// photons with |0> = H (spin up) and |1> = V. The chain state is
//
//   |V> = sum_b |b_1 ... b_N> (1 (x) A[b_N] ... A[b_1]) |psi->_{0,N+1}
//
// where A[b] is the coefficient operator of the outcome b, so that
// A[b] = sum_M conj(<M|b>) A[M] with
//   A[M1] = -sqrt2 |1><0|,  A[M0] = Z,  A[M-1] = sqrt2 |0><1|.
// The pair (0, N+1) is carried as a 2x2 matrix Psi with
// |pair> = sum_ij Psi(i,j) |i>_0 |j>_{N+1}.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "aklt/common.hpp"
#include "aklt/elements.hpp"
#include "aklt/fock.hpp"

namespace aklt::mps {

struct BiphotonState {
  Vector3 amplitudes = Vector3::Zero();  // (HH, HV, VV)

  BiphotonState() = default;
  explicit BiphotonState(Vector3 a) : amplitudes(std::move(a)) {}
  BiphotonState(Complex hh, Complex hv, Complex vv) : amplitudes(hh, hv, vv) {}

  double norm() const { return amplitudes.norm(); }
  BiphotonState normalized() const {
    const double n = norm();
    if (n == 0.0) throw DomainError("cannot normalize a zero biphoton");
    return BiphotonState(amplitudes / n);
  }

  static BiphotonState hh() { return {1, 0, 0}; }
  static BiphotonState hv() { return {0, 1, 0}; }
  static BiphotonState vv() { return {0, 0, 1}; }

  // Normalized (p.a^dag)(q.a^dag)|vac>.
  static BiphotonState from_polarizations(const Vector2& p, const Vector2& q) {
    BiphotonState b(p(0) * q(0) * kSqrt2, p(0) * q(1) + p(1) * q(0),
                    p(1) * q(1) * kSqrt2);
    return b.normalized();
  }

  static BiphotonState da() {
    return from_polarizations(elements::polarization::d(),
                              elements::polarization::a());
  }
  static BiphotonState rl() {
    return from_polarizations(elements::polarization::r(),
                              elements::polarization::l());
  }
  static BiphotonState dd() {
    return from_polarizations(elements::polarization::d(),
                              elements::polarization::d());
  }
  static BiphotonState aa() {
    return from_polarizations(elements::polarization::a(),
                              elements::polarization::a());
  }

  fock::FockState to_fock(int arm) const {
    return fock::FockState::from_amplitudes({arm}, {{{2, 0}, amplitudes(0)},
                                                    {{1, 1}, amplitudes(1)},
                                                    {{0, 2}, amplitudes(2)}});
  }

  // Reads a single-arm two-photon state.
  static BiphotonState from_fock(const fock::FockState& s) {
    if (s.arm_count() != 1) {
      throw DimensionError("from_fock: expected a single-arm state");
    }
    for (const auto& [occ, amp] : s.terms()) {
      if (occ[0] + occ[1] != 2) {
        throw DimensionError("from_fock: expected exactly two photons");
      }
    }
    return {s.amplitude({2, 0}), s.amplitude({1, 1}), s.amplitude({0, 2})};
  }
};

inline Complex overlap(const BiphotonState& a, const BiphotonState& b) {
  return a.amplitudes.dot(b.amplitudes);
}

// Splits a biphoton into its two photon polarizations:
// b = scale * (p.a^dag)(q.a^dag)|vac> with unit p, q.
struct PolarizationFactors {
  Vector2 p;
  Vector2 q;
  Complex scale;
};

inline PolarizationFactors polarization_factors(const BiphotonState& b) {
  // Polynomial c2 h^2 + c1 h v + c0 v^2 in the commuting creation operators.
  const Complex c2 = b.amplitudes(0) / kSqrt2;
  const Complex c1 = b.amplitudes(1);
  const Complex c0 = b.amplitudes(2) / kSqrt2;
  if (b.norm() == 0.0) throw DomainError("zero biphoton has no factors");
  Vector2 p;
  Vector2 q;
  if (std::max(std::abs(c2), std::abs(c0)) < 1e-14 * b.norm()) {
    p = Vector2(1, 0);
    q = Vector2(0, 1);
  } else if (std::abs(c2) >= std::abs(c0)) {
    // c2 (h - r1 v)(h - r2 v)
    const Complex disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    const Complex r1 = (-c1 + disc) / (2.0 * c2);
    const Complex r2 = (-c1 - disc) / (2.0 * c2);
    p = Vector2(1, -r1);
    q = Vector2(1, -r2);
  } else {
    // c0 (v - s1 h)(v - s2 h)
    const Complex disc = std::sqrt(c1 * c1 - 4.0 * c0 * c2);
    const Complex s1 = (-c1 + disc) / (2.0 * c0);
    const Complex s2 = (-c1 - disc) / (2.0 * c0);
    p = Vector2(-s1, 1);
    q = Vector2(-s2, 1);
  }
  p.normalize();
  q.normalize();
  // Fix the scale against the largest amplitude.
  const BiphotonState unit(p(0) * q(0) * kSqrt2, p(0) * q(1) + p(1) * q(0),
                           p(1) * q(1) * kSqrt2);
  Eigen::Index k = 0;
  b.amplitudes.cwiseAbs().maxCoeff(&k);
  return {p, q, b.amplitudes(k) / unit.amplitudes(k)};
}

// |<p|q>| of the two photon polarizations: 0 for zero polarization degree.
inline double polarization_overlap(const BiphotonState& b) {
  const auto f = polarization_factors(b);
  return std::abs(f.p.dot(f.q));
}

inline bool has_zero_polarization_degree(const BiphotonState& b,
                                         double tol = 1e-9) {
  return polarization_overlap(b) <= tol;
}

// Operators of the three S_z eigenstates.
inline Matrix2 a_matrix_m1() { return -kSqrt2 * pauli::lowering(); }
inline Matrix2 a_matrix_m0() { return pauli::z(); }
inline Matrix2 a_matrix_mm1() { return kSqrt2 * pauli::raising(); }

// Correlation-space operator of a biphoton outcome. Conjugate-linear in the
// amplitudes, consistent with reading A[b] off as <b|V>.
inline Matrix2 a_map(const BiphotonState& b) {
  return std::conj(b.amplitudes(0)) * a_matrix_m1() +
         std::conj(b.amplitudes(1)) * a_matrix_m0() +
         std::conj(b.amplitudes(2)) * a_matrix_mm1();
}

struct InverseResult {
  BiphotonState state;  // normalized
  double scale = 0.0;   // op == scale * a_map(state)
};

inline InverseResult a_map_inverse(const Matrix2& op) {
  if (std::abs(op.trace()) > 1e-12 * std::max(1.0, op.norm())) {
    throw DomainError("a_map_inverse: operator is not traceless");
  }
  const BiphotonState raw(std::conj(-op(1, 0) / kSqrt2), std::conj(op(0, 0)),
                          std::conj(op(0, 1) / kSqrt2));
  const double n = raw.norm();
  if (n == 0.0) throw DomainError("a_map_inverse: zero operator");
  return {BiphotonState(raw.amplitudes / n), n};
}

// sigma_y op^T sigma_y: (1 (x) op)|psi-> == (push_through(op) (x) 1)|psi->.
inline Matrix2 push_through(const Matrix2& op) {
  return pauli::y() * op.transpose() * pauli::y();
}

struct SpinOps {
  std::array<Matrix3, 3> spin1;     // S_x, S_y, S_z on (M1, M0, M-1)
  std::array<Matrix2, 3> spin_half;  // s_x, s_y, s_z on (|0>, |1>)
};

inline SpinOps spin_ops() {
  Matrix3 sp = Matrix3::Zero();
  sp(0, 1) = kSqrt2;
  sp(1, 2) = kSqrt2;
  const Matrix3 sm = sp.adjoint();
  SpinOps ops;
  ops.spin1[0] = (sp + sm) / 2.0;
  ops.spin1[1] = (sp - sm) / (2.0 * kI);
  ops.spin1[2] = Matrix3::Zero();
  ops.spin1[2](0, 0) = 1;
  ops.spin1[2](2, 2) = -1;
  ops.spin_half[0] = pauli::x() / 2.0;
  ops.spin_half[1] = pauli::y() / 2.0;
  ops.spin_half[2] = pauli::z() / 2.0;
  return ops;
}

// Normalized zero eigenvector of n.S for a real unit axis n.
inline BiphotonState spin_zero_state(double nx, double ny, double nz) {
  const SpinOps ops = spin_ops();
  const Matrix3 h = nx * ops.spin1[0] + ny * ops.spin1[1] + nz * ops.spin1[2];
  Eigen::SelfAdjointEigenSolver<Matrix3> es(h);
  Eigen::Index k = 0;
  es.eigenvalues().cwiseAbs().minCoeff(&k);
  return BiphotonState(Vector3(es.eigenvectors().col(k))).normalized();
}

// X^x Z^z.
struct Pauli {
  int x = 0;
  int z = 0;

  Matrix2 matrix() const {
    Matrix2 m = Matrix2::Identity();
    if (x) m = m * pauli::x();
    if (z) m = m * pauli::z();
    return m;
  }
  std::string name() const {
    if (!x && !z) return "I";
    return std::string(x ? "X" : "") + (z ? "Z" : "");
  }
  bool operator==(const Pauli&) const = default;
};

enum class Role { kRotation, kBiproductOnly, kReadout };

inline std::string to_string(Role r) {
  switch (r) {
    case Role::kRotation: return "rotation";
    case Role::kBiproductOnly: return "biproduct-only";
    case Role::kReadout: return "readout";
  }
  return "?";
}

struct BasisElement {
  std::string label;     // e.g. "HV", "beta1"
  BiphotonState state;
  Matrix2 op;            // exactly a_map(state)
  std::string op_name;   // e.g. "XZ(theta)"
  Role role = Role::kBiproductOnly;
  Pauli biproduct;       // Pauli left of the rotation (or the whole op)
};

enum class BasisKind { kIdentity, kZRotation, kXRotation, kStandard };

inline std::string to_string(BasisKind k) {
  switch (k) {
    case BasisKind::kIdentity: return "identity";
    case BasisKind::kZRotation: return "z_rotation";
    case BasisKind::kXRotation: return "x_rotation";
    case BasisKind::kStandard: return "standard";
  }
  return "?";
}

struct MeasurementBasis {
  BasisKind kind = BasisKind::kIdentity;
  double theta = 0.0;
  std::array<BasisElement, 3> elements;
};

namespace detail {
inline BasisElement element(std::string label, const BiphotonState& s,
                            std::string op_name, Role role, Pauli biproduct) {
  return {std::move(label), s, a_map(s), std::move(op_name), role, biproduct};
}
}  // namespace detail

// Spin-0 bases for the identity, Z(theta) and X(theta) wire steps.
inline MeasurementBasis table2_basis(BasisKind kind, double theta = 0.0) {
  using detail::element;
  const Complex e = std::exp(-kI * theta);
  MeasurementBasis b;
  b.kind = kind;
  b.theta = theta;
  switch (kind) {
    case BasisKind::kIdentity:
      b.theta = 0.0;
      b.elements = {element("HV", BiphotonState::hv(), "Z",
                            Role::kBiproductOnly, {0, 1}),
                    element("DA", BiphotonState::da(), "X",
                            Role::kBiproductOnly, {1, 0}),
                    element("RL", BiphotonState::rl(), "XZ",
                            Role::kBiproductOnly, {1, 1})};
      break;
    case BasisKind::kZRotation: {
      const BiphotonState b1(kInvSqrt2, 0, -e * kInvSqrt2);
      const BiphotonState b2(kInvSqrt2, 0, e * kInvSqrt2);
      b.elements = {element("HH-VV", b1, "XZ(theta)", Role::kRotation, {1, 0}),
                    element("HH+VV", b2, "ZXZ(theta)", Role::kRotation, {1, 1}),
                    element("HV", BiphotonState::hv(), "Z",
                            Role::kBiproductOnly, {0, 1})};
      break;
    }
    case BasisKind::kXRotation: {
      const Vector3 dd = BiphotonState::dd().amplitudes;
      const Vector3 aa = BiphotonState::aa().amplitudes;
      const BiphotonState b1(Vector3((dd - e * aa) * kInvSqrt2));
      const BiphotonState b2(Vector3((dd + e * aa) * kInvSqrt2));
      b.elements = {element("DD-AA", b1, "ZX(theta)", Role::kRotation, {0, 1}),
                    element("DD+AA", b2, "XZX(theta)", Role::kRotation, {1, 1}),
                    element("DA", BiphotonState::da(), "X",
                            Role::kBiproductOnly, {1, 0})};
      break;
    }
    case BasisKind::kStandard:
      b.elements = {element("HH", BiphotonState::hh(), "-sqrt2*s-",
                            Role::kReadout, {}),
                    element("HV", BiphotonState::hv(), "Z",
                            Role::kBiproductOnly, {0, 1}),
                    element("VV", BiphotonState::vv(), "sqrt2*s+",
                            Role::kReadout, {})};
      break;
  }
  return b;
}

// The rotation a Table II element is meant to carry: op ~ biproduct * R.
inline Matrix2 intended_rotation(BasisKind kind, double theta) {
  switch (kind) {
    case BasisKind::kZRotation: return z_rotation(theta);
    case BasisKind::kXRotation: return x_rotation(theta);
    default: return Matrix2::Identity();
  }
}

// Chain of N spin-1 sites between two spin-1/2 ends. The site tensor is the
// translation-invariant a_map, so only the length is stored.
struct MPSChain {
  int length = 0;
};

inline Matrix2 singlet_pair() {
  Matrix2 psi;
  psi << 0, kInvSqrt2, -kInvSqrt2, 0;
  return psi;
}

// (1 (x) op) on the pair matrix.
inline Matrix2 act_on_right(const Matrix2& pair, const Matrix2& op) {
  return pair * op.transpose();
}

// (op (x) 1) on the pair matrix.
inline Matrix2 act_on_left(const Matrix2& pair, const Matrix2& op) {
  return op * pair;
}

// <outcomes, b_in, b_out | V> for site kets `outcomes` and end kets b_in
// (particle 0) and b_out (particle N+1). |V> is not normalized.
inline Complex amplitude(const MPSChain& chain,
                         const std::vector<BiphotonState>& outcomes,
                         const Vector2& b_in, const Vector2& b_out) {
  if (static_cast<int>(outcomes.size()) != chain.length) {
    throw DimensionError("amplitude: expected " +
                         std::to_string(chain.length) + " outcomes, got " +
                         std::to_string(outcomes.size()));
  }
  Matrix2 pair = singlet_pair();
  for (const auto& b : outcomes) pair = act_on_right(pair, a_map(b));
  return b_in.dot(pair * b_out.conjugate());
}

inline std::size_t state_dimension(int n) {
  std::size_t d = 4;
  for (int i = 0; i < n; ++i) d *= 3;
  return d;
}

// Dense amplitudes in the order (end0, site1, ..., siteN, endN+1), end
// index in {0,1}, site index in {0: HH, 1: HV, 2: VV}, first factor most
// significant.
inline VectorX state_vector(const MPSChain& chain) {
  const int n = chain.length;
  if (n < 0) throw DimensionError("negative chain length");
  if (n > 12) throw LimitError("state_vector: chain too long for dense form");
  const std::array<Matrix2, 3> ops = {a_matrix_m1(), a_matrix_m0(),
                                      a_matrix_mm1()};
  const std::size_t sites = state_dimension(n) / 4;
  VectorX v(static_cast<Eigen::Index>(state_dimension(n)));
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < sites; ++s) {
    std::size_t rem = s;
    for (int k = n - 1; k >= 0; --k) {
      digits[static_cast<std::size_t>(k)] = static_cast<int>(rem % 3);
      rem /= 3;
    }
    Matrix2 pair = singlet_pair();
    for (int k = 0; k < n; ++k) {
      pair = act_on_right(pair, ops[static_cast<std::size_t>(
                                    digits[static_cast<std::size_t>(k)])]);
    }
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const std::size_t idx =
            static_cast<std::size_t>(i) * sites * 2 + s * 2 +
            static_cast<std::size_t>(j);
        v(static_cast<Eigen::Index>(idx)) = pair(i, j);
      }
    }
  }
  return v;
}

}  // namespace aklt::mps
