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

// Optical element factories (50:50 splitter, PBS, waveplate) and the ideal
// polarization-singlet pair source.

#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "aklt/common.hpp"
#include "aklt/fock.hpp"

namespace aklt::elements {

using fock::FockState;
using fock::ModeIndex;
using fock::ModeTransform;
using fock::Polarization;

// Single-photon polarization vectors in the (H, V) basis.
namespace polarization {
inline Vector2 h() { return Vector2(1, 0); }
inline Vector2 v() { return Vector2(0, 1); }
inline Vector2 d() { return Vector2(kInvSqrt2, kInvSqrt2); }
inline Vector2 a() { return Vector2(kInvSqrt2, -kInvSqrt2); }
inline Vector2 l() { return Vector2(kInvSqrt2, kI * kInvSqrt2); }
inline Vector2 r() { return Vector2(kInvSqrt2, -kI * kInvSqrt2); }
}  // namespace polarization

// a^dag -> (a^dag + b^dag)/sqrt2, b^dag -> (a^dag - b^dag)/sqrt2 on both
// polarizations.
inline ModeTransform beamsplitter(int arm_a, int arm_b) {
  if (arm_a == arm_b) {
    throw InvalidSpecError("beamsplitter: arms must differ");
  }
  std::vector<ModeIndex> modes = {{arm_a, Polarization::H},
                                  {arm_a, Polarization::V},
                                  {arm_b, Polarization::H},
                                  {arm_b, Polarization::V}};
  MatrixX u = MatrixX::Zero(4, 4);
  for (int p = 0; p < 2; ++p) {
    u(p, p) = kInvSqrt2;
    u(p + 2, p) = kInvSqrt2;
    u(p, p + 2) = kInvSqrt2;
    u(p + 2, p + 2) = -kInvSqrt2;
  }
  return {std::move(modes), std::move(u)};
}

// Routes H light entering `arm` to out_h and V light to out_v. Realized as a
// mode permutation: the displaced modes of out_h / out_v are swapped back into
// `arm`, so the transform stays unitary when the outputs are fresh arms.
inline ModeTransform polarizing_beamsplitter(int arm, int out_h, int out_v) {
  if (out_h == out_v) {
    throw InvalidSpecError("polarizing_beamsplitter: output arms must differ");
  }
  std::vector<ModeIndex> modes = {{arm, Polarization::H},
                                  {arm, Polarization::V}};
  if (out_h != arm) modes.push_back({out_h, Polarization::H});
  if (out_v != arm) modes.push_back({out_v, Polarization::V});
  const auto n = static_cast<Eigen::Index>(modes.size());
  MatrixX u = MatrixX::Identity(n, n);
  Eigen::Index next = 2;
  if (out_h != arm) {
    u(0, 0) = 0;
    u(next, next) = 0;
    u(next, 0) = 1;
    u(0, next) = 1;
    ++next;
  }
  if (out_v != arm) {
    u(1, 1) = 0;
    u(next, next) = 0;
    u(next, 1) = 1;
    u(1, next) = 1;
  }
  return {std::move(modes), std::move(u)};
}

// Applies a Jones matrix to the polarization of one arm: a photon with
// polarization vector p leaves with jones * p.
inline ModeTransform waveplate(int arm, const Matrix2& jones) {
  if (!is_unitary(jones)) {
    throw InvariantError("waveplate: Jones matrix is not unitary");
  }
  return {{{arm, Polarization::H}, {arm, Polarization::V}}, MatrixX(jones)};
}

struct SingletSource {
  int arm_a = 0;
  int arm_b = 1;
};

// (a_H^dag b_V^dag - a_V^dag b_H^dag)/sqrt2 |vac>.
inline FockState emit_singlet(const SingletSource& src) {
  if (src.arm_a == src.arm_b) {
    throw InvalidSpecError("emit_singlet: arms must differ");
  }
  return FockState::from_amplitudes({src.arm_a, src.arm_b},
                                    {{{1, 0, 0, 1}, kInvSqrt2},
                                     {{0, 1, 1, 0}, -kInvSqrt2}});
}

// Two photons on two arms with polarization amplitudes c(i, j) for
// (photon on arm_a in pol i, photon on arm_b in pol j).
inline FockState two_photon_state(int arm_a, int arm_b, const Matrix2& c) {
  FockState s({arm_a, arm_b});
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      fock::Occupation occ(4, 0);
      occ[static_cast<std::size_t>(i)] = 1;
      occ[static_cast<std::size_t>(2 + j)] = 1;
      s.add_term(occ, c(i, j));
    }
  }
  s.prune();
  return s;
}

// Single photon with polarization vector p on one arm.
inline FockState single_photon(int arm, const Vector2& p) {
  return FockState::from_amplitudes({arm}, {{{1, 0}, p(0)}, {{0, 1}, p(1)}});
}

// Two photons with polarizations p and q in the same arm:
// (p.a^dag)(q.a^dag)|vac>, not normalized.
inline FockState photon_pair_same_arm(int arm, const Vector2& p,
                                      const Vector2& q) {
  FockState s({arm});
  s.add_term({2, 0}, p(0) * q(0) * kSqrt2);
  s.add_term({1, 1}, p(0) * q(1) + p(1) * q(0));
  s.add_term({0, 2}, p(1) * q(1) * kSqrt2);
  s.prune();
  return s;
}

enum class ElementKind { kBeamsplitter5050, kPolarizingBeamsplitter, kWaveplate };

struct ElementSpec {
  ElementKind kind = ElementKind::kBeamsplitter5050;
  std::vector<int> arms;  // splitter: {a, b}; PBS: {in, outH, outV}; plate: {arm}
  Matrix2 jones = Matrix2::Identity();
};

inline ModeTransform compile(const ElementSpec& spec) {
  switch (spec.kind) {
    case ElementKind::kBeamsplitter5050:
      if (spec.arms.size() != 2) throw InvalidSpecError("splitter needs 2 arms");
      return beamsplitter(spec.arms[0], spec.arms[1]);
    case ElementKind::kPolarizingBeamsplitter:
      if (spec.arms.size() != 3) throw InvalidSpecError("PBS needs 3 arms");
      return polarizing_beamsplitter(spec.arms[0], spec.arms[1], spec.arms[2]);
    case ElementKind::kWaveplate:
      if (spec.arms.size() != 1) throw InvalidSpecError("waveplate needs 1 arm");
      return waveplate(spec.arms[0], spec.jones);
  }
  throw InvalidSpecError("unknown element kind");
}

}  // namespace aklt::elements
