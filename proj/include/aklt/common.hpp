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

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace aklt {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;
using Matrix3 = Eigen::Matrix3cd;
using Vector3 = Eigen::Vector3cd;
using MatrixX = Eigen::MatrixXcd;
using VectorX = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;
inline const double kSqrt2 = std::sqrt(2.0);
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Amplitudes smaller than this are dropped from sparse states.
inline constexpr double kPruneTolerance = 1e-14;
// Unitarity checks on user-supplied matrices.
inline constexpr double kUnitaryTolerance = 1e-12;

// Shape or register mismatch between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two registers claim the same spatial arm.
class ModeCollisionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value violates a structural invariant (e.g. a non-unitary transform).
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An optical element or chain site was specified inconsistently.
class InvalidSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input state has the wrong shape for a measurement scheme.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A probability distribution is empty or does not sum to one.
class DistributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of a map (e.g. a trace-ful operator).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Protocol step requested out of order.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Size exceeds what a dense path supports.
class LimitError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

namespace pauli {

inline Matrix2 identity() { return Matrix2::Identity(); }

inline Matrix2 x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix2 y() {
  Matrix2 m;
  m << 0, -kI, kI, 0;
  return m;
}

inline Matrix2 z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}

// |0><1|
inline Matrix2 raising() {
  Matrix2 m;
  m << 0, 1, 0, 0;
  return m;
}

// |1><0|
inline Matrix2 lowering() {
  Matrix2 m;
  m << 0, 0, 1, 0;
  return m;
}

}  // namespace pauli

// Z(theta) = exp(-i theta Z / 2).
inline Matrix2 z_rotation(double theta) {
  Matrix2 m;
  m << std::exp(-kI * theta / 2.0), 0, 0, std::exp(kI * theta / 2.0);
  return m;
}

// X(theta) = exp(-i theta X / 2).
inline Matrix2 x_rotation(double theta) {
  Matrix2 m;
  m << std::cos(theta / 2.0), -kI * std::sin(theta / 2.0),
      -kI * std::sin(theta / 2.0), std::cos(theta / 2.0);
  return m;
}

// |<a|b>|^2 / (|a|^2 |b|^2); zero when either vector vanishes.
template <typename VecA, typename VecB>
double fidelity(const VecA& a, const VecB& b) {
  const double na = a.squaredNorm();
  const double nb = b.squaredNorm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::norm(a.dot(b)) / (na * nb);
}

// max|a - c b| for the unit-modulus c that best aligns b with a. Scale is
// not divided out: "equal up to a global phase".
template <typename MatA, typename MatB>
double phase_distance(const MatA& a, const MatB& b) {
  Complex overlap = (b.array().conjugate() * a.array()).sum();
  Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : 1.0;
  return (a - phase * b).cwiseAbs().maxCoeff();
}

inline bool is_unitary(const MatrixX& u, double tol = kUnitaryTolerance) {
  if (u.rows() != u.cols()) return false;
  MatrixX d = u.adjoint() * u - MatrixX::Identity(u.rows(), u.cols());
  return d.size() == 0 || d.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace aklt
