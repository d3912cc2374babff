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

// Independent reference models used by the tests. None of these call into
// the library code paths they check: two-photon states are handled in first
// quantization, the chain is built with dense Kronecker products, and the
// spin-1 operators come from symmetrizing two spin-1/2s.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace reference {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline const Complex kI{0.0, 1.0};
inline const double kR = 1.0 / std::sqrt(2.0);

inline Mat kron(const Mat& a, const Mat& b) { return Eigen::kroneckerProduct(a, b).eval(); }

// Two photons over single-photon modes m = 2*arm + pol; the wavefunction
// c(m, n) is symmetric and the state is sum c(m,n) a_m^dag a_n^dag |vac>
// divided by sqrt of its norm.
struct TwoPhoton {
  Mat c;

  // Single-photon unitary u: a_m^dag -> sum_k u(k, m) a_k^dag.
  TwoPhoton evolve(const Mat& u) const { return {u * c * u.transpose()}; }

  // Fock amplitudes keyed by the occupation vector.
  std::map<std::vector<int>, Complex> fock() const {
    const auto modes = c.rows();
    Mat s = (c + c.transpose()) / 2.0;
    std::map<std::vector<int>, Complex> out;
    for (Eigen::Index m = 0; m < modes; ++m) {
      for (Eigen::Index n = m; n < modes; ++n) {
        std::vector<int> occ(static_cast<std::size_t>(modes), 0);
        ++occ[static_cast<std::size_t>(m)];
        ++occ[static_cast<std::size_t>(n)];
        const Complex a = m == n ? std::sqrt(2.0) * s(m, m) : 2.0 * s(m, n);
        if (std::abs(a) > 1e-14) out[occ] = a;
      }
    }
    double norm = 0.0;
    for (const auto& [o, a] : out) norm += std::norm(a);
    for (auto& [o, a] : out) a /= std::sqrt(norm);
    return out;
  }
};

// Photon on arm a with polarization p, photon on arm b with polarization q.
inline Mat product_wavefunction(int modes, int arm_a, int pol_a, int arm_b, int pol_b) {
  Mat c = Mat::Zero(modes, modes);
  c(2 * arm_a + pol_a, 2 * arm_b + pol_b) = 1.0;
  return c;
}

// 50:50 splitter on arms 0 and 1: a -> (a + b)/sqrt2, b -> (a - b)/sqrt2.
inline Mat splitter_single_photon() {
  Mat u = Mat::Zero(4, 4);
  for (int p = 0; p < 2; ++p) {
    u(p, p) = kR;
    u(2 + p, p) = kR;
    u(p, 2 + p) = kR;
    u(2 + p, 2 + p) = -kR;
  }
  return u;
}

// Spin-1 operators as two symmetrized spin-1/2s on the (HH, HV+VH, VV)
// triplet basis.
inline std::array<Mat, 3> spin1_from_two_halves() {
  Mat sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 0.5, 0.5, 0;
  sy << 0, -0.5 * kI, 0.5 * kI, 0;
  sz << 0.5, 0, 0, -0.5;
  Mat w = Mat::Zero(4, 3);
  w(0, 0) = 1;
  w(1, 1) = kR;
  w(2, 1) = kR;
  w(3, 2) = 1;
  const Mat id = Mat::Identity(2, 2);
  std::array<Mat, 3> out;
  const std::array<Mat, 3> s = {sx, sy, sz};
  for (std::size_t a = 0; a < 3; ++a) {
    out[a] = w.adjoint() * (kron(s[a], id) + kron(id, s[a])) * w;
  }
  return out;
}

// The site projector |M1><00| + |M0><psi+| + |M-1><11| as a 3x4 matrix.
inline Mat site_projector() {
  Mat p = Mat::Zero(3, 4);
  p(0, 0) = 1;
  p(1, 1) = kR;
  p(1, 2) = kR;
  p(2, 3) = 1;
  return p;
}

inline Vec singlet_vector() {
  Vec v = Vec::Zero(4);
  v(1) = kR;
  v(2) = -kR;
  return v;
}

// Dense VBS state: N+1 singlets with the site projector on every inner pair.
inline Vec dense_vbs(int n) {
  Vec v = singlet_vector();
  for (int k = 0; k < n; ++k) v = kron(v, singlet_vector());
  Mat op = Mat::Identity(2, 2);
  for (int k = 0; k < n; ++k) op = kron(op, site_projector());
  op = kron(op, Mat::Identity(2, 2));
  return op * v;
}

// Correlation operator read off the VBS for one site: with the pair matrix
// psi and T(a, b) = <beta|P|ab>, psi A^T = -2 psi T psi.
inline Eigen::Matrix2cd a_map_from_vbs(const Eigen::Vector3cd& beta) {
  const Mat t_flat = beta.adjoint() * site_projector();
  Eigen::Matrix2cd t;
  t << t_flat(0, 0), t_flat(0, 1), t_flat(0, 2), t_flat(0, 3);
  Eigen::Matrix2cd psi;
  psi << 0, kR, -kR, 0;
  return (-2.0 * t * psi).transpose();
}

inline Eigen::Vector3cd random_biphoton(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3cd v;
  for (int i = 0; i < 3; ++i) v(i) = Complex(g(rng), g(rng));
  return v.normalized();
}

inline Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix2cd m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
  return qr.householderQ();
}

inline Eigen::Vector2cd random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Eigen::Vector2cd(Complex(g(rng), g(rng)), Complex(g(rng), g(rng))).normalized();
}

}  // namespace reference
