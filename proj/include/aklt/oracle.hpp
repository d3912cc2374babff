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

// Brute-force checks on dense vectors: spin projectors, the projector
// Hamiltonian of the chain and cross-validation of the two construction
// paths.
//
// Dense ordering follows mps::state_vector: (end0, site1, ..., siteN,
// endN+1), first factor most significant.

#pragma once

#include <string>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "aklt/builder.hpp"
#include "aklt/common.hpp"
#include "aklt/fock.hpp"
#include "aklt/mps.hpp"
#include "aklt/wire.hpp"

namespace aklt::oracle {

inline constexpr int kHamiltonianMaxSites = 5;
inline constexpr int kEigensolveMaxSites = 3;

inline MatrixX kron(const MatrixX& a, const MatrixX& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

// S1.S2 for two spin operators sets.
template <typename A, typename B>
MatrixX dot_product(const std::array<A, 3>& s1, const std::array<B, 3>& s2) {
  MatrixX out = MatrixX::Zero(s1[0].rows() * s2[0].rows(), s1[0].cols() * s2[0].cols());
  for (std::size_t a = 0; a < 3; ++a) out += kron(MatrixX(s1[a]), MatrixX(s2[a]));
  return out;
}

// Projector onto the eigenspace of h with eigenvalue `value`.
inline MatrixX spectral_projector(const MatrixX& h, double value, double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<MatrixX> es(h);
  MatrixX p = MatrixX::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    if (std::abs(es.eigenvalues()(i) - value) < tol) {
      p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
  }
  return p;
}

// Total spin squared of a composite of two spin sets.
template <typename A, typename B>
MatrixX total_spin_squared(const std::array<A, 3>& s1, const std::array<B, 3>& s2) {
  const auto i1 = MatrixX::Identity(s1[0].rows(), s1[0].cols());
  const auto i2 = MatrixX::Identity(s2[0].rows(), s2[0].cols());
  MatrixX out = MatrixX::Zero(i1.rows() * i2.rows(), i1.cols() * i2.cols());
  for (std::size_t a = 0; a < 3; ++a) {
    const MatrixX t = kron(MatrixX(s1[a]), i2) + kron(i1, MatrixX(s2[a]));
    out += t * t;
  }
  return out;
}

// (1/6)(S.S)^2 + (1/2)(S.S) + 1/3 on two spin-1 sites.
inline MatrixX spin2_projector() {
  const auto ops = mps::spin_ops();
  const MatrixX ss = dot_product(ops.spin1, ops.spin1);
  return ss * ss / 6.0 + ss / 2.0 + MatrixX::Identity(9, 9) / 3.0;
}

inline MatrixX spin2_projector_spectral() {
  const auto ops = mps::spin_ops();
  return spectral_projector(total_spin_squared(ops.spin1, ops.spin1), 6.0);
}

// (2/3)(s.S + 1) on spin-1/2 (x) spin-1: the J = 3/2 projector.
inline MatrixX end_projector() {
  const auto ops = mps::spin_ops();
  return (2.0 / 3.0) * (dot_product(ops.spin_half, ops.spin1) + MatrixX::Identity(6, 6));
}

inline MatrixX end_projector_spectral() {
  const auto ops = mps::spin_ops();
  return spectral_projector(total_spin_squared(ops.spin_half, ops.spin1), 15.0 / 4.0);
}

// Same projector on spin-1 (x) spin-1/2, for the right end.
inline MatrixX end_projector_mirrored() {
  const auto ops = mps::spin_ops();
  return (2.0 / 3.0) * (dot_product(ops.spin1, ops.spin_half) + MatrixX::Identity(6, 6));
}

struct ProjectorTerm {
  int first = 0;  // index of the first particle acted on
  std::string name;
  MatrixX local;  // acts on particles first, first+1
};

struct ProjectorHamiltonian {
  std::vector<int> dims;  // per particle
  std::vector<ProjectorTerm> terms;

  std::size_t total_dimension() const {
    std::size_t d = 1;
    for (int x : dims) d *= static_cast<std::size_t>(x);
    return d;
  }

  MatrixX embed(const MatrixX& local, int first, int span) const {
    Eigen::Index left = 1;
    Eigen::Index right = 1;
    for (int i = 0; i < first; ++i) left *= dims[static_cast<std::size_t>(i)];
    for (std::size_t i = static_cast<std::size_t>(first + span); i < dims.size(); ++i) {
      right *= dims[i];
    }
    return kron(kron(MatrixX::Identity(left, left), local),
                MatrixX::Identity(right, right));
  }

  MatrixX embedded(const ProjectorTerm& t) const { return embed(t.local, t.first, 2); }

  MatrixX matrix() const {
    const auto d = static_cast<Eigen::Index>(total_dimension());
    MatrixX h = MatrixX::Zero(d, d);
    for (const auto& t : terms) h += embedded(t);
    return h;
  }

  // Total spin component a (0: x, 1: y, 2: z) over all particles.
  MatrixX total_spin(std::size_t a) const {
    const auto ops = mps::spin_ops();
    const auto d = static_cast<Eigen::Index>(total_dimension());
    MatrixX s = MatrixX::Zero(d, d);
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const MatrixX local = dims[i] == 2 ? MatrixX(ops.spin_half[a]) : MatrixX(ops.spin1[a]);
      s += embed(local, static_cast<int>(i), 1);
    }
    return s;
  }
};

// Two end projectors and N-1 bulk spin-2 projectors.
inline ProjectorHamiltonian build_hamiltonian(int n) {
  if (n < 1 || n > kHamiltonianMaxSites) {
    throw LimitError("build_hamiltonian: N must be in 1.." +
                     std::to_string(kHamiltonianMaxSites));
  }
  ProjectorHamiltonian h;
  h.dims.push_back(2);
  for (int i = 0; i < n; ++i) h.dims.push_back(3);
  h.dims.push_back(2);
  h.terms.push_back({0, "end(0,1)", end_projector()});
  for (int i = 1; i < n; ++i) {
    h.terms.push_back({i, "bulk(" + std::to_string(i) + "," + std::to_string(i + 1) + ")",
                       spin2_projector()});
  }
  h.terms.push_back({n, "end(" + std::to_string(n) + "," + std::to_string(n + 1) + ")",
                     end_projector_mirrored()});
  return h;
}

// Spin-1 sites only, bulk terms only.
inline ProjectorHamiltonian build_bulk_hamiltonian(int n) {
  if (n < 1 || n > kHamiltonianMaxSites) {
    throw LimitError("build_bulk_hamiltonian: N must be in 1.." +
                     std::to_string(kHamiltonianMaxSites));
  }
  ProjectorHamiltonian h;
  for (int i = 0; i < n; ++i) h.dims.push_back(3);
  for (int i = 0; i + 1 < n; ++i) {
    h.terms.push_back({i, "bulk", spin2_projector()});
  }
  return h;
}

inline double expectation(const MatrixX& op, const VectorX& v) {
  return (v.dot(op * v)).real() / v.squaredNorm();
}

// <v|P|v>/<v|v> for each term.
inline std::vector<double> term_expectations(const ProjectorHamiltonian& h,
                                             const VectorX& v) {
  std::vector<double> out;
  for (const auto& t : h.terms) out.push_back(expectation(h.embedded(t), v));
  return out;
}

// Max |[H, S_a]| over a = x, y, z.
inline double rotation_commutator(const ProjectorHamiltonian& h) {
  const MatrixX m = h.matrix();
  double worst = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    const MatrixX s = h.total_spin(a);
    worst = std::max(worst, (m * s - s * m).cwiseAbs().maxCoeff());
  }
  return worst;
}

struct GroundStateReport {
  double smallest_eigenvalue = 0.0;
  int kernel_dimension = 0;
  double kernel_fidelity = 0.0;  // |V> projected onto the kernel
  double gap = 0.0;              // first nonzero eigenvalue
};

inline constexpr double kKernelTolerance = 1e-8;

inline GroundStateReport ground_state(const ProjectorHamiltonian& h, const VectorX& v) {
  if (h.dims.size() > static_cast<std::size_t>(kEigensolveMaxSites + 2)) {
    throw LimitError("ground_state: dense eigensolve limited to small chains");
  }
  Eigen::SelfAdjointEigenSolver<MatrixX> es(h.matrix());
  GroundStateReport r;
  r.smallest_eigenvalue = es.eigenvalues()(0);
  MatrixX kernel(v.size(), 0);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i)) < kKernelTolerance) {
      kernel.conservativeResize(Eigen::NoChange, kernel.cols() + 1);
      kernel.col(kernel.cols() - 1) = es.eigenvectors().col(i);
    } else if (r.gap == 0.0) {
      r.gap = es.eigenvalues()(i);
    }
  }
  r.kernel_dimension = static_cast<int>(kernel.cols());
  if (v.size() > 0 && kernel.cols() > 0) {
    r.kernel_fidelity = (kernel.adjoint() * v).squaredNorm() / v.squaredNorm();
  }
  return r;
}

inline int kernel_dimension(const ProjectorHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<MatrixX> es(h.matrix(), Eigen::EigenvaluesOnly);
  int k = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i)) < kKernelTolerance) ++k;
  }
  return k;
}

// Label of a dense chain index, e.g. "H|HV,VV|V".
inline std::string basis_label(std::size_t index, int n) {
  static const std::array<const char*, 3> kSite = {"HH", "HV", "VV"};
  const std::size_t j = index % 2;
  std::size_t rest = index / 2;
  std::vector<std::string> sites(static_cast<std::size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    sites[static_cast<std::size_t>(k)] = kSite[rest % 3];
    rest /= 3;
  }
  std::string s = rest == 0 ? "H|" : "V|";
  for (int k = 0; k < n; ++k) {
    if (k) s += ",";
    s += sites[static_cast<std::size_t>(k)];
  }
  return s + (j == 0 ? "|H" : "|V");
}

// Per-site {HH, HV, VV} marginals of a dense chain vector.
inline std::vector<std::array<double, 3>> site_marginals(const VectorX& v, int n) {
  std::vector<std::array<double, 3>> m(static_cast<std::size_t>(n), {0.0, 0.0, 0.0});
  const double total = v.squaredNorm();
  for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
    const double p = std::norm(v(idx)) / total;
    auto rest = static_cast<std::size_t>(idx) / 2;
    for (int k = n - 1; k >= 0; --k) {
      m[static_cast<std::size_t>(k)][rest % 3] += p;
      rest /= 3;
    }
  }
  return m;
}

struct ValidationReport {
  int length = 0;
  double max_amplitude_deviation = 0.0;
  std::string worst_label;
  double max_marginal_deviation = 0.0;
  double max_conditional_deviation = 0.0;  // 1 - fidelity
  int conditional_runs = 0;
  double tolerance = 0.0;
  bool pass = false;
};

// Conditional state of the last end photon, from the Fock state, after
// photon 0 is found H and the sites in the given biphoton states.
inline Vector2 fock_conditional_end(const fock::FockState& chain,
                                    const std::vector<mps::BiphotonState>& sites) {
  const int n = static_cast<int>(sites.size());
  fock::FockState bra = elements::single_photon(0, elements::polarization::h());
  for (int k = 1; k <= n; ++k) {
    bra = fock::tensor(bra, sites[static_cast<std::size_t>(k - 1)].normalized().to_fock(k));
  }
  const fock::FockState rest = fock::contract(bra, chain);
  return Vector2(rest.amplitude({1, 0}), rest.amplitude({0, 1}));
}

// Compares the Fock and MPS views of a bundle: every amplitude, every site
// marginal, and the wire's conditional states over all identity-basis
// outcome strings.
inline ValidationReport cross_validate(const builder::AKLTStateBundle& bundle,
                                       double tolerance) {
  ValidationReport r;
  r.tolerance = tolerance;
  r.length = bundle.mps_view.length;
  if (!bundle.full_state) {
    r.worst_label = "no full state";
    return r;
  }
  const int n = r.length;
  VectorX fock_vec = builder::chain_vector(*bundle.full_state);
  VectorX mps_vec = mps::state_vector(bundle.mps_view);
  fock_vec /= fock_vec.norm();
  mps_vec /= mps_vec.norm();
  const Complex overlap = mps_vec.dot(fock_vec);
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
  const VectorX diff = fock_vec - phase * mps_vec;
  Eigen::Index worst = 0;
  r.max_amplitude_deviation = diff.cwiseAbs().maxCoeff(&worst);
  r.worst_label = basis_label(static_cast<std::size_t>(worst), n);

  const auto mf = site_marginals(fock_vec, n);
  const auto mm = site_marginals(mps_vec, n);
  for (std::size_t k = 0; k < mf.size(); ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      r.max_marginal_deviation =
          std::max(r.max_marginal_deviation, std::abs(mf[k][i] - mm[k][i]));
    }
  }

  const auto basis = mps::table2_basis(mps::BasisKind::kIdentity);
  std::size_t runs = 1;
  for (int k = 0; k < n; ++k) runs *= 3;
  for (std::size_t run = 0; run < runs; ++run) {
    wire::WireSession s(n);
    s.initialize_via_end_forced(elements::polarization::h(), true);
    std::vector<mps::BiphotonState> measured;
    std::size_t rest = run;
    for (int k = 0; k < n; ++k) {
      const std::size_t o = rest % 3;
      rest /= 3;
      s.transmit_forced(wire::MeasurementModel::kIdealSpin0, o);
      measured.push_back(basis.elements[o].state);
    }
    const Vector2 expect = fock_conditional_end(*bundle.full_state, measured);
    const double f = fidelity(s.correlation_vector(), expect);
    r.max_conditional_deviation = std::max(r.max_conditional_deviation, 1.0 - f);
    ++r.conditional_runs;
  }
  r.pass = r.max_amplitude_deviation <= tolerance &&
           r.max_marginal_deviation <= tolerance &&
           r.max_conditional_deviation <= tolerance;
  return r;
}

}  // namespace aklt::oracle
