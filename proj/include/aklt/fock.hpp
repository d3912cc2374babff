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

// Polarization-resolved bosonic Fock states on a register of spatial arms.
//
// Every arm carries two modes (H, V). A state is a sparse map from occupation
// vectors to amplitudes in the orthonormal occupation-number basis; the
// occupation vector for a register [a0, a1, ...] is laid out as
// (a0:H, a0:V, a1:H, a1:V, ...). Passive linear optics acts by substituting
// creation operators, a_i^dag -> sum_j U_ji a_j^dag, and re-expanding.

#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "aklt/common.hpp"

namespace aklt::fock {

enum class Polarization : int { H = 0, V = 1 };

struct ModeIndex {
  int spatial = 0;
  Polarization polarization = Polarization::H;

  auto operator<=>(const ModeIndex&) const = default;
};

inline std::string to_string(const ModeIndex& m) {
  return std::to_string(m.spatial) +
         (m.polarization == Polarization::H ? ":H" : ":V");
}

using Occupation = std::vector<int>;

namespace detail {

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// sqrt(prod_i n_i!), the norm of prod_i (a_i^dag)^{n_i} |vac>.
inline double monomial_norm(const Occupation& occ) {
  double f = 1.0;
  for (int n : occ) f *= factorial(n);
  return std::sqrt(f);
}

}  // namespace detail

class FockState {
 public:
  FockState() = default;

  // Zero vector on the given register.
  explicit FockState(std::vector<int> arms) : arms_(std::move(arms)) {
    std::set<int> seen(arms_.begin(), arms_.end());
    if (seen.size() != arms_.size()) {
      throw ModeCollisionError("FockState: duplicate arm label in register");
    }
  }

  static FockState vacuum(std::vector<int> arms) {
    FockState s(std::move(arms));
    s.terms_[Occupation(s.mode_count(), 0)] = 1.0;
    return s;
  }

  // Terms given directly as occupation-basis amplitudes.
  static FockState from_amplitudes(
      std::vector<int> arms,
      const std::vector<std::pair<Occupation, Complex>>& terms) {
    FockState s(std::move(arms));
    for (const auto& [occ, amp] : terms) s.add_term(occ, amp);
    s.prune();
    return s;
  }

  const std::vector<int>& arms() const { return arms_; }
  std::size_t arm_count() const { return arms_.size(); }
  std::size_t mode_count() const { return 2 * arms_.size(); }
  const std::map<Occupation, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool has_arm(int arm) const {
    return std::find(arms_.begin(), arms_.end(), arm) != arms_.end();
  }

  // Position of an arm within the register; throws if absent.
  std::size_t arm_position(int arm) const {
    auto it = std::find(arms_.begin(), arms_.end(), arm);
    if (it == arms_.end()) {
      throw DimensionError("arm " + std::to_string(arm) +
                           " is not in the register");
    }
    return static_cast<std::size_t>(it - arms_.begin());
  }

  std::size_t mode_position(const ModeIndex& m) const {
    return 2 * arm_position(m.spatial) +
           static_cast<std::size_t>(m.polarization);
  }

  Complex amplitude(const Occupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? Complex{0.0} : it->second;
  }

  double squared_norm() const {
    double n = 0.0;
    for (const auto& [occ, amp] : terms_) n += std::norm(amp);
    return n;
  }

  double norm() const { return std::sqrt(squared_norm()); }

  FockState normalized() const {
    const double n = norm();
    if (n == 0.0) throw DistributionError("cannot normalize the zero vector");
    return scaled(1.0 / n);
  }

  FockState scaled(Complex c) const {
    FockState out(arms_);
    for (const auto& [occ, amp] : terms_) out.terms_[occ] = amp * c;
    out.prune();
    return out;
  }

  // Total photon number if every term agrees, otherwise -1. Zero vector: 0.
  int photon_number() const {
    int n = -1;
    for (const auto& [occ, amp] : terms_) {
      int k = 0;
      for (int c : occ) k += c;
      if (n == -1) {
        n = k;
      } else if (n != k) {
        return -1;
      }
    }
    return n == -1 ? 0 : n;
  }

  // Photons on one arm (both polarizations) for a given term.
  int arm_photons(const Occupation& occ, int arm) const {
    const std::size_t p = arm_position(arm);
    return occ[2 * p] + occ[2 * p + 1];
  }

  void add_term(const Occupation& occ, Complex amp) {
    if (occ.size() != mode_count()) {
      throw DimensionError("occupation vector has length " +
                           std::to_string(occ.size()) + ", register needs " +
                           std::to_string(mode_count()));
    }
    for (int n : occ) {
      if (n < 0) throw InvariantError("negative occupation number");
    }
    terms_[occ] += amp;
  }

  void prune() {
    std::erase_if(terms_, [](const auto& kv) {
      return std::abs(kv.second) < kPruneTolerance;
    });
  }

  FockState operator+(const FockState& other) const {
    if (arms_ != other.arms_) {
      throw DimensionError("cannot add states on different registers");
    }
    FockState out = *this;
    for (const auto& [occ, amp] : other.terms_) out.terms_[occ] += amp;
    out.prune();
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "FockState(arms=[";
    for (std::size_t i = 0; i < arms_.size(); ++i) {
      os << (i ? "," : "") << arms_[i];
    }
    os << "]";
    for (const auto& [occ, amp] : terms_) {
      os << " (";
      for (std::size_t i = 0; i < occ.size(); ++i) {
        os << (i ? "," : "") << occ[i];
      }
      os << "):" << amp;
    }
    os << ")";
    return os.str();
  }

 private:
  std::vector<int> arms_;
  std::map<Occupation, Complex> terms_;
};

// Builds a state on arms 0..arm_count-1 from creation-operator monomials:
// each (occ, c) contributes c * prod (a_i^dag)^{n_i} |vac>, so the bosonic
// sqrt(n!) factors end up in the stored amplitudes. Not normalized.
inline FockState make_state(
    int arm_count, const std::vector<std::pair<Occupation, Complex>>& terms) {
  if (arm_count < 0) throw DimensionError("negative arm count");
  std::vector<int> arms(static_cast<std::size_t>(arm_count));
  for (int i = 0; i < arm_count; ++i) arms[static_cast<std::size_t>(i)] = i;
  FockState s(std::move(arms));
  for (const auto& [occ, c] : terms) {
    if (occ.size() != s.mode_count()) {
      throw DimensionError("occupation vector has length " +
                           std::to_string(occ.size()) + ", expected " +
                           std::to_string(s.mode_count()));
    }
    s.add_term(occ, c * detail::monomial_norm(occ));
  }
  s.prune();
  return s;
}

// <a|b>; both states must live on the same register.
inline Complex inner_product(const FockState& a, const FockState& b) {
  if (a.arms() != b.arms()) {
    throw DimensionError("inner_product: register mismatch");
  }
  Complex acc{0.0};
  const auto& small = a.terms().size() <= b.terms().size() ? a : b;
  const auto& large = &small == &a ? b : a;
  for (const auto& [occ, amp] : small.terms()) {
    auto it = large.terms().find(occ);
    if (it == large.terms().end()) continue;
    acc += &small == &a ? std::conj(amp) * it->second
                        : std::conj(it->second) * amp;
  }
  return acc;
}

inline double fidelity(const FockState& a, const FockState& b) {
  const double na = a.squared_norm();
  const double nb = b.squared_norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::norm(inner_product(a, b)) / (na * nb);
}

// Product state on the concatenated register [a.arms..., b.arms...].
inline FockState tensor(const FockState& a, const FockState& b) {
  for (int arm : b.arms()) {
    if (a.has_arm(arm)) {
      throw ModeCollisionError("tensor: arm " + std::to_string(arm) +
                               " appears in both registers");
    }
  }
  std::vector<int> arms = a.arms();
  arms.insert(arms.end(), b.arms().begin(), b.arms().end());
  FockState out(std::move(arms));
  for (const auto& [oa, ca] : a.terms()) {
    for (const auto& [ob, cb] : b.terms()) {
      Occupation occ = oa;
      occ.insert(occ.end(), ob.begin(), ob.end());
      out.add_term(occ, ca * cb);
    }
  }
  out.prune();
  return out;
}

// Renames arms; labels not in the map are kept. Register order is preserved.
inline FockState relabel(const FockState& s, const std::map<int, int>& rename) {
  std::vector<int> arms = s.arms();
  for (int& a : arms) {
    auto it = rename.find(a);
    if (it != rename.end()) a = it->second;
  }
  FockState out(std::move(arms));
  for (const auto& [occ, amp] : s.terms()) out.add_term(occ, amp);
  return out;
}

// Appends empty arms to the register.
inline FockState with_vacuum_arms(const FockState& s,
                                  const std::vector<int>& extra) {
  return tensor(s, FockState::vacuum(extra));
}

// Drops an arm that is empty in every term.
inline FockState remove_empty_arm(const FockState& s, int arm) {
  const std::size_t p = s.arm_position(arm);
  std::vector<int> arms = s.arms();
  arms.erase(arms.begin() + static_cast<std::ptrdiff_t>(p));
  FockState out(std::move(arms));
  for (const auto& [occ, amp] : s.terms()) {
    if (occ[2 * p] != 0 || occ[2 * p + 1] != 0) {
      throw InvariantError("remove_empty_arm: arm " + std::to_string(arm) +
                           " is occupied");
    }
    Occupation o = occ;
    o.erase(o.begin() + static_cast<std::ptrdiff_t>(2 * p),
            o.begin() + static_cast<std::ptrdiff_t>(2 * p + 2));
    out.add_term(o, amp);
  }
  return out;
}

// Rearranges the register into the given arm order (a permutation).
inline FockState reorder(const FockState& s, const std::vector<int>& order) {
  if (order.size() != s.arm_count()) {
    throw DimensionError("reorder: order must list every arm exactly once");
  }
  std::vector<std::size_t> from;
  for (int a : order) from.push_back(s.arm_position(a));
  FockState out(order);
  for (const auto& [occ, amp] : s.terms()) {
    Occupation o(occ.size());
    for (std::size_t i = 0; i < from.size(); ++i) {
      o[2 * i] = occ[2 * from[i]];
      o[2 * i + 1] = occ[2 * from[i] + 1];
    }
    out.add_term(o, amp);
  }
  return out;
}

// Partial inner product <bra| state over the arms of bra, leaving a state on
// the remaining arms (register order preserved).
inline FockState contract(const FockState& bra, const FockState& state) {
  std::vector<std::size_t> bra_pos;
  for (int a : bra.arms()) bra_pos.push_back(state.arm_position(a));
  std::vector<bool> in_bra(state.arm_count(), false);
  for (std::size_t p : bra_pos) in_bra[p] = true;
  std::vector<int> rest;
  for (std::size_t p = 0; p < state.arm_count(); ++p) {
    if (!in_bra[p]) rest.push_back(state.arms()[p]);
  }
  FockState out(rest);
  for (const auto& [occ, amp] : state.terms()) {
    Occupation sub(bra.mode_count());
    for (std::size_t i = 0; i < bra_pos.size(); ++i) {
      sub[2 * i] = occ[2 * bra_pos[i]];
      sub[2 * i + 1] = occ[2 * bra_pos[i] + 1];
    }
    const Complex b = bra.amplitude(sub);
    if (b == Complex{0.0}) continue;
    Occupation o;
    o.reserve(out.mode_count());
    for (std::size_t p = 0; p < state.arm_count(); ++p) {
      if (in_bra[p]) continue;
      o.push_back(occ[2 * p]);
      o.push_back(occ[2 * p + 1]);
    }
    out.add_term(o, std::conj(b) * amp);
  }
  out.prune();
  return out;
}

// A passive linear transformation on a subset of modes. Column i of the
// matrix is the image of modes[i]: a_{modes[i]}^dag -> sum_j m(j,i)
// a_{modes[j]}^dag.
class ModeTransform {
 public:
  ModeTransform(std::vector<ModeIndex> modes, MatrixX matrix)
      : modes_(std::move(modes)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != static_cast<Eigen::Index>(modes_.size()) ||
        matrix_.cols() != static_cast<Eigen::Index>(modes_.size())) {
      throw DimensionError("ModeTransform: matrix size does not match modes");
    }
    std::set<ModeIndex> seen(modes_.begin(), modes_.end());
    if (seen.size() != modes_.size()) {
      throw ModeCollisionError("ModeTransform: repeated target mode");
    }
    if (!is_unitary(matrix_)) {
      throw InvariantError("ModeTransform: matrix is not unitary");
    }
  }

  const std::vector<ModeIndex>& modes() const { return modes_; }
  const MatrixX& matrix() const { return matrix_; }

  ModeTransform adjoint() const { return {modes_, matrix_.adjoint()}; }

 private:
  std::vector<ModeIndex> modes_;
  MatrixX matrix_;
};

// Substitutes every creation operator on the transform's modes and
// re-expands into occupation terms. Norm is preserved.
inline FockState apply_transform(const FockState& state,
                                 const ModeTransform& t) {
  const std::size_t k = t.modes().size();
  std::vector<std::size_t> pos(k);
  for (std::size_t i = 0; i < k; ++i) pos[i] = state.mode_position(t.modes()[i]);
  const MatrixX& u = t.matrix();

  FockState out(state.arms());
  std::vector<std::size_t> photons;  // input mode slot per photon
  std::vector<std::size_t> choice;   // output mode slot per photon
  for (const auto& [occ, amp] : state.terms()) {
    photons.clear();
    double in_norm = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const int n = occ[pos[i]];
      in_norm *= detail::factorial(n);
      for (int c = 0; c < n; ++c) photons.push_back(i);
    }
    const Complex coeff = amp / std::sqrt(in_norm);
    const std::size_t p = photons.size();
    choice.assign(p, 0);
    Occupation base = occ;
    for (std::size_t i = 0; i < k; ++i) base[pos[i]] = 0;
    // Odometer over k^p output assignments.
    while (true) {
      Complex w = coeff;
      for (std::size_t j = 0; j < p; ++j) {
        w *= u(static_cast<Eigen::Index>(choice[j]),
               static_cast<Eigen::Index>(photons[j]));
      }
      if (w != Complex{0.0}) {
        Occupation o = base;
        for (std::size_t j = 0; j < p; ++j) ++o[pos[choice[j]]];
        double out_norm = 1.0;
        for (std::size_t i = 0; i < k; ++i) out_norm *= detail::factorial(o[pos[i]]);
        out.add_term(o, w * std::sqrt(out_norm));
      }
      std::size_t j = 0;
      while (j < p && ++choice[j] == k) choice[j++] = 0;
      if (j == p) break;
    }
  }
  out.prune();
  return out;
}

// Classical mixture of pure states; weights sum to one.
struct WeightedState {
  double weight = 0.0;
  FockState state;
};
using Ensemble = std::vector<WeightedState>;

}  // namespace aklt::fock
