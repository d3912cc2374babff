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

// Ideal number-resolving detection, post-selection, seeded outcome sampling,
// the PBS biphoton analyser and the splitter-based Bell analyser.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "aklt/common.hpp"
#include "aklt/elements.hpp"
#include "aklt/fock.hpp"
#include "aklt/mps.hpp"

namespace aklt::detect {

using fock::FockState;
using fock::ModeIndex;
using mps::BiphotonState;

struct DetectionEvent {
  std::vector<int> counts;  // aligned with the measured arms / modes
  double probability = 0.0;
};

namespace detail {

template <typename KeyFn>
std::vector<DetectionEvent> distribution(const FockState& state, KeyFn key) {
  const double total = state.squared_norm();
  if (total == 0.0) {
    throw DistributionError("measurement of the zero vector is undefined");
  }
  std::map<std::vector<int>, double> acc;
  for (const auto& [occ, amp] : state.terms()) acc[key(occ)] += std::norm(amp);
  std::vector<DetectionEvent> out;
  out.reserve(acc.size());
  for (const auto& [counts, p] : acc) out.push_back({counts, p / total});
  return out;
}

}  // namespace detail

// Photon-number distribution on the given arms, summed over polarization.
inline std::vector<DetectionEvent> measure_counts(const FockState& state,
                                                  const std::vector<int>& arms) {
  std::vector<std::size_t> pos;
  for (int a : arms) pos.push_back(state.arm_position(a));
  return detail::distribution(state, [&](const fock::Occupation& occ) {
    std::vector<int> c;
    c.reserve(pos.size());
    for (std::size_t p : pos) c.push_back(occ[2 * p] + occ[2 * p + 1]);
    return c;
  });
}

// Photon-number distribution on individual (arm, polarization) modes.
inline std::vector<DetectionEvent> measure_mode_counts(
    const FockState& state, const std::vector<ModeIndex>& modes) {
  std::vector<std::size_t> pos;
  for (const auto& m : modes) pos.push_back(state.mode_position(m));
  return detail::distribution(state, [&](const fock::Occupation& occ) {
    std::vector<int> c;
    c.reserve(pos.size());
    for (std::size_t p : pos) c.push_back(occ[p]);
    return c;
  });
}

using CountPredicate = std::function<bool(const std::vector<int>&)>;

struct PostselectResult {
  FockState state;  // unnormalized projected branch
  double probability = 0.0;
};

// Keeps the terms whose per-arm photon counts satisfy the predicate. The
// probability is relative to the input norm; an empty branch is returned as
// the zero state with probability 0.
inline PostselectResult postselect(const FockState& state,
                                   const std::vector<int>& arms,
                                   const CountPredicate& keep) {
  std::vector<std::size_t> pos;
  for (int a : arms) pos.push_back(state.arm_position(a));
  const double total = state.squared_norm();
  FockState out(state.arms());
  std::vector<int> c(pos.size());
  for (const auto& [occ, amp] : state.terms()) {
    for (std::size_t i = 0; i < pos.size(); ++i) {
      c[i] = occ[2 * pos[i]] + occ[2 * pos[i] + 1];
    }
    if (keep(c)) out.add_term(occ, amp);
  }
  const double p = total == 0.0 ? 0.0 : out.squared_norm() / total;
  return {std::move(out), p};
}

// Seeded random source. Parallel runs use distinct stream ids.
class OutcomeSampler {
 public:
  OutcomeSampler(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t draws() const { return draws_; }

  // Uniform in [0, 1).
  double uniform() {
    ++draws_;
    // 53 random mantissa bits.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
};

template <typename T>
using Distribution = std::vector<std::pair<T, double>>;

inline constexpr double kDistributionTolerance = 1e-9;

template <typename T>
void check_distribution(const Distribution<T>& dist) {
  if (dist.empty()) throw DistributionError("empty distribution");
  double total = 0.0;
  for (const auto& [o, p] : dist) {
    if (p < -kDistributionTolerance) {
      throw DistributionError("negative probability");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kDistributionTolerance) {
    throw DistributionError("probabilities sum to " + std::to_string(total));
  }
}

// Draws one outcome by inverse-CDF on a single uniform variate.
template <typename T>
T sample(const Distribution<T>& dist, OutcomeSampler& sampler) {
  check_distribution(dist);
  const double u = sampler.uniform();
  double acc = 0.0;
  for (const auto& [o, p] : dist) {
    acc += p;
    if (u < acc) return o;
  }
  // Rounding slack: return the last outcome with nonzero weight.
  for (auto it = dist.rbegin(); it != dist.rend(); ++it) {
    if (it->second > 0) return it->first;
  }
  return dist.back().first;
}

// Waveplate + PBS + two detectors. The coincidence outcome projects onto the
// target biphoton, the unique state the waveplate sends to |HV>.
struct AnalyserSetting {
  BiphotonState target;
  Matrix2 jones = Matrix2::Identity();

  static AnalyserSetting identity() { return {BiphotonState::hv(), Matrix2::Identity()}; }

  // Any unitary plate gives a zero-polarization-degree target.
  static AnalyserSetting from_jones(const Matrix2& jones) {
    if (!is_unitary(jones)) throw InvariantError("analyser: Jones not unitary");
    const Matrix2 inv = jones.adjoint();
    return {BiphotonState::from_polarizations(inv.col(0), inv.col(1)), jones};
  }

  static AnalyserSetting for_target(const BiphotonState& target) {
    const auto f = mps::polarization_factors(target.normalized());
    if (std::abs(f.p.dot(f.q)) > 1e-9) {
      throw InvariantError("analyser target must have zero polarization degree");
    }
    Matrix2 j;
    j.row(0) = f.p.adjoint();
    j.row(1) = f.q.adjoint();
    return {target.normalized(), j};
  }
};

enum class AnalyserOutcome { kTwoAtH, kTwoAtV, kCoincidence };

inline std::string to_string(AnalyserOutcome o) {
  switch (o) {
    case AnalyserOutcome::kTwoAtH: return "two-at-H";
    case AnalyserOutcome::kTwoAtV: return "two-at-V";
    case AnalyserOutcome::kCoincidence: return "coincidence";
  }
  return "?";
}

// Simulates the analyser optically on one biphoton.
inline Distribution<AnalyserOutcome> analyser_outcome_distribution(
    const BiphotonState& site, const AnalyserSetting& setting) {
  FockState s = site.to_fock(0);
  s = fock::apply_transform(s, elements::waveplate(0, setting.jones));
  s = fock::with_vacuum_arms(s, {1});
  s = fock::apply_transform(s, elements::polarizing_beamsplitter(0, 0, 1));
  const auto events = measure_mode_counts(
      s, {{0, fock::Polarization::H}, {1, fock::Polarization::V}});
  Distribution<AnalyserOutcome> out = {{AnalyserOutcome::kTwoAtH, 0.0},
                                       {AnalyserOutcome::kTwoAtV, 0.0},
                                       {AnalyserOutcome::kCoincidence, 0.0}};
  for (const auto& e : events) {
    if (e.counts == std::vector<int>{2, 0}) out[0].second += e.probability;
    if (e.counts == std::vector<int>{0, 2}) out[1].second += e.probability;
    if (e.counts == std::vector<int>{1, 1}) out[2].second += e.probability;
  }
  return out;
}

using BiphotonMixture = std::vector<std::pair<double, BiphotonState>>;

inline BiphotonMixture maximally_mixed_biphoton() {
  return {{1.0 / 3, BiphotonState::hh()},
          {1.0 / 3, BiphotonState::hv()},
          {1.0 / 3, BiphotonState::vv()}};
}

inline Distribution<AnalyserOutcome> analyser_outcome_distribution(
    const BiphotonMixture& mix, const AnalyserSetting& setting) {
  Distribution<AnalyserOutcome> out = {{AnalyserOutcome::kTwoAtH, 0.0},
                                       {AnalyserOutcome::kTwoAtV, 0.0},
                                       {AnalyserOutcome::kCoincidence, 0.0}};
  for (const auto& [w, b] : mix) {
    const auto d = analyser_outcome_distribution(b, setting);
    for (std::size_t i = 0; i < 3; ++i) out[i].second += w * d[i].second;
  }
  return out;
}

// The four Bell inputs as they appear as rows of the splitter table.
enum class BellState { kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus };

inline std::string to_string(BellState b) {
  switch (b) {
    case BellState::kPhiPlus: return "phi+";
    case BellState::kPhiMinus: return "phi-";
    case BellState::kPsiPlus: return "psi+";
    case BellState::kPsiMinus: return "psi-";
  }
  return "?";
}

// Normalized: phi+ ~ aV bV + aH bH, phi- ~ aV bV - aH bH,
// psi+ ~ aV bH + aH bV, psi- ~ aH bV - aV bH.
inline FockState bell_state(BellState b, int arm_a, int arm_b) {
  Matrix2 c = Matrix2::Zero();  // c(pol_a, pol_b)
  switch (b) {
    case BellState::kPhiPlus: c(1, 1) = 1; c(0, 0) = 1; break;
    case BellState::kPhiMinus: c(1, 1) = 1; c(0, 0) = -1; break;
    case BellState::kPsiPlus: c(1, 0) = 1; c(0, 1) = 1; break;
    case BellState::kPsiMinus: c(0, 1) = 1; c(1, 0) = -1; break;
  }
  return elements::two_photon_state(arm_a, arm_b, c * kInvSqrt2);
}

inline fock::Ensemble maximally_mixed_bell(int arm_a, int arm_b) {
  fock::Ensemble e;
  for (auto b : {BellState::kPhiPlus, BellState::kPhiMinus, BellState::kPsiPlus,
                 BellState::kPsiMinus}) {
    e.push_back({0.25, bell_state(b, arm_a, arm_b)});
  }
  return e;
}

enum class BellIdentification {
  kSinglet,
  kPhiPlus,
  kPhiMinus,
  kPsiPlus,
  kSymmetricOther,  // coincidence on a target outside the three Bell images
  kInconclusive,
};

inline std::string to_string(BellIdentification b) {
  switch (b) {
    case BellIdentification::kSinglet: return "singlet";
    case BellIdentification::kPhiPlus: return "phi+";
    case BellIdentification::kPhiMinus: return "phi-";
    case BellIdentification::kPsiPlus: return "psi+";
    case BellIdentification::kSymmetricOther: return "symmetric-other";
    case BellIdentification::kInconclusive: return "inconclusive";
  }
  return "?";
}

// Heralds naming one of the four Bell states.
inline bool is_bell_identification(BellIdentification b) {
  return b != BellIdentification::kInconclusive &&
         b != BellIdentification::kSymmetricOther;
}

// The Bell input whose splitter image is the given same-arm biphoton.
inline BellIdentification identify_target(const BiphotonState& target) {
  auto close = [&](const BiphotonState& ref) {
    return std::norm(mps::overlap(ref, target)) > 1.0 - 1e-9;
  };
  if (close(BiphotonState::rl())) return BellIdentification::kPhiPlus;
  if (close(BiphotonState::da())) return BellIdentification::kPhiMinus;
  if (close(BiphotonState::hv())) return BellIdentification::kPsiPlus;
  return BellIdentification::kSymmetricOther;
}

// Analyser targets cycled uniformly at random: the three splitter images of
// the symmetric Bell states.
inline std::vector<AnalyserSetting> identity_basis_settings() {
  return {AnalyserSetting::for_target(BiphotonState::hv()),
          AnalyserSetting::for_target(BiphotonState::da()),
          AnalyserSetting::for_target(BiphotonState::rl())};
}

// Splitter on (arm_a, arm_b) followed by an analyser on each output arm
// (setting drawn uniformly from `settings`). One photon per arm heralds the
// singlet; an analyser coincidence heralds the symmetric Bell state whose
// image is the analyser target.
inline Distribution<BellIdentification> innsbruck_bell_statistics(
    const fock::Ensemble& input,
    const std::vector<AnalyserSetting>& settings = identity_basis_settings()) {
  if (settings.empty()) throw InvalidInputError("no analyser settings");
  std::map<BellIdentification, double> acc;
  for (auto b : {BellIdentification::kSinglet, BellIdentification::kPhiPlus,
                 BellIdentification::kPhiMinus, BellIdentification::kPsiPlus,
                 BellIdentification::kSymmetricOther,
                 BellIdentification::kInconclusive}) {
    acc[b] = 0.0;
  }
  double total_weight = 0.0;
  for (const auto& [w, state] : input) {
    if (state.arm_count() != 2 || state.photon_number() != 2) {
      throw InvalidInputError(
          "innsbruck_bell_statistics: need exactly two photons on two arms");
    }
    for (const auto& [occ, amp] : state.terms()) {
      if (occ[0] + occ[1] != 1 || occ[2] + occ[3] != 1) {
        throw InvalidInputError(
            "innsbruck_bell_statistics: need one photon per input arm");
      }
    }
    total_weight += w;
    const int a = state.arms()[0];
    const int b = state.arms()[1];
    const int a2 = std::max(a, b) + 1;
    const int b2 = std::max(a, b) + 2;
    FockState s = fock::apply_transform(state.normalized(),
                                        elements::beamsplitter(a, b));
    s = fock::with_vacuum_arms(s, {a2, b2});
    for (const auto& setting : settings) {
      FockState t = fock::apply_transform(s, elements::waveplate(a, setting.jones));
      t = fock::apply_transform(t, elements::waveplate(b, setting.jones));
      t = fock::apply_transform(t, elements::polarizing_beamsplitter(a, a, a2));
      t = fock::apply_transform(t, elements::polarizing_beamsplitter(b, b, b2));
      const auto events = measure_mode_counts(
          t, {{a, fock::Polarization::H}, {a2, fock::Polarization::V},
              {b, fock::Polarization::H}, {b2, fock::Polarization::V}});
      const BellIdentification sym = identify_target(setting.target);
      const double ws = w / static_cast<double>(settings.size());
      for (const auto& e : events) {
        const auto& c = e.counts;
        BellIdentification id = BellIdentification::kInconclusive;
        if (c[0] + c[1] == 1 && c[2] + c[3] == 1) {
          id = BellIdentification::kSinglet;
        } else if (c == std::vector<int>{1, 1, 0, 0} ||
                   c == std::vector<int>{0, 0, 1, 1}) {
          id = sym;
        }
        acc[id] += ws * e.probability;
      }
    }
  }
  if (std::abs(total_weight - 1.0) > kDistributionTolerance) {
    throw DistributionError("ensemble weights must sum to 1");
  }
  Distribution<BellIdentification> out(acc.begin(), acc.end());
  return out;
}

inline double bell_identification_probability(
    const Distribution<BellIdentification>& d) {
  double p = 0.0;
  for (const auto& [id, q] : d) {
    if (is_bell_identification(id)) p += q;
  }
  return p;
}

}  // namespace aklt::detect
