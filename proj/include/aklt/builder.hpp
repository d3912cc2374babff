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

// Chain construction: the direct valence-bond projection and the optical
// pipeline of singlet sources, 50:50 splitters and post-selection.
//
// Raw register layout: source j emits its singlet on arms (2j, 2j+1). The
// junction k (k = 1..S-1) joins arms 2k-1 and 2k into one biphoton site,
// canonically placed on arm 2k-1. A finished chain is relabeled to arms
// 0 (end photon), 1..L (sites), L+1 (end photon).

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aklt/common.hpp"
#include "aklt/detect.hpp"
#include "aklt/elements.hpp"
#include "aklt/fock.hpp"
#include "aklt/mps.hpp"

namespace aklt::builder {

using fock::FockState;

enum class BuildStrategy { kOneArmPostselect, kTwoArmPostselect, kIdealProjection };

inline std::string to_string(BuildStrategy s) {
  switch (s) {
    case BuildStrategy::kOneArmPostselect: return "one-arm";
    case BuildStrategy::kTwoArmPostselect: return "two-arm";
    case BuildStrategy::kIdealProjection: return "ideal";
  }
  return "?";
}

// Full Fock states are only produced up to this many sites.
inline constexpr int kFullStateMaxSites = 4;

// Photon counts on (arm 2k-1, arm 2k) after the junction's splitter.
enum class JunctionOutcome {
  kBunchedKept,   // (2, 0)
  kBunchedOther,  // (0, 2)
  kSeparate,      // (1, 1): the singlet component
  kProjected,     // ideal projection, no detection
};

inline std::string to_string(JunctionOutcome o) {
  switch (o) {
    case JunctionOutcome::kBunchedKept: return "2,0";
    case JunctionOutcome::kBunchedOther: return "0,2";
    case JunctionOutcome::kSeparate: return "1,1";
    case JunctionOutcome::kProjected: return "projected";
  }
  return "?";
}

inline bool is_success(BuildStrategy s, JunctionOutcome o) {
  switch (s) {
    case BuildStrategy::kOneArmPostselect:
      return o == JunctionOutcome::kBunchedKept;
    case BuildStrategy::kTwoArmPostselect:
      return o == JunctionOutcome::kBunchedKept ||
             o == JunctionOutcome::kBunchedOther;
    case BuildStrategy::kIdealProjection:
      return o == JunctionOutcome::kProjected;
  }
  return false;
}

struct SiteEvent {
  int junction = 0;
  JunctionOutcome outcome = JunctionOutcome::kProjected;
  double probability = 0.0;
  bool success = false;
};

struct ChainBuildRecord {
  int sources_used = 0;
  int sites_succeeded = 0;
  std::vector<int> failure_events;  // junction indices
  int final_length = 0;
  bool truncated = false;  // one-arm failure ends the build
  std::vector<SiteEvent> outcome_log;
};

struct AKLTStateBundle {
  std::optional<FockState> full_state;
  mps::MPSChain mps_view;
  ChainBuildRecord record;
  bool full_state_omitted = false;  // length above kFullStateMaxSites
};

// P = |M1><00| + |M0><psi+| + |M-1><11| on one photon per arm, the result
// placed on site_arms.first as a biphoton; site_arms.second leaves the
// register.
inline FockState vbs_project(const FockState& pair_state,
                             std::pair<int, int> site_arms) {
  const auto [a, b] = site_arms;
  if (a == b) throw InvalidSpecError("vbs_project: arms must differ");
  const std::size_t pa = pair_state.arm_position(a);
  const std::size_t pb = pair_state.arm_position(b);
  std::vector<int> arms;
  for (int arm : pair_state.arms()) {
    if (arm != b) arms.push_back(arm);
  }
  FockState out(arms);
  for (const auto& [occ, amp] : pair_state.terms()) {
    const int na = occ[2 * pa] + occ[2 * pa + 1];
    const int nb = occ[2 * pb] + occ[2 * pb + 1];
    if (na != 1 || nb != 1) {
      throw InvalidSpecError("vbs_project: need exactly one photon per site arm");
    }
    const bool va = occ[2 * pa + 1] == 1;
    const bool vb = occ[2 * pb + 1] == 1;
    fock::Occupation o;
    o.reserve(out.mode_count());
    for (std::size_t p = 0; p < pair_state.arm_count(); ++p) {
      if (p == pb) continue;
      if (p == pa) {
        const int nv = static_cast<int>(va) + static_cast<int>(vb);
        o.push_back(2 - nv);
        o.push_back(nv);
      } else {
        o.push_back(occ[2 * p]);
        o.push_back(occ[2 * p + 1]);
      }
    }
    const double c = (va != vb) ? kInvSqrt2 : 1.0;
    out.add_term(o, c * amp);
  }
  out.prune();
  return out;
}

// Projects the inner pair of two singlets onto the singlet; the outer pair
// is left in -(1/2)|psi->.
inline FockState entanglement_swap(const FockState& left_singlet,
                                   const FockState& right_singlet,
                                   std::pair<int, int> inner_pair) {
  const auto [b, c] = inner_pair;
  if (!left_singlet.has_arm(b) || !right_singlet.has_arm(c)) {
    throw InvalidSpecError(
        "entanglement_swap: inner arms must belong to the left and right pairs");
  }
  const FockState joint = fock::tensor(left_singlet, right_singlet);
  for (const auto& [occ, amp] : joint.terms()) {
    if (joint.arm_photons(occ, b) != 1 || joint.arm_photons(occ, c) != 1) {
      throw InvalidSpecError("entanglement_swap: inner arms need one photon each");
    }
  }
  return fock::contract(elements::emit_singlet({b, c}), joint);
}

// Renames the surviving arms of a finished raw register to 0..L+1.
inline FockState canonical_arms(const FockState& s) {
  std::map<int, int> rename;
  for (std::size_t i = 0; i < s.arm_count(); ++i) {
    rename[s.arms()[i]] = static_cast<int>(i);
  }
  return fock::relabel(s, rename);
}

// N+1 singlets joined by N projections. The Fock state is built for
// N <= kFullStateMaxSites; the MPS view always.
inline AKLTStateBundle build_ideal(int n) {
  if (n < 0) throw DimensionError("build_ideal: negative length");
  AKLTStateBundle bundle;
  bundle.mps_view.length = n;
  bundle.record.sources_used = n + 1;
  bundle.record.sites_succeeded = n;
  bundle.record.final_length = n;
  for (int k = 1; k <= n; ++k) {
    bundle.record.outcome_log.push_back(
        {k, JunctionOutcome::kProjected, 1.0, true});
  }
  if (n > kFullStateMaxSites) {
    bundle.full_state_omitted = true;
    return bundle;
  }
  FockState s = elements::emit_singlet({0, 1});
  for (int k = 1; k <= n; ++k) {
    s = fock::tensor(s, elements::emit_singlet({2 * k, 2 * k + 1}));
    s = vbs_project(s, {2 * k - 1, 2 * k});
  }
  bundle.full_state = canonical_arms(s);
  return bundle;
}

// Dense amplitudes of a canonical chain state in the mps::state_vector
// ordering.
inline VectorX chain_vector(const FockState& s) {
  const int n = static_cast<int>(s.arm_count()) - 2;
  if (n < 0) throw DimensionError("chain_vector: need at least the two end arms");
  for (std::size_t i = 0; i < s.arm_count(); ++i) {
    if (s.arms()[i] != static_cast<int>(i)) {
      throw DimensionError("chain_vector: arms must be 0..L+1 in order");
    }
  }
  const std::size_t sites = mps::state_dimension(n) / 4;
  VectorX v = VectorX::Zero(static_cast<Eigen::Index>(mps::state_dimension(n)));
  for (const auto& [occ, amp] : s.terms()) {
    auto end_index = [&](std::size_t arm) {
      if (occ[2 * arm] + occ[2 * arm + 1] != 1) {
        throw DimensionError("chain_vector: end arm must hold one photon");
      }
      return static_cast<std::size_t>(occ[2 * arm + 1]);
    };
    const std::size_t i = end_index(0);
    const std::size_t j = end_index(static_cast<std::size_t>(n + 1));
    std::size_t site = 0;
    for (int k = 1; k <= n; ++k) {
      const auto p = static_cast<std::size_t>(k);
      if (occ[2 * p] + occ[2 * p + 1] != 2) {
        throw DimensionError("chain_vector: site arm must hold two photons");
      }
      site = site * 3 + static_cast<std::size_t>(occ[2 * p + 1]);
    }
    v(static_cast<Eigen::Index>(i * sites * 2 + site * 2 + j)) = amp;
  }
  return v;
}

// Outcome distribution of one junction between two fresh singlets. Exact for
// every junction of a left-to-right build: the right photon of the junction
// still belongs to an untouched singlet and is maximally mixed and
// uncorrelated with the rest.
inline detect::Distribution<JunctionOutcome> local_junction_distribution(
    BuildStrategy strategy) {
  if (strategy == BuildStrategy::kIdealProjection) {
    return {{JunctionOutcome::kProjected, 1.0}};
  }
  FockState s = fock::tensor(elements::emit_singlet({0, 1}),
                             elements::emit_singlet({2, 3}));
  s = fock::apply_transform(s, elements::beamsplitter(1, 2));
  detect::Distribution<JunctionOutcome> out = {
      {JunctionOutcome::kBunchedKept, 0.0},
      {JunctionOutcome::kBunchedOther, 0.0},
      {JunctionOutcome::kSeparate, 0.0}};
  for (const auto& e : detect::measure_counts(s, {1, 2})) {
    if (e.counts == std::vector<int>{2, 0}) out[0].second += e.probability;
    if (e.counts == std::vector<int>{0, 2}) out[1].second += e.probability;
    if (e.counts == std::vector<int>{1, 1}) out[2].second += e.probability;
  }
  return out;
}

// Step-wise optical build. Junctions are processed left to right; each step
// exposes its outcome distribution and is then committed to one outcome,
// either sampled or chosen by the caller.
class OpticalBuilder {
 public:
  OpticalBuilder(int sources, BuildStrategy strategy, bool track_full_state)
      : sources_(sources), strategy_(strategy) {
    if (sources < 1) throw DimensionError("OpticalBuilder: need at least one source");
    record_.sources_used = sources;
    track_ = track_full_state && (sources - 1) <= kFullStateMaxSites;
    if (track_) state_ = elements::emit_singlet({0, 1});
    local_ = local_junction_distribution(strategy);
  }

  bool done() const { return next_ >= sources_ || record_.truncated; }
  int next_junction() const { return next_; }
  bool tracks_full_state() const { return track_; }
  const ChainBuildRecord& record() const { return record_; }

  detect::Distribution<JunctionOutcome> junction_distribution() {
    if (done()) throw ProtocolError("OpticalBuilder: no junctions left");
    if (!track_) return local_;
    prepare();
    if (strategy_ == BuildStrategy::kIdealProjection) {
      return {{JunctionOutcome::kProjected, 1.0}};
    }
    detect::Distribution<JunctionOutcome> out = {
        {JunctionOutcome::kBunchedKept, 0.0},
        {JunctionOutcome::kBunchedOther, 0.0},
        {JunctionOutcome::kSeparate, 0.0}};
    for (const auto& e : detect::measure_counts(*split_, {left_arm(), right_arm()})) {
      if (e.counts == std::vector<int>{2, 0}) out[0].second += e.probability;
      if (e.counts == std::vector<int>{0, 2}) out[1].second += e.probability;
      if (e.counts == std::vector<int>{1, 1}) out[2].second += e.probability;
    }
    return out;
  }

  void commit(JunctionOutcome outcome) {
    const auto dist = junction_distribution();
    double p = 0.0;
    for (const auto& [o, q] : dist) {
      if (o == outcome) p = q;
    }
    if (p <= 0.0) throw ProtocolError("OpticalBuilder: outcome has probability 0");
    const bool ok = is_success(strategy_, outcome);
    record_.outcome_log.push_back({next_, outcome, p, ok});
    if (ok) {
      ++record_.sites_succeeded;
    } else {
      record_.failure_events.push_back(next_);
      if (strategy_ == BuildStrategy::kOneArmPostselect) record_.truncated = true;
    }
    if (track_ && !record_.truncated) advance(outcome);
    split_.reset();
    ++next_;
  }

  void commit_sampled(detect::OutcomeSampler& sampler) {
    commit(detect::sample(junction_distribution(), sampler));
  }

  AKLTStateBundle finish() {
    if (!done()) throw ProtocolError("OpticalBuilder: junctions left unprocessed");
    AKLTStateBundle bundle;
    record_.final_length = record_.sites_succeeded;
    bundle.record = record_;
    bundle.mps_view.length = record_.final_length;
    if (track_ && !record_.truncated) {
      bundle.full_state = canonical_arms(state_.normalized());
    } else {
      bundle.full_state_omitted = true;
    }
    return bundle;
  }

 private:
  int left_arm() const { return 2 * next_ - 1; }
  int right_arm() const { return 2 * next_; }

  // Brings in the next source and, for splitter strategies, interferes.
  void prepare() {
    if (split_) return;
    if (!state_.has_arm(right_arm())) {
      state_ = fock::tensor(state_,
                            elements::emit_singlet({right_arm(), right_arm() + 1}));
    }
    if (strategy_ == BuildStrategy::kIdealProjection) {
      split_ = state_;
    } else {
      split_ = fock::apply_transform(
          state_, elements::beamsplitter(left_arm(), right_arm()));
    }
  }

  void advance(JunctionOutcome outcome) {
    prepare();
    const int a = left_arm();
    const int b = right_arm();
    auto branch = [&](std::vector<int> counts) {
      return detect::postselect(*split_, {a, b}, [&](const std::vector<int>& c) {
               return c == counts;
             }).state;
    };
    switch (outcome) {
      case JunctionOutcome::kProjected:
        state_ = vbs_project(state_, {a, b});
        break;
      case JunctionOutcome::kBunchedKept:
        state_ = fock::remove_empty_arm(branch({2, 0}), b);
        break;
      case JunctionOutcome::kBunchedOther:
        state_ = fock::relabel(fock::remove_empty_arm(branch({0, 2}), a), {{b, a}});
        break;
      case JunctionOutcome::kSeparate: {
        // Undo the (self-inverse) splitter and read off the singlet.
        FockState s = fock::apply_transform(
            branch({1, 1}), elements::beamsplitter(a, b).adjoint());
        state_ = fock::contract(elements::emit_singlet({a, b}), s);
        break;
      }
    }
    state_ = state_.normalized();
  }

  int sources_;
  BuildStrategy strategy_;
  bool track_ = false;
  int next_ = 1;
  FockState state_;
  std::optional<FockState> split_;
  detect::Distribution<JunctionOutcome> local_;
  ChainBuildRecord record_;
};

// Samples a full build from `sources` singlet sources (sources-1 junctions).
inline AKLTStateBundle build_optical(int sources, BuildStrategy strategy,
                                     detect::OutcomeSampler& sampler,
                                     bool full_state = true) {
  OpticalBuilder b(sources, strategy, full_state);
  while (!b.done()) b.commit_sampled(sampler);
  return b.finish();
}

}  // namespace aklt::builder
