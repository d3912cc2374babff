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

// Single-qubit wire on the chain's correlation space: initialization,
// rotations with Pauli-frame feed-forward, readout, Euler compilation and
// teleportation.
//
// The session keeps the physical state as the 2x2 pair matrix over
// (particle 0, correlation index). Once the qubit is initialized the first
// row carries the correlation vector and the second row is zero.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "aklt/common.hpp"
#include "aklt/detect.hpp"
#include "aklt/mps.hpp"

namespace aklt::wire {

using mps::BasisKind;
using mps::BiphotonState;
using mps::MeasurementBasis;

// i^phase X^x Z^z.
struct PauliFrame {
  int x = 0;
  int z = 0;
  int phase = 0;  // mod 4

  static PauliFrame from(const mps::Pauli& p) { return {p.x, p.z, 0}; }

  Complex phase_value() const {
    static const std::array<Complex, 4> kPhases = {Complex(1, 0), Complex(0, 1),
                                                   Complex(-1, 0), Complex(0, -1)};
    return kPhases[static_cast<std::size_t>(phase & 3)];
  }

  Matrix2 matrix() const {
    return phase_value() * mps::Pauli{x, z}.matrix();
  }

  // X^a Z^b X^c Z^d = (-1)^{bc} X^{a+c} Z^{b+d}.
  PauliFrame operator*(const PauliFrame& o) const {
    return {x ^ o.x, z ^ o.z, (phase + o.phase + 2 * (z & o.x)) & 3};
  }

  bool operator==(const PauliFrame&) const = default;

  std::string to_string() const {
    static const std::array<const char*, 4> kNames = {"+", "+i", "-", "-i"};
    return std::string(kNames[static_cast<std::size_t>(phase & 3)]) +
           mps::Pauli{x, z}.name();
  }
};

enum class MeasurementModel { kIdealSpin0, kPhysicalAnalyser };

inline std::string to_string(MeasurementModel m) {
  return m == MeasurementModel::kIdealSpin0 ? "ideal" : "physical";
}

enum class RotationAxis { kZ, kX };

enum class WireStatus { kFresh, kActive, kExhausted, kCollapsed, kRead };

inline std::string to_string(WireStatus s) {
  switch (s) {
    case WireStatus::kFresh: return "fresh";
    case WireStatus::kActive: return "active";
    case WireStatus::kExhausted: return "exhausted";
    case WireStatus::kCollapsed: return "collapsed";
    case WireStatus::kRead: return "read";
  }
  return "?";
}

// One outcome of a site measurement as realized by a model.
struct SiteOutcome {
  std::string label;
  BiphotonState state;
  Matrix2 op;
  std::string op_name;
  mps::Role role = mps::Role::kBiproductOnly;
  mps::Pauli biproduct;
  bool aborts = false;  // rank-1 double count of the analyser
};

// Ideal: the three basis elements. Physical: the analyser aimed at the first
// element, whose other two outcomes are the same-polarization biphotons.
// The standard basis is complete in both models.
inline std::array<SiteOutcome, 3> site_outcomes(const MeasurementBasis& basis,
                                                MeasurementModel model) {
  std::array<SiteOutcome, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& e = basis.elements[i];
    out[i] = {e.label, e.state, e.op, e.op_name, e.role, e.biproduct, false};
  }
  if (model == MeasurementModel::kIdealSpin0 || basis.kind == BasisKind::kStandard) {
    return out;
  }
  const auto setting = detect::AnalyserSetting::for_target(basis.elements[0].state);
  const Vector2 p = setting.jones.adjoint().col(0);
  const Vector2 q = setting.jones.adjoint().col(1);
  auto double_count = [](std::string label, const Vector2& pol) {
    const BiphotonState s = BiphotonState::from_polarizations(pol, pol);
    return SiteOutcome{std::move(label), s, mps::a_map(s), "rank-1",
                       mps::Role::kBiproductOnly, {}, true};
  };
  out[1] = double_count("two-at-H", p);
  out[2] = double_count("two-at-V", q);
  return out;
}

struct LogEntry {
  int site = 0;  // 0 and N+1 are the end photons
  std::string basis;
  std::string outcome;
  std::string op_name;
  double probability = 0.0;
  PauliFrame frame_before;
  PauliFrame frame_after;
  std::optional<BiphotonState> site_state;  // measured biphoton
  std::optional<Vector2> end_state;         // measured end polarization
};

struct RotationResult {
  WireStatus status = WireStatus::kActive;
  bool applied = false;
  int attempts = 0;
  double theta_used = 0.0;  // after feed-forward
};

struct InitResult {
  WireStatus status = WireStatus::kActive;
  bool initialized = false;
  int attempts = 0;
};

struct ReadoutResult {
  WireStatus status = WireStatus::kRead;
  int bit = 0;
  int attempts = 0;
  bool via_end = false;
};

// Exact readout statistics of the current state.
struct ReadoutProbabilities {
  double zero_given_conclusive = 0.0;  // P(HH | not HV) or P(H) at the end
  double bit0 = 0.0;                   // after frame correction
  double bit1 = 0.0;
};

// Initial pair matrix |psi->.
inline Matrix2 initial_pair() { return mps::singlet_pair(); }

class WireSession {
 public:
  explicit WireSession(int chain_length)
      : n_(chain_length), pair_(initial_pair()) {
    if (chain_length < 0) throw DimensionError("WireSession: negative length");
  }

  int length() const { return n_; }
  int cursor() const { return cursor_; }
  int remaining_sites() const { return n_ - cursor_ + 1; }
  bool initialized() const { return initialized_; }
  WireStatus status() const { return status_; }
  const PauliFrame& frame() const { return frame_; }
  const Vector2& logical_state() const { return logical_; }
  const Matrix2& pair() const { return pair_; }
  const std::vector<LogEntry>& log() const { return log_; }

  // Physical correlation vector; defined once initialized.
  Vector2 correlation_vector() const {
    require_initialized();
    return pair_.row(0).transpose();
  }

  // frame^-1 applied to the physical vector, normalized.
  Vector2 corrected_vector() const {
    const Vector2 v = frame_.matrix().adjoint() * correlation_vector();
    return v.normalized();
  }

  // max |corrected - c * logical| over unit-modulus c.
  double tracking_error() const {
    return phase_distance(corrected_vector(), logical_.normalized());
  }

  // Measures photon 0 along `axis`; outcome axis leaves the qubit in the
  // orthogonal state.
  bool initialize_via_end(const Vector2& axis, detect::OutcomeSampler& sampler) {
    const Vector2 s = axis.normalized();
    const double ps = (s.adjoint() * pair_).squaredNorm() / pair_.squaredNorm();
    const bool first = sampler.uniform() < ps;
    initialize_via_end_forced(s, first);
    return first;
  }

  // Same with the outcome chosen by the caller (true: axis, false: its
  // orthogonal complement).
  void initialize_via_end_forced(const Vector2& axis, bool along_axis) {
    if (end0_measured_) throw ProtocolError("end photon 0 already measured");
    if (initialized_) throw ProtocolError("wire already initialized");
    const Vector2 s = axis.normalized();
    const Vector2 t(-std::conj(s(1)), std::conj(s(0)));
    const Vector2 m = along_axis ? s : t;
    const double p = (m.adjoint() * pair_).squaredNorm() / pair_.squaredNorm();
    const Vector2 v = (m.adjoint() * pair_).transpose();
    end0_measured_ = true;
    set_vector(v);
    logical_ = v.normalized();
    frame_ = {};
    initialized_ = true;
    status_ = WireStatus::kActive;
    LogEntry e{0, "end", along_axis ? "axis" : "orthogonal", "-", p, {}, {}, {}, m};
    log_.push_back(std::move(e));
  }

  // Substitutes the boundary vector directly; the protocol then runs from
  // an arbitrary correlation state.
  void initialize_with_state(const Vector2& state) {
    if (initialized_) throw ProtocolError("wire already initialized");
    if (state.norm() == 0.0) throw InvalidInputError("zero boundary state");
    end0_measured_ = true;
    set_vector(state);
    logical_ = state.normalized();
    frame_ = {};
    initialized_ = true;
    status_ = WireStatus::kActive;
    log_.push_back({0, "boundary", "substituted", "-", 1.0, {}, {}, {}, state});
  }

  // Repeated standard-basis site measurements until HH or VV.
  InitResult initialize_via_site(detect::OutcomeSampler& sampler) {
    InitResult r;
    if (initialized_) throw ProtocolError("wire already initialized");
    const auto basis = mps::table2_basis(BasisKind::kStandard);
    while (remaining_sites() > 0) {
      const auto outs = site_outcomes(basis, MeasurementModel::kIdealSpin0);
      const std::size_t k = sample_index(outs, sampler);
      ++r.attempts;
      if (commit_init_outcome(basis, outs, k)) {
        r.initialized = true;
        r.status = status_;
        return r;
      }
    }
    status_ = WireStatus::kExhausted;
    r.status = status_;
    return r;
  }

  // One standard-basis attempt with a chosen outcome index
  // (0: HH, 1: HV, 2: VV). Returns whether the qubit is now initialized.
  bool initialize_via_site_forced(std::size_t outcome) {
    if (initialized_) throw ProtocolError("wire already initialized");
    if (remaining_sites() <= 0) throw ProtocolError("no sites left");
    const auto basis = mps::table2_basis(BasisKind::kStandard);
    return commit_init_outcome(basis,
                               site_outcomes(basis, MeasurementModel::kIdealSpin0),
                               outcome);
  }

  // Feed-forward sign: Z(t) commutes past X to Z(-t), X(t) past Z to X(-t).
  double feed_forward_angle(RotationAxis axis, double theta) const {
    const bool flip = axis == RotationAxis::kZ ? frame_.x : frame_.z;
    return flip ? -theta : theta;
  }

  static BasisKind basis_kind(RotationAxis axis) {
    return axis == RotationAxis::kZ ? BasisKind::kZRotation : BasisKind::kXRotation;
  }

  // Exact outcome distribution of measuring the next site.
  std::array<double, 3> outcome_probabilities(
      const std::array<SiteOutcome, 3>& outs) const {
    std::array<double, 3> p{};
    const double total = 3.0 * pair_.squaredNorm();
    for (std::size_t i = 0; i < 3; ++i) {
      p[i] = mps::act_on_right(pair_, outs[i].op).squaredNorm() / total;
    }
    return p;
  }

  // Repeat-until-success rotation, capped by the remaining sites.
  RotationResult apply_rotation(RotationAxis axis, double theta,
                                MeasurementModel model,
                                detect::OutcomeSampler& sampler) {
    RotationResult r;
    require_initialized();
    while (remaining_sites() > 0 && status_ == WireStatus::kActive) {
      const double t = feed_forward_angle(axis, theta);
      const auto basis = mps::table2_basis(basis_kind(axis), t);
      const auto outs = site_outcomes(basis, model);
      const std::size_t k = sample_index(outs, sampler);
      ++r.attempts;
      r.theta_used = t;
      if (commit_rotation_outcome(theta, basis, outs, k)) {
        r.applied = true;
        r.status = status_;
        return r;
      }
    }
    if (status_ == WireStatus::kActive) status_ = WireStatus::kExhausted;
    r.status = status_;
    return r;
  }

  // One rotation attempt with a chosen outcome index. Returns whether the
  // rotation was applied.
  bool apply_rotation_forced(RotationAxis axis, double theta,
                             MeasurementModel model, std::size_t outcome) {
    require_initialized();
    if (remaining_sites() <= 0) throw ProtocolError("no sites left");
    const auto basis =
        mps::table2_basis(basis_kind(axis), feed_forward_angle(axis, theta));
    return commit_rotation_outcome(theta, basis, site_outcomes(basis, model), outcome);
  }

  // Identity-basis step (pure transmission).
  bool transmit(MeasurementModel model, detect::OutcomeSampler& sampler) {
    require_initialized();
    if (remaining_sites() <= 0) throw ProtocolError("no sites left");
    const auto basis = mps::table2_basis(BasisKind::kIdentity);
    const auto outs = site_outcomes(basis, model);
    return commit_transmit_outcome(basis, outs, sample_index(outs, sampler));
  }

  bool transmit_forced(MeasurementModel model, std::size_t outcome) {
    require_initialized();
    if (remaining_sites() <= 0) throw ProtocolError("no sites left");
    const auto basis = mps::table2_basis(BasisKind::kIdentity);
    return commit_transmit_outcome(basis, site_outcomes(basis, model), outcome);
  }

  ReadoutProbabilities readout_probabilities() const {
    const Vector2 v = correlation_vector();
    ReadoutProbabilities r;
    r.zero_given_conclusive = std::norm(v(0)) / v.squaredNorm();
    r.bit0 = frame_.x ? 1.0 - r.zero_given_conclusive : r.zero_given_conclusive;
    r.bit1 = 1.0 - r.bit0;
    return r;
  }

  // Standard-basis site measurements; HV retries on the next site. With no
  // sites left the end photon is measured with a PBS.
  ReadoutResult readout(detect::OutcomeSampler& sampler) {
    ReadoutResult r;
    require_initialized();
    const auto basis = mps::table2_basis(BasisKind::kStandard);
    while (remaining_sites() > 0) {
      const auto outs = site_outcomes(basis, MeasurementModel::kIdealSpin0);
      const std::size_t k = sample_index(outs, sampler);
      ++r.attempts;
      if (auto bit = commit_readout_outcome(basis, outs, k)) {
        r.bit = *bit;
        r.status = status_;
        return r;
      }
    }
    ++r.attempts;
    r.via_end = true;
    const bool h = sampler.uniform() < readout_probabilities().zero_given_conclusive;
    r.bit = read_end(h);
    r.status = status_;
    return r;
  }

  // Measures the final end photon with a PBS; returns the corrected bit.
  int read_end(bool outcome_h) {
    require_initialized();
    if (remaining_sites() > 0) throw ProtocolError("sites remain before the end photon");
    const Vector2 v = correlation_vector();
    const double ph = std::norm(v(0)) / v.squaredNorm();
    const int bit = (outcome_h ? 0 : 1) ^ frame_.x;
    LogEntry e{n_ + 1, "end", outcome_h ? "H" : "V", "-",
               outcome_h ? ph : 1.0 - ph, frame_, frame_, {},
               outcome_h ? Vector2(1, 0) : Vector2(0, 1)};
    log_.push_back(std::move(e));
    status_ = WireStatus::kRead;
    return bit;
  }

  // Returns the bit for HH/VV, nothing for HV (Z joins the frame).
  std::optional<int> readout_forced(std::size_t outcome) {
    require_initialized();
    if (remaining_sites() <= 0) throw ProtocolError("no sites left");
    const auto basis = mps::table2_basis(BasisKind::kStandard);
    return commit_readout_outcome(
        basis, site_outcomes(basis, MeasurementModel::kIdealSpin0), outcome);
  }

 private:
  void require_initialized() const {
    if (!initialized_) throw ProtocolError("wire not initialized");
  }

  void set_vector(const Vector2& v) {
    pair_.setZero();
    pair_.row(0) = v.normalized().transpose();
  }

  std::size_t sample_index(const std::array<SiteOutcome, 3>& outs,
                           detect::OutcomeSampler& sampler) const {
    const auto p = outcome_probabilities(outs);
    detect::Distribution<std::size_t> d = {{0, p[0]}, {1, p[1]}, {2, p[2]}};
    return detect::sample(d, sampler);
  }

  // Applies the outcome's operator to the pair and logs it.
  double measure(const MeasurementBasis& basis, const SiteOutcome& o,
                 const PauliFrame& before, const PauliFrame& after) {
    const double total = 3.0 * pair_.squaredNorm();
    Matrix2 next = mps::act_on_right(pair_, o.op);
    const double p = next.squaredNorm() / total;
    if (p <= 0.0) throw ProtocolError("outcome has probability 0");
    pair_ = next / next.norm();
    log_.push_back({cursor_, mps::to_string(basis.kind), o.label, o.op_name, p,
                    before, after, o.state, {}});
    ++cursor_;
    return p;
  }

  // Keeps the row of a rank-1 pair matrix as the correlation vector.
  void collapse_rows() {
    const Eigen::Index r = pair_.row(0).norm() >= pair_.row(1).norm() ? 0 : 1;
    set_vector(pair_.row(r).transpose());
  }

  bool commit_init_outcome(const MeasurementBasis& basis,
                           const std::array<SiteOutcome, 3>& outs, std::size_t k) {
    const PauliFrame before = frame_;
    if (k == 1) {
      frame_ = PauliFrame::from(outs[1].biproduct) * frame_;
      measure(basis, outs[1], before, frame_);
      return false;
    }
    // HH leaves |1>, VV leaves |0> = X|1>.
    const PauliFrame after = k == 0 ? PauliFrame{} : PauliFrame{1, 0, 0};
    measure(basis, outs[k], before, after);
    collapse_rows();
    frame_ = after;
    logical_ = Vector2(0, 1);
    end0_measured_ = true;
    initialized_ = true;
    status_ = WireStatus::kActive;
    return true;
  }

  bool commit_rotation_outcome(double theta,
                               const MeasurementBasis& basis,
                               const std::array<SiteOutcome, 3>& outs,
                               std::size_t k) {
    const SiteOutcome& o = outs[k];
    const PauliFrame before = frame_;
    if (o.aborts) {
      measure(basis, o, before, before);
      status_ = WireStatus::kCollapsed;
      return false;
    }
    frame_ = PauliFrame::from(o.biproduct) * frame_;
    measure(basis, o, before, frame_);
    if (o.role != mps::Role::kRotation) return false;
    logical_ = mps::intended_rotation(basis.kind, theta) * logical_;
    return true;
  }

  bool commit_transmit_outcome(const MeasurementBasis& basis,
                               const std::array<SiteOutcome, 3>& outs,
                               std::size_t k) {
    const SiteOutcome& o = outs[k];
    const PauliFrame before = frame_;
    if (o.aborts) {
      measure(basis, o, before, before);
      status_ = WireStatus::kCollapsed;
      return false;
    }
    frame_ = PauliFrame::from(o.biproduct) * frame_;
    measure(basis, o, before, frame_);
    return true;
  }

  std::optional<int> commit_readout_outcome(const MeasurementBasis& basis,
                                            const std::array<SiteOutcome, 3>& outs,
                                            std::size_t k) {
    const PauliFrame before = frame_;
    if (k == 1) {
      frame_ = PauliFrame::from(outs[1].biproduct) * frame_;
      measure(basis, outs[1], before, frame_);
      return std::nullopt;
    }
    measure(basis, outs[k], before, frame_);
    status_ = WireStatus::kRead;
    return (k == 0 ? 0 : 1) ^ frame_.x;
  }

  int n_;
  int cursor_ = 1;
  Matrix2 pair_;
  Vector2 logical_ = Vector2::Zero();
  PauliFrame frame_;
  bool initialized_ = false;
  bool end0_measured_ = false;
  WireStatus status_ = WireStatus::kFresh;
  std::vector<LogEntry> log_;
};

struct RotationInstruction {
  RotationAxis axis = RotationAxis::kZ;
  double theta = 0.0;
};

struct EulerProgram {
  std::vector<RotationInstruction> steps;  // applied first to last
  Complex global_phase{1.0, 0.0};

  Matrix2 matrix() const {
    Matrix2 m = Matrix2::Identity();
    for (const auto& s : steps) {
      m = (s.axis == RotationAxis::kZ ? z_rotation(s.theta) : x_rotation(s.theta)) * m;
    }
    return global_phase * m;
  }
};

// U = phase * Z(t3) X(t2) Z(t1).
inline EulerProgram compile_unitary(const Matrix2& u) {
  if (!is_unitary(u)) throw InvariantError("compile_unitary: matrix is not unitary");
  const Matrix2 v = u / std::sqrt(u.determinant());
  const Complex a = v(0, 0);
  const Complex b = v(0, 1);
  constexpr double kDegenerate = 1e-12;
  const double t2 = 2.0 * std::atan2(std::abs(b), std::abs(a));
  double sum = 0.0;
  double diff = 0.0;
  if (std::abs(b) < kDegenerate) {
    sum = -2.0 * std::arg(a);
  } else if (std::abs(a) < kDegenerate) {
    diff = 2.0 * std::arg(b) + kPi;
  } else {
    sum = -2.0 * std::arg(a);
    diff = 2.0 * std::arg(b) + kPi;
  }
  EulerProgram prog;
  const double t1 = (sum + diff) / 2.0;
  const double t3 = (sum - diff) / 2.0;
  prog.steps = {{RotationAxis::kZ, t1}, {RotationAxis::kX, t2}, {RotationAxis::kZ, t3}};
  const Matrix2 m = prog.matrix();
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  m.cwiseAbs().maxCoeff(&r, &c);
  prog.global_phase = u(r, c) / m(r, c);
  prog.global_phase /= std::abs(prog.global_phase);
  return prog;
}

struct ProgramRun {
  WireStatus status = WireStatus::kActive;
  int sites_used = 0;
  int retries = 0;
};

// Runs the rotations of `prog` on an initialized session.
inline ProgramRun execute(WireSession& session, const EulerProgram& prog,
                          MeasurementModel model, detect::OutcomeSampler& sampler) {
  ProgramRun run;
  const int start = session.cursor();
  for (const auto& step : prog.steps) {
    const auto r = session.apply_rotation(step.axis, step.theta, model, sampler);
    run.retries += r.attempts - (r.applied ? 1 : 0);
    if (!r.applied) {
      run.status = r.status;
      break;
    }
  }
  if (run.status == WireStatus::kActive) run.status = session.status();
  run.sites_used = session.cursor() - start;
  return run;
}

struct TeleportResult {
  double fidelity = 0.0;
  bool success = false;
  double success_probability = 1.0;  // exact, along the sampled path
  std::vector<LogEntry> log;
};

// Transmits `input` through `length` identity-basis measurements.
inline TeleportResult teleport_fidelity(const Vector2& input, int length,
                                        MeasurementModel model,
                                        detect::OutcomeSampler& sampler) {
  if (length < 0) throw DimensionError("teleport: negative length");
  WireSession s(length);
  s.initialize_with_state(input);
  TeleportResult r;
  const auto basis = mps::table2_basis(BasisKind::kIdentity);
  const auto outs = site_outcomes(basis, model);
  // Success probability along a surviving branch, independent of sampling.
  WireSession branch = s;
  while (branch.remaining_sites() > 0) {
    const auto p = branch.outcome_probabilities(outs);
    double ok = 0.0;
    std::size_t keep = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (outs[i].aborts) continue;
      ok += p[i];
      if (p[i] > p[keep] || outs[keep].aborts) keep = i;
    }
    r.success_probability *= ok;
    branch.transmit_forced(model, keep);
  }
  while (s.remaining_sites() > 0) {
    if (!s.transmit(model, sampler)) break;
  }
  r.success = s.status() == WireStatus::kActive;
  if (r.success) r.fidelity = fidelity(s.corrected_vector(), input);
  r.log = s.log();
  return r;
}

}  // namespace aklt::wire
