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

#include <random>

#include <gtest/gtest.h>

#include "aklt/builder.hpp"
#include "aklt/wire.hpp"
#include "reference_models.hpp"

namespace aklt::wire {
namespace {

constexpr auto kIdeal = MeasurementModel::kIdealSpin0;
constexpr auto kPhysical = MeasurementModel::kPhysicalAnalyser;

std::vector<PauliFrame> all_frames() {
  std::vector<PauliFrame> out;
  for (int x = 0; x < 2; ++x) {
    for (int z = 0; z < 2; ++z) {
      for (int p = 0; p < 4; ++p) out.push_back({x, z, p});
    }
  }
  return out;
}

TEST(pauli_frame, product_matches_matrices) {
  for (const auto& a : all_frames()) {
    for (const auto& b : all_frames()) {
      EXPECT_LT(((a * b).matrix() - a.matrix() * b.matrix()).cwiseAbs().maxCoeff(), 1e-15)
          << a.to_string() << " " << b.to_string();
    }
  }
}

TEST(pauli_frame, names) {
  EXPECT_EQ((PauliFrame{1, 1, 0}).to_string(), "+XZ");
  EXPECT_EQ((PauliFrame{0, 0, 2}).to_string(), "-I");
  EXPECT_EQ((PauliFrame{0, 1, 3}).to_string(), "-iZ");
}

TEST(end_initialization, outcomes_are_even_and_orthogonal) {
  for (bool along : {true, false}) {
    WireSession s(2);
    s.initialize_via_end_forced(Vector2(1, 0), along);
    EXPECT_NEAR(s.log().back().probability, 0.5, 1e-15);
    const Vector2 expect = along ? Vector2(0, 1) : Vector2(1, 0);
    EXPECT_NEAR(fidelity(s.corrected_vector(), expect), 1.0, 1e-15);
    EXPECT_EQ(s.status(), WireStatus::kActive);
  }
}

TEST(end_initialization, sampled_frequency_is_one_half) {
  detect::OutcomeSampler sampler(3, 0);
  int hits = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    WireSession s(1);
    hits += s.initialize_via_end(elements::polarization::d(), sampler);
  }
  EXPECT_NEAR(hits / static_cast<double>(n), 0.5, 0.01);
}

TEST(site_initialization, hh_gives_one_with_trivial_frame) {
  WireSession s(3);
  EXPECT_TRUE(s.initialize_via_site_forced(0));
  EXPECT_EQ(s.frame(), PauliFrame{});
  EXPECT_NEAR(fidelity(s.corrected_vector(), Vector2(0, 1)), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(s.correlation_vector(), Vector2(0, 1)), 1.0, 1e-15);
}

TEST(site_initialization, vv_gives_x_frame) {
  WireSession s(3);
  EXPECT_TRUE(s.initialize_via_site_forced(2));
  EXPECT_EQ(s.frame(), (PauliFrame{1, 0, 0}));
  EXPECT_NEAR(fidelity(s.correlation_vector(), Vector2(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(s.corrected_vector(), Vector2(0, 1)), 1.0, 1e-15);
}

TEST(site_initialization, hv_adds_z_and_retries) {
  WireSession s(3);
  EXPECT_FALSE(s.initialize_via_site_forced(1));
  EXPECT_FALSE(s.initialized());
  EXPECT_EQ(s.frame(), (PauliFrame{0, 1, 0}));
  EXPECT_TRUE(s.initialize_via_site_forced(0));
  EXPECT_EQ(s.cursor(), 3);
}

// An HH outcome on a single-site chain leaves both ends in |1>.
TEST(site_initialization, hh_splits_chain_into_two_ones) {
  const mps::MPSChain c{1};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex a = mps::amplitude(c, {mps::BiphotonState::hh()},
                                       i ? Vector2(0, 1) : Vector2(1, 0),
                                       j ? Vector2(0, 1) : Vector2(1, 0));
      EXPECT_EQ(std::abs(a) > 1e-12, i == 1 && j == 1);
    }
  }
}

TEST(site_initialization, success_per_attempt_is_two_thirds) {
  detect::OutcomeSampler sampler(7, 0);
  int attempts = 0, ok = 0;
  for (int i = 0; i < 20000; ++i) {
    WireSession s(50);
    const auto r = s.initialize_via_site(sampler);
    ok += r.initialized;
    attempts += r.attempts;
  }
  EXPECT_NEAR(static_cast<double>(ok) / attempts, 2.0 / 3, 0.01);
}

TEST(site_initialization, exhausts_short_chain) {
  WireSession s(1);
  s.initialize_via_site_forced(1);
  detect::OutcomeSampler sampler(1, 0);
  const auto r = s.initialize_via_site(sampler);
  EXPECT_FALSE(r.initialized);
  EXPECT_EQ(r.status, WireStatus::kExhausted);
}

TEST(rotation, consecutive_z_rotations_compose) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector2 in = reference::random_qubit(rng);
    for (std::size_t k1 : {0u, 1u}) {
      for (std::size_t k2 : {0u, 1u}) {
        WireSession s(4);
        s.initialize_with_state(in);
        ASSERT_TRUE(s.apply_rotation_forced(RotationAxis::kZ, 0.4, kIdeal, k1));
        ASSERT_TRUE(s.apply_rotation_forced(RotationAxis::kZ, 0.9, kIdeal, k2));
        EXPECT_NEAR(fidelity(s.corrected_vector(), z_rotation(1.3) * in), 1.0, 1e-12);
        EXPECT_LT(s.tracking_error(), 1e-12);
      }
    }
  }
}

TEST(rotation, failure_outcome_keeps_state_and_adds_pauli) {
  const Vector2 in(0.6, Complex(0, 0.8));
  WireSession s(4);
  s.initialize_with_state(in);
  EXPECT_FALSE(s.apply_rotation_forced(RotationAxis::kX, 0.7, kIdeal, 2));
  EXPECT_EQ(s.frame(), (PauliFrame{1, 0, 0}));
  EXPECT_NEAR(fidelity(s.corrected_vector(), in), 1.0, 1e-12);
}

TEST(rotation, feed_forward_flips_sign) {
  WireSession s(4);
  s.initialize_with_state(Vector2(1, 0));
  EXPECT_EQ(s.feed_forward_angle(RotationAxis::kZ, 0.5), 0.5);
  s.transmit_forced(kIdeal, 1);  // X biproduct
  EXPECT_EQ(s.feed_forward_angle(RotationAxis::kZ, 0.5), -0.5);
  EXPECT_EQ(s.feed_forward_angle(RotationAxis::kX, 0.5), 0.5);
  s.transmit_forced(kIdeal, 0);  // Z biproduct
  EXPECT_EQ(s.feed_forward_angle(RotationAxis::kX, 0.5), -0.5);
}

TEST(rotation, ideal_retry_rate_is_one_third) {
  detect::OutcomeSampler sampler(83, 0);
  int attempts = 0, applied = 0;
  for (int i = 0; i < 20000; ++i) {
    WireSession s(30);
    s.initialize_with_state(Vector2(1, 0));
    const auto r = s.apply_rotation(RotationAxis::kX, 0.8, kIdeal, sampler);
    attempts += r.attempts;
    applied += r.applied;
  }
  EXPECT_NEAR(1.0 - static_cast<double>(applied) / attempts, 1.0 / 3, 0.01);
}

TEST(rotation, each_ideal_outcome_has_probability_one_third) {
  std::mt19937_64 rng(89);
  for (int i = 0; i < 10; ++i) {
    WireSession s(2);
    s.initialize_with_state(reference::random_qubit(rng));
    for (auto axis : {RotationAxis::kZ, RotationAxis::kX}) {
      const auto basis = mps::table2_basis(WireSession::basis_kind(axis), 1.1);
      const auto p = s.outcome_probabilities(site_outcomes(basis, kIdeal));
      for (double q : p) EXPECT_NEAR(q, 1.0 / 3, 1e-12);
    }
  }
}

TEST(physical_analyser, double_counts_are_rank_one_and_abort) {
  const auto basis = mps::table2_basis(BasisKind::kZRotation, 0.6);
  const auto outs = site_outcomes(basis, kPhysical);
  EXPECT_FALSE(outs[0].aborts);
  EXPECT_NEAR(std::norm(mps::overlap(outs[0].state, basis.elements[0].state)), 1.0, 1e-12);
  for (std::size_t i = 1; i < 3; ++i) {
    EXPECT_TRUE(outs[i].aborts);
    EXPECT_NEAR(std::abs(outs[i].op.determinant()), 0.0, 1e-12);
  }
  WireSession s(3);
  s.initialize_with_state(Vector2(1, 0));
  const auto p = s.outcome_probabilities(outs);
  EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-12);
  EXPECT_NEAR(p[0], 1.0 / 3, 1e-12);
  EXPECT_FALSE(s.apply_rotation_forced(RotationAxis::kZ, 0.6, kPhysical, 1));
  EXPECT_EQ(s.status(), WireStatus::kCollapsed);
}

TEST(physical_analyser, standard_basis_is_complete) {
  const auto basis = mps::table2_basis(BasisKind::kStandard);
  const auto outs = site_outcomes(basis, kPhysical);
  for (const auto& o : outs) EXPECT_FALSE(o.aborts);
}

TEST(readout, conditional_law_matches_amplitudes) {
  std::mt19937_64 rng(97);
  for (int i = 0; i < 20; ++i) {
    const Vector2 in = reference::random_qubit(rng);
    WireSession s(4);
    s.initialize_with_state(in);
    s.transmit_forced(kIdeal, static_cast<std::size_t>(i % 3));
    const auto outs = site_outcomes(mps::table2_basis(BasisKind::kStandard), kIdeal);
    const auto p = s.outcome_probabilities(outs);
    const auto r = s.readout_probabilities();
    const Vector2 v = s.correlation_vector();
    EXPECT_NEAR(p[0] / (p[0] + p[2]), std::norm(v(0)), 1e-12);
    EXPECT_NEAR(r.zero_given_conclusive, std::norm(v(0)), 1e-12);
    EXPECT_NEAR(r.bit0, std::norm(in(0)), 1e-12);
    EXPECT_NEAR(p[1], 1.0 / 3, 1e-12);
  }
}

TEST(readout, hv_then_bit_with_frame_correction) {
  WireSession s(3);
  s.initialize_with_state(Vector2(0, 1));
  s.transmit_forced(kIdeal, 1);  // X biproduct: physical |0>
  EXPECT_FALSE(s.readout_forced(1).has_value());
  const auto bit = s.readout_forced(0);
  ASSERT_TRUE(bit.has_value());
  EXPECT_EQ(*bit, 1);
  EXPECT_EQ(s.status(), WireStatus::kRead);
}

TEST(readout, falls_back_to_end_photon) {
  WireSession s(0);
  s.initialize_with_state(Vector2(1, 0));
  detect::OutcomeSampler sampler(1, 0);
  const auto r = s.readout(sampler);
  EXPECT_TRUE(r.via_end);
  EXPECT_EQ(r.bit, 0);
}

TEST(compile_unitary, reproduces_random_unitaries) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    const Matrix2 u = reference::random_unitary(rng);
    const EulerProgram p = compile_unitary(u);
    ASSERT_EQ(p.steps.size(), 3u);
    EXPECT_EQ(p.steps[0].axis, RotationAxis::kZ);
    EXPECT_EQ(p.steps[1].axis, RotationAxis::kX);
    EXPECT_LT((p.matrix() - u).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(compile_unitary, handles_diagonal_and_antidiagonal) {
  for (const Matrix2& u : {Matrix2(pauli::z()), Matrix2(pauli::x()), Matrix2(pauli::y()),
                           Matrix2(z_rotation(0.3)), Matrix2(Matrix2::Identity())}) {
    EXPECT_LT((compile_unitary(u).matrix() - u).cwiseAbs().maxCoeff(), 1e-10);
  }
  EXPECT_THROW(compile_unitary(Matrix2::Identity() * 2.0), InvariantError);
}

TEST(execute, arbitrary_unitary_on_ideal_wire) {
  std::mt19937_64 rng(103);
  detect::OutcomeSampler sampler(103, 0);
  int completed = 0;
  for (int i = 0; i < 100; ++i) {
    const Matrix2 u = reference::random_unitary(rng);
    const Vector2 in = reference::random_qubit(rng);
    WireSession s(60);
    s.initialize_with_state(in);
    const auto run = execute(s, compile_unitary(u), kIdeal, sampler);
    if (run.status != WireStatus::kActive) continue;
    ++completed;
    EXPECT_NEAR(fidelity(s.corrected_vector(), u * in), 1.0, 1e-10);
  }
  EXPECT_EQ(completed, 100);
}

// Physical state of the last end photon, taken from the full Fock chain
// conditioned on the logged outcomes, agrees with the frame-corrected
// logical state.
TEST(frame, corrected_state_matches_fock_chain) {
  std::mt19937_64 rng(107);
  for (int n = 1; n <= 3; ++n) {
    const fock::FockState chain = *builder::build_ideal(n).full_state;
    for (int trial = 0; trial < 6; ++trial) {
      WireSession s(n);
      s.initialize_via_end_forced(Vector2(1, 0), trial % 2 == 0);
      std::uniform_int_distribution<int> pick(0, 2);
      for (int k = 1; k <= n; ++k) {
        const auto axis = (k + trial) % 2 ? RotationAxis::kZ : RotationAxis::kX;
        s.apply_rotation_forced(axis, 0.37 * k, kIdeal, static_cast<std::size_t>(pick(rng)));
      }
      fock::FockState bra = elements::single_photon(0, *s.log()[0].end_state);
      for (int k = 1; k <= n; ++k) {
        bra = fock::tensor(bra, s.log()[static_cast<std::size_t>(k)].site_state->to_fock(k));
      }
      const fock::FockState rest = fock::contract(bra, chain);
      const Vector2 w(rest.amplitude({1, 0}), rest.amplitude({0, 1}));
      const Vector2 corrected = s.frame().matrix().adjoint() * w;
      EXPECT_NEAR(fidelity(corrected, s.logical_state()), 1.0, 1e-12) << n << " " << trial;
    }
  }
}

TEST(frame, stays_in_pauli_group_over_long_runs) {
  detect::OutcomeSampler sampler(109, 0);
  std::mt19937_64 rng(109);
  for (int i = 0; i < 50; ++i) {
    WireSession s(40);
    s.initialize_with_state(reference::random_qubit(rng));
    while (s.remaining_sites() > 0) {
      s.apply_rotation(i % 2 ? RotationAxis::kZ : RotationAxis::kX, 0.3 * i, kIdeal, sampler);
      EXPECT_LT(s.tracking_error(), 1e-10);
    }
  }
}

TEST(teleport, ideal_wire_is_perfect) {
  std::mt19937_64 rng(113);
  detect::OutcomeSampler sampler(113, 0);
  for (int n : {0, 1, 3, 6}) {
    const Vector2 in = reference::random_qubit(rng);
    const auto r = teleport_fidelity(in, n, kIdeal, sampler);
    EXPECT_TRUE(r.success);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
    EXPECT_NEAR(r.success_probability, 1.0, 1e-12);
  }
}

TEST(teleport, physical_success_probability_is_one_third_per_site) {
  detect::OutcomeSampler sampler(127, 0);
  for (int n : {1, 2, 3}) {
    const auto r = teleport_fidelity(Vector2(kInvSqrt2, kInvSqrt2), n, kPhysical, sampler);
    EXPECT_NEAR(r.success_probability, std::pow(1.0 / 3, n), 1e-12);
    if (r.success) EXPECT_NEAR(r.fidelity, 1.0, 1e-12);
  }
}

TEST(session, protocol_errors) {
  WireSession s(1);
  detect::OutcomeSampler sampler(1, 0);
  EXPECT_THROW(s.apply_rotation(RotationAxis::kZ, 0.1, kIdeal, sampler), ProtocolError);
  EXPECT_THROW(s.correlation_vector(), ProtocolError);
  s.initialize_with_state(Vector2(1, 0));
  EXPECT_THROW(s.initialize_with_state(Vector2(1, 0)), ProtocolError);
  EXPECT_THROW(s.read_end(true), ProtocolError);
  s.transmit_forced(kIdeal, 0);
  EXPECT_THROW(s.transmit_forced(kIdeal, 0), ProtocolError);
  EXPECT_THROW(WireSession(-1), DimensionError);
  WireSession t(1);
  EXPECT_THROW(t.initialize_with_state(Vector2::Zero()), InvalidInputError);
}

}  // namespace
}  // namespace aklt::wire
