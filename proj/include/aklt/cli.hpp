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

// Experiment runner behind the aklt command-line tool.
//
// Config files are flat `key = value` text (keys: command, n, strategy,
// model, trials, seed, theta, output); theta takes a list `[a, b, ...]`.
// Flags override file values, which override the AKLT_SEED environment
// variable for the seed.
//
// Reports are JSON objects:
//   version, command, seed, config{...},
//   quantities[{name, empirical, reference, reference_kind, comparison,
//               tolerance, pass}],
//   logs[...], pass
// comparison "abs" passes when |empirical - reference| <= tolerance, "le"
// when empirical <= reference + tolerance.

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aklt/builder.hpp"
#include "aklt/detect.hpp"
#include "aklt/oracle.hpp"
#include "aklt/wire.hpp"

namespace aklt::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20260401;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string command;
  int n = -1;  // -1: command default
  std::string strategy = "two-arm";
  std::string model = "ideal";
  long trials = 100000;
  std::uint64_t seed = kDefaultSeed;
  std::vector<double> theta;
  std::string output;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> k = {"build", "wire-run", "teleport",
                                             "bell-stats", "validate"};
  return k;
}

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> k = {"command", "n",    "strategy", "model",
                                             "trials",  "seed", "theta",    "output"};
  return k;
}

inline builder::BuildStrategy parse_strategy(const std::string& s) {
  if (s == "one-arm") return builder::BuildStrategy::kOneArmPostselect;
  if (s == "two-arm") return builder::BuildStrategy::kTwoArmPostselect;
  if (s == "ideal") return builder::BuildStrategy::kIdealProjection;
  throw UsageError("strategy: expected one-arm, two-arm or ideal, got '" + s + "'");
}

inline wire::MeasurementModel parse_model(const std::string& s) {
  if (s == "ideal") return wire::MeasurementModel::kIdealSpin0;
  if (s == "physical") return wire::MeasurementModel::kPhysicalAnalyser;
  throw UsageError("model: expected ideal or physical, got '" + s + "'");
}

inline int default_n(const std::string& command) {
  if (command == "build") return 8;
  if (command == "wire-run") return 24;
  if (command == "teleport") return 3;
  if (command == "validate") return 3;
  return 0;
}

// Fills defaults and checks ranges; throws UsageError or LimitError.
inline ExperimentConfig validated(ExperimentConfig c) {
  const auto& cmds = commands();
  if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end()) {
    throw UsageError("command: unknown '" + c.command + "'");
  }
  if (c.n < 0) c.n = default_n(c.command);
  if (c.trials < 1) throw UsageError("trials: must be >= 1");
  parse_strategy(c.strategy);
  parse_model(c.model);
  if (c.command == "build" && c.n < 1) throw UsageError("n: build needs at least one source");
  if (c.command == "wire-run" && c.n < 1) throw UsageError("n: wire-run needs at least one site");
  if (c.command == "validate" && c.n > builder::kFullStateMaxSites) {
    throw LimitError("n: validate needs the full state, N <= " +
                     std::to_string(builder::kFullStateMaxSites));
  }
  if (c.command == "wire-run" && c.theta.empty()) c.theta = {0.7, 1.1, -0.4};
  return c;
}

struct ParseResult {
  std::optional<ExperimentConfig> config;
  int exit_code = 0;
};

// Parses argv; on help or error writes to `out`/`err` and returns no config.
inline ParseResult parse_config(int argc, const char* const* argv, std::ostream& out,
                                std::ostream& err) {
  ExperimentConfig c;
  CLI::App app{"Photonic AKLT chain simulator", "aklt"};
  app.add_option("command", c.command, "build | wire-run | teleport | bell-stats | validate")
      ->check(CLI::IsMember(commands()));
  app.add_option("--n", c.n, "sources (build), sites (wire-run, teleport, validate)");
  app.add_option("--strategy", c.strategy, "one-arm | two-arm | ideal")
      ->check(CLI::IsMember({"one-arm", "two-arm", "ideal"}));
  app.add_option("--model", c.model, "ideal | physical")
      ->check(CLI::IsMember({"ideal", "physical"}));
  app.add_option("--trials", c.trials, "Monte Carlo trials");
  app.add_option("--seed", c.seed, "64-bit seed")->envname("AKLT_SEED");
  app.add_option("--theta", c.theta, "rotation angles in radians (repeatable)")
      ->allow_extra_args(false);
  app.add_option("--output", c.output, "report file (default: stdout)");
  app.set_config("--config", "", "flat key = value file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  if (argc <= 1) {
    out << app.help();
    return {std::nullopt, 2};
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {std::nullopt, 0};
  } catch (const CLI::ConfigError& e) {
    std::string keys;
    for (const auto& k : config_keys()) keys += (keys.empty() ? "" : ", ") + k;
    err << "config error: " << e.what() << "\nvalid keys: " << keys << "\n";
    return {std::nullopt, 2};
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return {std::nullopt, 2};
  }
  if (c.command.empty()) {
    err << "usage error: command is required\n" << app.help();
    return {std::nullopt, 2};
  }
  try {
    return {validated(c), 0};
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return {std::nullopt, 2};
  }
}

struct Quantity {
  std::string name;
  double empirical = 0.0;
  double reference = 0.0;
  std::string reference_kind = "analytic";  // or "paper"
  std::string comparison = "abs";           // or "le"
  double tolerance = 0.0;

  bool pass() const {
    if (comparison == "le") return empirical <= reference + tolerance;
    return std::abs(empirical - reference) <= tolerance;
  }
};

struct Report {
  ExperimentConfig config;
  std::vector<Quantity> quantities;
  Json logs = Json::array();

  bool pass() const {
    for (const auto& q : quantities) {
      if (!q.pass()) return false;
    }
    return true;
  }

  const Quantity* find(const std::string& name) const {
    for (const auto& q : quantities) {
      if (q.name == name) return &q;
    }
    return nullptr;
  }

  Json to_json() const {
    Json j;
    j["version"] = kVersion;
    j["command"] = config.command;
    j["seed"] = config.seed;
    j["config"] = {{"n", config.n},         {"strategy", config.strategy},
                   {"model", config.model}, {"trials", config.trials},
                   {"seed", config.seed},   {"theta", config.theta}};
    Json qs = Json::array();
    for (const auto& q : quantities) {
      qs.push_back({{"name", q.name},
                    {"empirical", q.empirical},
                    {"reference", q.reference},
                    {"reference_kind", q.reference_kind},
                    {"comparison", q.comparison},
                    {"tolerance", q.tolerance},
                    {"pass", q.pass()}});
    }
    j["quantities"] = qs;
    j["logs"] = logs;
    j["pass"] = pass();
    return j;
  }
};

// Runs f(sampler, i) for every trial on worker threads; trial i always uses
// stream i, and results are stored by index.
template <typename R, typename F>
std::vector<R> run_trials(std::uint64_t seed, long trials, F f) {
  std::vector<R> results(static_cast<std::size_t>(trials));
  const long workers =
      std::max<long>(1, std::min<long>(trials, std::thread::hardware_concurrency()));
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&](long w) {
    try {
      for (long i = w; i < trials; i += workers) {
        detect::OutcomeSampler s(seed, static_cast<std::uint64_t>(i));
        results[static_cast<std::size_t>(i)] = f(s, i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (long w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

inline Json frame_json(const wire::PauliFrame& f) { return f.to_string(); }

inline Json log_json(const std::vector<wire::LogEntry>& log) {
  Json out = Json::array();
  for (const auto& e : log) {
    out.push_back({{"site", e.site},
                   {"basis", e.basis},
                   {"outcome", e.outcome},
                   {"operator", e.op_name},
                   {"probability", e.probability},
                   {"frame_before", frame_json(e.frame_before)},
                   {"frame_after", frame_json(e.frame_after)}});
  }
  return out;
}

inline Json record_json(const builder::ChainBuildRecord& r) {
  Json events = Json::array();
  for (const auto& e : r.outcome_log) {
    events.push_back({{"junction", e.junction},
                      {"counts", builder::to_string(e.outcome)},
                      {"probability", e.probability},
                      {"success", e.success}});
  }
  return {{"sources_used", r.sources_used},   {"sites_succeeded", r.sites_succeeded},
          {"failure_events", r.failure_events}, {"final_length", r.final_length},
          {"truncated", r.truncated},         {"outcome_log", events}};
}

// Haar-random qubit from two uniforms.
inline Vector2 random_qubit(detect::OutcomeSampler& s) {
  const double c = 1.0 - 2.0 * s.uniform();
  const double phi = 2.0 * kPi * s.uniform();
  const double theta = std::acos(c);
  return Vector2(std::cos(theta / 2.0), std::exp(kI * phi) * std::sin(theta / 2.0));
}

namespace detail {

struct BuildTrial {
  int junctions = 0;
  int successes = 0;
  int final_length = 0;
};

inline Report run_build(const ExperimentConfig& c) {
  Report rep{c, {}, Json::array()};
  const auto strategy = parse_strategy(c.strategy);
  const auto trials = run_trials<BuildTrial>(c.seed, c.trials, [&](auto& s, long) {
    builder::OpticalBuilder b(c.n, strategy, false);
    while (!b.done()) b.commit_sampled(s);
    const auto bundle = b.finish();
    return BuildTrial{static_cast<int>(bundle.record.outcome_log.size()),
                      bundle.record.sites_succeeded, bundle.record.final_length};
  });
  long junctions = 0;
  long successes = 0;
  double length = 0.0;
  for (const auto& t : trials) {
    junctions += t.junctions;
    successes += t.successes;
    length += t.final_length;
  }
  length /= static_cast<double>(c.trials);
  const double rate = junctions ? static_cast<double>(successes) / junctions : 0.0;
  const int n = c.n;
  switch (strategy) {
    case builder::BuildStrategy::kOneArmPostselect: {
      rep.quantities.push_back({"per_site_success", rate, 3.0 / 8.0, "paper", "abs", 0.01});
      double expect = 0.0;
      double term = 1.0;
      for (int k = 1; k < n; ++k) expect += (term *= 3.0 / 8.0);
      rep.quantities.push_back({"mean_final_length", length, expect, "analytic", "abs", 0.05});
      break;
    }
    case builder::BuildStrategy::kTwoArmPostselect:
      rep.quantities.push_back({"per_site_success", rate, 3.0 / 4.0, "paper", "abs", 0.01});
      rep.quantities.push_back(
          {"mean_final_length", length, 3.0 * n / 4.0 - 1.0, "paper", "abs", 0.05});
      rep.quantities.push_back({"mean_final_length_per_junction", length,
                                3.0 * (n - 1) / 4.0, "analytic", "abs", 0.05});
      break;
    case builder::BuildStrategy::kIdealProjection:
      rep.quantities.push_back({"per_site_success", rate, 1.0, "analytic", "abs", 0.0});
      rep.quantities.push_back(
          {"mean_final_length", length, static_cast<double>(n - 1), "analytic", "abs", 0.0});
      break;
  }
  detect::OutcomeSampler s(c.seed, 0);
  rep.logs.push_back(record_json(builder::build_optical(n, strategy, s, false).record));
  return rep;
}

struct WireTrial {
  int end_h = 0;
  int init_attempts = 0;
  int init_successes = 0;
  int rotation_attempts = 0;
  int rotation_successes = 0;
  int rotation_retries = 0;
  int collapses = 0;
  double tracking = 0.0;
  double readout_law = 0.0;
};

inline Report run_wire(const ExperimentConfig& c) {
  Report rep{c, {}, Json::array()};
  const auto model = parse_model(c.model);
  auto trial = [&](detect::OutcomeSampler& s, std::vector<wire::LogEntry>* log) {
    WireTrial t;
    wire::WireSession end_session(c.n);
    t.end_h = end_session.initialize_via_end(elements::polarization::h(), s) ? 1 : 0;

    wire::WireSession w(c.n);
    const auto init = w.initialize_via_site(s);
    t.init_attempts = init.attempts;
    t.init_successes = init.initialized ? 1 : 0;
    if (init.initialized) {
      for (std::size_t i = 0; i < c.theta.size(); ++i) {
        const auto axis = i % 2 == 0 ? wire::RotationAxis::kZ : wire::RotationAxis::kX;
        const auto r = w.apply_rotation(axis, c.theta[i], model, s);
        t.rotation_attempts += r.attempts;
        t.rotation_successes += r.applied ? 1 : 0;
        if (r.status == wire::WireStatus::kCollapsed) {
          ++t.collapses;
          t.rotation_retries += r.attempts - 1;
        } else {
          t.rotation_retries += r.attempts - (r.applied ? 1 : 0);
        }
        if (!r.applied) break;
        t.tracking = std::max(t.tracking, w.tracking_error());
      }
      if (w.status() == wire::WireStatus::kActive) {
        const auto p = w.readout_probabilities();
        const Vector2 l = w.logical_state().normalized();
        t.readout_law = std::max(std::abs(p.bit0 - std::norm(l(0))),
                                 std::abs(p.bit1 - std::norm(l(1))));
        w.readout(s);
      }
    }
    if (log) *log = w.log();
    return t;
  };
  const auto trials = run_trials<WireTrial>(
      c.seed, c.trials, [&](auto& s, long) { return trial(s, nullptr); });
  WireTrial sum;
  for (const auto& t : trials) {
    sum.end_h += t.end_h;
    sum.init_attempts += t.init_attempts;
    sum.init_successes += t.init_successes;
    sum.rotation_attempts += t.rotation_attempts;
    sum.rotation_successes += t.rotation_successes;
    sum.rotation_retries += t.rotation_retries;
    sum.collapses += t.collapses;
    sum.tracking = std::max(sum.tracking, t.tracking);
    sum.readout_law = std::max(sum.readout_law, t.readout_law);
  }
  auto ratio = [](double a, double b) { return b > 0 ? a / b : 0.0; };
  rep.quantities.push_back({"end_initialization_outcome_H",
                            ratio(sum.end_h, static_cast<double>(c.trials)), 0.5,
                            "analytic", "abs", 0.01});
  rep.quantities.push_back({"site_initialization_success_per_attempt",
                            ratio(sum.init_successes, sum.init_attempts), 2.0 / 3.0,
                            "paper", "abs", 0.01});
  if (model == wire::MeasurementModel::kIdealSpin0) {
    rep.quantities.push_back({"rotation_retry_rate",
                              ratio(sum.rotation_retries, sum.rotation_attempts),
                              1.0 / 3.0, "paper", "abs", 0.01});
  } else {
    rep.quantities.push_back({"rotation_success_per_attempt",
                              ratio(sum.rotation_successes, sum.rotation_attempts),
                              1.0 / 3.0, "paper", "abs", 0.01});
  }
  rep.quantities.push_back(
      {"max_tracking_error", sum.tracking, 0.0, "analytic", "abs", 1e-10});
  rep.quantities.push_back(
      {"max_readout_law_deviation", sum.readout_law, 0.0, "paper", "abs", 1e-10});
  std::vector<wire::LogEntry> log;
  detect::OutcomeSampler s(c.seed, 0);
  trial(s, &log);
  rep.logs.push_back(log_json(log));
  return rep;
}

struct TeleportTrial {
  int success = 0;
  double infidelity = 0.0;
  double exact = 0.0;
};

inline Report run_teleport(const ExperimentConfig& c) {
  Report rep{c, {}, Json::array()};
  const auto model = parse_model(c.model);
  const auto trials = run_trials<TeleportTrial>(c.seed, c.trials, [&](auto& s, long) {
    const Vector2 in = random_qubit(s);
    const auto r = wire::teleport_fidelity(in, c.n, model, s);
    return TeleportTrial{r.success ? 1 : 0, r.success ? 1.0 - r.fidelity : 0.0,
                         r.success_probability};
  });
  double succ = 0.0;
  double worst = 0.0;
  double exact = 0.0;
  for (const auto& t : trials) {
    succ += t.success;
    worst = std::max(worst, t.infidelity);
    exact += t.exact;
  }
  succ /= static_cast<double>(c.trials);
  exact /= static_cast<double>(c.trials);
  const double expect =
      model == wire::MeasurementModel::kIdealSpin0 ? 1.0 : std::pow(1.0 / 3.0, c.n);
  const char* kind = model == wire::MeasurementModel::kIdealSpin0 ? "analytic" : "paper";
  rep.quantities.push_back({"success_rate", succ, expect, kind, "abs", 0.005});
  rep.quantities.push_back({"exact_success_probability", exact, expect, kind, "abs", 1e-12});
  rep.quantities.push_back({"max_infidelity", worst, 0.0, "paper", "abs", 1e-10});
  detect::OutcomeSampler s(c.seed, 0);
  rep.logs.push_back(log_json(wire::teleport_fidelity(random_qubit(s), c.n, model, s).log));
  return rep;
}

inline detect::BellIdentification expected_identification(detect::BellState b) {
  switch (b) {
    case detect::BellState::kPhiPlus: return detect::BellIdentification::kPhiPlus;
    case detect::BellState::kPhiMinus: return detect::BellIdentification::kPhiMinus;
    case detect::BellState::kPsiPlus: return detect::BellIdentification::kPsiPlus;
    case detect::BellState::kPsiMinus: return detect::BellIdentification::kSinglet;
  }
  return detect::BellIdentification::kInconclusive;
}

// Analyser plates Z(a) X(b) on a 10 x 10 grid.
inline std::vector<detect::AnalyserSetting> setting_grid() {
  std::vector<detect::AnalyserSetting> out;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const Matrix2 jones = z_rotation(2.0 * kPi * i / 10.0) * x_rotation(kPi * j / 10.0);
      out.push_back(detect::AnalyserSetting::from_jones(jones));
    }
  }
  return out;
}

inline double grid_max_identification() {
  const auto mixed = detect::maximally_mixed_bell(0, 1);
  double worst = 0.0;
  for (const auto& setting : setting_grid()) {
    worst = std::max(worst, detect::bell_identification_probability(
                                detect::innsbruck_bell_statistics(mixed, {setting})));
  }
  return worst;
}

inline Report run_bell(const ExperimentConfig& c) {
  Report rep{c, {}, Json::array()};
  const std::array<detect::BellState, 4> inputs = {
      detect::BellState::kPhiPlus, detect::BellState::kPhiMinus,
      detect::BellState::kPsiPlus, detect::BellState::kPsiMinus};
  const auto settings = detect::identity_basis_settings();
  std::vector<detect::Distribution<detect::BellIdentification>> table;
  for (auto b : inputs) {
    for (const auto& setting : settings) {
      table.push_back(detect::innsbruck_bell_statistics(
          {{1.0, detect::bell_state(b, 0, 1)}}, {setting}));
    }
  }
  struct BellTrial {
    int singlet = 0;
    int correct = 0;
  };
  const auto trials = run_trials<BellTrial>(c.seed, c.trials, [&](auto& s, long) {
    const auto bi = std::min<std::size_t>(3, static_cast<std::size_t>(4 * s.uniform()));
    const auto si = std::min<std::size_t>(2, static_cast<std::size_t>(3 * s.uniform()));
    const auto id = detect::sample(table[bi * 3 + si], s);
    BellTrial t;
    t.singlet = id == detect::BellIdentification::kSinglet ? 1 : 0;
    t.correct = id == expected_identification(inputs[bi]) ? 1 : 0;
    return t;
  });
  double singlet = 0.0;
  double correct = 0.0;
  for (const auto& t : trials) {
    singlet += t.singlet;
    correct += t.correct;
  }
  const double n = static_cast<double>(c.trials);
  rep.quantities.push_back({"singlet_identification", singlet / n, 0.25, "paper", "abs", 0.005});
  rep.quantities.push_back({"total_identification", correct / n, 0.5, "paper", "abs", 0.005});
  rep.quantities.push_back(
      {"grid_max_identification", grid_max_identification(), 0.5, "paper", "le", 1e-9});
  return rep;
}

inline Report run_validate(const ExperimentConfig& c) {
  Report rep{c, {}, Json::array()};
  const int n = c.n;
  const auto bundle = builder::build_ideal(n);
  const auto cv = oracle::cross_validate(bundle, 1e-10);
  rep.quantities.push_back(
      {"max_amplitude_deviation", cv.max_amplitude_deviation, 0.0, "analytic", "abs", 1e-10});
  rep.quantities.push_back(
      {"max_marginal_deviation", cv.max_marginal_deviation, 0.0, "analytic", "abs", 1e-10});
  rep.quantities.push_back({"max_conditional_deviation", cv.max_conditional_deviation, 0.0,
                            "analytic", "abs", 1e-10});
  const MatrixX p2 = oracle::spin2_projector();
  const MatrixX pe = oracle::end_projector();
  rep.quantities.push_back({"spin2_polynomial_vs_spectral",
                            (p2 - oracle::spin2_projector_spectral()).cwiseAbs().maxCoeff(),
                            0.0, "paper", "abs", 1e-12});
  rep.quantities.push_back({"spin2_trace", p2.trace().real(), 5.0, "analytic", "abs", 1e-12});
  rep.quantities.push_back({"end_projector_vs_spectral",
                            (pe - oracle::end_projector_spectral()).cwiseAbs().maxCoeff(),
                            0.0, "analytic", "abs", 1e-12});
  rep.quantities.push_back({"end_projector_trace", pe.trace().real(), 4.0, "analytic", "abs",
                            1e-12});
  if (n >= 1) {
    const auto h = oracle::build_hamiltonian(n);
    const VectorX v = mps::state_vector(bundle.mps_view);
    double worst = 0.0;
    for (double e : oracle::term_expectations(h, v)) worst = std::max(worst, std::abs(e));
    rep.quantities.push_back({"max_term_energy", worst, 0.0, "paper", "abs", 1e-10});
    if (n <= oracle::kEigensolveMaxSites) {
      const auto g = oracle::ground_state(h, v);
      rep.quantities.push_back(
          {"smallest_eigenvalue", g.smallest_eigenvalue, 0.0, "paper", "abs", 1e-10});
      rep.quantities.push_back({"kernel_dimension", static_cast<double>(g.kernel_dimension),
                                1.0, "analytic", "abs", 0.0});
      rep.quantities.push_back(
          {"kernel_fidelity", g.kernel_fidelity, 1.0, "analytic", "abs", 1e-8});
      rep.quantities.push_back(
          {"rotation_commutator", oracle::rotation_commutator(h), 0.0, "paper", "abs", 1e-10});
      rep.quantities.push_back(
          {"bulk_kernel_dimension",
           static_cast<double>(oracle::kernel_dimension(oracle::build_bulk_hamiltonian(n))),
           n >= 2 ? 4.0 : 3.0, n >= 2 ? "paper" : "analytic", "abs", 0.0});
    }
  }
  rep.logs.push_back({{"worst_label", cv.worst_label}, {"conditional_runs", cv.conditional_runs}});
  return rep;
}

}  // namespace detail

inline Report run(const ExperimentConfig& config) {
  const ExperimentConfig c = validated(config);
  if (c.command == "build") return detail::run_build(c);
  if (c.command == "wire-run") return detail::run_wire(c);
  if (c.command == "teleport") return detail::run_teleport(c);
  if (c.command == "bell-stats") return detail::run_bell(c);
  return detail::run_validate(c);
}

// Full tool entry point; returns the process exit code.
inline int main_entry(int argc, const char* const* argv, std::ostream& out,
                      std::ostream& err) {
  const auto parsed = parse_config(argc, argv, out, err);
  if (!parsed.config) return parsed.exit_code;
  try {
    const Report rep = run(*parsed.config);
    const std::string text = rep.to_json().dump(2) + "\n";
    if (parsed.config->output.empty()) {
      out << text;
    } else {
      std::ofstream f(parsed.config->output);
      if (!f) {
        err << "cannot write " << parsed.config->output << "\n";
        return 2;
      }
      f << text;
    }
    return rep.pass() ? 0 : 1;
  } catch (const LimitError& e) {
    err << "limit error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace aklt::cli
