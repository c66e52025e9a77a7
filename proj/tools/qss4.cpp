// Copyright 2026 The qss4 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qss/adversary.hpp"
#include "qss/analysis.hpp"
#include "qss/protocol.hpp"

namespace {

using json = nlohmann::json;
using namespace qss;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kIoError = 3;
constexpr int kInternalError = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunSpec {
  protocol::ProtocolConfig config;
  std::string mode = "improved";
  std::string pauli = "four";
  std::string attack = "none";
  int i0 = 0;  // 0 = pick a sensible default for the attack kind
  double x = 0.0, q = 0.0, z = 0.5;
  int repetitions = 10;
  std::string out;          // empty = stdout
  std::string config_path;  // empty = no config file
};

// Feeds a config file through the subcommand's option table.  Values fill
// only options that were not given on the command line, so flags win.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  cmd->parse_from_stream(in);
}

void resolve(RunSpec& s) {
  if (s.mode == "improved") {
    s.config.mode = protocol::Mode::IMPROVED;
  } else if (s.mode == "original") {
    s.config.mode = protocol::Mode::ORIGINAL;
  } else {
    throw protocol::ConfigError("mode must be improved or original");
  }
  if (s.pauli == "four") {
    s.config.pauli_set = protocol::PauliSet::FOUR;
  } else if (s.pauli == "three012") {
    s.config.pauli_set = protocol::PauliSet::THREE_012;
  } else if (s.pauli == "three013") {
    s.config.pauli_set = protocol::PauliSet::THREE_013;
  } else {
    throw protocol::ConfigError("pauli-set must be four, three012 or three013");
  }
  s.config.validate();
  if (s.config.decoy_counts.empty()) {
    std::vector<int> resolved;
    for (int i = 2; i <= s.config.m; ++i)
      resolved.push_back(s.config.decoy_count_for(i));
    s.config.decoy_counts = std::move(resolved);
  }
  if (s.repetitions < 1)
    throw protocol::ConfigError("reps must be >= 1");
  if (s.i0 == 0)
    s.i0 = s.attack == "single-photon-substitution" ? s.config.m : 1;
  if (s.i0 < 1 || s.i0 > s.config.m)
    throw protocol::ConfigError("i0 must lie in 1..m");
}

void add_common_flags(CLI::App* cmd, RunSpec& s) {
  cmd->add_option("--m", s.config.m, "number of Alices");
  cmd->add_option("--n", s.config.n, "number of Bobs");
  cmd->add_option("--N", s.config.N, "key-block length per Bob");
  cmd->add_option("--mode", s.mode, "improved|original");
  cmd->add_option("--seed", s.config.seed, "master seed");
  cmd->add_option("--reps", s.repetitions, "number of repetitions");
  cmd->add_option("--sample-fraction", s.config.sample_fraction,
                  "fraction of received photons checked");
  cmd->add_option("--min-samples", s.config.min_samples,
                  "minimum check samples per receiver");
  cmd->add_option("--epsilon-r", s.config.epsilon_r,
                  "tolerated check error rate");
  cmd->add_flag("--filter,!--no-filter", s.config.filter_enabled,
                "wavelength filter at receivers");
  cmd->add_option("--pauli-set", s.pauli, "four|three012|three013");
  cmd->add_option("--decoys", s.config.decoy_counts,
                  "decoy counts per Alice 2..m");
  cmd->add_option("--attack", s.attack,
                  "none|epr-substitution|single-photon-substitution|trojan|"
                  "invisible-photon|fake-signal-general");
  cmd->add_option("--i0", s.i0, "dishonest Alice index (0 = auto)");
  cmd->add_option("--x", s.x, "fake-signal overlap x");
  cmd->add_option("--q", s.q, "fake-signal overlap q");
  cmd->add_option("--z", s.z, "fake-signal overlap z (t = 1 - z)");
  cmd->add_option("--out", s.out, "output file (default stdout)");
  cmd->add_option("--config", s.config_path,
                  "config file with key=value lines mirroring these flags");
}

json config_json(const protocol::ProtocolConfig& c, const std::string& pauli) {
  return json{{"m", c.m},
              {"n", c.n},
              {"N", c.N},
              {"mode",
               c.mode == protocol::Mode::ORIGINAL ? "original" : "improved"},
              {"pauli_set", pauli},
              {"decoy_counts", c.decoy_counts},
              {"sample_fraction", c.sample_fraction},
              {"min_samples", c.min_samples},
              {"epsilon_r", c.epsilon_r},
              {"filter", c.filter_enabled},
              {"seed", c.seed}};
}

json stats_json(const analysis::BatchStats& s) {
  json j{{"runs", s.runs},
         {"aborted", s.aborted},
         {"detection_rate", s.abort_rate},
         {"matched_samples", s.matched},
         {"sample_errors", s.errors},
         {"error_rate", s.error_rate},
         {"bob_matched_samples", s.bob_matched},
         {"bob_sample_errors", s.bob_errors},
         {"bob_error_rate", s.bob_error_rate},
         {"bob_signal_error_rate", s.bob_signal_error_rate},
         {"completed_runs", s.completed_runs},
         {"mean_key_len", s.mean_key_len},
         {"pgm_trials", s.pgm_trials},
         {"pgm_successes", s.pgm_successes},
         {"pns_detections", s.pns_detections},
         {"captured_probes", s.captured_probes},
         {"info_bits", s.info_bits}};
  j["key_agreement"] =
      s.completed_runs > 0
          ? static_cast<double>(s.key_match_runs) / s.completed_runs
          : 0.0;
  j["attacker_accuracy"] = s.mean_accuracy;
  return j;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file: " + path);
  f << text;
  if (!f) throw IoError("failed writing output file: " + path);
}

std::vector<protocol::RunTranscript> run_batch(const RunSpec& s) {
  std::vector<protocol::RunTranscript> out;
  out.reserve(s.repetitions);
  const analysis::OverlapParams params{s.x, s.q, s.z, 1.0 - s.z};
  for (int k = 0; k < s.repetitions; ++k) {
    protocol::ProtocolConfig c = s.config;
    c.seed = derive_seed(s.config.seed, static_cast<std::uint64_t>(k));
    auto atk = adversary::make_attacker(s.attack, s.i0, params);
    out.push_back(protocol::run(c, atk.get()));
  }
  return out;
}

int cmd_run(const RunSpec& spec) {
  RunSpec s = spec;
  resolve(s);
  if (s.attack == "fake-signal-general")
    analysis::OverlapParams{s.x, s.q, s.z, 1.0 - s.z}.validate();
  const auto transcripts = run_batch(s);
  const auto stats = analysis::empirical_report(transcripts);

  json runs = json::array();
  for (int k = 0; k < static_cast<int>(transcripts.size()); ++k) {
    const auto& t = transcripts[k];
    json checks = json::array();
    for (const auto& c : t.check_results) {
      checks.push_back(json{{"checker", c.checker},
                            {"samples", c.samples},
                            {"matched", c.matched},
                            {"errors", c.errors},
                            {"error_rate", c.error_rate},
                            {"pns_detections", c.pns_detections},
                            {"stripped_invisible", c.stripped_invisible},
                            {"aborted", c.aborted},
                            {"cause", c.cause}});
    }
    runs.push_back(json{{"repetition", k},
                        {"seed", t.config.seed},
                        {"aborted", t.aborted},
                        {"abort_step", t.abort_step},
                        {"abort_cause", t.abort_cause},
                        {"key_length", t.group_key.size()},
                        {"key", t.group_key},
                        {"predicted_key", t.predicted_key},
                        {"checks", checks},
                        {"attacker_accuracy", t.eve.key_accuracy}});
  }

  json report{{"command", "run"},
              {"config", config_json(s.config, s.pauli)},
              {"repetitions", s.repetitions},
              {"stats", stats_json(stats)},
              {"runs", runs}};
  report["attack"] =
      s.attack == "none"
          ? json(nullptr)
          : json{{"kind", s.attack},
                 {"i0", s.i0},
                 {"params", {{"x", s.x}, {"q", s.q}, {"z", s.z}}}};
  write_output(s.out, report.dump(2) + "\n");
  return kOk;
}

int cmd_bounds(const RunSpec& spec, bool epr, bool minimize, double t_in) {
  RunSpec s = spec;
  analysis::OverlapParams p{s.x, s.q, s.z, t_in < 0 ? 1.0 - s.z : t_in};
  if (epr) p = analysis::OverlapParams::epr();
  const auto r = analysis::bound_report(p);
  json report{
      {"command", "bounds"},
      {"params", {{"x", p.x}, {"q", p.q}, {"z", p.z}, {"t", p.t}}},
      {"overlap_sum_direct", r.overlap_sum_direct},
      {"overlap_sum_formula", r.overlap_sum_formula},
      {"formula_mismatch", r.formula_mismatch},
      {"at_minimizer", r.at_minimizer},
      {"p1", r.p1},
      {"p2", r.p2}};
  if (minimize) {
    const auto mr = analysis::minimize_overlap(s.config.seed);
    report["minimizer"] = json{{"x", mr.argmin.x},
                               {"q", mr.argmin.q},
                               {"z", mr.argmin.z},
                               {"t", mr.argmin.t},
                               {"min_value", mr.min_value}};
  }
  write_output(s.out, report.dump(2) + "\n");
  return kOk;
}

int cmd_sweep(const RunSpec& spec, const std::string& param,
              const std::vector<std::string>& values) {
  if (values.empty())
    throw protocol::ConfigError("sweep: empty value range");
  std::ostringstream csv;
  csv << "param,value,runs,aborted,detection_rate,error_rate,"
         "bob_signal_error_rate,mean_key_len,key_agreement,"
         "attacker_accuracy,predicted_error_lb\n";
  for (const auto& v : values) {
    RunSpec s = spec;
    if (param == "m") {
      s.config.m = std::stoi(v);
    } else if (param == "n") {
      s.config.n = std::stoi(v);
    } else if (param == "sample-fraction") {
      s.config.sample_fraction = std::stod(v);
    } else if (param == "attack") {
      s.attack = v;
      s.i0 = 0;
    } else {
      throw protocol::ConfigError(
          "sweep: param must be m, n, sample-fraction or attack");
    }
    resolve(s);
    const auto stats = analysis::empirical_report(run_batch(s));
    const double predicted =
        analysis::analytic_predictions(s.config.m).error_rate_lb;
    const double agreement =
        stats.completed_runs > 0
            ? static_cast<double>(stats.key_match_runs) / stats.completed_runs
            : 0.0;
    csv << param << "," << v << "," << stats.runs << "," << stats.aborted
        << "," << stats.abort_rate << "," << stats.error_rate << ","
        << stats.bob_signal_error_rate << "," << stats.mean_key_len << ","
        << agreement << "," << stats.mean_accuracy << "," << predicted
        << "\n";
  }
  write_output(spec.out, csv.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulator and analysis toolkit for a four-state multiparty quantum "
      "secret sharing protocol"};
  app.require_subcommand(1);

  RunSpec run_spec;
  CLI::App* run_cmd =
      app.add_subcommand("run", "execute seeded protocol repetitions");
  add_common_flags(run_cmd, run_spec);

  RunSpec bounds_spec;
  bool epr = false, minimize = false;
  double t_in = -1.0;
  CLI::App* bounds_cmd = app.add_subcommand(
      "bounds", "discrimination bounds and overlap sums");
  add_common_flags(bounds_cmd, bounds_spec);
  bounds_cmd->add_flag("--epr", epr, "use the maximally entangled point");
  bounds_cmd->add_flag("--minimize", minimize, "run the overlap minimizer");
  bounds_cmd->add_option("--t", t_in, "overlap t (default 1 - z)");

  RunSpec sweep_spec;
  std::string sweep_param = "m";
  std::vector<std::string> sweep_values;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "sweep a parameter, emit a CSV table");
  add_common_flags(sweep_cmd, sweep_spec);
  sweep_cmd->add_option("--param", sweep_param,
                        "m|n|sample-fraction|attack");
  sweep_cmd->add_option("--values", sweep_values,
                        "comma-separated cell values")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (run_cmd->parsed()) {
      apply_config_file(run_cmd, run_spec.config_path);
      return cmd_run(run_spec);
    }
    if (bounds_cmd->parsed()) {
      apply_config_file(bounds_cmd, bounds_spec.config_path);
      return cmd_bounds(bounds_spec, epr, minimize, t_in);
    }
    apply_config_file(sweep_cmd, sweep_spec.config_path);
    return cmd_sweep(sweep_spec, sweep_param, sweep_values);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const protocol::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const analysis::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}
