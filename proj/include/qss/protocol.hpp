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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qss/qcore.hpp"

namespace qss::protocol {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct LengthError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EncodingDomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct StateError : std::logic_error {
  using std::logic_error::logic_error;
};
struct IncompleteError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Raised by a check step when the protocol must stop. execute() catches
/// it and marks the transcript.
struct AbortSignal : std::runtime_error {
  AbortSignal(std::string step_, std::string cause_)
      : std::runtime_error(step_ + ": " + cause_),
        step(std::move(step_)),
        cause(std::move(cause_)) {}
  std::string step;
  std::string cause;
};

enum class Mode { ORIGINAL, IMPROVED };
enum class PauliSet { FOUR, THREE_012, THREE_013 };

struct ProtocolConfig {
  int m = 2;  // Alices
  int n = 2;  // Bobs
  int N = 32;  // key-block length per Bob
  std::vector<int> decoy_counts;  // per Alice 2..m; empty = defaults
  double sample_fraction = 0.2;
  int min_samples = 16;
  double epsilon_r = 0.0;
  std::uint64_t seed = 1;
  PauliSet pauli_set = PauliSet::FOUR;
  bool filter_enabled = true;
  Mode mode = Mode::IMPROVED;

  void validate() const;  // throws ConfigError
  /// Decoys inserted by Alice i (2..m): configured value, or the default
  /// min(m^i - m^(i-1), 4 * min_samples).
  int decoy_count_for(int i) const;
  /// Allowed sigma indices for Alice i >= 2 in this mode.
  std::vector<int> pauli_alphabet() const;
};

enum class PhotonKind { SINGLE, ENTANGLED_HALF, MULTI, INVISIBLE };
enum class Origin { SIGNAL, DECOY };

/// A wire-level stream element. SINGLE photons in honest runs stay on the
/// BB84 orbit and are tracked exactly by LabelState. ENTANGLED_HALF refers
/// into the pair registry. MULTI is a Trojan bundle (signal + probes);
/// INVISIBLE is a probe outside the detectors' band.
struct Photon {
  int uid = -1;
  PhotonKind kind = PhotonKind::SINGLE;
  LabelState label;
  int pair_id = -1;
  std::vector<Photon> inner;
  Origin origin = Origin::SIGNAL;
  int key_index = -1;  // 0..nN-1 for signal slots, -1 for decoys/probes
  int creator = 1;     // party that prepared this photon
};

struct PairRecord {
  BipartiteState state;
  bool collapsed = false;
  Basis basis = Basis::Z;
  int outcome = -1;
  Eigen::VectorXcd residual0;  // unnormalized E residuals of the A measurement
  Eigen::VectorXcd residual1;
};

struct PairRegistry {
  std::vector<PairRecord> pairs;
  int add(BipartiteState s) {
    pairs.push_back(PairRecord{std::move(s)});
    return static_cast<int>(pairs.size()) - 1;
  }
  PairRecord& at(int id) { return pairs.at(id); }
  const PairRecord& at(int id) const { return pairs.at(id); }
};

struct CheckResult {
  int checker = 0;  // Alice index 2..m, or m + l for Bob l
  int samples = 0;
  int matched = 0;
  int errors = 0;
  // Subset of matched/errors on photons prepared by Alice 1, i.e. the
  // fully encoded positions the analytic error rates describe.
  int signal_matched = 0;
  int signal_errors = 0;
  double error_rate = 0.0;
  int pns_detections = 0;
  int stripped_invisible = 0;
  bool aborted = false;
  std::string cause;
};

struct EveRecord {
  std::string kind = "none";
  int attacker_index = 0;
  std::vector<int> key_guess;
  double key_accuracy = -1.0;  // -1 when no completed key to compare
  int captured_probes = 0;
  int info_bits = 0;
  int enquiry_answers = 0;
  int enquiry_guesses = 0;
  int pgm_trials = 0;
  int pgm_successes = 0;
  int composite_recovered = 0;  // positions whose composite op was identified
  int composite_correct = 0;
};

struct Announcement {
  std::string step;
  int party = 0;
  std::string payload;
};

struct RunTranscript {
  ProtocolConfig config;
  std::vector<Announcement> announcements;
  std::vector<CheckResult> check_results;
  std::vector<std::pair<std::string, int>> photon_counts;
  bool aborted = false;
  std::string abort_step;
  std::string abort_cause;
  std::vector<std::pair<int, int>> bob_outcomes;  // (key_index, d) sorted
  std::vector<int> group_key;
  std::vector<int> predicted_key;
  EveRecord eve;

  std::string to_string() const;  // canonical dump, used for determinism
};

/// Per-party bookkeeping: (a, b) per photon uid. For the creator of a
/// photon the entry is the prepared state; for later parties it is the
/// applied (sigma, H) pair.
struct PartyRecord {
  std::map<int, std::pair<int, int>> ab;
  std::set<int> created_decoys;
};

class Run;

struct EnquiryTurn {
  int checker = 0;
  int uid = -1;
  int creator = 1;
  bool is_last = false;
  // (party, (a, b)) announcements already made for this sample, in order.
  const std::vector<std::pair<int, std::pair<int, int>>>& earlier;
};

/// Attack strategy hooks. The engine calls act_on_stream at the
/// attacker's own hop (instead of her honest step and self-check),
/// intercept before each hand-off, and answer_enquiry for her slot of a
/// random-sequential-order enquiry.
class Attacker {
 public:
  virtual ~Attacker() = default;
  virtual std::string kind() const = 0;
  virtual int index() const = 0;
  virtual void act_on_stream(Run& run, std::vector<Photon>& stream) = 0;
  virtual void intercept(Run&, int /*to_party*/, std::vector<Photon>&) {}
  virtual std::pair<int, int> answer_enquiry(Run& run,
                                             const EnquiryTurn& turn) = 0;
  /// Final classical comparison: the value the attacker claims for her
  /// encoding bit a at this position (default: her committed record).
  virtual int announce_check_a(Run&, int /*uid*/, int default_a) {
    return default_a;
  }
  virtual void finalize(Run&, RunTranscript&) {}

  EveRecord record;
};

/// Uniform random order in which parties answer an enquiry.
std::vector<int> enquiry_order(const std::vector<int>& parties, Rng& rng);

/// Replays announced encodings: entries sorted by party, first entry is
/// the prepared state, later entries are (sigma_a, H^b) applications.
LabelState replay_label(
    const std::vector<std::pair<int, std::pair<int, int>>>& entries);

class Run {
 public:
  explicit Run(ProtocolConfig cfg, Attacker* attacker = nullptr);

  RunTranscript execute();

  // --- individual protocol operations (also exercised by tests) ---
  static std::vector<Photon> alice_initial_block(const std::vector<int>& a1,
                                                 const std::vector<int>& b1);
  void alice_encode(int i, std::vector<Photon>& photons,
                    const std::vector<int>& a, const std::vector<int>& b);
  std::vector<int> insert_decoys(int i, std::vector<Photon>& photons,
                                 int count);
  CheckResult hop_check(int i, std::vector<Photon>& photons);
  CheckResult bob_arrival_check(int l, std::vector<Photon>& photons);
  std::vector<std::pair<int, int>> final_measure_bob(
      int l, std::vector<Photon>& photons);
  static std::vector<int> extract_key(const RunTranscript& t);
  std::vector<int> predicted_key() const;

  /// Honest behavior of Alice i's sending step (encode + decoys, or the
  /// initial block for i == 1); used by attackers that piggyback on an
  /// otherwise honest hop.
  void honest_send_step(int i, std::vector<Photon>& stream);

  /// One PNS sampling event on a photon: true = two-photon detection.
  static bool pns_detects(const Photon& p, Rng& rng);

  /// Fresh stream-unique photon id; also used by attackers that inject
  /// their own photons.
  int allocate_uid() { return next_uid_++; }

  Rng& rng() { return rng_; }
  PairRegistry& registry() { return registry_; }
  const ProtocolConfig& cfg() const { return cfg_; }
  std::vector<PartyRecord>& records() { return records_; }
  const std::vector<PartyRecord>& records() const { return records_; }
  RunTranscript& transcript() { return transcript_; }

 private:
  CheckResult check_step(int checker, int announce_limit,
                         std::vector<Photon>& photons,
                         const std::string& step_name);
  int measure_sampled(Photon& p, Basis basis, CheckResult& cr,
                      const std::string& step_name);
  std::vector<std::pair<int, std::pair<int, int>>> run_enquiry(
      int checker, int announce_limit, const Photon& p);
  void distribute_to_bobs(std::vector<Photon>& stream,
                          std::vector<std::vector<Photon>>& bobs);
  void announce_b_strings();
  void run_original(std::vector<Photon>& stream);
  void run_improved(std::vector<Photon>& stream);
  void final_classical_check();
  void note_count(const std::string& tag, std::size_t count);

  ProtocolConfig cfg_;
  Attacker* attacker_ = nullptr;
  Rng rng_;
  PairRegistry registry_;
  std::vector<PartyRecord> records_;  // index 0 unused; 1..m
  RunTranscript transcript_;
  int next_uid_ = 0;
};

/// Convenience wrapper: configure, execute, return the transcript.
RunTranscript run(const ProtocolConfig& cfg, Attacker* attacker = nullptr);

}  // namespace qss::protocol
