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

#include <stdexcept>
#include <vector>

#include "qss/protocol.hpp"
#include "qss/qcore.hpp"

namespace qss::analysis {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptyBatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Scalar parameterization of a general fake-signal pair:
///   x = <a|b> + <b|a>,  q = (<a|b> - <b|a>)/i,  z = <a|a>,  t = <b|b>.
struct OverlapParams {
  double x = 0.0;
  double q = 0.0;
  double z = 0.5;
  double t = 0.5;

  static OverlapParams epr() { return {0.0, 0.0, 0.5, 0.5}; }

  /// Throws unless z + t = 1 and x^2 + q^2 <= 4 z t (Cauchy-Schwarz).
  void validate() const;
  bool feasible() const;
};

/// Attacker kets |alpha>, |beta> with <a|a> + <b|b> = 1; the wire-level
/// realization behind OverlapParams.
struct FakeSignalParams {
  Eigen::VectorXcd alpha;
  Eigen::VectorXcd beta;

  OverlapParams overlaps() const;
  static FakeSignalParams epr();
  /// Canonical S=2 realization of the given scalars.
  static FakeSignalParams from_overlaps(const OverlapParams& p);
};

/// The eight composed-operation hypothesis states
/// sigma_0..sigma_3 |phi>, H sigma_0..sigma_3 |phi>, in that order.
std::vector<BipartiteState> eight_states(const FakeSignalParams& fp);

Eigen::MatrixXcd gram(const std::vector<BipartiteState>& states);

/// Sum over ordered pairs i != j of |<phi_i|phi_j>| via the Gram matrix.
double overlap_sum_direct(const std::vector<BipartiteState>& states);
double overlap_sum_direct(const OverlapParams& p);

/// Literal evaluation of the closed-form overlap sum
///   8|q| + 8|z-t| + 8|x| + (8/sqrt2)|z-t+x| + (8/sqrt2)|z-t-x|
///   + (16/sqrt2) sqrt(1+q^2).
double overlap_sum_formula(const OverlapParams& p);

/// Unambiguous-identification bound over the 8 uniformly weighted states:
/// 1 - (1/(M-1)) sum sqrt(p_i p_j)|<phi_i|phi_j>| with M = 8, p = 1/8.
double p1_bound(const OverlapParams& p);

/// Conclusive set-classification bound over the four two-state sets
/// {phi_k, phi_{k+4}}; cross-set pairs only, eta = 1/8, N = 8, m_i = 2.
double p2_bound(const OverlapParams& p);

struct BoundReport {
  OverlapParams params;
  double overlap_sum_direct = 0.0;
  double overlap_sum_formula = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  bool formula_mismatch = false;  // direct Gram is authoritative
  bool at_minimizer = false;
};

BoundReport bound_report(const OverlapParams& p);

struct MinimizeResult {
  OverlapParams argmin;
  double min_value = 0.0;
};

/// Grid refinement plus Nelder-Mead over {z in [0,1], x^2+q^2 <= 4z(1-z)}.
MinimizeResult minimize_overlap(std::uint64_t seed = 0);

struct Predictions {
  double error_rate_lb = 0.0;   // (m-1)/(2m)
  double not_last_prob = 0.0;   // (m-1)/m
};

Predictions analytic_predictions(int m);

/// Aggregate Monte Carlo statistics over a batch of transcripts.
struct BatchStats {
  int runs = 0;
  int aborted = 0;
  double abort_rate = 0.0;
  long long matched = 0;  // basis-matched samples, all checks
  long long errors = 0;
  double error_rate = 0.0;
  long long bob_matched = 0;  // arrival checks only (checker > m)
  long long bob_errors = 0;
  double bob_error_rate = 0.0;
  long long bob_signal_matched = 0;  // arrival checks, Alice-1 photons only
  long long bob_signal_errors = 0;
  double bob_signal_error_rate = 0.0;
  double mean_key_len = 0.0;
  int key_match_runs = 0;  // completed runs with predicted == actual key
  int completed_runs = 0;
  double mean_accuracy = -1.0;  // over runs reporting an attack accuracy
  int accuracy_runs = 0;
  long long pgm_trials = 0;
  long long pgm_successes = 0;
  long long pns_detections = 0;
  long long captured_probes = 0;
  long long info_bits = 0;
};

/// Throws EmptyBatchError on an empty input.
BatchStats empirical_report(
    const std::vector<protocol::RunTranscript>& transcripts);

}  // namespace qss::analysis
