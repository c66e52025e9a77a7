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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qss/analysis.hpp"
#include "qss/protocol.hpp"
#include "qss/qcore.hpp"

namespace qss::adversary {

struct SpanError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Parity class of a product of sigma_1 and H factors: the product acts
/// on |psi_ab> as a -> a ^ a_parity, b -> b ^ b_parity (up to phase).
struct CompositeClass {
  int a_parity = 0;
  int b_parity = 0;
  friend bool operator==(const CompositeClass&, const CompositeClass&) =
      default;
};

/// Measurement of an attacker-held pair in the orthonormal basis
/// {Phi+, Psi-, (Phi- + Psi+)/sqrt2, (Phi- - Psi+)/sqrt2}: the orbit of
/// Phi+ under products of sigma_1 and H. Requires dim_e == 2 and a state
/// on one of the four rays; otherwise SpanError.
CompositeClass bell_discriminate(const BipartiteState& bs);

/// Matrix of the composed encodings H^b sigma_a, applied left-to-right.
Mat2 composite_matrix(const std::vector<std::pair<int, int>>& gates);

/// Index j in 0..7 of the operation sigma_{j%4} (j < 4) or
/// H sigma_{j-4} (j >= 4) equal to u up to a global phase; -1 if none.
int equivalent_op_index(const Mat2& u);

/// Square-root (pretty good) measurement over equally likely pure-state
/// hypotheses, plus a completeness element off their common support.
class Pgm {
 public:
  explicit Pgm(const std::vector<BipartiteState>& hypotheses);

  int num_hypotheses() const { return static_cast<int>(psi_.size()); }
  /// POVM element j (j == num_hypotheses() gives the complement).
  const Eigen::MatrixXcd& element(int j) const { return povm_.at(j); }
  bool is_complete(double tol = 1e-9) const;
  /// Average success probability over uniform priors.
  double success_probability() const;
  /// Outcome probability of element j on the given state.
  double probability(const BipartiteState& actual, int j) const;
  /// Samples an outcome; num_hypotheses() means "off support".
  int sample(const BipartiteState& actual, Rng& rng) const;

 private:
  std::vector<Eigen::VectorXcd> psi_;
  std::vector<Eigen::MatrixXcd> povm_;
};

// ---------------------------------------------------------------------------
// Attack strategies

class AttackerBase : public protocol::Attacker {
 public:
  explicit AttackerBase(int i0) : i0_(i0) {}
  int index() const override { return i0_; }

 protected:
  int i0_;
};

/// Dishonest Alice i0 replaces every photon through her station with her
/// half of a maximally entangled pair and keeps the other half.
class EprSubstitutionAttack : public AttackerBase {
 public:
  explicit EprSubstitutionAttack(int i0 = 1) : AttackerBase(i0) {}

  std::string kind() const override { return "epr-substitution"; }
  void act_on_stream(protocol::Run& run,
                     std::vector<protocol::Photon>& stream) override;
  void intercept(protocol::Run& run, int to_party,
                 std::vector<protocol::Photon>& stream) override;
  std::pair<int, int> answer_enquiry(protocol::Run& run,
                                     const protocol::EnquiryTurn& t) override;
  int announce_check_a(protocol::Run& run, int uid, int default_a) override;
  void finalize(protocol::Run& run, protocol::RunTranscript& t) override;

 private:
  std::map<int, int> pair_of_;                  // uid -> registry id
  std::map<int, std::pair<int, int>> claimed_;  // uid -> committed (a, b)
  std::map<int, LabelState> sent_;              // uid -> substituted single
  std::map<int, CompositeClass> recovered_;     // uid -> discriminated class
};

/// Generalization with injected pairs |0>|alpha> + |1>|beta>; uses a
/// minimum-error (Helstrom) guess on the retained half when answering
/// last, and the square-root measurement when intercepting before the
/// Bobs in IMPROVED mode.
class FakeSignalGeneralAttack : public AttackerBase {
 public:
  explicit FakeSignalGeneralAttack(
      analysis::OverlapParams params = analysis::OverlapParams::epr(),
      int i0 = 1)
      : AttackerBase(i0), params_(params) {}

  std::string kind() const override { return "fake-signal-general"; }
  void act_on_stream(protocol::Run& run,
                     std::vector<protocol::Photon>& stream) override;
  void intercept(protocol::Run& run, int to_party,
                 std::vector<protocol::Photon>& stream) override;
  std::pair<int, int> answer_enquiry(protocol::Run& run,
                                     const protocol::EnquiryTurn& t) override;
  void finalize(protocol::Run& run, protocol::RunTranscript& t) override;

 private:
  analysis::OverlapParams params_;
  std::map<int, int> pair_of_;
  std::map<int, std::pair<int, int>> claimed_;
  std::map<int, LabelState> sent_;  // post-interception substitutes
};

/// Dishonest Alice i0 = m stores the incoming photons and forwards fresh
/// random BB84 states in their place.
class SinglePhotonSubstitutionAttack : public AttackerBase {
 public:
  explicit SinglePhotonSubstitutionAttack(int i0) : AttackerBase(i0) {}

  std::string kind() const override { return "single-photon-substitution"; }
  void act_on_stream(protocol::Run& run,
                     std::vector<protocol::Photon>& stream) override;
  std::pair<int, int> answer_enquiry(protocol::Run& run,
                                     const protocol::EnquiryTurn& t) override;
  void finalize(protocol::Run& run, protocol::RunTranscript& t) override;

 private:
  std::map<int, protocol::Photon> stored_;      // originals, by uid
  std::map<int, std::pair<int, int>> sent_;     // substituted (a*, b*)
  std::map<int, std::pair<int, int>> claimed_;  // committed announcements
};

/// Alice i0 behaves honestly but attaches a probe photon to each signal;
/// later encoders act on both, and she reads the probes off before the
/// Bobs. Photon-number splitting at the next receiver catches each
/// sampled bundle with probability 1/2.
class TrojanAttack : public AttackerBase {
 public:
  explicit TrojanAttack(int i0 = 1) : AttackerBase(i0) {}

  std::string kind() const override { return "trojan"; }
  void act_on_stream(protocol::Run& run,
                     std::vector<protocol::Photon>& stream) override;
  void intercept(protocol::Run& run, int to_party,
                 std::vector<protocol::Photon>& stream) override;
  std::pair<int, int> answer_enquiry(protocol::Run& run,
                                     const protocol::EnquiryTurn& t) override;
};

/// Alice i0 behaves honestly but interleaves out-of-band probe photons
/// that honest detectors do not register; wavelength filters strip them
/// before they acquire correlations.
class InvisibleAttack : public AttackerBase {
 public:
  explicit InvisibleAttack(int i0 = 1) : AttackerBase(i0) {}

  std::string kind() const override { return "invisible-photon"; }
  void act_on_stream(protocol::Run& run,
                     std::vector<protocol::Photon>& stream) override;
  void intercept(protocol::Run& run, int to_party,
                 std::vector<protocol::Photon>& stream) override;
  std::pair<int, int> answer_enquiry(protocol::Run& run,
                                     const protocol::EnquiryTurn& t) override;
};

/// Factory used by the command-line driver. Known names:
/// none, epr-substitution, single-photon-substitution, trojan,
/// invisible-photon, fake-signal-general.
std::unique_ptr<protocol::Attacker> make_attacker(
    const std::string& name, int i0,
    const analysis::OverlapParams& params = analysis::OverlapParams::epr());

}  // namespace qss::adversary
