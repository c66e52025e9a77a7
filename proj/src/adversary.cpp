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

#include "qss/adversary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace qss::adversary {

using protocol::EnquiryTurn;
using protocol::Mode;
using protocol::Origin;
using protocol::Photon;
using protocol::PhotonKind;
using protocol::Run;
using protocol::RunTranscript;
using protocol::StateError;

// ---------------------------------------------------------------------------
// Discrimination primitives

CompositeClass bell_discriminate(const BipartiteState& bs) {
  if (bs.dim_e != 2 || bs.amps.size() != 4)
    throw DimensionError("bell_discriminate: expected a two-qubit state");
  const double kSqrt2 = std::sqrt(2.0);
  std::array<Eigen::VectorXcd, 4> basis = {
      bell_phi_plus().amps, bell_psi_minus().amps,
      Eigen::VectorXcd((bell_phi_minus().amps + bell_psi_plus().amps) /
                       kSqrt2),
      Eigen::VectorXcd((bell_phi_minus().amps - bell_psi_plus().amps) /
                       kSqrt2)};
  static const CompositeClass classes[4] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  for (int j = 0; j < 4; ++j) {
    const double p = std::norm(basis[j].dot(bs.amps));
    if (p > 1.0 - 1e-9) return classes[j];
  }
  throw SpanError(
      "bell_discriminate: state is not on one of the four expected rays");
}

Mat2 composite_matrix(const std::vector<std::pair<int, int>>& gates) {
  Mat2 m = Mat2::Identity();
  for (const auto& [a, b] : gates) {
    if (a < 0 || a > 3 || b < 0 || b > 1)
      throw protocol::EncodingDomainError("composite_matrix: bad encoding");
    m = gate_matrix(static_cast<Gate>(a)) * m;
    if (b == 1) m = gate_matrix(Gate::H) * m;
  }
  return m;
}

int equivalent_op_index(const Mat2& u) {
  for (int j = 0; j < 8; ++j) {
    Mat2 cand = gate_matrix(static_cast<Gate>(j % 4));
    if (j >= 4) cand = gate_matrix(Gate::H) * cand;
    // Find a reference entry to extract the global phase.
    Eigen::Index r = 0, c = 0;
    cand.cwiseAbs().maxCoeff(&r, &c);
    const cxd lam = u(r, c) / cand(r, c);
    if (std::abs(std::abs(lam) - 1.0) > 1e-9) continue;
    if ((u - lam * cand).cwiseAbs().maxCoeff() < 1e-9) return j;
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Pretty good measurement

Pgm::Pgm(const std::vector<BipartiteState>& hypotheses) {
  if (hypotheses.empty()) throw DimensionError("Pgm: no hypotheses");
  const Eigen::Index d = hypotheses.front().amps.size();
  for (const auto& h : hypotheses) {
    if (h.amps.size() != d)
      throw DimensionError("Pgm: hypothesis dimensions differ");
    psi_.push_back(h.amps);
  }
  const double p = 1.0 / static_cast<double>(psi_.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& v : psi_) rho += p * v * v.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  Eigen::MatrixXcd invsqrt = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double lam = es.eigenvalues()(k);
    if (lam > 1e-12) {
      const Eigen::VectorXcd v = es.eigenvectors().col(k);
      invsqrt += (1.0 / std::sqrt(lam)) * v * v.adjoint();
    }
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& v : psi_) {
    const Eigen::VectorXcd g = invsqrt * v;
    povm_.push_back(p * g * g.adjoint());
    sum += povm_.back();
  }
  povm_.push_back(Eigen::MatrixXcd::Identity(d, d) - sum);
}

bool Pgm::is_complete(double tol) const {
  const Eigen::Index d = povm_.front().rows();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& e : povm_) {
    sum += e;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
    if (es.eigenvalues().minCoeff() < -tol) return false;
  }
  return (sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() < tol;
}

double Pgm::success_probability() const {
  double s = 0.0;
  for (std::size_t j = 0; j < psi_.size(); ++j)
    s += (psi_[j].dot(povm_[j] * psi_[j])).real();
  return s / static_cast<double>(psi_.size());
}

double Pgm::probability(const BipartiteState& actual, int j) const {
  return (actual.amps.dot(povm_.at(j) * actual.amps)).real();
}

int Pgm::sample(const BipartiteState& actual, Rng& rng) const {
  const double u = rng.uniform();
  double acc = 0.0;
  for (int j = 0; j < static_cast<int>(povm_.size()); ++j) {
    acc += probability(actual, j);
    if (u < acc) return j;
  }
  return static_cast<int>(povm_.size()) - 1;
}

// ---------------------------------------------------------------------------
// Shared attack helpers

namespace {

// Candidate announcements for the attacker's slot: prepared-state bits if
// she created the photon, otherwise encodings from the mode's alphabet.
std::vector<std::pair<int, int>> candidate_answers(const Run& run,
                                                   bool initial_slot) {
  std::vector<std::pair<int, int>> out;
  if (initial_slot) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out.emplace_back(a, b);
    return out;
  }
  const bool improved = run.cfg().mode == Mode::IMPROVED;
  for (int a : run.cfg().pauli_alphabet())
    for (int b = 0; b < (improved ? 2 : 1); ++b) out.emplace_back(a, b);
  return out;
}

std::pair<int, int> random_answer(Run& run, bool initial_slot) {
  auto cands = candidate_answers(run, initial_slot);
  return cands[run.rng().uniform_int(0, static_cast<int>(cands.size()) - 1)];
}

// All slot values whose full replay yields the target (outcome, basis).
std::vector<std::pair<int, int>> consistent_answers(
    Run& run, const EnquiryTurn& t, int attacker, int target_outcome,
    Basis target_basis) {
  std::vector<std::pair<int, int>> out;
  for (const auto& cand : candidate_answers(run, t.creator == attacker)) {
    auto entries = t.earlier;
    entries.emplace_back(attacker, cand);
    const LabelState l = protocol::replay_label(entries);
    if (l.a == target_outcome && static_cast<Basis>(l.b) == target_basis)
      out.push_back(cand);
  }
  return out;
}

std::pair<int, int> pick_uniform(Run& run,
                                 const std::vector<std::pair<int, int>>& v,
                                 bool initial_slot) {
  if (v.empty()) return random_answer(run, initial_slot);
  return v[run.rng().uniform_int(0, static_cast<int>(v.size()) - 1)];
}

// XOR of announced H bits over all parties for one photon.
int announced_basis_bit(const Run& run, int uid) {
  int b = 0;
  for (int t = 1; t <= run.cfg().m; ++t) {
    auto it = run.records()[t].ab.find(uid);
    if (it != run.records()[t].ab.end()) b ^= it->second.second & 1;
  }
  return b;
}

// Builds the attacker's per-block key guess and scores it against the
// actual group key.
void score_key_guess(const RunTranscript& t,
                     const std::function<int(int)>& dhat,
                     protocol::EveRecord& rec) {
  if (t.aborted || t.group_key.empty()) return;
  std::map<int, std::pair<int, int>> blocks;  // j -> (count, xor)
  for (const auto& [k, d] : t.bob_outcomes) {
    (void)d;
    auto& [cnt, x] = blocks[k / t.config.n];
    cnt++;
    x ^= dhat(k);
  }
  rec.key_guess.clear();
  for (const auto& [j, cx] : blocks)
    if (cx.first == t.config.n) rec.key_guess.push_back(cx.second);
  if (rec.key_guess.size() != t.group_key.size()) return;
  int hit = 0;
  for (std::size_t k = 0; k < rec.key_guess.size(); ++k)
    if (rec.key_guess[k] == t.group_key[k]) ++hit;
  rec.key_accuracy =
      static_cast<double>(hit) / static_cast<double>(rec.key_guess.size());
}

Photon keep_identity(const Photon& p) {
  Photon np;
  np.uid = p.uid;
  np.origin = p.origin;
  np.key_index = p.key_index;
  np.creator = p.creator;
  return np;
}

}  // namespace

// ---------------------------------------------------------------------------
// EprSubstitutionAttack

void EprSubstitutionAttack::act_on_stream(Run& run,
                                          std::vector<Photon>& stream) {
  auto& rng = run.rng();
  if (i0_ == 1) {
    stream.clear();
    const int total = run.cfg().n * run.cfg().N;
    for (int k = 0; k < total; ++k) {
      Photon p;
      p.uid = run.allocate_uid();
      p.kind = PhotonKind::ENTANGLED_HALF;
      p.pair_id = run.registry().add(bell_phi_plus());
      p.key_index = k;
      p.creator = 1;
      const int a = rng.uniform_int(0, 1);
      const int b = rng.uniform_int(0, 1);
      claimed_[p.uid] = {a, b};
      run.records()[1].ab[p.uid] = {a, b};
      pair_of_[p.uid] = p.pair_id;
      stream.push_back(p);
    }
    return;
  }
  for (Photon& p : stream) {
    Photon np = keep_identity(p);
    np.kind = PhotonKind::ENTANGLED_HALF;
    np.pair_id = run.registry().add(bell_phi_plus());
    const auto claim = random_answer(run, false);
    claimed_[np.uid] = claim;
    run.records()[i0_].ab[np.uid] = claim;
    pair_of_[np.uid] = np.pair_id;
    p = np;
  }
}

void EprSubstitutionAttack::intercept(Run& run, int to_party,
                                      std::vector<Photon>& stream) {
  if (run.cfg().mode != Mode::ORIGINAL || to_party != run.cfg().m + 1 ||
      i0_ != 1)
    return;
  for (Photon& p : stream) {
    auto it = pair_of_.find(p.uid);
    if (it == pair_of_.end()) continue;
    const auto& rec = run.registry().at(it->second);
    const CompositeClass c = bell_discriminate(rec.state);
    recovered_[p.uid] = c;
    const auto [a0, b0] = claimed_.at(p.uid);
    Photon np = keep_identity(p);
    np.kind = PhotonKind::SINGLE;
    np.label = LabelState{a0 ^ c.a_parity, b0 ^ c.b_parity, 0};
    sent_[p.uid] = np.label;
    p = np;
  }
}

std::pair<int, int> EprSubstitutionAttack::answer_enquiry(
    Run& run, const EnquiryTurn& t) {
  const bool initial_slot = t.creator == i0_;
  auto it = pair_of_.find(t.uid);
  if (it == pair_of_.end() || sent_.count(t.uid)) {
    ++record.enquiry_answers;
    return run.records()[i0_].ab.at(t.uid);
  }
  if (!t.is_last) {
    ++record.enquiry_guesses;
    return claimed_.at(t.uid);
  }
  const auto& rec = run.registry().at(it->second);
  if (!rec.collapsed)
    throw StateError("epr attack: enquiry before the sample was measured");
  ++record.enquiry_answers;
  // The retained half of a maximally entangled pair identifies the
  // checker's basis and outcome exactly.
  return pick_uniform(
      run, consistent_answers(run, t, i0_, rec.outcome, rec.basis),
      initial_slot);
}

int EprSubstitutionAttack::announce_check_a(Run& run, int uid, int default_a) {
  auto it = pair_of_.find(uid);
  if (it == pair_of_.end() || sent_.count(uid)) return default_a;
  const auto& rec = run.registry().at(it->second);
  if (!rec.collapsed) return default_a;
  const int hb = claimed_.at(uid).second;
  for (int cand : run.cfg().pauli_alphabet()) {
    std::vector<std::pair<int, std::pair<int, int>>> entries;
    for (int t = 1; t <= run.cfg().m; ++t) {
      if (t == i0_) {
        entries.emplace_back(t, std::make_pair(cand, hb));
      } else {
        entries.emplace_back(t, run.records()[t].ab.at(uid));
      }
    }
    if (protocol::replay_label(entries).a == rec.outcome) return cand;
  }
  return default_a;
}

void EprSubstitutionAttack::finalize(Run& run, RunTranscript& t) {
  for (const auto& [uid, c] : recovered_) {
    ++record.composite_recovered;
    int ap = 0, bp = 0;
    for (int i = 2; i <= run.cfg().m; ++i) {
      auto it = run.records()[i].ab.find(uid);
      if (it == run.records()[i].ab.end()) continue;
      // Parity of the a-flip: sigma_1 and sigma_3 flip, sigma_0/2 do not.
      ap ^= (it->second.first == 1 || it->second.first == 3) ? 1 : 0;
      bp ^= it->second.second & 1;
    }
    if (c == CompositeClass{ap, bp}) ++record.composite_correct;
  }
  score_key_guess(
      t,
      [&](int uid) {
        auto sit = sent_.find(uid);
        if (sit != sent_.end()) return sit->second.a;
        auto pit = pair_of_.find(uid);
        if (pit != pair_of_.end()) {
          const auto& rec = run.registry().at(pit->second);
          if (rec.collapsed) return rec.outcome;
        }
        return run.rng().uniform_int(0, 1);
      },
      record);
}

// ---------------------------------------------------------------------------
// FakeSignalGeneralAttack

void FakeSignalGeneralAttack::act_on_stream(Run& run,
                                            std::vector<Photon>& stream) {
  const auto fp = analysis::FakeSignalParams::from_overlaps(params_);
  const BipartiteState base = qss::make_pair(fp.alpha, fp.beta);
  auto& rng = run.rng();
  if (i0_ == 1) {
    stream.clear();
    const int total = run.cfg().n * run.cfg().N;
    for (int k = 0; k < total; ++k) {
      Photon p;
      p.uid = run.allocate_uid();
      p.kind = PhotonKind::ENTANGLED_HALF;
      p.pair_id = run.registry().add(base);
      p.key_index = k;
      p.creator = 1;
      const int a = rng.uniform_int(0, 1);
      const int b = rng.uniform_int(0, 1);
      claimed_[p.uid] = {a, b};
      run.records()[1].ab[p.uid] = {a, b};
      pair_of_[p.uid] = p.pair_id;
      stream.push_back(p);
    }
    return;
  }
  for (Photon& p : stream) {
    Photon np = keep_identity(p);
    np.kind = PhotonKind::ENTANGLED_HALF;
    np.pair_id = run.registry().add(base);
    const auto claim = random_answer(run, false);
    claimed_[np.uid] = claim;
    run.records()[i0_].ab[np.uid] = claim;
    pair_of_[np.uid] = np.pair_id;
    p = np;
  }
}

void FakeSignalGeneralAttack::intercept(Run& run, int to_party,
                                        std::vector<Photon>& stream) {
  if (run.cfg().mode != Mode::IMPROVED || to_party != run.cfg().m + 1 ||
      i0_ != 1)
    return;
  const auto fp = analysis::FakeSignalParams::from_overlaps(params_);
  const Pgm pgm(analysis::eight_states(fp));
  for (Photon& p : stream) {
    auto it = pair_of_.find(p.uid);
    if (it == pair_of_.end()) continue;
    const auto& rec = run.registry().at(it->second);
    if (rec.collapsed) continue;
    int j = pgm.sample(rec.state, run.rng());
    ++record.pgm_trials;
    // Ground truth: the reduced class of the honest Alices' product.
    std::vector<std::pair<int, int>> gates;
    for (int i = 2; i <= run.cfg().m; ++i) {
      auto git = run.records()[i].ab.find(p.uid);
      if (git != run.records()[i].ab.end()) gates.push_back(git->second);
    }
    const int jt = equivalent_op_index(composite_matrix(gates));
    if (j == jt) ++record.pgm_successes;
    if (j >= 8) j = run.rng().uniform_int(0, 7);  // off support: pure guess
    const auto [a0, b0] = claimed_.at(p.uid);
    LabelState l{a0, b0, 0};
    l = label_apply(static_cast<Gate>(j % 4), l);
    if (j >= 4) l = label_apply(Gate::H, l);
    Photon np = keep_identity(p);
    np.kind = PhotonKind::SINGLE;
    np.label = l;
    sent_[p.uid] = l;
    p = np;
  }
}

std::pair<int, int> FakeSignalGeneralAttack::answer_enquiry(
    Run& run, const EnquiryTurn& t) {
  const bool initial_slot = t.creator == i0_;
  auto it = pair_of_.find(t.uid);
  if (it == pair_of_.end() || sent_.count(t.uid)) {
    ++record.enquiry_answers;
    return run.records()[i0_].ab.at(t.uid);
  }
  if (!t.is_last) {
    ++record.enquiry_guesses;
    return claimed_.at(t.uid);
  }
  const auto& rec = run.registry().at(it->second);
  if (!rec.collapsed)
    throw StateError("fake-signal attack: enquiry before measurement");
  ++record.enquiry_answers;
  auto& rng = run.rng();
  // She does not learn the checker's basis; she guesses one and then
  // plays the minimum-error (Helstrom) discrimination of her retained
  // residuals for the outcome in that basis.
  const Basis bhat = rng.coin() ? Basis::X : Basis::Z;
  int ohat;
  if (bhat == rec.basis) {
    const double ov = std::abs(inner(rec.residual0, rec.residual1));
    const double psucc =
        0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * ov * ov)));
    ohat = rng.uniform() < psucc ? rec.outcome : 1 - rec.outcome;
  } else {
    ohat = rng.uniform_int(0, 1);
  }
  return pick_uniform(run, consistent_answers(run, t, i0_, ohat, bhat),
                      initial_slot);
}

void FakeSignalGeneralAttack::finalize(Run& run, RunTranscript& t) {
  score_key_guess(
      t,
      [&](int uid) {
        auto sit = sent_.find(uid);
        if (sit != sent_.end()) {
          if (announced_basis_bit(run, uid) == sit->second.b)
            return sit->second.a;
          return run.rng().uniform_int(0, 1);
        }
        auto pit = pair_of_.find(uid);
        if (pit != pair_of_.end()) {
          const auto& rec = run.registry().at(pit->second);
          if (rec.collapsed) return rec.outcome;
        }
        return run.rng().uniform_int(0, 1);
      },
      record);
}

// ---------------------------------------------------------------------------
// SinglePhotonSubstitutionAttack

void SinglePhotonSubstitutionAttack::act_on_stream(
    Run& run, std::vector<Photon>& stream) {
  auto& rng = run.rng();
  for (Photon& p : stream) {
    stored_[p.uid] = p;
    Photon np = keep_identity(p);
    np.kind = PhotonKind::SINGLE;
    const int as = rng.uniform_int(0, 1);
    const int bs = rng.uniform_int(0, 1);
    np.label = LabelState{as, bs, 0};
    sent_[p.uid] = {as, bs};
    const auto claim = random_answer(run, false);
    claimed_[p.uid] = claim;
    run.records()[i0_].ab[p.uid] = claim;
    p = np;
  }
}

std::pair<int, int> SinglePhotonSubstitutionAttack::answer_enquiry(
    Run& run, const EnquiryTurn& t) {
  auto it = sent_.find(t.uid);
  if (it == sent_.end()) {
    ++record.enquiry_answers;
    return run.records()[i0_].ab.at(t.uid);
  }
  if (!t.is_last) {
    ++record.enquiry_guesses;
    return claimed_.at(t.uid);
  }
  ++record.enquiry_answers;
  // She knows the state she actually forwarded and, once everyone else
  // has spoken, the encodings applied after her; she announces whatever
  // makes the replay land on the true wire state.
  LabelState actual{it->second.first, it->second.second, 0};
  auto later = t.earlier;
  std::sort(later.begin(), later.end(),
            [](const auto& u, const auto& v) { return u.first < v.first; });
  for (const auto& [party, ab] : later) {
    if (party <= i0_) continue;
    actual = label_apply(static_cast<Gate>(ab.first), actual);
    if (ab.second == 1) actual = label_apply(Gate::H, actual);
  }
  return pick_uniform(
      run,
      consistent_answers(run, t, i0_, actual.a, static_cast<Basis>(actual.b)),
      false);
}

void SinglePhotonSubstitutionAttack::finalize(Run& run, RunTranscript& t) {
  if (!t.aborted) record.info_bits = static_cast<int>(stored_.size());
  score_key_guess(
      t,
      [&](int uid) {
        auto sit = sent_.find(uid);
        if (sit == sent_.end()) return run.rng().uniform_int(0, 1);
        LabelState actual{sit->second.first, sit->second.second, 0};
        for (int i = i0_ + 1; i <= run.cfg().m; ++i) {
          auto git = run.records()[i].ab.find(uid);
          if (git == run.records()[i].ab.end()) continue;
          actual = label_apply(static_cast<Gate>(git->second.first), actual);
          if (git->second.second == 1) actual = label_apply(Gate::H, actual);
        }
        if (announced_basis_bit(run, uid) == actual.b) return actual.a;
        return run.rng().uniform_int(0, 1);
      },
      record);
}

// ---------------------------------------------------------------------------
// TrojanAttack

void TrojanAttack::act_on_stream(Run& run, std::vector<Photon>& stream) {
  run.honest_send_step(i0_, stream);
  for (Photon& p : stream) {
    Photon probe;
    probe.uid = run.allocate_uid();
    probe.kind = PhotonKind::SINGLE;
    probe.label = LabelState{0, 0, 0};
    probe.creator = i0_;
    Photon outer = keep_identity(p);
    outer.kind = PhotonKind::MULTI;
    outer.inner.push_back(std::move(p));
    outer.inner.push_back(std::move(probe));
    p = std::move(outer);
  }
}

void TrojanAttack::intercept(Run& run, int to_party,
                             std::vector<Photon>& stream) {
  if (to_party != run.cfg().m + 1) return;
  for (Photon& p : stream) {
    if (p.kind != PhotonKind::MULTI || p.inner.size() != 2) continue;
    if (p.inner[1].creator != i0_) continue;
    ++record.captured_probes;
    ++record.info_bits;  // the probe carries the later encoders' product
    Photon signal = std::move(p.inner[0]);
    p = std::move(signal);
  }
}

std::pair<int, int> TrojanAttack::answer_enquiry(Run& run,
                                                 const EnquiryTurn& t) {
  ++record.enquiry_answers;
  return run.records()[i0_].ab.at(t.uid);
}

// ---------------------------------------------------------------------------
// InvisibleAttack

void InvisibleAttack::act_on_stream(Run& run, std::vector<Photon>& stream) {
  run.honest_send_step(i0_, stream);
  std::vector<Photon> out;
  out.reserve(stream.size() * 2);
  for (Photon& p : stream) {
    out.push_back(std::move(p));
    Photon probe;
    probe.uid = run.allocate_uid();
    probe.kind = PhotonKind::INVISIBLE;
    probe.label = LabelState{0, 0, 0};
    probe.creator = i0_;
    out.push_back(std::move(probe));
  }
  stream = std::move(out);
}

void InvisibleAttack::intercept(Run& run, int to_party,
                                std::vector<Photon>& stream) {
  if (to_party != run.cfg().m + 1) return;
  int captured = 0;
  std::erase_if(stream, [&](const Photon& p) {
    if (p.kind == PhotonKind::INVISIBLE && p.creator == i0_) {
      ++captured;
      return true;
    }
    return false;
  });
  record.captured_probes += captured;
  record.info_bits += captured;  // each probe encodes the later product
}

std::pair<int, int> InvisibleAttack::answer_enquiry(Run& run,
                                                    const EnquiryTurn& t) {
  ++record.enquiry_answers;
  return run.records()[i0_].ab.at(t.uid);
}

// ---------------------------------------------------------------------------
// Factory

std::unique_ptr<protocol::Attacker> make_attacker(
    const std::string& name, int i0, const analysis::OverlapParams& params) {
  if (name == "none") return nullptr;
  if (name == "epr-substitution")
    return std::make_unique<EprSubstitutionAttack>(i0);
  if (name == "fake-signal-general")
    return std::make_unique<FakeSignalGeneralAttack>(params, i0);
  if (name == "single-photon-substitution")
    return std::make_unique<SinglePhotonSubstitutionAttack>(i0);
  if (name == "trojan") return std::make_unique<TrojanAttack>(i0);
  if (name == "invisible-photon") return std::make_unique<InvisibleAttack>(i0);
  throw protocol::ConfigError("unknown attack strategy: " + name);
}

}  // namespace qss::adversary
