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

#include "qss/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qss::protocol {

// ---------------------------------------------------------------------------
// ProtocolConfig

void ProtocolConfig::validate() const {
  if (m < 2) throw ConfigError("config: m must be >= 2");
  if (n < 1) throw ConfigError("config: n must be >= 1");
  if (N < 1) throw ConfigError("config: N must be >= 1");
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0))
    throw ConfigError("config: sample_fraction must lie in (0, 1]");
  if (min_samples < 1) throw ConfigError("config: min_samples must be >= 1");
  if (epsilon_r < 0.0 || epsilon_r >= 1.0)
    throw ConfigError("config: epsilon_r must lie in [0, 1)");
  if (!decoy_counts.empty() &&
      decoy_counts.size() != static_cast<std::size_t>(m - 1))
    throw ConfigError("config: decoy_counts must have one entry per Alice 2..m");
  for (int c : decoy_counts)
    if (c < 0) throw ConfigError("config: decoy counts must be >= 0");
}

int ProtocolConfig::decoy_count_for(int i) const {
  if (i < 2 || i > m) throw ConfigError("decoy_count_for: i must be in 2..m");
  if (!decoy_counts.empty()) return decoy_counts[i - 2];
  const long long cap = 4LL * min_samples;
  // m^(i-1) * (m - 1), capped to avoid overflow for large m, i.
  long long pw = 1;
  for (int k = 1; k < i; ++k) {
    pw *= m;
    if (pw > cap) return static_cast<int>(cap);
  }
  return static_cast<int>(std::min(pw * (m - 1), cap));
}

std::vector<int> ProtocolConfig::pauli_alphabet() const {
  if (mode == Mode::ORIGINAL) return {0, 1};
  switch (pauli_set) {
    case PauliSet::FOUR:
      return {0, 1, 2, 3};
    case PauliSet::THREE_012:
      return {0, 1, 2};
    case PauliSet::THREE_013:
      return {0, 1, 3};
  }
  throw ConfigError("config: unknown pauli_set");
}

// ---------------------------------------------------------------------------
// Free helpers

std::vector<int> enquiry_order(const std::vector<int>& parties, Rng& rng) {
  std::vector<int> order = parties;
  for (int i = static_cast<int>(order.size()) - 1; i > 0; --i) {
    std::swap(order[i], order[rng.uniform_int(0, i)]);
  }
  return order;
}

LabelState replay_label(
    const std::vector<std::pair<int, std::pair<int, int>>>& entries) {
  if (entries.empty()) throw StateError("replay_label: no announcements");
  auto sorted = entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& u, const auto& v) { return u.first < v.first; });
  auto check = [](int a, int b) {
    if (a < 0 || a > 3 || b < 0 || b > 1)
      throw EncodingDomainError("replay_label: announcement out of range");
  };
  auto [a0, b0] = sorted.front().second;
  check(a0, b0);
  if (a0 > 1)
    throw EncodingDomainError("replay_label: prepared state must be BB84");
  LabelState l{a0, b0, 0};
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    auto [a, b] = sorted[k].second;
    check(a, b);
    l = label_apply(static_cast<Gate>(a), l);
    if (b == 1) l = label_apply(Gate::H, l);
  }
  return l;
}

// ---------------------------------------------------------------------------
// Photon-level helpers

namespace {

bool visible(const Photon& p) { return p.kind != PhotonKind::INVISIBLE; }

}  // namespace

bool Run::pns_detects(const Photon& p, Rng& rng) {
  return p.kind == PhotonKind::MULTI && rng.coin();
}

// ---------------------------------------------------------------------------
// Run

Run::Run(ProtocolConfig cfg, Attacker* attacker)
    : cfg_(std::move(cfg)), attacker_(attacker), rng_(cfg_.seed) {
  cfg_.validate();
  records_.assign(cfg_.m + 1, PartyRecord{});
  transcript_.config = cfg_;
  if (transcript_.config.decoy_counts.empty()) {
    for (int i = 2; i <= cfg_.m; ++i)
      transcript_.config.decoy_counts.push_back(cfg_.decoy_count_for(i));
  }
}

std::vector<Photon> Run::alice_initial_block(const std::vector<int>& a1,
                                             const std::vector<int>& b1) {
  if (a1.size() != b1.size())
    throw LengthError("alice_initial_block: strings differ in length");
  std::vector<Photon> out;
  out.reserve(a1.size());
  for (std::size_t k = 0; k < a1.size(); ++k) {
    if ((a1[k] != 0 && a1[k] != 1) || (b1[k] != 0 && b1[k] != 1))
      throw EncodingDomainError("alice_initial_block: bits required");
    Photon p;
    p.uid = static_cast<int>(k);
    p.label = LabelState{a1[k], b1[k], 0};
    p.key_index = static_cast<int>(k);
    p.creator = 1;
    out.push_back(p);
  }
  return out;
}

namespace {

// Applies sigma_a then H^b to one stream element.
void apply_encoding(Photon& p, int a, int b, PairRegistry& reg) {
  switch (p.kind) {
    case PhotonKind::SINGLE:
    case PhotonKind::INVISIBLE:
      p.label = label_apply(static_cast<Gate>(a), p.label);
      if (b == 1) p.label = label_apply(Gate::H, p.label);
      break;
    case PhotonKind::ENTANGLED_HALF: {
      auto& rec = reg.at(p.pair_id);
      rec.state = apply_on_a(static_cast<Gate>(a), rec.state);
      if (b == 1) rec.state = apply_on_a(Gate::H, rec.state);
      break;
    }
    case PhotonKind::MULTI:
      for (Photon& q : p.inner) apply_encoding(q, a, b, reg);
      break;
  }
}

}  // namespace

void Run::alice_encode(int i, std::vector<Photon>& photons,
                       const std::vector<int>& a, const std::vector<int>& b) {
  if (i < 2 || i > cfg_.m)
    throw ConfigError("alice_encode: i must be in 2..m");
  std::size_t nvis = 0;
  for (const Photon& p : photons)
    if (visible(p)) ++nvis;
  if (a.size() != nvis || b.size() != nvis)
    throw LengthError("alice_encode: strings must match visible photon count");
  std::size_t k = 0;
  bool have_prev = false;
  int prev_a = 0, prev_b = 0;
  for (Photon& p : photons) {
    if (!visible(p)) {
      // An out-of-band probe rides through the encoder alongside its
      // neighboring signal and picks up the same operation.
      if (have_prev) apply_encoding(p, prev_a, prev_b, registry_);
      continue;
    }
    const int ak = a[k], bk = b[k];
    ++k;
    if (ak < 0 || ak > 3 || bk < 0 || bk > 1)
      throw EncodingDomainError("alice_encode: encoding out of range");
    apply_encoding(p, ak, bk, registry_);
    records_[i].ab[p.uid] = {ak, bk};
    have_prev = true;
    prev_a = ak;
    prev_b = bk;
  }
}

std::vector<int> Run::insert_decoys(int i, std::vector<Photon>& photons,
                                    int count) {
  if (i < 1 || i > cfg_.m)
    throw ConfigError("insert_decoys: i must be in 1..m");
  for (const Photon& p : photons)
    next_uid_ = std::max(next_uid_, p.uid + 1);
  std::vector<int> positions;
  positions.reserve(count);
  for (int c = 0; c < count; ++c) {
    Photon p;
    p.uid = next_uid_++;
    p.origin = Origin::DECOY;
    p.creator = i;
    const int da = rng_.uniform_int(0, 1);
    const int db = rng_.uniform_int(0, 1);
    p.label = LabelState{da, db, 0};
    records_[i].ab[p.uid] = {da, db};
    records_[i].created_decoys.insert(p.uid);
    const int pos = rng_.uniform_int(0, static_cast<int>(photons.size()));
    photons.insert(photons.begin() + pos, p);
    positions.push_back(pos);
  }
  return positions;
}

int Run::measure_sampled(Photon& p, Basis basis, CheckResult& cr,
                         const std::string& step_name) {
  Photon* target = &p;
  if (p.kind == PhotonKind::MULTI) {
    if (pns_detects(p, rng_)) {
      ++cr.pns_detections;
      cr.aborted = true;
      cr.cause = "multi-photon signal detected";
      transcript_.check_results.push_back(cr);
      throw AbortSignal(step_name, cr.cause);
    }
    if (p.inner.empty()) throw StateError("multi-photon bundle is empty");
    target = &p.inner.front();
  }
  if (target->kind == PhotonKind::ENTANGLED_HALF) {
    auto& rec = registry_.at(target->pair_id);
    PairMeasurement pm = measure_a(rec.state, basis, rng_);
    rec.collapsed = true;
    rec.basis = basis;
    rec.outcome = pm.outcome;
    rec.residual0 = pm.residual0;
    rec.residual1 = pm.residual1;
    rec.state = pm.post;
    return pm.outcome;
  }
  return measure(decode(target->label), basis, rng_).first;
}

std::vector<std::pair<int, std::pair<int, int>>> Run::run_enquiry(
    int checker, int announce_limit, const Photon& p) {
  std::vector<int> parties;
  for (int t = p.creator; t <= announce_limit; ++t) parties.push_back(t);
  if (parties.empty())
    throw StateError("enquiry: no party acted on the sampled photon");
  const std::vector<int> order = enquiry_order(parties, rng_);

  std::vector<std::pair<int, std::pair<int, int>>> entries;
  entries.reserve(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const int t = order[pos];
    std::pair<int, int> ans;
    if (attacker_ != nullptr && t == attacker_->index()) {
      EnquiryTurn turn{checker, p.uid, p.creator, pos + 1 == order.size(),
                       entries};
      ans = attacker_->answer_enquiry(*this, turn);
    } else {
      auto it = records_[t].ab.find(p.uid);
      if (it == records_[t].ab.end())
        throw StateError("enquiry: party has no record for sampled photon");
      ans = it->second;
    }
    entries.emplace_back(t, ans);
    std::ostringstream pay;
    pay << "u" << p.uid << ":a" << ans.first << "b" << ans.second;
    transcript_.announcements.push_back(
        Announcement{"enquiry-c" + std::to_string(checker), t, pay.str()});
  }
  return entries;
}

CheckResult Run::check_step(int checker, int announce_limit,
                            std::vector<Photon>& photons,
                            const std::string& step_name) {
  CheckResult cr;
  cr.checker = checker;

  if (cfg_.filter_enabled) {
    auto mid = std::stable_partition(photons.begin(), photons.end(),
                                     [](const Photon& p) { return visible(p); });
    cr.stripped_invisible = static_cast<int>(photons.end() - mid);
    photons.erase(mid, photons.end());
  }

  std::vector<int> candidates;
  for (int k = 0; k < static_cast<int>(photons.size()); ++k)
    if (visible(photons[k])) candidates.push_back(k);

  const int want = std::max(
      static_cast<int>(
          std::ceil(cfg_.sample_fraction * static_cast<double>(candidates.size()))),
      cfg_.min_samples);
  const int nsamp = std::min<int>(want, static_cast<int>(candidates.size()));
  for (int i = static_cast<int>(candidates.size()) - 1; i > 0; --i)
    std::swap(candidates[i], candidates[rng_.uniform_int(0, i)]);
  std::vector<int> picked(candidates.begin(), candidates.begin() + nsamp);
  std::sort(picked.begin(), picked.end());

  for (int idx : picked) {
    Photon& p = photons[idx];
    cr.samples++;
    const Basis basis = rng_.coin() ? Basis::X : Basis::Z;
    const int outcome = measure_sampled(p, basis, cr, step_name);
    const auto entries = run_enquiry(checker, announce_limit, p);
    const LabelState expect = replay_label(entries);
    if (static_cast<Basis>(expect.b) == basis) {
      cr.matched++;
      if (outcome != expect.a) cr.errors++;
      if (p.creator == 1) {
        cr.signal_matched++;
        if (outcome != expect.a) cr.signal_errors++;
      }
    }
  }
  cr.error_rate = cr.matched > 0
                      ? static_cast<double>(cr.errors) / cr.matched
                      : 0.0;

  for (auto it = picked.rbegin(); it != picked.rend(); ++it)
    photons.erase(photons.begin() + *it);

  if (cr.matched > 0 && cr.error_rate > cfg_.epsilon_r) {
    cr.aborted = true;
    cr.cause = "sample error rate exceeds threshold";
    transcript_.check_results.push_back(cr);
    throw AbortSignal(step_name, cr.cause);
  }
  transcript_.check_results.push_back(cr);
  return cr;
}

CheckResult Run::hop_check(int i, std::vector<Photon>& photons) {
  if (i < 2 || i > cfg_.m) throw ConfigError("hop_check: i must be in 2..m");
  return check_step(i, i - 1, photons, "check-alice" + std::to_string(i));
}

CheckResult Run::bob_arrival_check(int l, std::vector<Photon>& photons) {
  if (l < 1 || l > cfg_.n)
    throw ConfigError("bob_arrival_check: l must be in 1..n");
  return check_step(cfg_.m + l, cfg_.m, photons,
                    "check-bob" + std::to_string(l));
}

void Run::honest_send_step(int i, std::vector<Photon>& stream) {
  if (i == 1) {
    const int total = cfg_.n * cfg_.N;
    std::vector<int> a1(total), b1(total);
    for (int k = 0; k < total; ++k) {
      a1[k] = rng_.uniform_int(0, 1);
      b1[k] = rng_.uniform_int(0, 1);
    }
    stream = alice_initial_block(a1, b1);
    next_uid_ = total;
    for (const Photon& p : stream) records_[1].ab[p.uid] = {p.label.a,
                                                            p.label.b};
    return;
  }
  std::size_t nvis = 0;
  for (const Photon& p : stream)
    if (visible(p)) ++nvis;
  const std::vector<int> alphabet = cfg_.pauli_alphabet();
  std::vector<int> a(nvis), b(nvis);
  for (std::size_t k = 0; k < nvis; ++k) {
    a[k] = alphabet[rng_.uniform_int(0, static_cast<int>(alphabet.size()) - 1)];
    b[k] = cfg_.mode == Mode::IMPROVED ? rng_.uniform_int(0, 1) : 0;
  }
  alice_encode(i, stream, a, b);
  if (cfg_.mode == Mode::IMPROVED)
    insert_decoys(i, stream, cfg_.decoy_count_for(i));
}

void Run::distribute_to_bobs(std::vector<Photon>& stream,
                             std::vector<std::vector<Photon>>& bobs) {
  bobs.assign(cfg_.n, {});
  int decoy_counter = 0;
  int last = 0;
  for (Photon& p : stream) {
    int l;
    if (p.key_index >= 0) {
      l = p.key_index % cfg_.n;
    } else if (p.kind == PhotonKind::INVISIBLE) {
      l = last;
    } else {
      l = decoy_counter++ % cfg_.n;
    }
    last = l;
    bobs[l].push_back(std::move(p));
  }
  stream.clear();
}

void Run::announce_b_strings() {
  for (int t = 1; t <= cfg_.m; ++t) {
    std::ostringstream pay;
    for (const auto& [uid, ab] : records_[t].ab)
      pay << "u" << uid << ":b" << ab.second << ";";
    transcript_.announcements.push_back(Announcement{"basis", t, pay.str()});
  }
}

std::vector<std::pair<int, int>> Run::final_measure_bob(
    int l, std::vector<Photon>& photons) {
  if (l < 1 || l > cfg_.n)
    throw ConfigError("final_measure_bob: l must be in 1..n");
  std::vector<std::pair<int, int>> out;
  for (Photon& p : photons) {
    if (p.origin == Origin::DECOY)
      throw StateError("final_measure_bob: decoys still present");
    if (!visible(p)) continue;
    int bxor = 0;
    for (int t = 1; t <= cfg_.m; ++t) {
      auto it = records_[t].ab.find(p.uid);
      if (it != records_[t].ab.end()) bxor ^= it->second.second & 1;
    }
    const Basis basis = static_cast<Basis>(bxor);
    CheckResult scratch;
    const int d = measure_sampled(p, basis, scratch, "final-measure");
    if (p.key_index >= 0) out.emplace_back(p.key_index, d);
  }
  photons.clear();
  return out;
}

std::vector<int> Run::extract_key(const RunTranscript& t) {
  if (t.aborted) throw IncompleteError("extract_key: run aborted");
  std::map<int, std::pair<int, int>> blocks;  // j -> (count, xor)
  for (const auto& [k, d] : t.bob_outcomes) {
    auto& [cnt, x] = blocks[k / t.config.n];
    cnt++;
    x ^= d;
  }
  std::vector<int> key;
  for (const auto& [j, cx] : blocks)
    if (cx.first == t.config.n) key.push_back(cx.second);
  return key;
}

std::vector<int> Run::predicted_key() const {
  std::map<int, std::pair<int, int>> blocks;  // j -> (count, xor)
  for (const auto& [uid, d] : transcript_.bob_outcomes) {
    (void)d;
    std::vector<std::pair<int, std::pair<int, int>>> entries;
    for (int t = 1; t <= cfg_.m; ++t) {
      auto it = records_[t].ab.find(uid);
      if (it == records_[t].ab.end())
        throw IncompleteError("predicted_key: missing party record");
      entries.emplace_back(t, it->second);
    }
    const LabelState l = replay_label(entries);
    auto& [cnt, x] = blocks[uid / cfg_.n];
    cnt++;
    x ^= l.a;
  }
  std::vector<int> key;
  for (const auto& [j, cx] : blocks)
    if (cx.first == cfg_.n) key.push_back(cx.second);
  return key;
}

void Run::final_classical_check() {
  auto& outcomes = transcript_.bob_outcomes;
  const int want = std::max(
      static_cast<int>(std::ceil(cfg_.sample_fraction *
                                 static_cast<double>(outcomes.size()))),
      cfg_.min_samples);
  const int nsamp = std::min<int>(want, static_cast<int>(outcomes.size()));
  std::vector<int> idx(outcomes.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
  for (int i = static_cast<int>(idx.size()) - 1; i > 0; --i)
    std::swap(idx[i], idx[rng_.uniform_int(0, i)]);
  std::vector<int> picked(idx.begin(), idx.begin() + nsamp);
  std::sort(picked.begin(), picked.end());

  CheckResult cr;
  cr.checker = 0;  // joint classical comparison
  for (int k : picked) {
    const auto [uid, d] = outcomes[k];
    std::vector<std::pair<int, std::pair<int, int>>> entries;
    for (int t = 1; t <= cfg_.m; ++t) {
      auto it = records_[t].ab.find(uid);
      if (it == records_[t].ab.end())
        throw StateError("final check: missing party record");
      std::pair<int, int> ans = it->second;
      if (attacker_ != nullptr && t == attacker_->index())
        ans.first = attacker_->announce_check_a(*this, uid, ans.first);
      entries.emplace_back(t, ans);
    }
    const LabelState expect = replay_label(entries);
    cr.samples++;
    cr.matched++;
    if (d != expect.a) cr.errors++;
  }
  cr.error_rate =
      cr.matched > 0 ? static_cast<double>(cr.errors) / cr.matched : 0.0;
  for (auto it = picked.rbegin(); it != picked.rend(); ++it)
    outcomes.erase(outcomes.begin() + *it);
  if (cr.matched > 0 && cr.error_rate > cfg_.epsilon_r) {
    cr.aborted = true;
    cr.cause = "announced encodings disagree with outcomes";
    transcript_.check_results.push_back(cr);
    throw AbortSignal("final-check", cr.cause);
  }
  transcript_.check_results.push_back(cr);
}

void Run::note_count(const std::string& tag, std::size_t count) {
  transcript_.photon_counts.emplace_back(tag, static_cast<int>(count));
}

void Run::run_original(std::vector<Photon>& stream) {
  std::vector<std::vector<Photon>> bobs;
  distribute_to_bobs(stream, bobs);
  announce_b_strings();
  for (int l = 1; l <= cfg_.n; ++l) {
    auto out = final_measure_bob(l, bobs[l - 1]);
    transcript_.bob_outcomes.insert(transcript_.bob_outcomes.end(),
                                    out.begin(), out.end());
  }
  std::sort(transcript_.bob_outcomes.begin(), transcript_.bob_outcomes.end());
  final_classical_check();
}

void Run::run_improved(std::vector<Photon>& stream) {
  std::vector<std::vector<Photon>> bobs;
  distribute_to_bobs(stream, bobs);
  for (int l = 1; l <= cfg_.n; ++l) {
    bob_arrival_check(l, bobs[l - 1]);
    note_count("after-check-bob" + std::to_string(l), bobs[l - 1].size());
  }
  // Decoy creators announce positions; Bobs discard them before measuring.
  for (auto& share : bobs) {
    std::erase_if(share, [](const Photon& p) {
      return p.origin == Origin::DECOY;
    });
  }
  announce_b_strings();
  for (int l = 1; l <= cfg_.n; ++l) {
    auto out = final_measure_bob(l, bobs[l - 1]);
    transcript_.bob_outcomes.insert(transcript_.bob_outcomes.end(),
                                    out.begin(), out.end());
  }
  std::sort(transcript_.bob_outcomes.begin(), transcript_.bob_outcomes.end());
  final_classical_check();
}

RunTranscript Run::execute() {
  cfg_.validate();
  try {
    std::vector<Photon> stream;
    if (attacker_ != nullptr && attacker_->index() == 1) {
      attacker_->act_on_stream(*this, stream);
    } else {
      honest_send_step(1, stream);
    }
    note_count("after-alice1", stream.size());

    for (int i = 2; i <= cfg_.m; ++i) {
      if (attacker_ != nullptr) attacker_->intercept(*this, i, stream);
      if (attacker_ != nullptr && attacker_->index() == i) {
        attacker_->act_on_stream(*this, stream);
      } else {
        if (cfg_.mode == Mode::IMPROVED) hop_check(i, stream);
        honest_send_step(i, stream);
      }
      note_count("after-alice" + std::to_string(i), stream.size());
    }
    if (attacker_ != nullptr) attacker_->intercept(*this, cfg_.m + 1, stream);
    note_count("to-bobs", stream.size());

    if (cfg_.mode == Mode::ORIGINAL) {
      run_original(stream);
    } else {
      run_improved(stream);
    }
    transcript_.group_key = extract_key(transcript_);
    try {
      transcript_.predicted_key = predicted_key();
    } catch (const IncompleteError&) {
      transcript_.predicted_key.clear();
    }
  } catch (const AbortSignal& abort) {
    transcript_.aborted = true;
    transcript_.abort_step = abort.step;
    transcript_.abort_cause = abort.cause;
  }
  if (attacker_ != nullptr) {
    attacker_->finalize(*this, transcript_);
    transcript_.eve = attacker_->record;
    transcript_.eve.kind = attacker_->kind();
    transcript_.eve.attacker_index = attacker_->index();
  }
  return transcript_;
}

RunTranscript run(const ProtocolConfig& cfg, Attacker* attacker) {
  Run r(cfg, attacker);
  return r.execute();
}

// ---------------------------------------------------------------------------
// Transcript serialization

std::string RunTranscript::to_string() const {
  std::ostringstream os;
  os << "config m=" << config.m << " n=" << config.n << " N=" << config.N
     << " mode=" << (config.mode == Mode::ORIGINAL ? "original" : "improved")
     << " pauli=" << static_cast<int>(config.pauli_set)
     << " fraction=" << config.sample_fraction
     << " min_samples=" << config.min_samples << " eps=" << config.epsilon_r
     << " filter=" << config.filter_enabled << " seed=" << config.seed
     << " decoys=";
  for (int c : config.decoy_counts) os << c << ",";
  os << "\n";
  for (const auto& [tag, c] : photon_counts)
    os << "count " << tag << " " << c << "\n";
  for (const auto& a : announcements)
    os << "ann " << a.step << " p" << a.party << " " << a.payload << "\n";
  for (const auto& c : check_results)
    os << "check c" << c.checker << " samples=" << c.samples
       << " matched=" << c.matched << " errors=" << c.errors
       << " sig=" << c.signal_errors << "/" << c.signal_matched
       << " pns=" << c.pns_detections << " stripped=" << c.stripped_invisible
       << " aborted=" << c.aborted << " cause=" << c.cause << "\n";
  os << "aborted=" << aborted << " step=" << abort_step
     << " cause=" << abort_cause << "\n";
  os << "outcomes ";
  for (const auto& [k, d] : bob_outcomes) os << k << ":" << d << " ";
  os << "\nkey ";
  for (int b : group_key) os << b;
  os << "\npredicted ";
  for (int b : predicted_key) os << b;
  os << "\neve kind=" << eve.kind << " i0=" << eve.attacker_index
     << " acc=" << eve.key_accuracy << " probes=" << eve.captured_probes
     << " info=" << eve.info_bits << " answers=" << eve.enquiry_answers
     << " guesses=" << eve.enquiry_guesses << " pgm=" << eve.pgm_successes
     << "/" << eve.pgm_trials << " comp=" << eve.composite_correct << "/"
     << eve.composite_recovered << "\n";
  return os.str();
}

}  // namespace qss::protocol
