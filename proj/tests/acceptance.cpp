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

// Acceptance suite: one self-contained check per release criterion, each
// reported as a single PASS/FAIL line with its runtime. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qss/adversary.hpp"
#include "qss/analysis.hpp"
#include "qss/protocol.hpp"
#include "qss/qcore.hpp"

namespace {

using namespace qss;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<protocol::RunTranscript> run_batch(protocol::ProtocolConfig cfg,
                                               const std::string& attack,
                                               int i0, int reps,
                                               std::uint64_t master_seed) {
  std::vector<protocol::RunTranscript> out;
  out.reserve(static_cast<std::size_t>(reps));
  for (int k = 0; k < reps; ++k) {
    cfg.seed = derive_seed(master_seed, static_cast<std::uint64_t>(k));
    auto attacker = adversary::make_attacker(attack, i0);
    out.push_back(protocol::run(cfg, attacker.get()));
  }
  return out;
}

// 1. Closed-form discrimination bounds at the maximally entangled point.
Outcome criterion_bound_constants() {
  Outcome o;
  const auto r = analysis::bound_report(analysis::OverlapParams::epr());
  o.require(std::abs(r.p1 - (1.0 - std::sqrt(2.0) / 7.0)) < 1e-9,
            "p1 != 1-sqrt(2)/7 (got " + fmt(r.p1) + ")");
  o.require(std::abs(r.p2 - (1.0 - std::sqrt(2.0) / 6.0)) < 1e-9,
            "p2 != 1-sqrt(2)/6 (got " + fmt(r.p2) + ")");
  o.require(std::abs(r.overlap_sum_direct - 16.0 / std::sqrt(2.0)) < 1e-9,
            "overlap sum != 16/sqrt(2) (got " + fmt(r.overlap_sum_direct) +
                ")");
  o.require(!r.formula_mismatch, "closed form disagrees with the Gram sum");
  return o;
}

// 2. The overlap-sum minimizer lands on (x, q, z) = (0, 0, 1/2).
Outcome criterion_minimizer() {
  Outcome o;
  const auto r = analysis::minimize_overlap(7);
  o.require(std::abs(r.argmin.x) < 1e-6, "x != 0 (got " + fmt(r.argmin.x) +
                                             ")");
  o.require(std::abs(r.argmin.q) < 1e-6, "q != 0 (got " + fmt(r.argmin.q) +
                                             ")");
  o.require(std::abs(r.argmin.z - 0.5) < 1e-6,
            "z != 1/2 (got " + fmt(r.argmin.z) + ")");
  o.require(std::abs(r.min_value - 16.0 / std::sqrt(2.0)) < 1e-6,
            "min != 16/sqrt(2) (got " + fmt(r.min_value) + ")");
  return o;
}

// 3. Honest runs complete and both ends of the key agree, for every
//    (m, n) in {2,3}^2 at N = 64, 100 seeded repetitions each.
Outcome criterion_honest_completeness() {
  Outcome o;
  for (int m : {2, 3}) {
    for (int n : {2, 3}) {
      protocol::ProtocolConfig cfg;
      cfg.m = m;
      cfg.n = n;
      cfg.N = 64;
      const auto batch =
          run_batch(cfg, "none", 1, 100,
                    1000ull * static_cast<std::uint64_t>(10 * m + n));
      const auto stats = analysis::empirical_report(batch);
      const std::string tag =
          " (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")";
      o.require(stats.aborted == 0, "honest run aborted" + tag);
      o.require(stats.key_match_runs == stats.runs,
                "predicted key != extracted key" + tag);
      o.require(stats.mean_key_len > 0.0, "no key material produced" + tag);
      if (!o.ok) return o;
    }
  }
  return o;
}

// 4. EPR substitution breaks the base protocol: perfect key recovery,
//    never detected (m=2, n=2, N=16, 100 runs).
Outcome criterion_base_protocol_break() {
  Outcome o;
  protocol::ProtocolConfig cfg;
  cfg.m = 2;
  cfg.n = 2;
  cfg.N = 16;
  cfg.mode = protocol::Mode::ORIGINAL;
  const auto batch = run_batch(cfg, "epr-substitution", 1, 100, 41);
  const auto stats = analysis::empirical_report(batch);
  o.require(stats.aborted == 0,
            "attack detected (" + std::to_string(stats.aborted) + "/100)");
  o.require(stats.accuracy_runs == stats.runs, "missing accuracy reports");
  o.require(stats.mean_accuracy == 1.0,
            "key recovery accuracy " + fmt(stats.mean_accuracy) + " != 1");
  return o;
}

// 5. The hardened mode detects both substitution attacks (abort frequency
//    >= 0.99 over 200 runs each, m in {2,3}), and the checked-sample error
//    rate the single-photon attack induces on fully encoded positions
//    reaches (m-1)/(2m) - 0.03 over at least 10^4 basis-matched samples.
Outcome criterion_hardened_detection() {
  Outcome o;
  for (int m : {2, 3}) {
    const std::string tag = " (m=" + std::to_string(m) + ")";
    protocol::ProtocolConfig cfg;
    cfg.m = m;
    cfg.n = 2;
    cfg.N = 128;
    {
      const auto batch = run_batch(cfg, "epr-substitution", 1, 200, 51 + m);
      const auto stats = analysis::empirical_report(batch);
      o.require(stats.abort_rate >= 0.99,
                "entangled-pair substitution abort rate " +
                    fmt(stats.abort_rate) + " < 0.99" + tag);
    }
    {
      const auto batch =
          run_batch(cfg, "single-photon-substitution", m, 200, 61 + m);
      const auto stats = analysis::empirical_report(batch);
      o.require(stats.abort_rate >= 0.99,
                "single-photon substitution abort rate " +
                    fmt(stats.abort_rate) + " < 0.99" + tag);
    }

    // Error-rate accumulation: large blocks, heavier sampling.
    protocol::ProtocolConfig ecfg;
    ecfg.m = m;
    ecfg.n = 2;
    ecfg.N = 512;
    ecfg.sample_fraction = 0.5;
    long long matched = 0, errors = 0;
    for (int k = 0; matched < 10000 && k < 400; ++k) {
      ecfg.seed = derive_seed(71 + static_cast<std::uint64_t>(m),
                              static_cast<std::uint64_t>(k));
      auto attacker =
          adversary::make_attacker("single-photon-substitution", m);
      const auto t = protocol::run(ecfg, attacker.get());
      // Only receiver-side checks run after the attacker's hop; hop checks
      // at earlier honest stations see an untouched stream.
      for (const auto& cr : t.check_results) {
        if (cr.checker <= m) continue;
        matched += cr.signal_matched;
        errors += cr.signal_errors;
      }
    }
    const double lb = (m - 1) / (2.0 * m) - 0.03;
    const double rate =
        matched > 0 ? static_cast<double>(errors) / matched : 0.0;
    o.require(matched >= 10000,
              "only " + std::to_string(matched) + " matched samples" + tag);
    o.require(rate >= lb, "induced error rate " + fmt(rate) + " < " +
                              fmt(lb) + tag);
  }
  return o;
}

// 6. Multi-photon and out-of-band probes: the 50/50 splitter fires on half
//    of the sampled Trojan bundles, 16 samples push per-run detection past
//    0.999, the wavelength filter zeroes the invisible-photon leak, and the
//    enquiry permutation leaves a given party non-last with rate (m-1)/m.
Outcome criterion_trojan_and_probes() {
  Outcome o;
  {
    Rng rng(99);
    protocol::Photon bundle;
    bundle.kind = protocol::PhotonKind::MULTI;
    bundle.inner.resize(2);
    int hits = 0;
    const int trials = 10000;
    for (int k = 0; k < trials; ++k)
      if (protocol::Run::pns_detects(bundle, rng)) ++hits;
    const double freq = static_cast<double>(hits) / trials;
    o.require(std::abs(freq - 0.5) <= 0.02,
              "two-photon detection frequency " + fmt(freq));
    const double per_run = 1.0 - std::pow(0.5, 16);
    o.require(per_run >= 0.999, "16-sample detection " + fmt(per_run));
  }
  {
    protocol::ProtocolConfig cfg;  // defaults: m=2, n=2, N=32, improved
    const auto batch = run_batch(cfg, "trojan", 1, 200, 83);
    const auto stats = analysis::empirical_report(batch);
    o.require(stats.abort_rate >= 0.999,
              "Trojan abort rate " + fmt(stats.abort_rate) + " < 0.999");
  }
  {
    protocol::ProtocolConfig cfg;
    cfg.N = 64;
    const auto batch = run_batch(cfg, "invisible-photon", 1, 100, 87);
    const auto stats = analysis::empirical_report(batch);
    o.require(stats.aborted == 0, "invisible-photon run aborted");
    o.require(stats.captured_probes == 0 && stats.info_bits == 0,
              "filter leaked " + std::to_string(stats.info_bits) + " bits");
    o.require(stats.key_match_runs == stats.runs,
              "key mismatch under filtered probes");
  }
  for (int m : {2, 4}) {
    Rng rng(100 + static_cast<std::uint64_t>(m));
    std::vector<int> parties(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) parties[static_cast<std::size_t>(i)] = i + 1;
    int not_last = 0;
    const int trials = 10000;
    for (int k = 0; k < trials; ++k)
      if (protocol::enquiry_order(parties, rng).back() != 1) ++not_last;
    const double freq = static_cast<double>(not_last) / trials;
    const double expect = (m - 1.0) / m;
    o.require(std::abs(freq - expect) <= 0.02,
              "non-last frequency " + fmt(freq) + " vs " + fmt(expect) +
                  " (m=" + std::to_string(m) + ")");
  }
  return o;
}

// 7. Exactness: label bookkeeping equals the statevector on every gate
//    sequence of length <= 4; same-basis states are orthogonal; gate
//    identities hold; the Gram matrix is Hermitian with unit diagonal.
Outcome criterion_exactness() {
  Outcome o;
  std::vector<std::vector<Gate>> seqs{{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::vector<Gate>> next;
    for (const auto& s : seqs) {
      if (static_cast<int>(s.size()) != len - 1) {
        next.push_back(s);
        continue;
      }
      next.push_back(s);
      for (Gate g : kAllGates) {
        auto t = s;
        t.push_back(g);
        next.push_back(t);
      }
    }
    seqs = std::move(next);
  }
  for (int a = 0; a < 2 && o.ok; ++a) {
    for (int b = 0; b < 2 && o.ok; ++b) {
      for (const auto& s : seqs) {
        LabelState l{a, b, 0};
        PureState v = encode_bb84(a, b);
        for (Gate g : s) {
          l = label_apply(g, l);
          v = apply_gate(g, v);
        }
        if ((decode(l) - v).norm() >= 1e-12) {
          o.require(false, "label/statevector divergence at (a=" +
                               std::to_string(a) + ", b=" +
                               std::to_string(b) + ", len=" +
                               std::to_string(s.size()) + ")");
          break;
        }
      }
    }
  }
  for (int b = 0; b < 2; ++b) {
    const cxd ip = encode_bb84(0, b).dot(encode_bb84(1, b));
    o.require(std::abs(ip) < 1e-12, "same-basis states not orthogonal");
  }
  const Mat2& h = gate_matrix(Gate::H);
  o.require((h * gate_matrix(Gate::S2) * h - gate_matrix(Gate::S3)).norm() <
                1e-12,
            "H s2 H != s3");
  o.require((h * gate_matrix(Gate::S3) * h - gate_matrix(Gate::S2)).norm() <
                1e-12,
            "H s3 H != s2");
  o.require((h * h - gate_matrix(Gate::S0)).norm() < 1e-12, "H H != I");
  o.require(
      (gate_matrix(Gate::S2) * gate_matrix(Gate::S3) - gate_matrix(Gate::S1))
              .norm() < 1e-12,
      "s2 s3 != s1");
  const auto g =
      analysis::gram(analysis::eight_states(analysis::FakeSignalParams::epr()));
  o.require((g - g.adjoint()).norm() < 1e-12, "Gram not Hermitian");
  o.require((g.diagonal().real() - Eigen::VectorXd::Ones(g.rows())).norm() <
                    1e-12 &&
                g.diagonal().imag().norm() < 1e-12,
            "Gram diagonal != 1");
  return o;
}

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"analytic bound constants", 1.0, criterion_bound_constants},
      {"overlap-sum minimizer", 10.0, criterion_minimizer},
      {"honest-run completeness", 5.0, criterion_honest_completeness},
      {"base-protocol break", 2.0, criterion_base_protocol_break},
      {"hardened-mode detection", 30.0, criterion_hardened_detection},
      {"multi-photon and probe defenses", 10.0, criterion_trojan_and_probes},
      {"exactness suites", 1.0, criterion_exactness},
  };

  int failures = 0;
  bool all_quantitative_ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = criteria[i].check();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    o.require(secs < criteria[i].budget_seconds,
              "runtime " + fmt(secs) + "s exceeds " +
                  fmt(criteria[i].budget_seconds) + "s budget");
    std::printf("%s  criterion %zu: %s  (%.2f s)%s%s\n",
                o.ok ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(), secs,
                o.detail.empty() ? "" : "  -- ", o.detail.c_str());
    if (!o.ok) ++failures;
    all_quantitative_ok = all_quantitative_ok && o.ok;
  }

  // The overall security claim is qualitative; it is accepted exactly when
  // the quantitative detection and bound criteria above all hold.
  std::printf("%s  criterion 8: qualitative security conclusion  "
              "(covered by criteria 1-7)\n",
              all_quantitative_ok ? "PASS" : "FAIL");
  if (!all_quantitative_ok && failures == 0) ++failures;

  return failures;
}
