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

#include "qss/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace qss::analysis {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Clamp (x, q) onto the Cauchy-Schwarz disk for the given z.
std::array<double, 3> project_feasible(double x, double q, double z) {
  z = std::clamp(z, 0.0, 1.0);
  const double r2max = 4.0 * z * (1.0 - z);
  const double r2 = x * x + q * q;
  if (r2 > r2max) {
    const double scale = r2 > 0 ? std::sqrt(r2max / r2) : 0.0;
    x *= scale;
    q *= scale;
  }
  return {x, q, z};
}

}  // namespace

bool OverlapParams::feasible() const {
  return std::abs(z + t - 1.0) <= 1e-12 && z >= 0.0 && z <= 1.0 &&
         x * x + q * q <= 4.0 * z * t + 1e-12;
}

void OverlapParams::validate() const {
  if (std::abs(z + t - 1.0) > 1e-12) {
    throw DomainError("OverlapParams: z + t must equal 1");
  }
  if (z < 0.0 || z > 1.0) {
    throw DomainError("OverlapParams: z must lie in [0, 1]");
  }
  if (x * x + q * q > 4.0 * z * t + 1e-9) {
    throw DomainError("OverlapParams: x^2 + q^2 <= 4zt violated");
  }
}

OverlapParams FakeSignalParams::overlaps() const {
  const cxd ab = inner(alpha, beta);
  OverlapParams p;
  p.x = 2.0 * ab.real();
  p.q = 2.0 * ab.imag();
  p.z = alpha.squaredNorm();
  p.t = beta.squaredNorm();
  return p;
}

FakeSignalParams FakeSignalParams::epr() {
  return from_overlaps(OverlapParams::epr());
}

FakeSignalParams FakeSignalParams::from_overlaps(const OverlapParams& p) {
  p.validate();
  FakeSignalParams fp;
  fp.alpha = Eigen::VectorXcd::Zero(2);
  fp.beta = Eigen::VectorXcd::Zero(2);
  if (p.z < 1e-15) {
    fp.beta(0) = std::sqrt(p.t);
    return fp;
  }
  const double rz = std::sqrt(p.z);
  fp.alpha(0) = rz;
  const cxd b0 = cxd(p.x, p.q) / (2.0 * rz);
  fp.beta(0) = b0;
  const double rem = p.t - std::norm(b0);
  fp.beta(1) = std::sqrt(std::max(rem, 0.0));
  return fp;
}

std::vector<BipartiteState> eight_states(const FakeSignalParams& fp) {
  const BipartiteState base = qss::make_pair(fp.alpha, fp.beta);
  std::vector<BipartiteState> out;
  out.reserve(8);
  const Gate paulis[] = {Gate::S0, Gate::S1, Gate::S2, Gate::S3};
  for (Gate g : paulis) out.push_back(apply_on_a(g, base));
  for (Gate g : paulis) out.push_back(apply_on_a(Gate::H, apply_on_a(g, base)));
  return out;
}

Eigen::MatrixXcd gram(const std::vector<BipartiteState>& states) {
  const Eigen::Index n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = inner(states[i], states[j]);
  return g;
}

double overlap_sum_direct(const std::vector<BipartiteState>& states) {
  const Eigen::MatrixXcd g = gram(states);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      if (i != j) sum += std::abs(g(i, j));
  return sum;
}

double overlap_sum_direct(const OverlapParams& p) {
  return overlap_sum_direct(eight_states(FakeSignalParams::from_overlaps(p)));
}

double overlap_sum_formula(const OverlapParams& p) {
  const double zt = p.z - p.t;
  return 8.0 * std::abs(p.q) + 8.0 * std::abs(zt) + 8.0 * std::abs(p.x) +
         (8.0 / kSqrt2) * std::abs(zt + p.x) +
         (8.0 / kSqrt2) * std::abs(zt - p.x) +
         (16.0 / kSqrt2) * std::sqrt(1.0 + p.q * p.q);
}

double p1_bound(const OverlapParams& p) {
  // M = 8 states, uniform priors: sqrt(p_i p_j) = 1/8 inside the sum.
  return 1.0 - (1.0 / 7.0) * (1.0 / 8.0) * overlap_sum_direct(p);
}

double p2_bound(const OverlapParams& p) {
  const auto states = eight_states(FakeSignalParams::from_overlaps(p));
  const Eigen::MatrixXcd g = gram(states);
  // Sets {phi_k, phi_{k+4}}, k = 0..3; cross-set ordered pairs only.
  // Coefficient sqrt((1/8 * 1/8) / ((8-2)(8-2))) = 1/48 per term.
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          sum += std::abs(g(i + 4 * k, j + 4 * l));
    }
  }
  return 1.0 - sum / 48.0;
}

BoundReport bound_report(const OverlapParams& p) {
  p.validate();
  BoundReport r;
  r.params = p;
  r.overlap_sum_direct = overlap_sum_direct(p);
  r.overlap_sum_formula = overlap_sum_formula(p);
  r.p1 = p1_bound(p);
  r.p2 = p2_bound(p);
  r.formula_mismatch =
      std::abs(r.overlap_sum_direct - r.overlap_sum_formula) > 1e-9;
  r.at_minimizer = std::abs(p.x) < 1e-6 && std::abs(p.q) < 1e-6 &&
                   std::abs(p.z - 0.5) < 1e-6;
  return r;
}

namespace {

double objective(const std::array<double, 3>& v) {
  auto [x, q, z] = project_feasible(v[0], v[1], v[2]);
  OverlapParams p{x, q, z, 1.0 - z};
  return overlap_sum_direct(p);
}

// Nelder-Mead on (x, q, z) with feasibility projection.
std::pair<std::array<double, 3>, double> nelder_mead(
    std::array<double, 3> start, int iters) {
  using Pt = std::array<double, 3>;
  std::array<Pt, 4> simplex;
  std::array<double, 4> f;
  simplex[0] = start;
  for (int i = 1; i < 4; ++i) {
    simplex[i] = start;
    simplex[i][i - 1] += 0.1;
  }
  for (int i = 0; i < 4; ++i) f[i] = objective(simplex[i]);

  for (int it = 0; it < iters; ++it) {
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return f[a] < f[b]; });
    std::array<Pt, 4> s2;
    std::array<double, 4> f2;
    for (int i = 0; i < 4; ++i) {
      s2[i] = simplex[order[i]];
      f2[i] = f[order[i]];
    }
    simplex = s2;
    f = f2;

    Pt centroid{};
    for (int i = 0; i < 3; ++i)
      for (int d = 0; d < 3; ++d) centroid[d] += simplex[i][d] / 3.0;

    auto blend = [&](double coef) {
      Pt p;
      for (int d = 0; d < 3; ++d)
        p[d] = centroid[d] + coef * (centroid[d] - simplex[3][d]);
      return p;
    };

    Pt refl = blend(1.0);
    double fr = objective(refl);
    if (fr < f[0]) {
      Pt exp_ = blend(2.0);
      double fe = objective(exp_);
      if (fe < fr) {
        simplex[3] = exp_;
        f[3] = fe;
      } else {
        simplex[3] = refl;
        f[3] = fr;
      }
    } else if (fr < f[2]) {
      simplex[3] = refl;
      f[3] = fr;
    } else {
      Pt con = blend(-0.5);
      double fc = objective(con);
      if (fc < f[3]) {
        simplex[3] = con;
        f[3] = fc;
      } else {
        for (int i = 1; i < 4; ++i) {
          for (int d = 0; d < 3; ++d)
            simplex[i][d] = simplex[0][d] + 0.5 * (simplex[i][d] - simplex[0][d]);
          f[i] = objective(simplex[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (f[i] < f[best]) best = i;
  return {simplex[best], f[best]};
}

}  // namespace

MinimizeResult minimize_overlap(std::uint64_t seed) {
  // Coarse feasible grid, then local descent from the best cells.
  std::array<double, 3> best{0.3, 0.3, 0.3};
  double fbest = std::numeric_limits<double>::infinity();
  for (int iz = 1; iz < 20; ++iz) {
    const double z = iz / 20.0;
    const double rmax = 2.0 * std::sqrt(z * (1.0 - z));
    for (int ir = 0; ir <= 4; ++ir) {
      const double r = rmax * ir / 4.0;
      const int nth = ir == 0 ? 1 : 8;
      for (int ith = 0; ith < nth; ++ith) {
        const double th = 2.0 * M_PI * ith / nth;
        std::array<double, 3> v{r * std::cos(th), r * std::sin(th), z};
        const double fv = objective(v);
        if (fv < fbest) {
          fbest = fv;
          best = v;
        }
      }
    }
  }

  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  auto [pt, val] = nelder_mead(best, 400);
  for (int restart = 0; restart < 4; ++restart) {
    std::array<double, 3> s = {best[0] + jitter(eng), best[1] + jitter(eng),
                               std::clamp(best[2] + jitter(eng), 0.01, 0.99)};
    auto [p2, v2] = nelder_mead(s, 400);
    if (v2 < val) {
      val = v2;
      pt = p2;
    }
  }
  // Polish from the incumbent.
  auto [pf, vf] = nelder_mead(pt, 400);
  if (vf < val) {
    val = vf;
    pt = pf;
  }

  auto [x, q, z] = project_feasible(pt[0], pt[1], pt[2]);
  return {OverlapParams{x, q, z, 1.0 - z}, val};
}

Predictions analytic_predictions(int m) {
  if (m < 2) throw DomainError("analytic_predictions: m must be >= 2");
  const double md = m;
  return {(md - 1.0) / (2.0 * md), (md - 1.0) / md};
}

BatchStats empirical_report(
    const std::vector<protocol::RunTranscript>& transcripts) {
  if (transcripts.empty())
    throw EmptyBatchError("empirical_report: no transcripts");
  BatchStats s;
  s.runs = static_cast<int>(transcripts.size());
  double key_len_sum = 0.0;
  double acc_sum = 0.0;
  for (const auto& t : transcripts) {
    if (t.aborted) {
      ++s.aborted;
    } else {
      ++s.completed_runs;
      key_len_sum += static_cast<double>(t.group_key.size());
      if (t.predicted_key == t.group_key) ++s.key_match_runs;
    }
    for (const auto& c : t.check_results) {
      s.matched += c.matched;
      s.errors += c.errors;
      s.pns_detections += c.pns_detections;
      if (c.checker > t.config.m) {
        s.bob_matched += c.matched;
        s.bob_errors += c.errors;
        s.bob_signal_matched += c.signal_matched;
        s.bob_signal_errors += c.signal_errors;
      }
    }
    if (t.eve.key_accuracy >= 0.0) {
      acc_sum += t.eve.key_accuracy;
      ++s.accuracy_runs;
    }
    s.pgm_trials += t.eve.pgm_trials;
    s.pgm_successes += t.eve.pgm_successes;
    s.captured_probes += t.eve.captured_probes;
    s.info_bits += t.eve.info_bits;
  }
  s.abort_rate = static_cast<double>(s.aborted) / s.runs;
  if (s.matched > 0)
    s.error_rate = static_cast<double>(s.errors) / s.matched;
  if (s.bob_matched > 0)
    s.bob_error_rate = static_cast<double>(s.bob_errors) / s.bob_matched;
  if (s.bob_signal_matched > 0)
    s.bob_signal_error_rate =
        static_cast<double>(s.bob_signal_errors) / s.bob_signal_matched;
  if (s.completed_runs > 0) s.mean_key_len = key_len_sum / s.completed_runs;
  if (s.accuracy_runs > 0) s.mean_accuracy = acc_sum / s.accuracy_runs;
  return s;
}

}  // namespace qss::analysis
