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

#include "qss/qcore.hpp"

#include <array>
#include <cmath>

namespace qss {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::array<Mat2, 5> build_gates() {
  std::array<Mat2, 5> g;
  g[0] << 1, 0, 0, 1;                            // sigma_0 = I
  g[1] << 0, 1, -1, 0;                           // sigma_1 = i sigma_y
  g[2] << 1, 0, 0, -1;                           // sigma_2 = sigma_z
  g[3] << 0, 1, 1, 0;                            // sigma_3 = sigma_x
  g[4] << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;  // Hadamard
  return g;
}

cxd phase_value(int phase_pow) {
  switch (phase_pow & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

BipartiteState make_bell(double c00, double c01, double c10, double c11) {
  BipartiteState bs;
  bs.dim_e = 2;
  bs.amps = Eigen::VectorXcd(4);
  bs.amps << c00 * kInvSqrt2, c01 * kInvSqrt2, c10 * kInvSqrt2,
      c11 * kInvSqrt2;
  return bs;
}

}  // namespace

const Mat2& gate_matrix(Gate g) {
  static const std::array<Mat2, 5> gates = build_gates();
  return gates[static_cast<int>(g)];
}

PureState encode_bb84(int a, int b) {
  if (b == 0) {
    return a == 0 ? PureState(1, 0) : PureState(0, 1);
  }
  return a == 0 ? PureState(kInvSqrt2, kInvSqrt2)
                : PureState(kInvSqrt2, -kInvSqrt2);
}

PureState apply_gate(Gate g, const PureState& s) {
  return gate_matrix(g) * s;
}

LabelState label_apply(Gate g, LabelState l) {
  switch (g) {
    case Gate::S0:
      return l;
    case Gate::S1:
      // i sigma_y: |0> -> -|1>, |1> -> |0>, |+> -> |->, |-> -> -|+>
      if (l.a == l.b) l.phase_pow = (l.phase_pow + 2) & 3;
      l.a ^= 1;
      return l;
    case Gate::S2:
      // sigma_z: |1> -> -|1>, swaps |+> and |->
      if (l.b == 0) {
        if (l.a == 1) l.phase_pow = (l.phase_pow + 2) & 3;
      } else {
        l.a ^= 1;
      }
      return l;
    case Gate::S3:
      // sigma_x: swaps |0> and |1>, |-> -> -|->
      if (l.b == 0) {
        l.a ^= 1;
      } else {
        if (l.a == 1) l.phase_pow = (l.phase_pow + 2) & 3;
      }
      return l;
    case Gate::H:
      l.b ^= 1;
      return l;
  }
  return l;  // unreachable
}

PureState decode(const LabelState& l) {
  return phase_value(l.phase_pow) * encode_bb84(l.a, l.b);
}

BipartiteState make_pair(const Eigen::VectorXcd& alpha,
                         const Eigen::VectorXcd& beta) {
  if (alpha.size() != beta.size()) {
    throw DimensionError("make_pair: alpha and beta dimensions differ");
  }
  const Eigen::Index s = alpha.size();
  if (s < 2) {
    throw DimensionError("make_pair: attacker system must have S >= 2 levels");
  }
  const double total = alpha.squaredNorm() + beta.squaredNorm();
  if (std::abs(total - 1.0) > 1e-9) {
    throw NormalizationError("make_pair: <a|a> + <b|b> must equal 1");
  }
  BipartiteState bs;
  bs.dim_e = s;
  bs.amps = Eigen::VectorXcd(2 * s);
  bs.amps.head(s) = alpha;
  bs.amps.tail(s) = beta;
  return bs;
}

BipartiteState apply_on_a(Gate g, const BipartiteState& bs) {
  const Mat2& u = gate_matrix(g);
  const Eigen::Index s = bs.dim_e;
  BipartiteState out;
  out.dim_e = s;
  out.amps = Eigen::VectorXcd(2 * s);
  out.amps.head(s) = u(0, 0) * bs.amps.head(s) + u(0, 1) * bs.amps.tail(s);
  out.amps.tail(s) = u(1, 0) * bs.amps.head(s) + u(1, 1) * bs.amps.tail(s);
  return out;
}

cxd inner(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  if (u.size() != v.size()) {
    throw DimensionError("inner: dimension mismatch");
  }
  return u.dot(v);  // Eigen's dot conjugates the first argument
}

cxd inner(const BipartiteState& u, const BipartiteState& v) {
  return inner(u.amps, v.amps);
}

const BipartiteState& bell_phi_plus() {
  static const BipartiteState s = make_bell(1, 0, 0, 1);
  return s;
}
const BipartiteState& bell_phi_minus() {
  static const BipartiteState s = make_bell(1, 0, 0, -1);
  return s;
}
const BipartiteState& bell_psi_plus() {
  static const BipartiteState s = make_bell(0, 1, 1, 0);
  return s;
}
const BipartiteState& bell_psi_minus() {
  static const BipartiteState s = make_bell(0, 1, -1, 0);
  return s;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t x = master ^ (counter * 0x9E3779B97F4A7C15ULL);
  // splitmix64 finalizer
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

const PureState& basis_vector(Basis basis, int outcome) {
  static const PureState z0 = encode_bb84(0, 0);
  static const PureState z1 = encode_bb84(1, 0);
  static const PureState x0 = encode_bb84(0, 1);
  static const PureState x1 = encode_bb84(1, 1);
  if (basis == Basis::Z) return outcome == 0 ? z0 : z1;
  return outcome == 0 ? x0 : x1;
}

std::pair<int, PureState> measure(const PureState& s, Basis basis, Rng& rng) {
  const double p0 = std::norm(basis_vector(basis, 0).dot(s));
  const int outcome = rng.uniform() < p0 ? 0 : 1;
  return {outcome, basis_vector(basis, outcome)};
}

PairMeasurement measure_a(const BipartiteState& bs, Basis basis, Rng& rng) {
  const Eigen::Index s = bs.dim_e;
  const PureState& e0 = basis_vector(basis, 0);
  const PureState& e1 = basis_vector(basis, 1);
  // Project A onto each basis vector; the E remainder is the residual.
  Eigen::VectorXcd r0 = std::conj(e0(0)) * bs.amps.head(s) +
                        std::conj(e0(1)) * bs.amps.tail(s);
  Eigen::VectorXcd r1 = std::conj(e1(0)) * bs.amps.head(s) +
                        std::conj(e1(1)) * bs.amps.tail(s);
  const double p0 = r0.squaredNorm();
  const int outcome = rng.uniform() < p0 ? 0 : 1;

  const PureState& ea = basis_vector(basis, outcome);
  const Eigen::VectorXcd& res = outcome == 0 ? r0 : r1;
  BipartiteState post;
  post.dim_e = s;
  post.amps = Eigen::VectorXcd(2 * s);
  Eigen::VectorXcd e_norm = res / res.norm();
  post.amps.head(s) = ea(0) * e_norm;
  post.amps.tail(s) = ea(1) * e_norm;
  return {outcome, std::move(post), std::move(r0), std::move(r1)};
}

}  // namespace qss
