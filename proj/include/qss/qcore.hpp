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

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace qss {

using cxd = std::complex<double>;
using PureState = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kStateTol = 1e-12;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NormalizationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The five encoding operations: identity, i*sigma_y, sigma_z, sigma_x,
/// and the Hadamard gate.
enum class Gate : int { S0 = 0, S1 = 1, S2 = 2, S3 = 3, H = 4 };

inline constexpr Gate kAllGates[] = {Gate::S0, Gate::S1, Gate::S2, Gate::S3,
                                     Gate::H};

const Mat2& gate_matrix(Gate g);

enum class Basis : int { Z = 0, X = 1 };

/// Exact classical bookkeeping of a BB84 state: phase * |psi_{a b}>,
/// with phase = i^phase_pow. The four-state set is closed under the
/// five gates up to such a phase, so this tracks the statevector exactly.
struct LabelState {
  int a = 0;
  int b = 0;
  int phase_pow = 0;  // phase = i^phase_pow, phase_pow in {0,1,2,3}

  friend bool operator==(const LabelState&, const LabelState&) = default;
};

PureState encode_bb84(int a, int b);
PureState apply_gate(Gate g, const PureState& s);

LabelState label_apply(Gate g, LabelState l);
PureState decode(const LabelState& l);

/// Qubit A tensored with an S-level attacker system E, A as leading index.
/// amps(a * dim_e + e) is the amplitude of |a>_A |e>_E.
struct BipartiteState {
  Eigen::VectorXcd amps;
  Eigen::Index dim_e = 2;
};

/// Builds |0>_A|alpha>_E + |1>_A|beta>_E. Requires <a|a> + <b|b> = 1.
BipartiteState make_pair(const Eigen::VectorXcd& alpha,
                         const Eigen::VectorXcd& beta);

BipartiteState apply_on_a(Gate g, const BipartiteState& bs);

cxd inner(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);
cxd inner(const BipartiteState& u, const BipartiteState& v);

const BipartiteState& bell_phi_plus();
const BipartiteState& bell_phi_minus();
const BipartiteState& bell_psi_plus();
const BipartiteState& bell_psi_minus();

/// Seeded random stream. One engine per protocol run; every stochastic
/// choice in a run draws from it, which makes transcripts reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return real_(eng_); }
  int uniform_int(int lo, int hi) {  // inclusive range
    return std::uniform_int_distribution<int>(lo, hi)(eng_);
  }
  bool coin() { return uniform_int(0, 1) == 1; }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::uniform_real_distribution<double> real_{0.0, 1.0};
};

/// Counter-based per-repetition seed derivation (splitmix64 of
/// master ^ odd-multiplied counter), so repetition k is reproducible
/// in isolation.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

/// Born-rule measurement. Outcome 0 maps to the first basis vector
/// (|0> or |+>), outcome 1 to the second (|1> or |->).
std::pair<int, PureState> measure(const PureState& s, Basis basis, Rng& rng);

const PureState& basis_vector(Basis basis, int outcome);

/// Measurement of the A qubit of a bipartite state. Keeps the
/// unnormalized E residuals for both branches so an attacker holding E
/// can be modeled after the collapse.
struct PairMeasurement {
  int outcome;
  BipartiteState post;          // collapsed full state
  Eigen::VectorXcd residual0;   // unnormalized E state for A outcome 0
  Eigen::VectorXcd residual1;   // unnormalized E state for A outcome 1
};

PairMeasurement measure_a(const BipartiteState& bs, Basis basis, Rng& rng);

}  // namespace qss
