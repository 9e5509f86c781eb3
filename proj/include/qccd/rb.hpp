// Copyright 2026 The QCCD Toolkit Authors
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


#ifndef QCCD_RB_HPP
#define QCCD_RB_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qccd/circuit.hpp"
#include "qccd/machine.hpp"
#include "qccd/simulator.hpp"

namespace qccd {

/** One RB sequence on one or more registers run side by side. */
struct RBSequence {
  Circuit circuit;
  /** Native ops of each Clifford layer (all registers), then the inversion layer. */
  std::vector<std::vector<GateOp>> layers;
  /** Ideal measured bit per circuit qubit after the randomizing Pauli. */
  std::vector<int> expected;
  std::size_t length = 0;
};

/**
 * Random sequences of `length` Cliffords on each register (registers hold n
 * = 1 or 2 qubits), an inversion Clifford per register, a random X layer
 * and terminal measurements "m<q>" of every register qubit.
 */
RBSequence gen_rb_registers(std::size_t n, const std::vector<std::vector<std::size_t>> &registers,
                            std::size_t n_qubits, std::size_t length, std::uint64_t seed);

/** Single register on qubits 0..n-1. */
RBSequence gen_rb(std::size_t n, std::size_t length, std::uint64_t seed);

/** Two-qubit RB on (0,1) and (2,3) simultaneously. */
RBSequence gen_rb_simultaneous(std::size_t length, std::uint64_t seed);

/** Lowered program; when p_corr > 0 a correlated Z(q_a)Z(q_b) error follows every layer. */
ExecProgram lower_rb(const RBSequence &seq, const NoiseModel &noise, double p_corr = 0, std::size_t q_a = 1,
                     std::size_t q_b = 2);

struct DecayFit {
  double A = 0;
  double alpha = 0;
  double B = 0.5;
  double sigma_alpha = 0;
  bool degenerate = false;
  /** Nonparametric bootstrap replicates of alpha. */
  std::vector<double> boot_alpha;
};

/** Least squares fit of p = A alpha^l + B with B fixed, alpha in (0, 1]. */
DecayFit fit_curve(const std::vector<std::size_t> &lengths, const std::vector<double> &means, double B = 0.5);

/**
 * survivals[l][s] is the survival of sequence s at lengths[l]. alpha is fit
 * to the per-length means; sigma_alpha is the standard deviation of the fit
 * over n_boot resamples of sequences (with replacement, per length). The
 * resample indices depend only on (seed, replicate, shape), so fits of
 * different observables of one experiment share them.
 */
DecayFit fit_decay(const std::vector<std::size_t> &lengths, const std::vector<std::vector<double>> &survivals,
                   std::size_t n_boot, std::uint64_t seed);

/** Z-type observable given as a bit mask over circuit qubits (bit q for qubit q). */
struct ObservableDecay {
  unsigned mask = 0;
  std::string label;
  std::vector<double> survival;
  DecayFit fit;
};

struct RBResult {
  std::size_t n = 2;
  std::vector<std::vector<std::size_t>> registers;
  std::vector<std::size_t> lengths;
  std::size_t sequences = 0;
  std::size_t shots = 0;
  /** Per register: survival means averaged over the register's observables, and the fit. */
  std::vector<std::vector<double>> survival;
  std::vector<DecayFit> fits;
  /** Every nontrivial Z-type observable over all register qubits. */
  std::vector<ObservableDecay> observables;

  const ObservableDecay &observable(unsigned mask) const;
};

struct RBConfig {
  std::size_t n = 2;
  bool simultaneous = false;
  std::vector<std::size_t> lengths = {1, 2, 4, 8, 16, 32};
  std::size_t sequences = 50;
  /** 0 uses exact expectation values. */
  std::size_t shots = 500;
  std::size_t n_boot = 200;
  std::uint64_t seed = 1;
  NoiseModel noise;
  double p_corr = 0;
  /** Empty: (0..n-1), or (0,1),(2,3) when simultaneous. */
  std::vector<std::vector<std::size_t>> registers;
};

RBResult run_rb(const RBConfig &cfg);

/** Decay of an RB experiment whose only error is depolarizing noise after each native gate. */
double predicted_rb_alpha(std::size_t n, double p_sq_depol, double p_tq_depol);

/** Average infidelity per Clifford from alpha: (d - 1)(1 - alpha)/d. */
double clifford_infidelity(double alpha, std::size_t n);

struct CrosstalkResult {
  double alpha[2] = {0, 0};
  double alpha_both[2] = {0, 0};
  double gamma[2] = {0, 0};
  double sigma_gamma[2] = {0, 0};
  double beta[2][3] = {};
  double sigma_beta[2][3] = {};
  double mu[3][3] = {};
  double sigma_mu[3][3] = {};
  double delta[3][3] = {};
  /** Bootstrap standard deviation of beta_1i beta_2j - mu_ij. */
  double sigma_delta[3][3] = {};

  /** Largest delta / sigma_delta. */
  double max_delta_significance() const;
};

/**
 * Addressability and correlation statistics from two individual two-qubit RB
 * runs and one simultaneous run carrying all 15 Z-type observables.
 */
CrosstalkResult crosstalk_stats(const RBResult &individual1, const RBResult &individual2, const RBResult &simultaneous);

/** Pair observable i in {0, 1, 2}: Z on the first qubit, on the second, on both. */
unsigned pair_observable_mask(std::size_t i, std::size_t first_qubit);

}  // namespace qccd

#endif
