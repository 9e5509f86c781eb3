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

#ifndef QCCD_SIMULATOR_HPP
#define QCCD_SIMULATOR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qccd/circuit.hpp"
#include "qccd/machine.hpp"
#include "qccd/random.hpp"
#include "qccd/scheduler.hpp"

namespace qccd {

inline constexpr std::size_t kMaxSimQubits = 8;

/** Channel strength of a d-dimensional depolarizing channel with average infidelity r. */
double depolarizing_strength(double infidelity, int dim);

class DensityMatrix {
 public:
  explicit DensityMatrix(std::size_t n_qubits);
  static DensityMatrix from_matrix(const MatX &rho);

  std::size_t n_qubits() const { return n_; }
  const MatX &matrix() const { return rho_; }
  MatX &matrix() { return rho_; }

  void apply_1q(std::size_t q, const Mat2 &u);
  void apply_2q(std::size_t q0, std::size_t q1, const Mat4 &u);
  /** rho -> (1 - p) rho + p I/2 (x) tr_q rho. */
  void depolarize_1q(std::size_t q, double p);
  void depolarize_2q(std::size_t q0, std::size_t q1, double p);
  /** Coherences between |0> and |1> on q scaled by (1 - p). */
  void dephase(std::size_t q, double p);
  /** Z_q0 Z_q1 applied with probability p. */
  void correlated_dephase(std::size_t q0, std::size_t q1, double p);
  /** Unnormalized projection onto bit b of qubit q. */
  DensityMatrix project(std::size_t q, int b) const;
  void reset(std::size_t q);

  double trace() const;
  double prob_one(std::size_t q) const;
  /** Diagonal of rho indexed by computational basis state. */
  std::vector<double> probabilities() const;
  double min_eigenvalue() const;
  double hermiticity_error() const;

 private:
  std::size_t n_;
  MatX rho_;
};

class StateVector {
 public:
  explicit StateVector(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_; }
  const Eigen::VectorXcd &amplitudes() const { return psi_; }

  void apply_1q(std::size_t q, const Mat2 &u);
  void apply_2q(std::size_t q0, std::size_t q1, const Mat4 &u);
  double prob_one(std::size_t q) const;
  /** Projects onto bit b and renormalizes. */
  void collapse(std::size_t q, int b);
  double norm() const;

 private:
  std::size_t n_;
  Eigen::VectorXcd psi_;
};

enum class InstrKind { U1, U2, DEPOL1, DEPOL2, DEPHASE, CORR_ZZ, MEASURE, RESET };

struct Instr {
  InstrKind kind = InstrKind::U1;
  std::size_t q0 = 0;
  std::size_t q1 = 0;
  Mat2 u1 = Mat2::Identity();
  Mat4 u2 = Mat4::Identity();
  double p = 0;
  /** MEASURE: key written. */
  std::size_t key = 0;
  /** When >= 0 the instruction runs only if record[cond_key] == cond_value. */
  long cond_key = -1;
  int cond_value = 1;
};

/** Flat noisy instruction stream; measurement records indexed by `keys`. */
struct ExecProgram {
  std::size_t n_qubits = 0;
  std::vector<std::string> keys;
  std::vector<Instr> instrs;
  double duration_us = 0;

  std::size_t key_index(const std::string &key);
  void append(const ExecProgram &other);
};

ExecProgram lower_circuit(const Circuit &c, const NoiseModel &noise);

/**
 * Events in schedule order. Idle dephasing accrues between a qubit's gate
 * events; `emulated` Stark offsets are applied as physical Z rotations after
 * every timed event on the qubits it touches.
 */
ExecProgram lower_schedule(const TransportSchedule &s, const NoiseModel &noise, const StarkOffsets &emulated = {});

struct Distribution {
  std::vector<std::string> keys;
  /** Bitstring (one char per key in `keys` order) to probability. */
  std::map<std::string, double> probs;

  double operator[](const std::string &bits) const;
  double total() const;
  /** Marginal distribution over a subset of keys (in the given order). */
  Distribution marginal(const std::vector<std::string> &subset) const;
};

struct Branch {
  std::vector<int> record;
  DensityMatrix rho;
};

/** Exact evolution with one branch per distinct record history. */
std::vector<Branch> run_branches(const ExecProgram &prog);
Distribution run_exact(const ExecProgram &prog);
Distribution run_exact(const Circuit &c, const NoiseModel &noise);
Distribution run_exact(const TransportSchedule &s, const NoiseModel &noise, const StarkOffsets &emulated = {});

struct ShotRecord {
  std::map<std::string, int> outcomes;
  bool scrubbed = false;
  double wall_time_us = 0;
  std::uint64_t seed = 0;
};

struct ShotBatch {
  std::vector<std::string> keys;
  /** Every attempt, scrubbed ones included. */
  std::vector<ShotRecord> records;
  std::size_t shots = 0;
  std::size_t scrubbed = 0;
  std::size_t attempts = 0;

  /** Bitstring counts over unscrubbed records. */
  std::map<std::string, std::size_t> counts() const;
};

/** Seeded trajectories; attempt k uses derive_seed(seed, "shot", k). */
ShotBatch run_shots(const ExecProgram &prog, std::size_t n_shots, std::uint64_t seed, double p_scrub);
ShotBatch run_shots(const Circuit &c, const NoiseModel &noise, std::size_t n_shots, std::uint64_t seed);
ShotBatch run_shots(const TransportSchedule &s, const NoiseModel &noise, std::size_t n_shots, std::uint64_t seed,
                    const StarkOffsets &emulated = {});

/** Mid-circuit Z measurement: sampled outcome, low-crosstalk readout error, dephasing on the other qubits. */
int mid_measure(DensityMatrix &rho, std::size_t q, const NoiseModel &noise, Rng &rng);

/** Multinomial sample of n shots from a distribution; counts keyed by bitstring. */
std::map<std::string, std::size_t> sample_counts(const Distribution &d, std::size_t n, std::uint64_t seed);

}  // namespace qccd

#endif
