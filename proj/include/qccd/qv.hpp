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


#ifndef QCCD_QV_HPP
#define QCCD_QV_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qccd/circuit.hpp"
#include "qccd/machine.hpp"
#include "qccd/simulator.hpp"

namespace qccd {

/**
 * N rounds; each round draws a uniform permutation of the qubits and applies
 * a Haar SU(4) to each adjacent pair of the permuted order. Terminal
 * measurements "m<q>" in qubit order.
 */
Circuit gen_qv_circuit(std::size_t n, std::uint64_t seed);

/** Merge (optional) then synthesis to native gates. */
Circuit compile_qv_circuit(const Circuit &c, bool merge);

/** Outcomes whose ideal probability is strictly above the median over all 2^N outcomes. */
std::vector<std::string> heavy_set(const Distribution &ideal, std::size_t n_qubits);

struct QVCircuitRecord {
  std::uint64_t seed = 0;
  std::size_t blocks = 0;
  std::size_t zz_count = 0;
  double ideal_heavy_prob = 0;
  std::size_t heavy_shots = 0;
  std::size_t shots = 0;
  double heavy_fraction = 0;
};

struct QVResult {
  std::size_t n = 0;
  std::size_t n_circuits = 0;
  std::size_t n_shots = 0;
  std::vector<QVCircuitRecord> records;
  double h_mean = 0;
  double sigma = 0;
  bool pass = false;
  /** Normal tail probability that the heavy-output frequency exceeds 2/3. */
  double confidence = 0;
  double ideal_heavy_mean = 0;
  double mean_zz = 0;
};

/**
 * ideal[c] is the noiseless distribution of circuit c; counts[c] the measured
 * bitstring counts, each summing to the same shot count.
 */
QVResult qv_analyze(std::size_t n_qubits, const std::vector<Distribution> &ideal,
                    const std::vector<std::map<std::string, std::size_t>> &counts);

struct QVConfig {
  std::size_t n = 4;
  std::size_t circuits = 100;
  std::size_t shots = 500;
  std::uint64_t seed = 1;
  NoiseModel noise;
  /** Block merging before synthesis; on by default for N >= 6. */
  bool merge = false;
  /** Simulate the compiled transport schedule (N = 4 or 6) instead of the native circuit. */
  bool scheduled = false;
};

/** Defaults per N: 100 x 500 up to N = 4; 400 x 100 with merging above. */
QVConfig default_qv_config(std::size_t n);

QVResult run_qv(const QVConfig &cfg);

}  // namespace qccd

#endif
