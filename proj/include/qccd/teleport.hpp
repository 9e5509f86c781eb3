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


#ifndef QCCD_TELEPORT_HPP
#define QCCD_TELEPORT_HPP

#include <array>
#include <cstdint>
#include <string>

#include "qccd/circuit.hpp"
#include "qccd/machine.hpp"

namespace qccd {

/** Input state of one logical qubit: '0', '1', '+' or '-'. */
struct TeleportInput {
  char q3 = '0';
  char q0 = '0';

  std::string label() const { return std::string("|") + q3 + q0 + ">"; }
};

/** The 8 truth-table inputs: {0,1}^2 then {+,-}^2, labeled |q3 q0>. */
std::array<TeleportInput, 8> teleport_inputs();

/** Expected output of CNOT(q0 -> q3) for a truth-table input. */
TeleportInput teleport_expected(const TeleportInput &in);

/**
 * Gate teleportation of CNOT(q0 -> q3): Bell pair on (q1, q2), CNOT(q0 -> q1),
 * CNOT(q2 -> q3), Z measurement of q1 ("m1") feeding X on q3, X measurement
 * of q2 ("m2") feeding Z on q0. Inputs are prepared on q0 and q3 and read out
 * in their own basis into "out3" and "out0". Three ZZ gates.
 */
Circuit teleport_circuit(const TeleportInput &in, bool feedforward = true);

/**
 * Exact noiseless check of the construction over 16 tomographically complete
 * product inputs; returns the worst deviation of the (q0, q3) output state
 * from CNOT(q0 -> q3).
 */
double teleport_construction_error();

/** (4/5)(f1 + f2) - 3/5. */
double hofmann_bound(double f1, double f2);

struct TeleportResult {
  std::array<TeleportInput, 8> inputs;
  std::array<double, 8> success{};
  double f1 = 0;
  double f2 = 0;
  double f_avg_lb = 0;
  double construction_error = 0;
  std::size_t shots = 0;
  bool scheduled = false;
};

/**
 * Runs all 8 inputs. shots = 0 reports exact success probabilities;
 * otherwise frequencies from `shots` samples per input. With `scheduled` the
 * circuits are compiled for the N4 machine and simulated with idle noise.
 * Throws std::logic_error if the construction check fails.
 */
TeleportResult teleport_suite(const NoiseModel &noise, std::size_t shots, std::uint64_t seed, bool scheduled = false);

}  // namespace qccd

#endif
