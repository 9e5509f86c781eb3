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

#ifndef QCCD_SYNTHESIS_HPP
#define QCCD_SYNTHESIS_HPP

#include <optional>
#include <vector>

#include "qccd/circuit.hpp"

namespace qccd {

/** Z-rotation resolution of the control system. */
inline constexpr double kZResolution = kPi / 500;

/** Wraps to (-pi, pi], rounds to the nearest multiple of pi/500 (ties toward zero), wraps again. */
double quantize_z(double theta);

struct NativeSequence {
  std::size_t n_qubits = 1;
  std::vector<GateOp> ops;
  std::optional<MatX> target_unitary;

  MatX unitary() const { return circuit_unitary(ops, n_qubits); }
  std::size_t count_zz() const;
};

struct SynthOptions {
  bool quantize = true;
};

/**
 * U ~ RXY(pi/2, p1) RXY(pi/2, p2) RZ(z) with RZ applied first; degenerate
 * inputs give shorter sequences. Ops act on qubit `q`.
 */
NativeSequence synth_su2(const Mat2 &u, SynthOptions opts = {}, std::size_t q = 0);

/** U = phase * kron(a0, a1) * exp(i(x XX + y YY + z ZZ)) * kron(b0, b1). */
struct KakDecomposition {
  Mat2 a0, a1, b0, b1;
  double x = 0, y = 0, z = 0;
  cplx global_phase = 1;

  Mat4 reconstruct() const;
};

Mat4 canonical_gate(double x, double y, double z);
KakDecomposition kak_decompose(const Mat4 &u);

/** Exactly three ZZ ops on (q0, q1) with native single-qubit layers between them. */
NativeSequence synth_su4(const Mat4 &u, SynthOptions opts = {}, std::size_t q0 = 0, std::size_t q1 = 1);

/** Native CNOT (control c, target t) with one ZZ. */
std::vector<GateOp> native_cnot(std::size_t c, std::size_t t);

struct FrameResult {
  std::vector<GateOp> ops;
  /** Per-qubit Z frame left over at the end. */
  std::vector<double> residual;
};

/**
 * Moves every RZ forward through the sequence into the phases of later RXY
 * ops: RZ(z) then RXY(t, p) becomes RXY(t, p - z) then RZ(z). ZZ commutes
 * with the frame, measurement keeps it, RESET clears it. Before a COND or
 * UNITARY op the frame on the touched qubits is flushed as an explicit RZ.
 * With keep_trailing the residual frames are appended as RZ ops.
 */
FrameResult commute_z_forward(const std::vector<GateOp> &ops, std::size_t n_qubits, bool keep_trailing = false);
NativeSequence commute_z_forward(const NativeSequence &seq, bool keep_trailing = false);

/**
 * Joins UNITARY4 blocks on the same qubit pair with nothing in between on
 * either qubit, and absorbs UNITARY2 ops into an adjacent block on that qubit.
 */
Circuit merge_two_qubit_blocks(const Circuit &c);

/** Rewrites every UNITARY2/UNITARY4 and non-native RXY into native ops. */
Circuit synthesize_circuit(const Circuit &c, SynthOptions opts = {});

}  // namespace qccd

#endif
