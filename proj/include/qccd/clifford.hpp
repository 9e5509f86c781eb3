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


#ifndef QCCD_CLIFFORD_HPP
#define QCCD_CLIFFORD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qccd/random.hpp"
#include "qccd/synthesis.hpp"

namespace qccd {

inline constexpr std::size_t kClifford1Size = 24;
inline constexpr std::size_t kClifford2Size = 11520;

/** The single-qubit Clifford group modulo phase, identity first. */
const std::vector<Mat2> &clifford1_group();

/** Entangling class of a two-qubit Clifford in canonical coset form. */
enum class CliffordClass { LOCAL, CNOT_LIKE, ISWAP_LIKE, SWAP_LIKE };

/**
 * Canonical coset form of element `index` of C2:
 *   LOCAL       (a x b)                          576 elements
 *   CNOT_LIKE   (a x b) CNOT (s x t)             5184
 *   ISWAP_LIKE  (a x b) CNOT' CNOT (s x t)       5184
 *   SWAP_LIKE   (a x b) SWAP                     576
 * with a, b in C1 and s, t in {I, R, R^2}, R the X -> Y -> Z cycle.
 */
Mat4 clifford2_element(std::size_t index);
CliffordClass clifford2_class(std::size_t index);
/** Native ZZ count of the class: 0, 1, 2 or 3. */
std::size_t clifford2_zz_count(std::size_t index);

/** Native sequence of a C1 element on qubit q. */
std::vector<GateOp> clifford1_native(std::size_t index, std::size_t q);
/** Native sequence of a C2 element on (q0, q1); q0 is the most significant factor. */
std::vector<GateOp> clifford2_native(std::size_t index, std::size_t q0, std::size_t q1);

/** Phase-independent key of a Clifford matrix. */
std::string clifford_key(const MatX &u);

/** Index of a Clifford matrix (modulo phase); throws std::invalid_argument if not in the group. */
std::size_t clifford_index(const MatX &u);

/** True if U P U^dagger is a signed Pauli string for every Pauli string P. */
bool is_clifford(const MatX &u, double tol = 1e-9);

struct SampledClifford {
  std::size_t n_qubits = 1;
  std::size_t index = 0;
  MatX matrix;
  NativeSequence native;
};

/** Uniform sample from C1 (n = 1) or C2 (n = 2). */
SampledClifford sample_clifford(std::size_t n, std::uint64_t seed);
SampledClifford sample_clifford(std::size_t n, Rng &rng);

/** Average native ZZ count over C2 (exactly 1.5 for the coset form). */
double mean_zz_per_clifford2();

}  // namespace qccd

#endif
