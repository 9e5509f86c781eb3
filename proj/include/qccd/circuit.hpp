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

#ifndef QCCD_CIRCUIT_HPP
#define QCCD_CIRCUIT_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qccd/linalg.hpp"

namespace qccd {

struct RzOp {
  std::size_t q = 0;
  double theta = 0;
};

struct RxyOp {
  std::size_t q = 0;
  double theta = 0;
  double phi = 0;
};

struct ZzOp {
  std::size_t q0 = 0;
  std::size_t q1 = 0;
};

struct MeasureOp {
  std::size_t q = 0;
  std::string key;
};

struct ResetOp {
  std::size_t q = 0;
};

struct Unitary2Op {
  std::size_t q = 0;
  Mat2 matrix = Mat2::Identity();
};

/** matrix acts on kron(q0, q1): q0 is the most significant factor. */
struct Unitary4Op {
  std::size_t q0 = 0;
  std::size_t q1 = 0;
  Mat4 matrix = Mat4::Identity();
};

/** Applies `inner` when the latest record of `key` equals `value`. */
struct CondOp {
  std::string key;
  int value = 1;
  std::variant<RzOp, RxyOp> inner;
};

using GateOp = std::variant<RzOp, RxyOp, ZzOp, MeasureOp, ResetOp, Unitary2Op, Unitary4Op, CondOp>;

/** Qubits touched by an op (a COND touches its inner op's qubit). */
std::vector<std::size_t> op_qubits(const GateOp &op);

/** Lowercase file-format name of the op kind ("rz", "rxy", ...). */
std::string op_name(const GateOp &op);

struct Circuit {
  std::size_t n_qubits = 0;
  std::vector<GateOp> ops;
  std::map<std::string, std::string> metadata;

  /** Measurement keys in order of first appearance. */
  std::vector<std::string> measurement_keys() const;
  std::size_t count_zz() const;
};

enum class ViolationKind {
  QUBIT_OUT_OF_RANGE,
  REPEATED_QUBIT,
  NON_UNITARY,
  NON_FINITE_ANGLE,
  UNDEFINED_KEY,
  DUPLICATE_KEY,
  BAD_COND_VALUE,
};

struct Violation {
  std::size_t op_index;
  ViolationKind kind;
  std::string message;

  bool operator==(const Violation &other) const = default;
};

/** Every invariant violation, sorted by (op index, kind). Empty means valid. */
std::vector<Violation> validate_circuit(const Circuit &c);

class CircuitParseError : public std::runtime_error {
 public:
  CircuitParseError(const std::string &msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/** Parses and validates a circuit file. Throws CircuitParseError. */
Circuit parse_circuit(const std::string &text);

/** Serializes to the circuit file format; angles printed round-trip exact. */
std::string serialize_circuit(const Circuit &c);

/** Unitary of a measurement-free circuit (RZ, RXY, ZZ, UNITARY2/4 only). */
MatX circuit_unitary(const std::vector<GateOp> &ops, std::size_t n_qubits);

}  // namespace qccd

#endif
