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


#include <gtest/gtest.h>

#include "qccd/circuit.hpp"
#include "qccd/random.hpp"

namespace qccd {
namespace {

Circuit bell() {
  Circuit c;
  c.n_qubits = 2;
  c.ops = {RxyOp{0, kPi / 2, kPi / 2}, ZzOp{0, 1}, RzOp{1, 0.3}, MeasureOp{0, "a"}, MeasureOp{1, "b"}};
  return c;
}

TEST(CircuitParse, EmptyOps) {
  Circuit c = parse_circuit(R"({"n_qubits": 1, "ops": []})");
  EXPECT_EQ(c.n_qubits, 1u);
  EXPECT_TRUE(c.ops.empty());
}

TEST(CircuitParse, RxyThenMeasure) {
  Circuit c = parse_circuit(
      R"({"n_qubits": 1, "ops": [{"gate": "rxy", "q": 0, "theta": 1.5707963267948966, "phi": 0},
                                 {"gate": "measure", "q": 0, "key": "m"}]})");
  ASSERT_EQ(c.ops.size(), 2u);
  EXPECT_DOUBLE_EQ(std::get<RxyOp>(c.ops[0]).theta, kPi / 2);
  EXPECT_EQ(std::get<MeasureOp>(c.ops[1]).key, "m");
}

TEST(CircuitParse, UndefinedCondKey) {
  try {
    parse_circuit(R"({"n_qubits": 1, "ops": [{"gate": "cond", "on": "x", "apply": {"gate": "rz", "q": 0, "theta": 1}}]})");
    FAIL() << "expected an error";
  } catch (const CircuitParseError &e) {
    EXPECT_NE(std::string(e.what()).find("undefined measurement key"), std::string::npos);
  }
}

TEST(CircuitParse, SyntaxErrorCarriesPosition) {
  try {
    parse_circuit("{\n  \"n_qubits\": 1,\n  \"ops\": [ }\n");
    FAIL() << "expected an error";
  } catch (const CircuitParseError &e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(CircuitParse, RejectsUnknownGateAndFields) {
  EXPECT_THROW(parse_circuit(R"({"n_qubits": 1, "ops": [{"gate": "cz", "q": 0}]})"), CircuitParseError);
  EXPECT_THROW(parse_circuit(R"({"n_qubits": 1, "ops": [{"gate": "rz", "q": 0, "theta": 1, "extra": 2}]})"),
               CircuitParseError);
  EXPECT_THROW(parse_circuit(R"({"n_qubits": 1, "ops": [], "name": "x"})"), CircuitParseError);
}

TEST(CircuitParse, QubitOutOfRange) {
  EXPECT_THROW(parse_circuit(R"({"n_qubits": 2, "ops": [{"gate": "zz", "q": 0, "q2": 5}]})"), CircuitParseError);
}

TEST(CircuitValidate, BellIsValid) { EXPECT_TRUE(validate_circuit(bell()).empty()); }

TEST(CircuitValidate, IndexOutOfRange) {
  Circuit c;
  c.n_qubits = 4;
  c.ops = {ZzOp{0, 5}};
  auto v = validate_circuit(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].op_index, 0u);
  EXPECT_EQ(v[0].kind, ViolationKind::QUBIT_OUT_OF_RANGE);
}

TEST(CircuitValidate, NonUnitary) {
  Circuit c;
  c.n_qubits = 1;
  Mat2 m = Mat2::Identity();
  m(0, 0) = std::sqrt(1.1);
  c.ops = {RzOp{0, 0.1}, Unitary2Op{0, m}};
  auto v = validate_circuit(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].op_index, 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::NON_UNITARY);
}

TEST(CircuitValidate, DuplicateKeyUnlessReset) {
  Circuit c;
  c.n_qubits = 1;
  c.ops = {MeasureOp{0, "m"}, MeasureOp{0, "m"}};
  auto v = validate_circuit(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::DUPLICATE_KEY);
  c.ops = {MeasureOp{0, "m"}, ResetOp{0}, MeasureOp{0, "m"}};
  EXPECT_TRUE(validate_circuit(c).empty());
}

TEST(CircuitValidate, ReportIsDeterministicAndSorted) {
  Circuit c;
  c.n_qubits = 2;
  c.ops = {ZzOp{1, 1}, CondOp{"nope", 2, RzOp{7, 1}}, ZzOp{0, 9}};
  auto a = validate_circuit(c);
  auto b = validate_circuit(c);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t i = 1; i < a.size(); i++) {
    EXPECT_TRUE(a[i - 1].op_index < a[i].op_index ||
                (a[i - 1].op_index == a[i].op_index && a[i - 1].kind <= a[i].kind));
  }
}

TEST(CircuitFormat, RoundTripIsFieldExact) {
  Rng rng(5);
  Circuit c;
  c.n_qubits = 3;
  c.metadata["source"] = "test";
  std::uniform_real_distribution<double> angle(-10, 10);
  for (int k = 0; k < 20; k++) {
    c.ops.push_back(RzOp{static_cast<std::size_t>(k % 3), angle(rng)});
    c.ops.push_back(RxyOp{static_cast<std::size_t>((k + 1) % 3), angle(rng), angle(rng)});
  }
  c.ops.push_back(ZzOp{0, 2});
  c.ops.push_back(Unitary2Op{1, haar_su2(3)});
  c.ops.push_back(Unitary4Op{2, 0, haar_su4(4)});
  c.ops.push_back(MeasureOp{0, "m0"});
  c.ops.push_back(CondOp{"m0", 0, RxyOp{1, kPi, 0.25}});
  c.ops.push_back(ResetOp{0});
  c.ops.push_back(MeasureOp{0, "m0"});
  Circuit d = parse_circuit(serialize_circuit(c));
  ASSERT_EQ(d.ops.size(), c.ops.size());
  EXPECT_EQ(d.metadata, c.metadata);
  EXPECT_EQ(serialize_circuit(d), serialize_circuit(c));
  for (std::size_t k = 0; k < c.ops.size(); k++) {
    EXPECT_EQ(op_name(c.ops[k]), op_name(d.ops[k]));
    if (auto *x = std::get_if<RxyOp>(&c.ops[k])) {
      EXPECT_EQ(x->theta, std::get<RxyOp>(d.ops[k]).theta);
      EXPECT_EQ(x->phi, std::get<RxyOp>(d.ops[k]).phi);
    }
  }
  EXPECT_EQ(std::get<Unitary4Op>(d.ops[c.ops.size() - 5]).matrix, std::get<Unitary4Op>(c.ops[c.ops.size() - 5]).matrix);
}

TEST(CircuitUnitary, BigEndianOrdering) {
  // X on qubit 0 of two maps |00> (index 0) to |10> (index 2).
  MatX u = circuit_unitary({RxyOp{0, kPi, 0}}, 2);
  EXPECT_NEAR(std::abs(u(2, 0)), 1.0, 1e-14);
  Mat4 m = kron(pauli_x(), pauli_z());
  MatX v = circuit_unitary({Unitary4Op{0, 1, m}}, 2);
  EXPECT_LT((v - MatX(m)).cwiseAbs().maxCoeff(), 1e-14);
  // Reversed operands apply the swapped matrix.
  MatX w = circuit_unitary({Unitary4Op{1, 0, m}}, 2);
  EXPECT_LT((w - MatX(kron(pauli_z(), pauli_x()))).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(CircuitKeys, FirstAppearanceOrder) {
  Circuit c = bell();
  c.ops.insert(c.ops.begin(), MeasureOp{1, "z"});
  EXPECT_EQ(c.measurement_keys(), (std::vector<std::string>{"z", "a", "b"}));
  EXPECT_EQ(c.count_zz(), 1u);
}

}  // namespace
}  // namespace qccd
