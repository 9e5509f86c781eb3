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

#include "qccd/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <set>
#include <sstream>

namespace qccd {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t inner_qubit(const std::variant<RzOp, RxyOp> &inner) {
  return std::visit([](const auto &o) { return o.q; }, inner);
}

}  // namespace

std::vector<std::size_t> op_qubits(const GateOp &op) {
  return std::visit(
      overloaded{
          [](const RzOp &o) { return std::vector<std::size_t>{o.q}; },
          [](const RxyOp &o) { return std::vector<std::size_t>{o.q}; },
          [](const ZzOp &o) { return std::vector<std::size_t>{o.q0, o.q1}; },
          [](const MeasureOp &o) { return std::vector<std::size_t>{o.q}; },
          [](const ResetOp &o) { return std::vector<std::size_t>{o.q}; },
          [](const Unitary2Op &o) { return std::vector<std::size_t>{o.q}; },
          [](const Unitary4Op &o) { return std::vector<std::size_t>{o.q0, o.q1}; },
          [](const CondOp &o) { return std::vector<std::size_t>{inner_qubit(o.inner)}; },
      },
      op);
}

std::string op_name(const GateOp &op) {
  static const char *names[] = {"rz", "rxy", "zz", "measure", "reset", "u2", "u4", "cond"};
  return names[op.index()];
}

std::vector<std::string> Circuit::measurement_keys() const {
  std::vector<std::string> keys;
  std::set<std::string> seen;
  for (const auto &op : ops) {
    if (const auto *m = std::get_if<MeasureOp>(&op)) {
      if (seen.insert(m->key).second) {
        keys.push_back(m->key);
      }
    }
  }
  return keys;
}

std::size_t Circuit::count_zz() const {
  return static_cast<std::size_t>(
      std::count_if(ops.begin(), ops.end(), [](const GateOp &op) { return std::holds_alternative<ZzOp>(op); }));
}

std::vector<Violation> validate_circuit(const Circuit &c) {
  std::vector<Violation> out;
  auto add = [&](std::size_t k, ViolationKind kind, const std::string &msg) {
    out.push_back({k, kind, "op " + std::to_string(k) + ": " + msg});
  };
  auto finite = [&](std::size_t k, double v) {
    if (!std::isfinite(v)) {
      add(k, ViolationKind::NON_FINITE_ANGLE, "non-finite angle");
    }
  };
  // key -> (qubit, reset since last measurement)
  std::map<std::string, std::pair<std::size_t, bool>> keys;
  for (std::size_t k = 0; k < c.ops.size(); k++) {
    const GateOp &op = c.ops[k];
    auto qs = op_qubits(op);
    for (std::size_t q : qs) {
      if (q >= c.n_qubits) {
        add(k, ViolationKind::QUBIT_OUT_OF_RANGE,
            "qubit index " + std::to_string(q) + " out of range (n_qubits=" + std::to_string(c.n_qubits) + ")");
      }
    }
    if (qs.size() == 2 && qs[0] == qs[1]) {
      add(k, ViolationKind::REPEATED_QUBIT, "two-qubit op on repeated qubit " + std::to_string(qs[0]));
    }
    std::visit(overloaded{
                   [&](const RzOp &o) { finite(k, o.theta); },
                   [&](const RxyOp &o) {
                     finite(k, o.theta);
                     finite(k, o.phi);
                   },
                   [&](const ZzOp &) {},
                   [&](const MeasureOp &o) {
                     auto it = keys.find(o.key);
                     if (it != keys.end() && !it->second.second) {
                       add(k, ViolationKind::DUPLICATE_KEY, "duplicate measurement key '" + o.key + "'");
                     }
                     keys[o.key] = {o.q, false};
                   },
                   [&](const ResetOp &o) {
                     for (auto &[key, v] : keys) {
                       if (v.first == o.q) {
                         v.second = true;
                       }
                     }
                   },
                   [&](const Unitary2Op &o) {
                     double e = unitarity_error(o.matrix);
                     if (!(e <= 1e-10)) {
                       add(k, ViolationKind::NON_UNITARY, "non-unitary matrix (error " + std::to_string(e) + ")");
                     }
                   },
                   [&](const Unitary4Op &o) {
                     double e = unitarity_error(o.matrix);
                     if (!(e <= 1e-10)) {
                       add(k, ViolationKind::NON_UNITARY, "non-unitary matrix (error " + std::to_string(e) + ")");
                     }
                   },
                   [&](const CondOp &o) {
                     if (!keys.count(o.key)) {
                       add(k, ViolationKind::UNDEFINED_KEY, "undefined measurement key '" + o.key + "'");
                     }
                     if (o.value != 0 && o.value != 1) {
                       add(k, ViolationKind::BAD_COND_VALUE, "condition value must be 0 or 1");
                     }
                     std::visit(overloaded{[&](const RzOp &i) { finite(k, i.theta); },
                                           [&](const RxyOp &i) {
                                             finite(k, i.theta);
                                             finite(k, i.phi);
                                           }},
                                o.inner);
                   },
               },
               op);
  }
  std::stable_sort(out.begin(), out.end(), [](const Violation &a, const Violation &b) {
    if (a.op_index != b.op_index) {
      return a.op_index < b.op_index;
    }
    return a.kind < b.kind;
  });
  return out;
}

CircuitParseError::CircuitParseError(const std::string &msg, std::size_t line, std::size_t column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg
                                  : msg),
      line_(line),
      column_(column) {}

namespace {

[[noreturn]] void fail(const std::string &msg) { throw CircuitParseError(msg, 0, 0); }

void check_fields(const json &j, std::initializer_list<const char *> allowed, const std::string &where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char *a : allowed) {
      if (it.key() == a) {
        ok = true;
      }
    }
    if (!ok) {
      fail(where + ": unknown field '" + it.key() + "'");
    }
  }
}

const json &req(const json &j, const char *name, const std::string &where) {
  auto it = j.find(name);
  if (it == j.end()) {
    fail(where + ": missing field '" + name + "'");
  }
  return *it;
}

std::size_t get_qubit(const json &j, const char *name, const std::string &where) {
  const json &v = req(j, name, where);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    fail(where + ": field '" + name + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double get_angle(const json &j, const char *name, const std::string &where) {
  const json &v = req(j, name, where);
  if (!v.is_number()) {
    fail(where + ": field '" + name + "' must be a number");
  }
  return v.get<double>();
}

MatX get_matrix(const json &j, int dim, const std::string &where) {
  const json &v = req(j, "matrix", where);
  if (!v.is_array() || v.size() != static_cast<std::size_t>(dim * dim)) {
    fail(where + ": matrix must be a list of " + std::to_string(dim * dim) + " [re, im] pairs");
  }
  MatX m(dim, dim);
  for (int k = 0; k < dim * dim; k++) {
    const json &e = v[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      fail(where + ": matrix entry " + std::to_string(k) + " must be [re, im]");
    }
    m(k / dim, k % dim) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

GateOp parse_op(const json &j, const std::string &where, bool nested) {
  if (!j.is_object()) {
    fail(where + ": op must be an object");
  }
  const json &g = req(j, "gate", where);
  if (!g.is_string()) {
    fail(where + ": field 'gate' must be a string");
  }
  std::string gate = g.get<std::string>();
  if (nested && gate != "rz" && gate != "rxy") {
    fail(where + ": conditional op must be rz or rxy, got '" + gate + "'");
  }
  if (gate == "rz") {
    check_fields(j, {"gate", "q", "theta"}, where);
    return RzOp{get_qubit(j, "q", where), get_angle(j, "theta", where)};
  }
  if (gate == "rxy") {
    check_fields(j, {"gate", "q", "theta", "phi"}, where);
    return RxyOp{get_qubit(j, "q", where), get_angle(j, "theta", where), get_angle(j, "phi", where)};
  }
  if (gate == "zz") {
    check_fields(j, {"gate", "q", "q2"}, where);
    return ZzOp{get_qubit(j, "q", where), get_qubit(j, "q2", where)};
  }
  if (gate == "measure") {
    check_fields(j, {"gate", "q", "key"}, where);
    const json &k = req(j, "key", where);
    if (!k.is_string()) {
      fail(where + ": field 'key' must be a string");
    }
    return MeasureOp{get_qubit(j, "q", where), k.get<std::string>()};
  }
  if (gate == "reset") {
    check_fields(j, {"gate", "q"}, where);
    return ResetOp{get_qubit(j, "q", where)};
  }
  if (gate == "u2") {
    check_fields(j, {"gate", "q", "matrix"}, where);
    return Unitary2Op{get_qubit(j, "q", where), get_matrix(j, 2, where)};
  }
  if (gate == "u4") {
    check_fields(j, {"gate", "q", "q2", "matrix"}, where);
    return Unitary4Op{get_qubit(j, "q", where), get_qubit(j, "q2", where), get_matrix(j, 4, where)};
  }
  if (gate == "cond") {
    check_fields(j, {"gate", "on", "value", "apply"}, where);
    const json &on = req(j, "on", where);
    if (!on.is_string()) {
      fail(where + ": field 'on' must be a string");
    }
    CondOp c;
    c.key = on.get<std::string>();
    if (j.contains("value")) {
      const json &v = j["value"];
      if (!v.is_number_integer()) {
        fail(where + ": field 'value' must be 0 or 1");
      }
      c.value = v.get<int>();
    }
    GateOp inner = parse_op(req(j, "apply", where), where + " (apply)", true);
    if (auto *rz = std::get_if<RzOp>(&inner)) {
      c.inner = *rz;
    } else {
      c.inner = std::get<RxyOp>(inner);
    }
    return c;
  }
  fail(where + ": unknown gate kind '" + gate + "'");
}

std::pair<std::size_t, std::size_t> line_col(const std::string &text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); i++) {
    if (text[i] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
  }
  return {line, col};
}

json matrix_json(const MatX &m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); i++) {
    for (Eigen::Index k = 0; k < m.cols(); k++) {
      a.push_back({m(i, k).real(), m(i, k).imag()});
    }
  }
  return a;
}

json op_json(const GateOp &op) {
  return std::visit(overloaded{
                        [](const RzOp &o) { return json{{"gate", "rz"}, {"q", o.q}, {"theta", o.theta}}; },
                        [](const RxyOp &o) {
                          return json{{"gate", "rxy"}, {"q", o.q}, {"theta", o.theta}, {"phi", o.phi}};
                        },
                        [](const ZzOp &o) { return json{{"gate", "zz"}, {"q", o.q0}, {"q2", o.q1}}; },
                        [](const MeasureOp &o) { return json{{"gate", "measure"}, {"q", o.q}, {"key", o.key}}; },
                        [](const ResetOp &o) { return json{{"gate", "reset"}, {"q", o.q}}; },
                        [](const Unitary2Op &o) {
                          return json{{"gate", "u2"}, {"q", o.q}, {"matrix", matrix_json(o.matrix)}};
                        },
                        [](const Unitary4Op &o) {
                          return json{{"gate", "u4"}, {"q", o.q0}, {"q2", o.q1}, {"matrix", matrix_json(o.matrix)}};
                        },
                        [](const CondOp &o) {
                          GateOp inner = std::visit([](const auto &i) -> GateOp { return i; }, o.inner);
                          return json{{"gate", "cond"}, {"on", o.key}, {"value", o.value}, {"apply", op_json(inner)}};
                        },
                    },
                    op);
}

}  // namespace

Circuit parse_circuit(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw CircuitParseError("syntax error: " + std::string(e.what()), line, col);
  }
  if (!j.is_object()) {
    fail("top level must be an object");
  }
  check_fields(j, {"n_qubits", "ops", "metadata"}, "circuit");
  Circuit c;
  const json &n = req(j, "n_qubits", "circuit");
  if (!n.is_number_integer() || n.get<long long>() < 0) {
    fail("circuit: n_qubits must be a non-negative integer");
  }
  c.n_qubits = n.get<std::size_t>();
  const json &ops = req(j, "ops", "circuit");
  if (!ops.is_array()) {
    fail("circuit: ops must be a list");
  }
  for (std::size_t k = 0; k < ops.size(); k++) {
    c.ops.push_back(parse_op(ops[k], "op " + std::to_string(k), false));
  }
  if (j.contains("metadata")) {
    const json &m = j["metadata"];
    if (!m.is_object()) {
      fail("circuit: metadata must be an object of strings");
    }
    for (auto it = m.begin(); it != m.end(); ++it) {
      if (!it.value().is_string()) {
        fail("circuit: metadata value for '" + it.key() + "' must be a string");
      }
      c.metadata[it.key()] = it.value().get<std::string>();
    }
  }
  auto violations = validate_circuit(c);
  if (!violations.empty()) {
    fail(violations.front().message);
  }
  return c;
}

std::string serialize_circuit(const Circuit &c) {
  json j;
  j["n_qubits"] = c.n_qubits;
  j["ops"] = json::array();
  for (const auto &op : c.ops) {
    j["ops"].push_back(op_json(op));
  }
  if (!c.metadata.empty()) {
    j["metadata"] = c.metadata;
  }
  return j.dump(1) + "\n";
}

namespace {

void left_apply_1q(MatX &m, std::size_t n, std::size_t q, const Mat2 &u) {
  std::size_t mask = std::size_t{1} << (n - 1 - q);
  std::size_t dim = std::size_t{1} << n;
  for (Eigen::Index c = 0; c < m.cols(); c++) {
    for (std::size_t i = 0; i < dim; i++) {
      if (i & mask) {
        continue;
      }
      cplx a = m(i, c), b = m(i | mask, c);
      m(i, c) = u(0, 0) * a + u(0, 1) * b;
      m(i | mask, c) = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

void left_apply_2q(MatX &m, std::size_t n, std::size_t q0, std::size_t q1, const Mat4 &u) {
  std::size_t m0 = std::size_t{1} << (n - 1 - q0);
  std::size_t m1 = std::size_t{1} << (n - 1 - q1);
  std::size_t dim = std::size_t{1} << n;
  for (Eigen::Index c = 0; c < m.cols(); c++) {
    for (std::size_t i = 0; i < dim; i++) {
      if ((i & m0) || (i & m1)) {
        continue;
      }
      std::size_t idx[4] = {i, i | m1, i | m0, i | m0 | m1};
      cplx v[4];
      for (int k = 0; k < 4; k++) {
        v[k] = m(idx[k], c);
      }
      for (int r = 0; r < 4; r++) {
        cplx s = 0;
        for (int k = 0; k < 4; k++) {
          s += u(r, k) * v[k];
        }
        m(idx[r], c) = s;
      }
    }
  }
}

}  // namespace

MatX circuit_unitary(const std::vector<GateOp> &ops, std::size_t n_qubits) {
  std::size_t dim = std::size_t{1} << n_qubits;
  MatX m = MatX::Identity(dim, dim);
  for (const auto &op : ops) {
    std::visit(overloaded{
                   [&](const RzOp &o) { left_apply_1q(m, n_qubits, o.q, rz(o.theta)); },
                   [&](const RxyOp &o) { left_apply_1q(m, n_qubits, o.q, rxy(o.theta, o.phi)); },
                   [&](const ZzOp &o) { left_apply_2q(m, n_qubits, o.q0, o.q1, uzz()); },
                   [&](const Unitary2Op &o) { left_apply_1q(m, n_qubits, o.q, o.matrix); },
                   [&](const Unitary4Op &o) { left_apply_2q(m, n_qubits, o.q0, o.q1, o.matrix); },
                   [&](const auto &) {
                     throw std::invalid_argument("circuit_unitary: op '" + op_name(op) + "' has no unitary");
                   },
               },
               op);
  }
  return m;
}

}  // namespace qccd
