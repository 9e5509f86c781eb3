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


#include "qccd/teleport.hpp"

#include <stdexcept>

#include "qccd/random.hpp"
#include "qccd/scheduler.hpp"
#include "qccd/simulator.hpp"
#include "qccd/synthesis.hpp"

namespace qccd {

namespace {

void push(std::vector<GateOp> &ops, const std::vector<GateOp> &more) { ops.insert(ops.end(), more.begin(), more.end()); }

/** Native preparation of an input label from |0>. */
void prepare(std::vector<GateOp> &ops, std::size_t q, char s) {
  switch (s) {
    case '0':
      break;
    case '1':
      ops.push_back(RxyOp{q, kPi, 0});
      break;
    case '+':
      ops.push_back(RxyOp{q, kPi / 2, kPi / 2});
      break;
    case '-':
      ops.push_back(RxyOp{q, kPi / 2, -kPi / 2});
      break;
    default:
      throw std::invalid_argument(std::string("teleport: unknown input state '") + s + "'");
  }
}

bool x_basis(char s) { return s == '+' || s == '-'; }

int bit_of(char s) { return (s == '1' || s == '-') ? 1 : 0; }

std::vector<GateOp> core(bool feedforward) {
  std::vector<GateOp> ops;
  push(ops, synth_su2(hadamard(), {}, 1).ops);
  push(ops, native_cnot(1, 2));
  push(ops, native_cnot(0, 1));
  push(ops, native_cnot(2, 3));
  ops.push_back(MeasureOp{1, "m1"});
  if (feedforward) {
    ops.push_back(CondOp{"m1", 1, RxyOp{3, kPi, 0}});
  }
  push(ops, synth_su2(hadamard(), {}, 2).ops);
  ops.push_back(MeasureOp{2, "m2"});
  if (feedforward) {
    ops.push_back(CondOp{"m2", 1, RzOp{0, kPi}});
  }
  return ops;
}

/** Reduced state of qubits (a, b) of a 4-qubit density matrix, a most significant. */
Mat4 reduce(const MatX &rho, std::size_t a, std::size_t b) {
  Mat4 out = Mat4::Zero();
  auto bit = [](std::size_t idx, std::size_t q) { return (idx >> (3 - q)) & 1u; };
  for (std::size_t i = 0; i < 16; i++) {
    for (std::size_t j = 0; j < 16; j++) {
      bool same = true;
      for (std::size_t q = 0; q < 4; q++) {
        if (q != a && q != b && bit(i, q) != bit(j, q)) {
          same = false;
        }
      }
      if (!same) {
        continue;
      }
      std::size_t r = bit(i, a) * 2 + bit(i, b), c = bit(j, a) * 2 + bit(j, b);
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
          rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

}  // namespace

std::array<TeleportInput, 8> teleport_inputs() {
  return {TeleportInput{'0', '0'}, TeleportInput{'0', '1'}, TeleportInput{'1', '0'}, TeleportInput{'1', '1'},
          TeleportInput{'+', '+'}, TeleportInput{'+', '-'}, TeleportInput{'-', '+'}, TeleportInput{'-', '-'}};
}

TeleportInput teleport_expected(const TeleportInput &in) {
  if (x_basis(in.q3) != x_basis(in.q0)) {
    throw std::invalid_argument("teleport_expected: inputs must share a basis");
  }
  TeleportInput out = in;
  if (x_basis(in.q3)) {
    int b0 = bit_of(in.q0) ^ bit_of(in.q3);
    out.q0 = b0 ? '-' : '+';
  } else {
    int b3 = bit_of(in.q3) ^ bit_of(in.q0);
    out.q3 = b3 ? '1' : '0';
  }
  return out;
}

Circuit teleport_circuit(const TeleportInput &in, bool feedforward) {
  if (x_basis(in.q3) != x_basis(in.q0)) {
    throw std::invalid_argument("teleport_circuit: inputs must share a basis");
  }
  Circuit c;
  c.n_qubits = 4;
  prepare(c.ops, 0, in.q0);
  prepare(c.ops, 3, in.q3);
  push(c.ops, core(feedforward));
  if (x_basis(in.q0)) {
    c.ops.push_back(RxyOp{0, kPi / 2, -kPi / 2});
    c.ops.push_back(RxyOp{3, kPi / 2, -kPi / 2});
  }
  c.ops.push_back(MeasureOp{3, "out3"});
  c.ops.push_back(MeasureOp{0, "out0"});
  c.metadata["benchmark"] = "teleport";
  c.metadata["input"] = in.label();
  return c;
}

double teleport_construction_error() {
  const Mat2 preps[4] = {pauli_i(), rxy(kPi, 0), rxy(kPi / 2, kPi / 2), rxy(kPi / 2, 0)};
  Mat4 cnot = Mat4::Zero();
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  double worst = 0;
  for (const auto &u0 : preps) {
    for (const auto &u3 : preps) {
      Circuit c;
      c.n_qubits = 4;
      c.ops.push_back(Unitary2Op{0, u0});
      c.ops.push_back(Unitary2Op{3, u3});
      push(c.ops, core(true));
      MatX rho = MatX::Zero(16, 16);
      for (const auto &br : run_branches(lower_circuit(c, NoiseModel::ideal()))) {
        rho += br.rho.matrix();
      }
      Eigen::Vector4cd in = kron(u0, u3).col(0);
      Eigen::Vector4cd out = cnot * in;
      Mat4 want = out * out.adjoint();
      worst = std::max(worst, (reduce(rho, 0, 3) - want).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double hofmann_bound(double f1, double f2) { return 0.8 * (f1 + f2) - 0.6; }

TeleportResult teleport_suite(const NoiseModel &noise, std::size_t shots, std::uint64_t seed, bool scheduled) {
  noise.validate();
  TeleportResult r;
  r.construction_error = teleport_construction_error();
  if (r.construction_error > 1e-10) {
    throw std::logic_error("teleport_suite: construction does not implement CNOT(q0 -> q3)");
  }
  r.inputs = teleport_inputs();
  r.shots = shots;
  r.scheduled = scheduled;
  for (std::size_t k = 0; k < r.inputs.size(); k++) {
    Circuit c = teleport_circuit(r.inputs[k]);
    Distribution d =
        scheduled ? run_exact(compile_schedule(c, Mode::N4), noise) : run_exact(c, noise);
    Distribution out = d.marginal({"out3", "out0"});
    TeleportInput e = teleport_expected(r.inputs[k]);
    std::string want{static_cast<char>('0' + bit_of(e.q3)), static_cast<char>('0' + bit_of(e.q0))};
    if (shots == 0) {
      r.success[k] = out[want];
    } else {
      auto counts = sample_counts(out, shots, derive_seed(seed, "teleport", k));
      r.success[k] = static_cast<double>(counts[want]) / static_cast<double>(shots);
    }
  }
  r.f1 = (r.success[0] + r.success[1] + r.success[2] + r.success[3]) / 4;
  r.f2 = (r.success[4] + r.success[5] + r.success[6] + r.success[7]) / 4;
  r.f_avg_lb = hofmann_bound(r.f1, r.f2);
  return r;
}

}  // namespace qccd
