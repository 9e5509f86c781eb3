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

#include "qccd/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qccd {

double depolarizing_strength(double infidelity, int dim) {
  return infidelity * dim / (dim - 1.0);
}

namespace {

void check_size(std::size_t n) {
  if (n > kMaxSimQubits) {
    throw std::invalid_argument("simulator: " + std::to_string(n) + " qubits exceeds capacity of " +
                                std::to_string(kMaxSimQubits));
  }
}

std::size_t bit_mask(std::size_t n, std::size_t q) { return std::size_t{1} << (n - 1 - q); }

}  // namespace

DensityMatrix::DensityMatrix(std::size_t n_qubits) : n_(n_qubits) {
  check_size(n_qubits);
  std::size_t dim = std::size_t{1} << n_;
  rho_ = MatX::Zero(dim, dim);
  rho_(0, 0) = 1;
}

DensityMatrix DensityMatrix::from_matrix(const MatX &rho) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < static_cast<std::size_t>(rho.rows())) {
    n++;
  }
  if ((std::size_t{1} << n) != static_cast<std::size_t>(rho.rows()) || rho.rows() != rho.cols()) {
    throw std::invalid_argument("DensityMatrix: dimension must be a power of two");
  }
  DensityMatrix d(n);
  d.rho_ = rho;
  return d;
}

void DensityMatrix::apply_1q(std::size_t q, const Mat2 &u) {
  std::size_t dim = std::size_t{1} << n_;
  std::size_t m = bit_mask(n_, q);
  cplx *d = rho_.data();
  for (std::size_t j = 0; j < dim; j++) {
    cplx *col = d + j * dim;
    for (std::size_t i = 0; i < dim; i++) {
      if (i & m) {
        continue;
      }
      cplx a = col[i], b = col[i | m];
      col[i] = u(0, 0) * a + u(0, 1) * b;
      col[i | m] = u(1, 0) * a + u(1, 1) * b;
    }
  }
  cplx c00 = std::conj(u(0, 0)), c01 = std::conj(u(0, 1)), c10 = std::conj(u(1, 0)), c11 = std::conj(u(1, 1));
  for (std::size_t j = 0; j < dim; j++) {
    if (j & m) {
      continue;
    }
    cplx *c0 = d + j * dim;
    cplx *c1 = d + (j | m) * dim;
    for (std::size_t i = 0; i < dim; i++) {
      cplx a = c0[i], b = c1[i];
      c0[i] = a * c00 + b * c01;
      c1[i] = a * c10 + b * c11;
    }
  }
}

void DensityMatrix::apply_2q(std::size_t q0, std::size_t q1, const Mat4 &u) {
  std::size_t dim = std::size_t{1} << n_;
  std::size_t m0 = bit_mask(n_, q0), m1 = bit_mask(n_, q1);
  cplx *d = rho_.data();
  for (std::size_t j = 0; j < dim; j++) {
    cplx *col = d + j * dim;
    for (std::size_t i = 0; i < dim; i++) {
      if ((i & m0) || (i & m1)) {
        continue;
      }
      std::size_t idx[4] = {i, i | m1, i | m0, i | m0 | m1};
      cplx v[4] = {col[idx[0]], col[idx[1]], col[idx[2]], col[idx[3]]};
      for (int r = 0; r < 4; r++) {
        col[idx[r]] = u(r, 0) * v[0] + u(r, 1) * v[1] + u(r, 2) * v[2] + u(r, 3) * v[3];
      }
    }
  }
  Mat4 uc = u.conjugate();
  for (std::size_t j = 0; j < dim; j++) {
    if ((j & m0) || (j & m1)) {
      continue;
    }
    cplx *cols[4] = {d + j * dim, d + (j | m1) * dim, d + (j | m0) * dim, d + (j | m0 | m1) * dim};
    for (std::size_t i = 0; i < dim; i++) {
      cplx v[4] = {cols[0][i], cols[1][i], cols[2][i], cols[3][i]};
      for (int r = 0; r < 4; r++) {
        cols[r][i] = v[0] * uc(r, 0) + v[1] * uc(r, 1) + v[2] * uc(r, 2) + v[3] * uc(r, 3);
      }
    }
  }
}

void DensityMatrix::depolarize_1q(std::size_t q, double p) {
  if (p == 0) {
    return;
  }
  std::size_t dim = std::size_t{1} << n_;
  std::size_t m = bit_mask(n_, q);
  for (std::size_t j = 0; j < dim; j++) {
    if (j & m) {
      continue;
    }
    for (std::size_t i = 0; i < dim; i++) {
      if (i & m) {
        continue;
      }
      cplx a = rho_(i, j), dd = rho_(i | m, j | m);
      cplx avg = (a + dd) * 0.5;
      rho_(i, j) = (1 - p) * a + p * avg;
      rho_(i | m, j | m) = (1 - p) * dd + p * avg;
      rho_(i | m, j) *= (1 - p);
      rho_(i, j | m) *= (1 - p);
    }
  }
}

void DensityMatrix::depolarize_2q(std::size_t q0, std::size_t q1, double p) {
  if (p == 0) {
    return;
  }
  std::size_t dim = std::size_t{1} << n_;
  std::size_t m0 = bit_mask(n_, q0), m1 = bit_mask(n_, q1);
  std::size_t offs[4] = {0, m1, m0, m0 | m1};
  for (std::size_t j = 0; j < dim; j++) {
    if ((j & m0) || (j & m1)) {
      continue;
    }
    for (std::size_t i = 0; i < dim; i++) {
      if ((i & m0) || (i & m1)) {
        continue;
      }
      cplx tr = 0;
      for (int k = 0; k < 4; k++) {
        tr += rho_(i | offs[k], j | offs[k]);
      }
      for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
          cplx &e = rho_(i | offs[r], j | offs[c]);
          e = (1 - p) * e + (r == c ? p * tr * 0.25 : cplx(0));
        }
      }
    }
  }
}

void DensityMatrix::dephase(std::size_t q, double p) {
  if (p == 0) {
    return;
  }
  std::size_t dim = std::size_t{1} << n_;
  std::size_t m = bit_mask(n_, q);
  for (std::size_t j = 0; j < dim; j++) {
    for (std::size_t i = 0; i < dim; i++) {
      if (((i ^ j) & m) != 0) {
        rho_(i, j) *= (1 - p);
      }
    }
  }
}

void DensityMatrix::correlated_dephase(std::size_t q0, std::size_t q1, double p) {
  if (p == 0) {
    return;
  }
  std::size_t dim = std::size_t{1} << n_;
  std::size_t m0 = bit_mask(n_, q0), m1 = bit_mask(n_, q1);
  for (std::size_t j = 0; j < dim; j++) {
    for (std::size_t i = 0; i < dim; i++) {
      int pi = ((i & m0) != 0) ^ ((i & m1) != 0);
      int pj = ((j & m0) != 0) ^ ((j & m1) != 0);
      if (pi != pj) {
        rho_(i, j) *= (1 - 2 * p);
      }
    }
  }
}

DensityMatrix DensityMatrix::project(std::size_t q, int b) const {
  DensityMatrix out = *this;
  std::size_t dim = std::size_t{1} << n_;
  std::size_t m = bit_mask(n_, q);
  for (std::size_t j = 0; j < dim; j++) {
    for (std::size_t i = 0; i < dim; i++) {
      bool keep = (((i & m) != 0) == (b != 0)) && (((j & m) != 0) == (b != 0));
      if (!keep) {
        out.rho_(i, j) = 0;
      }
    }
  }
  return out;
}

void DensityMatrix::reset(std::size_t q) {
  std::size_t dim = std::size_t{1} << n_;
  std::size_t m = bit_mask(n_, q);
  for (std::size_t j = 0; j < dim; j++) {
    if (j & m) {
      continue;
    }
    for (std::size_t i = 0; i < dim; i++) {
      if (i & m) {
        continue;
      }
      rho_(i, j) += rho_(i | m, j | m);
      rho_(i | m, j | m) = 0;
      rho_(i | m, j) = 0;
      rho_(i, j | m) = 0;
    }
  }
}

double DensityMatrix::trace() const { return rho_.trace().real(); }

double DensityMatrix::prob_one(std::size_t q) const {
  std::size_t dim = std::size_t{1} << n_;
  std::size_t m = bit_mask(n_, q);
  double s = 0;
  for (std::size_t i = 0; i < dim; i++) {
    if (i & m) {
      s += rho_(i, i).real();
    }
  }
  return s;
}

std::vector<double> DensityMatrix::probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(rho_.rows()));
  for (std::size_t i = 0; i < p.size(); i++) {
    p[i] = rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  return p;
}

double DensityMatrix::min_eigenvalue() const {
  MatX h = (rho_ + rho_.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<MatX> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }

StateVector::StateVector(std::size_t n_qubits) : n_(n_qubits) {
  check_size(n_qubits);
  psi_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::size_t{1} << n_));
  psi_(0) = 1;
}

void StateVector::apply_1q(std::size_t q, const Mat2 &u) {
  std::size_t dim = std::size_t{1} << n_;
  std::size_t m = bit_mask(n_, q);
  for (std::size_t i = 0; i < dim; i++) {
    if (i & m) {
      continue;
    }
    cplx a = psi_(i), b = psi_(i | m);
    psi_(i) = u(0, 0) * a + u(0, 1) * b;
    psi_(i | m) = u(1, 0) * a + u(1, 1) * b;
  }
}

void StateVector::apply_2q(std::size_t q0, std::size_t q1, const Mat4 &u) {
  std::size_t dim = std::size_t{1} << n_;
  std::size_t m0 = bit_mask(n_, q0), m1 = bit_mask(n_, q1);
  for (std::size_t i = 0; i < dim; i++) {
    if ((i & m0) || (i & m1)) {
      continue;
    }
    std::size_t idx[4] = {i, i | m1, i | m0, i | m0 | m1};
    cplx v[4] = {psi_(idx[0]), psi_(idx[1]), psi_(idx[2]), psi_(idx[3])};
    for (int r = 0; r < 4; r++) {
      psi_(idx[r]) = u(r, 0) * v[0] + u(r, 1) * v[1] + u(r, 2) * v[2] + u(r, 3) * v[3];
    }
  }
}

double StateVector::prob_one(std::size_t q) const {
  std::size_t m = bit_mask(n_, q);
  double s = 0;
  for (Eigen::Index i = 0; i < psi_.size(); i++) {
    if (static_cast<std::size_t>(i) & m) {
      s += std::norm(psi_(i));
    }
  }
  return s;
}

void StateVector::collapse(std::size_t q, int b) {
  std::size_t m = bit_mask(n_, q);
  for (Eigen::Index i = 0; i < psi_.size(); i++) {
    if (((static_cast<std::size_t>(i) & m) != 0) != (b != 0)) {
      psi_(i) = 0;
    }
  }
  double nn = psi_.norm();
  if (nn > 0) {
    psi_ /= nn;
  }
}

double StateVector::norm() const { return psi_.norm(); }

std::size_t ExecProgram::key_index(const std::string &key) {
  auto it = std::find(keys.begin(), keys.end(), key);
  if (it != keys.end()) {
    return static_cast<std::size_t>(it - keys.begin());
  }
  keys.push_back(key);
  return keys.size() - 1;
}

void ExecProgram::append(const ExecProgram &other) {
  if (other.n_qubits != n_qubits) {
    throw std::invalid_argument("ExecProgram::append: qubit counts differ");
  }
  for (Instr ins : other.instrs) {
    if (ins.kind == InstrKind::MEASURE) {
      ins.key = key_index(other.keys[ins.key]);
    }
    if (ins.cond_key >= 0) {
      ins.cond_key = static_cast<long>(key_index(other.keys[static_cast<std::size_t>(ins.cond_key)]));
    }
    instrs.push_back(ins);
  }
  duration_us += other.duration_us;
}

namespace {

Instr u1_instr(std::size_t q, const Mat2 &u) {
  Instr i;
  i.kind = InstrKind::U1;
  i.q0 = q;
  i.u1 = u;
  return i;
}

Instr u2_instr(std::size_t q0, std::size_t q1, const Mat4 &u) {
  Instr i;
  i.kind = InstrKind::U2;
  i.q0 = q0;
  i.q1 = q1;
  i.u2 = u;
  return i;
}

Instr chan(InstrKind k, std::size_t q0, std::size_t q1, double p) {
  Instr i;
  i.kind = k;
  i.q0 = q0;
  i.q1 = q1;
  i.p = p;
  return i;
}

bool terminal_measure(const std::vector<GateOp> &ops, std::size_t k) {
  for (std::size_t j = k + 1; j < ops.size(); j++) {
    if (!std::holds_alternative<MeasureOp>(ops[j])) {
      return false;
    }
  }
  return true;
}

/** Appends the noisy instructions of one gate. */
void lower_op(ExecProgram &prog, const GateOp &op, const NoiseModel &noise, bool mid) {
  double p1 = depolarizing_strength(noise.p_sq_depol, 2);
  double p2 = depolarizing_strength(noise.p_tq_depol, 4);
  if (const auto *z = std::get_if<RzOp>(&op)) {
    prog.instrs.push_back(u1_instr(z->q, rz(z->theta)));
  } else if (const auto *x = std::get_if<RxyOp>(&op)) {
    prog.instrs.push_back(u1_instr(x->q, rxy(x->theta, x->phi)));
    if (p1 > 0) {
      prog.instrs.push_back(chan(InstrKind::DEPOL1, x->q, 0, p1));
    }
  } else if (const auto *zz = std::get_if<ZzOp>(&op)) {
    prog.instrs.push_back(u2_instr(zz->q0, zz->q1, uzz()));
    if (p2 > 0) {
      prog.instrs.push_back(chan(InstrKind::DEPOL2, zz->q0, zz->q1, p2));
    }
  } else if (const auto *m = std::get_if<MeasureOp>(&op)) {
    Instr i = chan(InstrKind::MEASURE, m->q, 0, mid ? noise.p_meas_lc : noise.p_spam);
    i.key = prog.key_index(m->key);
    if (mid && noise.p_meas_crosstalk_idle > 0) {
      for (std::size_t q = 0; q < prog.n_qubits; q++) {
        if (q != m->q) {
          prog.instrs.push_back(chan(InstrKind::DEPHASE, q, 0, noise.p_meas_crosstalk_idle));
        }
      }
    }
    prog.instrs.push_back(i);
  } else if (const auto *r = std::get_if<ResetOp>(&op)) {
    prog.instrs.push_back(chan(InstrKind::RESET, r->q, 0, 0));
  } else if (const auto *u = std::get_if<Unitary2Op>(&op)) {
    prog.instrs.push_back(u1_instr(u->q, u->matrix));
  } else if (const auto *u4 = std::get_if<Unitary4Op>(&op)) {
    prog.instrs.push_back(u2_instr(u4->q0, u4->q1, u4->matrix));
  } else if (const auto *c = std::get_if<CondOp>(&op)) {
    std::size_t before = prog.instrs.size();
    long key = static_cast<long>(prog.key_index(c->key));
    std::visit([&](const auto &inner) { lower_op(prog, GateOp(inner), noise, false); }, c->inner);
    for (std::size_t k = before; k < prog.instrs.size(); k++) {
      prog.instrs[k].cond_key = key;
      prog.instrs[k].cond_value = c->value;
    }
  }
}

}  // namespace

ExecProgram lower_circuit(const Circuit &c, const NoiseModel &noise) {
  check_size(c.n_qubits);
  auto v = validate_circuit(c);
  if (!v.empty()) {
    throw std::invalid_argument("simulator: invalid circuit: " + v.front().message);
  }
  noise.validate();
  ExecProgram prog;
  prog.n_qubits = c.n_qubits;
  for (const auto &k : c.measurement_keys()) {
    prog.key_index(k);
  }
  for (std::size_t k = 0; k < c.ops.size(); k++) {
    lower_op(prog, c.ops[k], noise, !terminal_measure(c.ops, k));
  }
  return prog;
}

ExecProgram lower_schedule(const TransportSchedule &s, const NoiseModel &noise, const StarkOffsets &emulated) {
  check_size(s.n_qubits);
  noise.validate();
  ExecProgram prog;
  prog.n_qubits = s.n_qubits;
  for (const auto &k : s.measurement_keys) {
    prog.key_index(k);
  }
  std::size_t n = s.n_qubits;
  std::vector<double> last_gate(n, 0.0);
  double t2_us = noise.t2_spin_echo_s * 1e6;
  for (const auto &e : s.events) {
    bool gate_like = e.kind == EventKind::SQ_GATE || e.kind == EventKind::TQ_GATE || e.kind == EventKind::MEASURE ||
                     e.kind == EventKind::INIT;
    if (gate_like) {
      for (std::size_t q : e.qubits) {
        if (q >= n) {
          continue;
        }
        double idle = e.start_us - last_gate[q];
        if (idle > 0 && std::isfinite(t2_us) && noise.dd_memory_multiplier > 0) {
          double p = 1 - std::exp(-idle * noise.dd_memory_multiplier / t2_us);
          prog.instrs.push_back(chan(InstrKind::DEPHASE, q, 0, p));
        }
        last_gate[q] = std::max(last_gate[q], e.end_us());
      }
      if (e.op) {
        lower_op(prog, *e.op, noise, e.mid_circuit);
      }
    }
    if (e.duration_us > 0 && emulated[e.kind] != 0) {
      for (std::size_t q : e.qubits) {
        if (q < n) {
          prog.instrs.push_back(u1_instr(q, rz(emulated[e.kind])));
        }
      }
    }
  }
  for (std::size_t q = 0; q < n && q < s.residual_frame.size(); q++) {
    if (s.residual_frame[q] != 0) {
      prog.instrs.push_back(u1_instr(q, rz(s.residual_frame[q])));
    }
  }
  prog.duration_us = s.makespan_us();
  return prog;
}

double Distribution::operator[](const std::string &bits) const {
  auto it = probs.find(bits);
  return it == probs.end() ? 0.0 : it->second;
}

double Distribution::total() const {
  double s = 0;
  for (const auto &[k, v] : probs) {
    s += v;
  }
  return s;
}

Distribution Distribution::marginal(const std::vector<std::string> &subset) const {
  std::vector<std::size_t> idx;
  for (const auto &k : subset) {
    auto it = std::find(keys.begin(), keys.end(), k);
    if (it == keys.end()) {
      throw std::invalid_argument("Distribution::marginal: unknown key '" + k + "'");
    }
    idx.push_back(static_cast<std::size_t>(it - keys.begin()));
  }
  Distribution d;
  d.keys = subset;
  for (const auto &[bits, p] : probs) {
    std::string b;
    for (std::size_t i : idx) {
      b += bits[i];
    }
    d.probs[b] += p;
  }
  return d;
}

namespace {

bool cond_ok(const Instr &ins, const std::vector<int> &rec) {
  if (ins.cond_key < 0) {
    return true;
  }
  int v = rec[static_cast<std::size_t>(ins.cond_key)];
  return v == ins.cond_value;
}

void apply_exact(DensityMatrix &rho, const Instr &ins) {
  switch (ins.kind) {
    case InstrKind::U1:
      rho.apply_1q(ins.q0, ins.u1);
      break;
    case InstrKind::U2:
      rho.apply_2q(ins.q0, ins.q1, ins.u2);
      break;
    case InstrKind::DEPOL1:
      rho.depolarize_1q(ins.q0, ins.p);
      break;
    case InstrKind::DEPOL2:
      rho.depolarize_2q(ins.q0, ins.q1, ins.p);
      break;
    case InstrKind::DEPHASE:
      rho.dephase(ins.q0, ins.p);
      break;
    case InstrKind::CORR_ZZ:
      rho.correlated_dephase(ins.q0, ins.q1, ins.p);
      break;
    case InstrKind::RESET:
      rho.reset(ins.q0);
      break;
    case InstrKind::MEASURE:
      break;
  }
}

/** Index where a trailing block of unconditional measurements on distinct qubits starts. */
std::size_t terminal_block_start(const ExecProgram &prog) {
  std::size_t k = prog.instrs.size();
  std::vector<bool> seen_q(prog.n_qubits, false);
  while (k > 0) {
    const Instr &ins = prog.instrs[k - 1];
    if (ins.kind != InstrKind::MEASURE || ins.cond_key >= 0 || seen_q[ins.q0]) {
      break;
    }
    seen_q[ins.q0] = true;
    k--;
  }
  return k;
}

std::string record_bits(const std::vector<int> &rec) {
  std::string s;
  for (int v : rec) {
    s += v == 1 ? '1' : '0';
  }
  return s;
}

}  // namespace

std::vector<Branch> run_branches(const ExecProgram &prog) {
  check_size(prog.n_qubits);
  std::vector<Branch> branches;
  branches.push_back({std::vector<int>(prog.keys.size(), -1), DensityMatrix(prog.n_qubits)});
  for (const auto &ins : prog.instrs) {
    if (ins.kind == InstrKind::MEASURE) {
      std::vector<Branch> next;
      for (auto &br : branches) {
        if (!cond_ok(ins, br.record)) {
          next.push_back(std::move(br));
          continue;
        }
        DensityMatrix r0 = br.rho.project(ins.q0, 0);
        DensityMatrix r1 = br.rho.project(ins.q0, 1);
        for (int b = 0; b < 2; b++) {
          Branch nb{br.record, DensityMatrix(prog.n_qubits)};
          nb.record[ins.key] = b;
          nb.rho.matrix() = (1 - ins.p) * (b == 0 ? r0 : r1).matrix() + ins.p * (b == 0 ? r1 : r0).matrix();
          if (nb.rho.trace() > 0) {
            next.push_back(std::move(nb));
          }
        }
      }
      branches = std::move(next);
    } else {
      for (auto &br : branches) {
        if (cond_ok(ins, br.record)) {
          apply_exact(br.rho, ins);
        }
      }
    }
  }
  return branches;
}

Distribution run_exact(const ExecProgram &prog) {
  std::size_t split = terminal_block_start(prog);
  ExecProgram head = prog;
  head.instrs.resize(split);
  std::vector<Branch> branches = run_branches(head);
  Distribution d;
  d.keys = prog.keys;
  std::size_t n = prog.n_qubits;
  std::vector<const Instr *> tail;
  for (std::size_t k = split; k < prog.instrs.size(); k++) {
    tail.push_back(&prog.instrs[k]);
  }
  for (auto &br : branches) {
    std::vector<double> probs = br.rho.probabilities();
    for (std::size_t basis = 0; basis < probs.size(); basis++) {
      double pb = probs[basis];
      if (pb <= 0) {
        continue;
      }
      std::size_t m = tail.size();
      for (std::size_t flips = 0; flips < (std::size_t{1} << m); flips++) {
        double w = pb;
        std::vector<int> rec = br.record;
        for (std::size_t t = 0; t < m; t++) {
          const Instr &ins = *tail[t];
          int truth = (basis & bit_mask(n, ins.q0)) ? 1 : 0;
          bool flip = (flips >> t) & 1;
          w *= flip ? ins.p : 1 - ins.p;
          rec[ins.key] = truth ^ static_cast<int>(flip);
        }
        if (w > 0) {
          d.probs[record_bits(rec)] += w;
        }
      }
    }
  }
  return d;
}

Distribution run_exact(const Circuit &c, const NoiseModel &noise) { return run_exact(lower_circuit(c, noise)); }

Distribution run_exact(const TransportSchedule &s, const NoiseModel &noise, const StarkOffsets &emulated) {
  return run_exact(lower_schedule(s, noise, emulated));
}

std::map<std::string, std::size_t> ShotBatch::counts() const {
  std::map<std::string, std::size_t> out;
  for (const auto &r : records) {
    if (r.scrubbed) {
      continue;
    }
    std::string b;
    for (const auto &k : keys) {
      auto it = r.outcomes.find(k);
      b += (it != r.outcomes.end() && it->second == 1) ? '1' : '0';
    }
    out[b]++;
  }
  return out;
}

namespace {

const Mat2 &pauli(int k) {
  static const Mat2 ps[4] = {pauli_i(), pauli_x(), pauli_y(), pauli_z()};
  return ps[k];
}

std::vector<int> run_trajectory(const ExecProgram &prog, Rng &rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  StateVector psi(prog.n_qubits);
  std::vector<int> rec(prog.keys.size(), -1);
  for (const auto &ins : prog.instrs) {
    if (!cond_ok(ins, rec)) {
      continue;
    }
    switch (ins.kind) {
      case InstrKind::U1:
        psi.apply_1q(ins.q0, ins.u1);
        break;
      case InstrKind::U2:
        psi.apply_2q(ins.q0, ins.q1, ins.u2);
        break;
      case InstrKind::DEPOL1: {
        double u = uni(rng);
        if (u < 0.75 * ins.p) {
          psi.apply_1q(ins.q0, pauli(1 + static_cast<int>(u / (0.25 * ins.p)) % 3));
        }
        break;
      }
      case InstrKind::DEPOL2: {
        double u = uni(rng);
        if (u < 15.0 / 16.0 * ins.p) {
          int k = 1 + std::min(14, static_cast<int>(u / (ins.p / 16.0)));
          psi.apply_1q(ins.q0, pauli(k / 4));
          psi.apply_1q(ins.q1, pauli(k % 4));
        }
        break;
      }
      case InstrKind::DEPHASE:
        if (uni(rng) < 0.5 * ins.p) {
          psi.apply_1q(ins.q0, pauli(3));
        }
        break;
      case InstrKind::CORR_ZZ:
        if (uni(rng) < ins.p) {
          psi.apply_1q(ins.q0, pauli(3));
          psi.apply_1q(ins.q1, pauli(3));
        }
        break;
      case InstrKind::RESET: {
        int b = uni(rng) < psi.prob_one(ins.q0) ? 1 : 0;
        psi.collapse(ins.q0, b);
        if (b) {
          psi.apply_1q(ins.q0, pauli(1));
        }
        break;
      }
      case InstrKind::MEASURE: {
        int b = uni(rng) < psi.prob_one(ins.q0) ? 1 : 0;
        psi.collapse(ins.q0, b);
        if (uni(rng) < ins.p) {
          b ^= 1;
        }
        rec[ins.key] = b;
        break;
      }
    }
  }
  return rec;
}

}  // namespace

ShotBatch run_shots(const ExecProgram &prog, std::size_t n_shots, std::uint64_t seed, double p_scrub) {
  if (!(p_scrub >= 0 && p_scrub < 1)) {
    throw std::invalid_argument("run_shots: scrub probability must be in [0, 1)");
  }
  ShotBatch batch;
  batch.keys = prog.keys;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  while (batch.shots < n_shots) {
    std::uint64_t s = derive_seed(seed, "shot", batch.attempts);
    batch.attempts++;
    Rng rng(s);
    ShotRecord rec;
    rec.seed = s;
    rec.wall_time_us = prog.duration_us;
    if (p_scrub > 0 && uni(rng) < p_scrub) {
      rec.scrubbed = true;
      batch.scrubbed++;
      batch.records.push_back(std::move(rec));
      continue;
    }
    std::vector<int> r = run_trajectory(prog, rng);
    for (std::size_t k = 0; k < prog.keys.size(); k++) {
      rec.outcomes[prog.keys[k]] = r[k] == 1 ? 1 : 0;
    }
    batch.records.push_back(std::move(rec));
    batch.shots++;
  }
  return batch;
}

ShotBatch run_shots(const Circuit &c, const NoiseModel &noise, std::size_t n_shots, std::uint64_t seed) {
  return run_shots(lower_circuit(c, noise), n_shots, seed, noise.p_scrub_per_shot);
}

ShotBatch run_shots(const TransportSchedule &s, const NoiseModel &noise, std::size_t n_shots, std::uint64_t seed,
                    const StarkOffsets &emulated) {
  return run_shots(lower_schedule(s, noise, emulated), n_shots, seed, noise.p_scrub_per_shot);
}

int mid_measure(DensityMatrix &rho, std::size_t q, const NoiseModel &noise, Rng &rng) {
  if (q >= rho.n_qubits()) {
    throw std::out_of_range("mid_measure: qubit out of range");
  }
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double tr = rho.trace();
  double p1 = rho.prob_one(q) / tr;
  int b = uni(rng) < p1 ? 1 : 0;
  rho = rho.project(q, b);
  double t = rho.trace();
  if (t > 0) {
    rho.matrix() /= t;
  }
  for (std::size_t k = 0; k < rho.n_qubits(); k++) {
    if (k != q) {
      rho.dephase(k, noise.p_meas_crosstalk_idle);
    }
  }
  if (uni(rng) < noise.p_meas_lc) {
    b ^= 1;
  }
  return b;
}

std::map<std::string, std::size_t> sample_counts(const Distribution &d, std::size_t n, std::uint64_t seed) {
  std::vector<std::string> outcomes;
  std::vector<double> weights;
  for (const auto &[k, v] : d.probs) {
    outcomes.push_back(k);
    weights.push_back(std::max(0.0, v));
  }
  std::map<std::string, std::size_t> counts;
  if (outcomes.empty() || n == 0) {
    return counts;
  }
  Rng rng(seed);
  std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
  for (std::size_t i = 0; i < n; i++) {
    counts[outcomes[dist(rng)]]++;
  }
  return counts;
}

}  // namespace qccd
