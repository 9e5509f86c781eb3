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

#include "qccd/synthesis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace qccd {

namespace {

constexpr double kDegenerate = 1e-11;

}  // namespace

double quantize_z(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("quantize_z: non-finite angle");
  }
  double k = wrap_angle(theta) / kZResolution;
  double fl = std::floor(k);
  double r;
  if (std::abs(k - fl - 0.5) < 1e-9) {
    r = k > 0 ? fl : fl + 1;
  } else {
    r = std::round(k);
  }
  double out = wrap_angle(r * kZResolution);
  return out == 0 ? 0.0 : out;
}

std::size_t NativeSequence::count_zz() const {
  return static_cast<std::size_t>(
      std::count_if(ops.begin(), ops.end(), [](const GateOp &op) { return std::holds_alternative<ZzOp>(op); }));
}

namespace {

void emit_rz(std::vector<GateOp> &ops, std::size_t q, double z, const SynthOptions &opts) {
  double t = opts.quantize ? quantize_z(z) : wrap_angle(z);
  if (std::abs(t) > 1e-13) {
    ops.push_back(RzOp{q, t});
  }
}

void emit_su2(std::vector<GateOp> &ops, const Mat2 &u, const SynthOptions &opts, std::size_t q) {
  Mat2 v = u / std::sqrt(u.determinant());
  double c = std::abs(v(0, 0));
  double s = std::abs(v(1, 0));
  double b = 2 * std::atan2(s, c);
  double apc = c > kDegenerate ? std::arg(v(1, 1) * std::conj(v(0, 0))) : 0.0;
  double amc = s > kDegenerate ? std::arg(v(1, 0) * std::conj(-v(0, 1))) : 0.0;
  double a = (apc + amc) / 2;
  double cc = (apc - amc) / 2;
  // Half-angle branch: (a, c) and (a + pi, c + pi) differ by the sign of b.
  if (phase_distance(rz(a) * rxy(b, kPi / 2) * rz(cc), v) > 1e-6) {
    a += kPi;
    cc += kPi;
  }
  if (s <= kDegenerate) {
    emit_rz(ops, q, a + cc, opts);
  } else if (std::abs(b - kPi / 2) <= kDegenerate) {
    emit_rz(ops, q, a + cc, opts);
    ops.push_back(RxyOp{q, kPi / 2, wrap_angle(a + kPi / 2)});
  } else {
    emit_rz(ops, q, a + b + cc, opts);
    ops.push_back(RxyOp{q, kPi / 2, wrap_angle(a + b)});
    ops.push_back(RxyOp{q, kPi / 2, wrap_angle(a + kPi)});
  }
}

void check_unitary(const MatX &u, const char *who) {
  double e = unitarity_error(u);
  if (!(e <= 1e-10)) {
    throw std::invalid_argument(std::string(who) + ": input is not unitary (error " + std::to_string(e) + ")");
  }
}

Mat4 magic_basis() {
  double s = 1.0 / std::sqrt(2.0);
  cplx i(0, 1);
  Mat4 q;
  q << s, 0, 0, s * i, 0, s * i, s, 0, 0, s * i, -s, 0, s, 0, 0, -s * i;
  return q;
}

/** Rows: (1, <XX>, <YY>, <ZZ>) eigenvalues on each magic-basis column. */
Eigen::Matrix4d magic_eigen_table() {
  Mat4 q = magic_basis();
  Mat4 ops[3] = {kron(pauli_x(), pauli_x()), kron(pauli_y(), pauli_y()), kron(pauli_z(), pauli_z())};
  Eigen::Matrix4d t;
  for (int k = 0; k < 4; k++) {
    t(k, 0) = 1;
    for (int p = 0; p < 3; p++) {
      t(k, p + 1) = (q.col(k).adjoint() * ops[p] * q.col(k))(0, 0).real();
    }
  }
  return t;
}

struct Segment {
  bool zz = false;
  Mat2 m0 = Mat2::Identity();
  Mat2 m1 = Mat2::Identity();
};

void push_local(std::vector<Segment> &segs, const Mat2 &m0, const Mat2 &m1) {
  if (!segs.empty() && !segs.back().zz) {
    segs.back().m0 = m0 * segs.back().m0;
    segs.back().m1 = m1 * segs.back().m1;
  } else {
    segs.push_back({false, m0, m1});
  }
}

void push_zz(std::vector<Segment> &segs) {
  if (segs.empty() || segs.back().zz) {
    segs.push_back({});
  }
  segs.push_back({true, {}, {}});
}

/** CNOT with control on the first (c_first) or second pair member. */
void push_cnot(std::vector<Segment> &segs, bool c_first) {
  Mat2 i = Mat2::Identity();
  Mat2 h = hadamard();
  Mat2 z = rz(-kPi / 2);
  if (c_first) {
    push_local(segs, i, h);
    push_zz(segs);
    push_local(segs, z, h * z);
  } else {
    push_local(segs, h, i);
    push_zz(segs);
    push_local(segs, h * z, z);
  }
}

std::vector<GateOp> emit_segments(const std::vector<Segment> &segs, const SynthOptions &opts, std::size_t q0,
                                  std::size_t q1) {
  std::vector<GateOp> ops;
  for (const auto &s : segs) {
    if (s.zz) {
      ops.push_back(ZzOp{q0, q1});
    } else {
      emit_su2(ops, s.m0, opts, q0);
      emit_su2(ops, s.m1, opts, q1);
    }
  }
  return ops;
}

}  // namespace

NativeSequence synth_su2(const Mat2 &u, SynthOptions opts, std::size_t q) {
  check_unitary(u, "synth_su2");
  NativeSequence seq;
  seq.n_qubits = q + 1;
  emit_su2(seq.ops, u, opts, q);
  if (q == 0) {
    seq.target_unitary = u;
  }
  return seq;
}

Mat4 canonical_gate(double x, double y, double z) {
  // XX, YY, ZZ commute and are diagonal in the magic basis.
  static const Mat4 q = magic_basis();
  static const Eigen::Matrix4d table = magic_eigen_table();
  Mat4 d = Mat4::Zero();
  for (int k = 0; k < 4; k++) {
    d(k, k) = std::polar(1.0, x * table(k, 1) + y * table(k, 2) + z * table(k, 3));
  }
  return q * d * q.adjoint();
}

Mat4 KakDecomposition::reconstruct() const {
  return global_phase * kron(a0, a1) * canonical_gate(x, y, z) * kron(b0, b1);
}

KakDecomposition kak_decompose(const Mat4 &u) {
  check_unitary(u, "kak_decompose");
  static const Mat4 q = magic_basis();
  static const Eigen::Matrix4d table = magic_eigen_table();

  cplx det = u.determinant();
  cplx root = std::pow(det, 0.25);
  Mat4 us = u / root;
  Mat4 up = q.adjoint() * us * q;
  Mat4 m = up.transpose() * up;
  Eigen::Matrix4d mr = m.real();
  Eigen::Matrix4d mi = m.imag();

  static const std::array<std::pair<double, double>, 6> mixes = {
      {{1.0, 0.0}, {0.0, 1.0}, {0.6180339887, 0.7861513778}, {0.2718281828, -0.9623475564}, {-0.8660254038, 0.5},
       {0.4142135624, 0.9101797211}}};
  Eigen::Matrix4d best_o;
  double best_off = INFINITY;
  for (auto [c1, c2] : mixes) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(c1 * mr + c2 * mi);
    Eigen::Matrix4d o = es.eigenvectors();
    Mat4 d = o.transpose().cast<cplx>() * m * o.cast<cplx>();
    double off = 0;
    for (int i = 0; i < 4; i++) {
      for (int j = 0; j < 4; j++) {
        if (i != j) {
          off = std::max(off, std::abs(d(i, j)));
        }
      }
    }
    if (off < best_off) {
      best_off = off;
      best_o = o;
    }
    if (off < 1e-13) {
      break;
    }
  }
  if (best_o.determinant() < 0) {
    best_o.col(0) *= -1;
  }
  Mat4 oc = best_o.cast<cplx>();
  Mat4 d = oc.transpose() * m * oc;
  Eigen::Vector4d theta;
  for (int k = 0; k < 4; k++) {
    theta(k) = std::arg(d(k, k)) / 2;
  }
  if (std::cos(theta.sum()) < 0) {
    theta(0) += kPi;
  }
  Mat4 finv = Mat4::Zero();
  for (int k = 0; k < 4; k++) {
    finv(k, k) = std::polar(1.0, -theta(k));
  }
  Mat4 k1 = up * oc * finv;
  Mat4 a = q * k1 * q.adjoint();
  Mat4 b = q * oc.transpose() * q.adjoint();

  Eigen::Vector4d coeffs = table.fullPivLu().solve(theta);

  KakDecomposition kd;
  std::tie(kd.a0, kd.a1) = factor_kron(a);
  std::tie(kd.b0, kd.b1) = factor_kron(b);
  kd.x = coeffs(1);
  kd.y = coeffs(2);
  kd.z = coeffs(3);
  Mat4 v = kd.reconstruct();
  kd.global_phase = (v.adjoint() * u).trace() / 4.0;
  kd.global_phase /= std::abs(kd.global_phase);
  if (phase_distance(kd.reconstruct(), u) > 1e-8) {
    throw std::logic_error("kak_decompose: decomposition failed to reproduce the input");
  }
  return kd;
}

NativeSequence synth_su4(const Mat4 &u, SynthOptions opts, std::size_t q0, std::size_t q1) {
  check_unitary(u, "synth_su4");
  KakDecomposition kd = kak_decompose(u);
  double t1 = kPi / 2 - 2 * kd.z;
  double t2 = 2 * kd.x - kPi / 2;
  double t3 = kPi / 2 - 2 * kd.y;
  Mat2 i = Mat2::Identity();

  std::vector<Segment> segs;
  push_local(segs, kd.b0, kd.b1);
  push_local(segs, i, rz(-kPi / 2));
  push_cnot(segs, false);
  push_local(segs, rz(t1), rxy(t2, kPi / 2));
  push_cnot(segs, true);
  push_local(segs, i, rxy(t3, kPi / 2));
  push_cnot(segs, false);
  push_local(segs, rz(kPi / 2), i);
  push_local(segs, kd.a0, kd.a1);

  NativeSequence seq;
  seq.n_qubits = std::max(q0, q1) + 1;
  seq.ops = emit_segments(segs, opts, q0, q1);
  if (q0 == 0 && q1 == 1) {
    seq.target_unitary = u;
  }
  return seq;
}

std::vector<GateOp> native_cnot(std::size_t c, std::size_t t) {
  std::vector<Segment> segs;
  push_cnot(segs, true);
  return emit_segments(segs, SynthOptions{}, c, t);
}

FrameResult commute_z_forward(const std::vector<GateOp> &ops, std::size_t n_qubits, bool keep_trailing) {
  FrameResult r;
  r.residual.assign(n_qubits, 0.0);
  auto &frame = r.residual;
  auto flush = [&](std::size_t q) {
    if (frame[q] != 0) {
      r.ops.push_back(RzOp{q, wrap_angle(frame[q])});
      frame[q] = 0;
    }
  };
  for (const auto &op : ops) {
    if (const auto *z = std::get_if<RzOp>(&op)) {
      frame[z->q] += z->theta;
    } else if (const auto *x = std::get_if<RxyOp>(&op)) {
      r.ops.push_back(RxyOp{x->q, x->theta, wrap_angle(x->phi - frame[x->q])});
    } else if (std::holds_alternative<ZzOp>(op) || std::holds_alternative<MeasureOp>(op)) {
      r.ops.push_back(op);
    } else if (const auto *rs = std::get_if<ResetOp>(&op)) {
      frame[rs->q] = 0;
      r.ops.push_back(op);
    } else if (const auto *c = std::get_if<CondOp>(&op)) {
      CondOp cc = *c;
      if (auto *inner = std::get_if<RxyOp>(&cc.inner)) {
        inner->phi = wrap_angle(inner->phi - frame[inner->q]);
      }
      r.ops.push_back(cc);
    } else {
      for (std::size_t q : op_qubits(op)) {
        flush(q);
      }
      r.ops.push_back(op);
    }
  }
  for (auto &f : frame) {
    f = wrap_angle(f);
  }
  if (keep_trailing) {
    for (std::size_t q = 0; q < n_qubits; q++) {
      flush(q);
    }
  }
  return r;
}

NativeSequence commute_z_forward(const NativeSequence &seq, bool keep_trailing) {
  NativeSequence out;
  out.n_qubits = seq.n_qubits;
  out.target_unitary = seq.target_unitary;
  out.ops = commute_z_forward(seq.ops, seq.n_qubits, keep_trailing).ops;
  return out;
}

namespace {

Mat4 swap_conjugate(const Mat4 &m) {
  Mat4 p = Mat4::Zero();
  p(0, 0) = p(1, 2) = p(2, 1) = p(3, 3) = 1;
  return p * m * p;
}

Mat4 embed(const Mat2 &u, bool first) {
  return first ? kron(u, Mat2::Identity()) : kron(Mat2::Identity(), u);
}

}  // namespace

Circuit merge_two_qubit_blocks(const Circuit &c) {
  std::vector<std::optional<GateOp>> out;
  std::vector<long> last(c.n_qubits, -1);
  for (const auto &op : c.ops) {
    if (const auto *u2 = std::get_if<Unitary2Op>(&op)) {
      long j = last[u2->q];
      if (j >= 0) {
        if (auto *blk = std::get_if<Unitary4Op>(&*out[j])) {
          blk->matrix = embed(u2->matrix, blk->q0 == u2->q) * blk->matrix;
          continue;
        }
      }
      out.push_back(op);
      last[u2->q] = static_cast<long>(out.size()) - 1;
      continue;
    }
    if (const auto *u4 = std::get_if<Unitary4Op>(&op)) {
      long j0 = last[u4->q0];
      long j1 = last[u4->q1];
      if (j0 >= 0 && j0 == j1) {
        auto *prev = std::get_if<Unitary4Op>(&*out[j0]);
        if (prev != nullptr) {
          Mat4 p = prev->q0 == u4->q0 ? prev->matrix : swap_conjugate(prev->matrix);
          *out[j0] = Unitary4Op{u4->q0, u4->q1, u4->matrix * p};
          continue;
        }
      }
      Mat4 m = u4->matrix;
      for (int side = 0; side < 2; side++) {
        std::size_t q = side == 0 ? u4->q0 : u4->q1;
        long j = last[q];
        if (j >= 0) {
          if (auto *u2 = std::get_if<Unitary2Op>(&*out[j])) {
            m = m * embed(u2->matrix, side == 0);
            out[j].reset();
          }
        }
      }
      out.push_back(Unitary4Op{u4->q0, u4->q1, m});
      last[u4->q0] = last[u4->q1] = static_cast<long>(out.size()) - 1;
      continue;
    }
    out.push_back(op);
    for (std::size_t q : op_qubits(op)) {
      last[q] = static_cast<long>(out.size()) - 1;
    }
  }
  Circuit r;
  r.n_qubits = c.n_qubits;
  r.metadata = c.metadata;
  for (auto &o : out) {
    if (o) {
      r.ops.push_back(std::move(*o));
    }
  }
  return r;
}

Circuit synthesize_circuit(const Circuit &c, SynthOptions opts) {
  Circuit r;
  r.n_qubits = c.n_qubits;
  r.metadata = c.metadata;
  auto is_native_angle = [](double t) {
    return std::abs(t - kPi / 2) < 1e-12 || std::abs(t - kPi) < 1e-12;
  };
  for (const auto &op : c.ops) {
    if (const auto *z = std::get_if<RzOp>(&op)) {
      emit_rz(r.ops, z->q, z->theta, opts);
    } else if (const auto *x = std::get_if<RxyOp>(&op)) {
      if (is_native_angle(x->theta)) {
        r.ops.push_back(op);
      } else {
        emit_su2(r.ops, rxy(x->theta, x->phi), opts, x->q);
      }
    } else if (const auto *u2 = std::get_if<Unitary2Op>(&op)) {
      check_unitary(u2->matrix, "synthesize_circuit");
      emit_su2(r.ops, u2->matrix, opts, u2->q);
    } else if (const auto *u4 = std::get_if<Unitary4Op>(&op)) {
      auto seq = synth_su4(u4->matrix, opts, u4->q0, u4->q1);
      r.ops.insert(r.ops.end(), seq.ops.begin(), seq.ops.end());
    } else if (const auto *cd = std::get_if<CondOp>(&op)) {
      CondOp cc = *cd;
      if (auto *inner = std::get_if<RzOp>(&cc.inner); inner != nullptr && opts.quantize) {
        inner->theta = quantize_z(inner->theta);
      }
      r.ops.push_back(cc);
    } else {
      r.ops.push_back(op);
    }
  }
  return r;
}

}  // namespace qccd
