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


#ifndef QCCD_TESTS_ORACLES_HPP
#define QCCD_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <variant>
#include <vector>

#include "qccd/circuit.hpp"

namespace qccd::oracle {

using C = std::complex<double>;

inline Eigen::Matrix2cd X() { return (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(); }
inline Eigen::Matrix2cd Y() { return (Eigen::Matrix2cd() << 0, C(0, -1), C(0, 1), 0).finished(); }
inline Eigen::Matrix2cd Z() { return (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(); }

// exp(-i t/2 n.sigma) = cos(t/2) I - i sin(t/2) n.sigma
inline Eigen::Matrix2cd rot(double t, const Eigen::Matrix2cd &axis) {
  return std::cos(t / 2) * Eigen::Matrix2cd::Identity() - C(0, 1) * std::sin(t / 2) * axis;
}
inline Eigen::Matrix2cd rz(double t) { return rot(t, Z()); }
inline Eigen::Matrix2cd rxy(double t, double p) { return rot(t, std::cos(p) * X() + std::sin(p) * Y()); }

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
  Eigen::MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); i++) {
    for (Eigen::Index j = 0; j < a.cols(); j++) {
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return r;
}

// exp(-i pi/4 Z Z) is diagonal
inline Eigen::Matrix4cd uzz() {
  C m = std::exp(C(0, -M_PI / 4)), p = std::exp(C(0, M_PI / 4));
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = m;
  u(1, 1) = p;
  u(2, 2) = p;
  u(3, 3) = m;
  return u;
}

// Full-register embedding of a one- or two-qubit gate, qubit 0 most significant.
inline Eigen::MatrixXcd embed(const Eigen::MatrixXcd &g, const std::vector<std::size_t> &qs, std::size_t n) {
  std::size_t d = std::size_t{1} << n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
  std::size_t k = qs.size();
  for (std::size_t col = 0; col < d; col++) {
    std::size_t sub = 0;
    for (std::size_t j = 0; j < k; j++) {
      sub = (sub << 1) | ((col >> (n - 1 - qs[j])) & 1);
    }
    for (std::size_t out = 0; out < (std::size_t{1} << k); out++) {
      std::size_t row = col;
      for (std::size_t j = 0; j < k; j++) {
        std::size_t bit = (out >> (k - 1 - j)) & 1;
        row = (row & ~(std::size_t{1} << (n - 1 - qs[j]))) | (bit << (n - 1 - qs[j]));
      }
      u(row, col) += g(out, sub);
    }
  }
  return u;
}

inline Eigen::MatrixXcd product(const std::vector<GateOp> &ops, std::size_t n) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(1 << n, 1 << n);
  for (const auto &op : ops) {
    Eigen::MatrixXcd g;
    if (auto *a = std::get_if<RzOp>(&op)) {
      g = embed(rz(a->theta), {a->q}, n);
    } else if (auto *b = std::get_if<RxyOp>(&op)) {
      g = embed(rxy(b->theta, b->phi), {b->q}, n);
    } else if (auto *c = std::get_if<ZzOp>(&op)) {
      g = embed(uzz(), {c->q0, c->q1}, n);
    } else if (auto *d = std::get_if<Unitary2Op>(&op)) {
      g = embed(d->matrix, {d->q}, n);
    } else if (auto *e = std::get_if<Unitary4Op>(&op)) {
      g = embed(e->matrix, {e->q0, e->q1}, n);
    } else {
      throw std::logic_error("oracle::product: op has no unitary");
    }
    u = g * u;
  }
  return u;
}

// Distance after aligning the global phase on tr(V^dagger U).
inline double phase_dist(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &v) {
  C t = (v.adjoint() * u).trace();
  C ph = std::abs(t) > 1e-300 ? t / std::abs(t) : C(1, 0);
  return (u - ph * v).cwiseAbs().maxCoeff();
}

}  // namespace qccd::oracle

#endif
