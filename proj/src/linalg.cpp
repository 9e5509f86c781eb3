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

#include "qccd/linalg.hpp"

#include <cmath>

namespace qccd {

Mat2 pauli_i() { return Mat2::Identity(); }

Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 pauli_y() {
  Mat2 m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 hadamard() {
  Mat2 m;
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Mat2 rz(double theta) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::polar(1.0, -theta / 2);
  m(1, 1) = std::polar(1.0, theta / 2);
  return m;
}

Mat2 rxy(double theta, double phi) {
  double c = std::cos(theta / 2);
  double s = std::sin(theta / 2);
  Mat2 m;
  m(0, 0) = c;
  m(1, 1) = c;
  m(0, 1) = cplx(0, -s) * std::polar(1.0, -phi);
  m(1, 0) = cplx(0, -s) * std::polar(1.0, phi);
  return m;
}

Mat4 uzz() {
  Mat4 m = Mat4::Zero();
  cplx a = std::polar(1.0, -kPi / 4);
  cplx b = std::polar(1.0, kPi / 4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = b;
  m(3, 3) = a;
  return m;
}

Mat4 kron(const Mat2 &a, const Mat2 &b) {
  Mat4 m;
  for (int i = 0; i < 2; i++) {
    for (int j = 0; j < 2; j++) {
      m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return m;
}

MatX kron(const MatX &a, const MatX &b) {
  MatX m(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); i++) {
    for (Eigen::Index j = 0; j < a.cols(); j++) {
      m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return m;
}

double phase_distance(const MatX &u, const MatX &v) {
  cplx overlap = (v.adjoint() * u).trace();
  cplx phase(1, 0);
  if (std::abs(overlap) > 1e-300) {
    phase = overlap / std::abs(overlap);
  } else {
    Eigen::Index r = 0, c = 0;
    v.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(v(r, c)) > 0 && std::abs(u(r, c)) > 0) {
      cplx z = u(r, c) / v(r, c);
      phase = z / std::abs(z);
    }
  }
  return (u - phase * v).cwiseAbs().maxCoeff();
}

double unitarity_error(const MatX &u) {
  if (u.rows() != u.cols()) {
    return INFINITY;
  }
  MatX d = u.adjoint() * u - MatX::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

std::pair<Mat2, Mat2> factor_kron(const Mat4 &m) {
  int bi = 0, bj = 0;
  double best = -1;
  for (int i = 0; i < 2; i++) {
    for (int j = 0; j < 2; j++) {
      double n = m.block<2, 2>(2 * i, 2 * j).squaredNorm();
      if (n > best) {
        best = n;
        bi = i;
        bj = j;
      }
    }
  }
  Mat2 blk = m.block<2, 2>(2 * bi, 2 * bj);
  Mat2 b = blk / std::sqrt(blk.determinant());
  Mat2 a;
  for (int i = 0; i < 2; i++) {
    for (int j = 0; j < 2; j++) {
      a(i, j) = (b.adjoint() * m.block<2, 2>(2 * i, 2 * j)).trace() / 2.0;
    }
  }
  return {a, b};
}

double wrap_angle(double theta) {
  double t = std::remainder(theta, 2 * kPi);
  if (t <= -kPi) {
    t += 2 * kPi;
  }
  return t;
}

}  // namespace qccd
