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

#ifndef QCCD_LINALG_HPP
#define QCCD_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <utility>

namespace qccd {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;

/**
 * Multi-qubit tensor ordering used throughout: qubit 0 is the most
 * significant factor, so kron(A, B) applies A to the first qubit of a pair.
 */

Mat2 pauli_i();
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 hadamard();

/** exp(-i theta Z / 2). */
Mat2 rz(double theta);

/** exp(-i theta/2 (X cos phi + Y sin phi)). */
Mat2 rxy(double theta, double phi);

/** exp(-i pi/4 Z (x) Z). */
Mat4 uzz();

Mat4 kron(const Mat2 &a, const Mat2 &b);
MatX kron(const MatX &a, const MatX &b);

/** Returns min over phi of max-abs entry of (u - e^{i phi} v). */
double phase_distance(const MatX &u, const MatX &v);

/** max-abs entry of (U^dagger U - I). */
double unitarity_error(const MatX &u);

/** Splits a 4x4 matrix equal to kron(a, b) (up to scalar) into its factors. */
std::pair<Mat2, Mat2> factor_kron(const Mat4 &m);

/** Wraps an angle to (-pi, pi]. */
double wrap_angle(double theta);

}  // namespace qccd

#endif
