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

#include "qccd/random.hpp"

#include <cmath>

namespace qccd {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view tag, std::uint64_t index) {
  // FNV-1a over the tag, then mix with root and index.
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char ch : tag) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001B3ULL;
  }
  return splitmix64(splitmix64(root ^ h) + splitmix64(index + 0x632BE59BD9B4E019ULL));
}

MatX haar_unitary(std::size_t d, Rng &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatX z(d, d);
  for (std::size_t j = 0; j < d; j++) {
    for (std::size_t i = 0; i < d; i++) {
      double re = normal(rng);
      double im = normal(rng);
      z(i, j) = cplx(re, im);
    }
  }
  Eigen::HouseholderQR<MatX> qr(z);
  MatX q = qr.householderQ() * MatX::Identity(d, d);
  MatX r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t k = 0; k < d; k++) {
    cplx rk = r(k, k);
    cplx ph = std::abs(rk) > 0 ? rk / std::abs(rk) : cplx(1, 0);
    q.col(k) *= ph;
  }
  return q;
}

namespace {

MatX to_special(MatX u) {
  cplx det = u.determinant();
  double n = static_cast<double>(u.rows());
  return u / std::pow(det, 1.0 / n);
}

}  // namespace

Mat2 haar_su2(std::uint64_t seed) {
  Rng rng(seed);
  return to_special(haar_unitary(2, rng));
}

Mat4 haar_su4(std::uint64_t seed) {
  Rng rng(seed);
  return to_special(haar_unitary(4, rng));
}

}  // namespace qccd
