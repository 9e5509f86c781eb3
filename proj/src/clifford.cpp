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


#include "qccd/clifford.hpp"

#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qccd {

namespace {

Mat2 s_gate() {
  Mat2 m;
  m << 1, 0, 0, cplx(0, 1);
  return m;
}

Mat4 cnot01() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

Mat4 cnot10() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(2, 2) = m(1, 3) = m(3, 1) = 1;
  return m;
}

struct C1Table {
  std::vector<Mat2> elements;
  std::unordered_map<std::string, std::size_t> index;
  std::size_t r1 = 0;
  std::size_t r2 = 0;
};

const C1Table &c1_table() {
  static const C1Table table = [] {
    C1Table t;
    std::deque<Mat2> queue{pauli_i()};
    const Mat2 gens[2] = {hadamard(), s_gate()};
    while (!queue.empty()) {
      Mat2 u = queue.front();
      queue.pop_front();
      std::string k = clifford_key(u);
      if (t.index.count(k)) {
        continue;
      }
      t.index.emplace(k, t.elements.size());
      t.elements.push_back(u);
      for (const auto &g : gens) {
        queue.push_back(g * u);
      }
    }
    if (t.elements.size() != kClifford1Size) {
      throw std::logic_error("clifford1_group: closure produced " + std::to_string(t.elements.size()) + " elements");
    }
    for (std::size_t i = 0; i < t.elements.size(); i++) {
      const Mat2 &u = t.elements[i];
      Mat2 x = u * pauli_x() * u.adjoint();
      Mat2 y = u * pauli_y() * u.adjoint();
      if ((x - pauli_y()).cwiseAbs().maxCoeff() < 1e-12 && (y - pauli_z()).cwiseAbs().maxCoeff() < 1e-12) {
        t.r1 = i;
      }
    }
    t.r2 = t.index.at(clifford_key(t.elements[t.r1] * t.elements[t.r1]));
    return t;
  }();
  return table;
}

std::size_t s1_element(std::size_t k) {
  const C1Table &t = c1_table();
  return k == 0 ? 0 : (k == 1 ? t.r1 : t.r2);
}

struct Coset {
  CliffordClass cls;
  std::size_t a, b, s, t;
};

Coset decode(std::size_t index) {
  if (index >= kClifford2Size) {
    throw std::out_of_range("clifford2: index out of range");
  }
  if (index < 576) {
    return {CliffordClass::LOCAL, index / 24, index % 24, 0, 0};
  }
  if (index >= kClifford2Size - 576) {
    std::size_t j = index - (kClifford2Size - 576);
    return {CliffordClass::SWAP_LIKE, j / 24, j % 24, 0, 0};
  }
  std::size_t j = index - 576;
  CliffordClass cls = CliffordClass::CNOT_LIKE;
  if (j >= 5184) {
    j -= 5184;
    cls = CliffordClass::ISWAP_LIKE;
  }
  std::size_t local = j / 9;
  return {cls, local / 24, local % 24, s1_element((j % 9) / 3), s1_element(j % 3)};
}

struct C2Table {
  std::unordered_map<std::string, std::size_t> index;
};

const C2Table &c2_table() {
  static const C2Table table = [] {
    C2Table t;
    for (std::size_t i = 0; i < kClifford2Size; i++) {
      t.index.emplace(clifford_key(clifford2_element(i)), i);
    }
    if (t.index.size() != kClifford2Size) {
      throw std::logic_error("clifford2: coset form produced duplicate elements");
    }
    return t;
  }();
  return table;
}

void append(std::vector<GateOp> &out, const std::vector<GateOp> &ops) { out.insert(out.end(), ops.begin(), ops.end()); }

std::vector<MatX> pauli_strings(std::size_t n) {
  std::vector<MatX> out{MatX::Identity(1, 1)};
  const Mat2 ps[4] = {pauli_i(), pauli_x(), pauli_y(), pauli_z()};
  for (std::size_t k = 0; k < n; k++) {
    std::vector<MatX> next;
    for (const auto &m : out) {
      for (const auto &p : ps) {
        next.push_back(kron(m, MatX(p)));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

const std::vector<Mat2> &clifford1_group() { return c1_table().elements; }

std::string clifford_key(const MatX &u) {
  Eigen::Index pr = -1, pc = -1;
  for (Eigen::Index c = 0; c < u.cols() && pr < 0; c++) {
    for (Eigen::Index r = 0; r < u.rows(); r++) {
      if (std::abs(u(r, c)) > 0.1) {
        pr = r;
        pc = c;
        break;
      }
    }
  }
  if (pr < 0) {
    throw std::invalid_argument("clifford_key: zero matrix");
  }
  cplx phase = std::abs(u(pr, pc)) / u(pr, pc);
  std::ostringstream os;
  os << u.rows() << ':';
  for (Eigen::Index c = 0; c < u.cols(); c++) {
    for (Eigen::Index r = 0; r < u.rows(); r++) {
      cplx v = u(r, c) * phase;
      long long re = std::llround(v.real() * 1e6), im = std::llround(v.imag() * 1e6);
      os << (re == 0 ? 0 : re) << ',' << (im == 0 ? 0 : im) << ';';
    }
  }
  return os.str();
}

Mat4 clifford2_element(std::size_t index) {
  Coset c = decode(index);
  const auto &g = clifford1_group();
  Mat4 local = kron(g[c.a], g[c.b]);
  Mat4 pre = kron(g[c.s], g[c.t]);
  switch (c.cls) {
    case CliffordClass::LOCAL:
      return local;
    case CliffordClass::CNOT_LIKE:
      return local * cnot01() * pre;
    case CliffordClass::ISWAP_LIKE:
      return local * cnot10() * cnot01() * pre;
    case CliffordClass::SWAP_LIKE:
      return local * cnot01() * cnot10() * cnot01();
  }
  return local;
}

CliffordClass clifford2_class(std::size_t index) { return decode(index).cls; }

std::size_t clifford2_zz_count(std::size_t index) { return static_cast<std::size_t>(decode(index).cls); }

std::vector<GateOp> clifford1_native(std::size_t index, std::size_t q) {
  return synth_su2(clifford1_group().at(index), {}, q).ops;
}

std::vector<GateOp> clifford2_native(std::size_t index, std::size_t q0, std::size_t q1) {
  Coset c = decode(index);
  std::vector<GateOp> ops;
  if (c.cls == CliffordClass::CNOT_LIKE || c.cls == CliffordClass::ISWAP_LIKE) {
    append(ops, clifford1_native(c.s, q0));
    append(ops, clifford1_native(c.t, q1));
  }
  switch (c.cls) {
    case CliffordClass::LOCAL:
      break;
    case CliffordClass::CNOT_LIKE:
      append(ops, native_cnot(q0, q1));
      break;
    case CliffordClass::ISWAP_LIKE:
      append(ops, native_cnot(q0, q1));
      append(ops, native_cnot(q1, q0));
      break;
    case CliffordClass::SWAP_LIKE:
      append(ops, native_cnot(q0, q1));
      append(ops, native_cnot(q1, q0));
      append(ops, native_cnot(q0, q1));
      break;
  }
  append(ops, clifford1_native(c.a, q0));
  append(ops, clifford1_native(c.b, q1));
  return ops;
}

std::size_t clifford_index(const MatX &u) {
  std::string k = clifford_key(u);
  if (u.rows() == 2) {
    auto it = c1_table().index.find(k);
    if (it != c1_table().index.end()) {
      return it->second;
    }
  } else if (u.rows() == 4) {
    auto it = c2_table().index.find(k);
    if (it != c2_table().index.end()) {
      return it->second;
    }
  }
  throw std::invalid_argument("clifford_index: matrix is not a one- or two-qubit Clifford");
}

bool is_clifford(const MatX &u, double tol) {
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < u.rows()) {
    n++;
  }
  auto paulis = pauli_strings(n);
  double d = static_cast<double>(u.rows());
  for (const auto &p : paulis) {
    MatX m = u * p * u.adjoint();
    bool found = false;
    for (const auto &q : paulis) {
      cplx ov = (q.adjoint() * m).trace() / d;
      if (std::abs(std::abs(ov) - 1) < tol && std::abs(std::abs(ov.real()) - 1) < tol) {
        found = true;
        break;
      }
    }
    if (!found) {
      return false;
    }
  }
  return true;
}

SampledClifford sample_clifford(std::size_t n, Rng &rng) {
  if (n != 1 && n != 2) {
    throw std::invalid_argument("sample_clifford: n must be 1 or 2");
  }
  SampledClifford s;
  s.n_qubits = n;
  std::size_t size = n == 1 ? kClifford1Size : kClifford2Size;
  s.index = std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
  s.matrix = n == 1 ? MatX(clifford1_group()[s.index]) : MatX(clifford2_element(s.index));
  s.native.n_qubits = n;
  s.native.ops = n == 1 ? clifford1_native(s.index, 0) : clifford2_native(s.index, 0, 1);
  s.native.target_unitary = s.matrix;
  return s;
}

SampledClifford sample_clifford(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_clifford(n, rng);
}

double mean_zz_per_clifford2() {
  double total = 0;
  for (std::size_t i = 0; i < kClifford2Size; i++) {
    total += static_cast<double>(clifford2_zz_count(i));
  }
  return total / static_cast<double>(kClifford2Size);
}

}  // namespace qccd
