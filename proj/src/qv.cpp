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


#include "qccd/qv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qccd/parallel.hpp"
#include "qccd/random.hpp"
#include "qccd/scheduler.hpp"
#include "qccd/synthesis.hpp"

namespace qccd {

Circuit gen_qv_circuit(std::size_t n, std::uint64_t seed) {
  if (n < 2) {
    throw std::invalid_argument("gen_qv_circuit: N must be at least 2");
  }
  Rng rng(seed);
  Circuit c;
  c.n_qubits = n;
  std::vector<std::size_t> perm(n);
  for (std::size_t round = 0; round < n; round++) {
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n - 1; i > 0; i--) {
      std::swap(perm[i], perm[std::uniform_int_distribution<std::size_t>(0, i)(rng)]);
    }
    for (std::size_t k = 0; k + 1 < n; k += 2) {
      Rng block(rng());
      MatX u = haar_unitary(4, block);
      u /= std::pow(u.determinant(), 0.25);
      c.ops.push_back(Unitary4Op{perm[k], perm[k + 1], Mat4(u)});
    }
  }
  for (std::size_t q = 0; q < n; q++) {
    c.ops.push_back(MeasureOp{q, "m" + std::to_string(q)});
  }
  c.metadata["benchmark"] = "qv";
  c.metadata["seed"] = std::to_string(seed);
  return c;
}

Circuit compile_qv_circuit(const Circuit &c, bool merge) {
  return synthesize_circuit(merge ? merge_two_qubit_blocks(c) : c);
}

std::vector<std::string> heavy_set(const Distribution &ideal, std::size_t n_qubits) {
  if (ideal.keys.size() != n_qubits) {
    throw std::invalid_argument("heavy_set: distribution must cover every qubit");
  }
  std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<std::string> outcomes;
  std::vector<double> probs;
  for (std::size_t i = 0; i < dim; i++) {
    std::string bits;
    for (std::size_t q = 0; q < n_qubits; q++) {
      bits += ((i >> (n_qubits - 1 - q)) & 1u) ? '1' : '0';
    }
    outcomes.push_back(bits);
    probs.push_back(ideal[bits]);
  }
  std::vector<double> sorted = probs;
  std::sort(sorted.begin(), sorted.end());
  double median = dim % 2 ? sorted[dim / 2] : 0.5 * (sorted[dim / 2 - 1] + sorted[dim / 2]);
  std::vector<std::string> heavy;
  for (std::size_t i = 0; i < dim; i++) {
    if (probs[i] > median) {
      heavy.push_back(outcomes[i]);
    }
  }
  return heavy;
}

QVResult qv_analyze(std::size_t n_qubits, const std::vector<Distribution> &ideal,
                    const std::vector<std::map<std::string, std::size_t>> &counts) {
  if (ideal.size() != counts.size() || ideal.empty()) {
    throw std::invalid_argument("qv_analyze: need one count table per ideal distribution");
  }
  QVResult r;
  r.n = n_qubits;
  r.n_circuits = ideal.size();
  std::size_t total_heavy = 0, total_shots = 0;
  for (std::size_t c = 0; c < ideal.size(); c++) {
    auto heavy = heavy_set(ideal[c], n_qubits);
    QVCircuitRecord rec;
    for (const auto &h : heavy) {
      rec.ideal_heavy_prob += ideal[c][h];
    }
    for (const auto &[bits, k] : counts[c]) {
      rec.shots += k;
      if (std::binary_search(heavy.begin(), heavy.end(), bits)) {
        rec.heavy_shots += k;
      }
    }
    if (c == 0) {
      r.n_shots = rec.shots;
    } else if (rec.shots != r.n_shots) {
      throw std::invalid_argument("qv_analyze: circuits have different shot counts");
    }
    if (rec.shots == 0) {
      throw std::invalid_argument("qv_analyze: circuit with no shots");
    }
    rec.heavy_fraction = static_cast<double>(rec.heavy_shots) / static_cast<double>(rec.shots);
    total_heavy += rec.heavy_shots;
    total_shots += rec.shots;
    r.ideal_heavy_mean += rec.ideal_heavy_prob;
    r.records.push_back(rec);
  }
  r.ideal_heavy_mean /= static_cast<double>(r.n_circuits);
  r.h_mean = static_cast<double>(total_heavy) / static_cast<double>(total_shots);
  r.sigma = std::sqrt(r.h_mean * (1 - r.h_mean) / static_cast<double>(total_shots));
  r.pass = r.h_mean - 2 * r.sigma > 2.0 / 3.0;
  r.confidence = r.sigma > 0 ? 0.5 * std::erfc(-(r.h_mean - 2.0 / 3.0) / (r.sigma * std::sqrt(2.0)))
                             : (r.h_mean > 2.0 / 3.0 ? 1.0 : 0.0);
  return r;
}

QVConfig default_qv_config(std::size_t n) {
  QVConfig cfg;
  cfg.n = n;
  if (n > 4) {
    cfg.circuits = 400;
    cfg.shots = 100;
    cfg.merge = true;
  }
  return cfg;
}

QVResult run_qv(const QVConfig &cfg) {
  if (cfg.n > kMaxSimQubits) {
    throw std::invalid_argument("n exceeds simulator capacity");
  }
  if (cfg.circuits == 0 || cfg.shots == 0) {
    throw std::invalid_argument("run_qv: circuits and shots must be positive");
  }
  cfg.noise.validate();
  Mode mode = Mode::N4;
  if (cfg.scheduled) {
    if (cfg.n > 6) {
      throw std::invalid_argument("run_qv: scheduled runs support at most 6 qubits");
    }
    mode = cfg.n <= 4 ? Mode::N4 : Mode::N6;
  }
  std::vector<Distribution> ideal(cfg.circuits);
  std::vector<std::map<std::string, std::size_t>> counts(cfg.circuits);
  std::vector<std::uint64_t> seeds(cfg.circuits);
  std::vector<std::size_t> blocks(cfg.circuits), zz(cfg.circuits);
  parallel_for(cfg.circuits, [&](std::size_t i) {
    seeds[i] = derive_seed(cfg.seed, "qv-circuit", i);
    Circuit c = gen_qv_circuit(cfg.n, seeds[i]);
    ideal[i] = run_exact(c, NoiseModel::ideal());
    Circuit merged = cfg.merge ? merge_two_qubit_blocks(c) : c;
    blocks[i] = 0;
    for (const auto &op : merged.ops) {
      blocks[i] += std::holds_alternative<Unitary4Op>(op) ? 1 : 0;
    }
    Circuit native = synthesize_circuit(merged);
    zz[i] = native.count_zz();
    Distribution noisy = cfg.scheduled ? run_exact(compile_schedule(native, mode), cfg.noise) : run_exact(native, cfg.noise);
    counts[i] = sample_counts(noisy, cfg.shots, derive_seed(cfg.seed, "qv-shots", i));
  });
  QVResult r = qv_analyze(cfg.n, ideal, counts);
  double zz_sum = 0;
  for (std::size_t i = 0; i < cfg.circuits; i++) {
    r.records[i].seed = seeds[i];
    r.records[i].blocks = blocks[i];
    r.records[i].zz_count = zz[i];
    zz_sum += static_cast<double>(zz[i]);
  }
  r.mean_zz = zz_sum / static_cast<double>(cfg.circuits);
  return r;
}

}  // namespace qccd
