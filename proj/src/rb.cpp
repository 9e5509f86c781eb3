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


#include "qccd/rb.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qccd/clifford.hpp"
#include "qccd/parallel.hpp"
#include "qccd/random.hpp"

namespace qccd {

namespace {

std::vector<GateOp> clifford_ops(std::size_t n, std::size_t index, const std::vector<std::size_t> &reg) {
  return n == 1 ? clifford1_native(index, reg[0]) : clifford2_native(index, reg[0], reg[1]);
}

MatX clifford_matrix(std::size_t n, std::size_t index) {
  return n == 1 ? MatX(clifford1_group()[index]) : MatX(clifford2_element(index));
}

std::size_t ops_in_layers(const RBSequence &seq) {
  std::size_t k = 0;
  for (const auto &l : seq.layers) {
    k += l.size();
  }
  return k;
}

std::vector<unsigned> submasks(unsigned mask) {
  std::vector<unsigned> out;
  for (unsigned m = 1; m <= mask; m++) {
    if ((m & ~mask) == 0) {
      out.push_back(m);
    }
  }
  return out;
}

unsigned register_mask(const std::vector<std::size_t> &reg) {
  unsigned m = 0;
  for (std::size_t q : reg) {
    m |= 1u << q;
  }
  return m;
}

/** Survival (1 + s <Z_S>)/2 of each observable from an outcome distribution over keys "m<q>". */
std::vector<double> survivals(const std::map<std::string, double> &probs, const std::vector<std::size_t> &key_qubit,
                              const std::vector<int> &expected, const std::vector<unsigned> &masks) {
  std::vector<double> z(masks.size(), 0.0);
  double total = 0;
  for (const auto &[bits, p] : probs) {
    total += p;
    for (std::size_t m = 0; m < masks.size(); m++) {
      int parity = 0;
      for (std::size_t k = 0; k < bits.size(); k++) {
        if (((masks[m] >> key_qubit[k]) & 1u) && bits[k] == '1') {
          parity ^= 1;
        }
      }
      z[m] += parity ? -p : p;
    }
  }
  std::vector<double> out(masks.size());
  for (std::size_t m = 0; m < masks.size(); m++) {
    int ideal = 0;
    for (std::size_t q = 0; q < expected.size(); q++) {
      if ((masks[m] >> q) & 1u) {
        ideal ^= expected[q];
      }
    }
    double zz = z[m] / total;
    out[m] = 0.5 * (1 + (ideal ? -zz : zz));
  }
  return out;
}

double sse(const std::vector<std::size_t> &lengths, const std::vector<double> &y, double B, double alpha, double *a_out) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < lengths.size(); i++) {
    double p = std::pow(alpha, static_cast<double>(lengths[i]));
    num += (y[i] - B) * p;
    den += p * p;
  }
  double A = den > 0 ? num / den : 0;
  double s = 0;
  for (std::size_t i = 0; i < lengths.size(); i++) {
    double r = y[i] - B - A * std::pow(alpha, static_cast<double>(lengths[i]));
    s += r * r;
  }
  if (a_out) {
    *a_out = A;
  }
  return s;
}

}  // namespace

RBSequence gen_rb_registers(std::size_t n, const std::vector<std::vector<std::size_t>> &registers,
                            std::size_t n_qubits, std::size_t length, std::uint64_t seed) {
  if (n != 1 && n != 2) {
    throw std::invalid_argument("gen_rb: register size must be 1 or 2");
  }
  if (length < 1) {
    throw std::invalid_argument("gen_rb: length must be at least 1");
  }
  std::set<std::size_t> used;
  for (const auto &reg : registers) {
    if (reg.size() != n) {
      throw std::invalid_argument("gen_rb: every register must hold " + std::to_string(n) + " qubits");
    }
    for (std::size_t q : reg) {
      if (q >= n_qubits || !used.insert(q).second) {
        throw std::invalid_argument("gen_rb: register qubits must be distinct and in range");
      }
    }
  }
  RBSequence seq;
  seq.length = length;
  seq.circuit.n_qubits = n_qubits;
  seq.expected.assign(n_qubits, 0);
  std::vector<Rng> rngs;
  std::vector<MatX> products;
  for (std::size_t r = 0; r < registers.size(); r++) {
    rngs.emplace_back(derive_seed(seed, "rb-register", r));
    products.push_back(MatX::Identity(1 << n, 1 << n));
  }
  for (std::size_t k = 0; k < length; k++) {
    std::vector<GateOp> layer;
    for (std::size_t r = 0; r < registers.size(); r++) {
      std::size_t size = n == 1 ? kClifford1Size : kClifford2Size;
      std::size_t idx = std::uniform_int_distribution<std::size_t>(0, size - 1)(rngs[r]);
      auto ops = clifford_ops(n, idx, registers[r]);
      layer.insert(layer.end(), ops.begin(), ops.end());
      products[r] = clifford_matrix(n, idx) * products[r];
    }
    seq.layers.push_back(std::move(layer));
  }
  std::vector<GateOp> inversion;
  for (std::size_t r = 0; r < registers.size(); r++) {
    auto ops = clifford_ops(n, clifford_index(products[r].adjoint()), registers[r]);
    inversion.insert(inversion.end(), ops.begin(), ops.end());
  }
  seq.layers.push_back(std::move(inversion));
  for (const auto &l : seq.layers) {
    seq.circuit.ops.insert(seq.circuit.ops.end(), l.begin(), l.end());
  }
  std::string expected;
  for (std::size_t r = 0; r < registers.size(); r++) {
    for (std::size_t q : registers[r]) {
      int bit = static_cast<int>(rngs[r]() & 1u);
      seq.expected[q] = bit;
      if (bit) {
        seq.circuit.ops.push_back(RxyOp{q, kPi, 0});
      }
    }
  }
  for (const auto &reg : registers) {
    for (std::size_t q : reg) {
      seq.circuit.ops.push_back(MeasureOp{q, "m" + std::to_string(q)});
      expected += seq.expected[q] ? '1' : '0';
    }
  }
  seq.circuit.metadata["benchmark"] = "rb";
  seq.circuit.metadata["length"] = std::to_string(length);
  seq.circuit.metadata["expected"] = expected;
  return seq;
}

RBSequence gen_rb(std::size_t n, std::size_t length, std::uint64_t seed) {
  std::vector<std::size_t> reg;
  for (std::size_t q = 0; q < n; q++) {
    reg.push_back(q);
  }
  return gen_rb_registers(n, {reg}, n, length, seed);
}

RBSequence gen_rb_simultaneous(std::size_t length, std::uint64_t seed) {
  return gen_rb_registers(2, {{0, 1}, {2, 3}}, 4, length, seed);
}

ExecProgram lower_rb(const RBSequence &seq, const NoiseModel &noise, double p_corr, std::size_t q_a, std::size_t q_b) {
  if (p_corr == 0) {
    return lower_circuit(seq.circuit, noise);
  }
  if (!(p_corr > 0 && p_corr <= 1) || q_a >= seq.circuit.n_qubits || q_b >= seq.circuit.n_qubits || q_a == q_b) {
    throw std::invalid_argument("lower_rb: bad correlated error parameters");
  }
  ExecProgram prog;
  prog.n_qubits = seq.circuit.n_qubits;
  for (const auto &k : seq.circuit.measurement_keys()) {
    prog.key_index(k);
  }
  for (const auto &layer : seq.layers) {
    Circuit sub;
    sub.n_qubits = seq.circuit.n_qubits;
    sub.ops = layer;
    prog.append(lower_circuit(sub, noise));
    Instr corr;
    corr.kind = InstrKind::CORR_ZZ;
    corr.q0 = q_a;
    corr.q1 = q_b;
    corr.p = p_corr;
    prog.instrs.push_back(corr);
  }
  Circuit tail;
  tail.n_qubits = seq.circuit.n_qubits;
  tail.ops.assign(seq.circuit.ops.begin() + static_cast<std::ptrdiff_t>(ops_in_layers(seq)), seq.circuit.ops.end());
  prog.append(lower_circuit(tail, noise));
  return prog;
}

DecayFit fit_curve(const std::vector<std::size_t> &lengths, const std::vector<double> &means, double B) {
  if (lengths.size() != means.size()) {
    throw std::invalid_argument("fit_curve: lengths and survivals differ in size");
  }
  if (std::set<std::size_t>(lengths.begin(), lengths.end()).size() < 3) {
    throw std::invalid_argument("fit_curve: at least three distinct lengths are required");
  }
  DecayFit f;
  f.B = B;
  auto [lo, hi] = std::minmax_element(means.begin(), means.end());
  if (*hi - *lo < 1e-12) {
    f.degenerate = true;
    f.alpha = 1;
    f.A = *lo - B;
    return f;
  }
  const int grid = 4000;
  int best = grid;
  double best_s = sse(lengths, means, B, 1.0, nullptr);
  for (int k = grid - 1; k >= 1; k--) {
    double s = sse(lengths, means, B, static_cast<double>(k) / grid, nullptr);
    if (s < best_s) {
      best_s = s;
      best = k;
    }
  }
  double a = static_cast<double>(std::max(best - 1, 0)) / grid;
  double b = static_cast<double>(std::min(best + 1, grid)) / grid;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = sse(lengths, means, B, c, nullptr), fd = sse(lengths, means, B, d, nullptr);
  for (int it = 0; it < 200 && b - a > 1e-15; it++) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = sse(lengths, means, B, c, nullptr);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = sse(lengths, means, B, d, nullptr);
    }
  }
  f.alpha = std::clamp(0.5 * (a + b), 1e-12, 1.0);
  sse(lengths, means, B, f.alpha, &f.A);
  return f;
}

DecayFit fit_decay(const std::vector<std::size_t> &lengths, const std::vector<std::vector<double>> &survivals,
                   std::size_t n_boot, std::uint64_t seed) {
  if (survivals.size() != lengths.size()) {
    throw std::invalid_argument("fit_decay: one survival list per length is required");
  }
  std::vector<double> means;
  for (const auto &s : survivals) {
    if (s.empty()) {
      throw std::invalid_argument("fit_decay: no sequences at some length");
    }
    double m = 0;
    for (double v : s) {
      m += v;
    }
    means.push_back(m / static_cast<double>(s.size()));
  }
  DecayFit f = fit_curve(lengths, means);
  if (f.degenerate || n_boot == 0) {
    return f;
  }
  std::vector<double> bm(lengths.size());
  for (std::size_t b = 0; b < n_boot; b++) {
    Rng rng(derive_seed(seed, "bootstrap", b));
    for (std::size_t l = 0; l < lengths.size(); l++) {
      std::uniform_int_distribution<std::size_t> pick(0, survivals[l].size() - 1);
      double m = 0;
      for (std::size_t k = 0; k < survivals[l].size(); k++) {
        m += survivals[l][pick(rng)];
      }
      bm[l] = m / static_cast<double>(survivals[l].size());
    }
    f.boot_alpha.push_back(fit_curve(lengths, bm).alpha);
  }
  double mean = 0;
  for (double a : f.boot_alpha) {
    mean += a;
  }
  mean /= static_cast<double>(n_boot);
  double var = 0;
  for (double a : f.boot_alpha) {
    var += (a - mean) * (a - mean);
  }
  f.sigma_alpha = n_boot > 1 ? std::sqrt(var / static_cast<double>(n_boot - 1)) : 0;
  return f;
}

const ObservableDecay &RBResult::observable(unsigned mask) const {
  for (const auto &o : observables) {
    if (o.mask == mask) {
      return o;
    }
  }
  throw std::out_of_range("RBResult: observable mask " + std::to_string(mask) + " not present");
}

RBResult run_rb(const RBConfig &cfg) {
  cfg.noise.validate();
  RBResult res;
  res.n = cfg.n;
  res.registers = cfg.registers;
  if (res.registers.empty()) {
    if (cfg.simultaneous) {
      if (cfg.n == 2) {
        res.registers = {{0, 1}, {2, 3}};
      } else {
        res.registers = {{0}, {1}};
      }
    } else {
      res.registers.push_back({});
      for (std::size_t q = 0; q < cfg.n; q++) {
        res.registers[0].push_back(q);
      }
    }
  }
  if (cfg.sequences == 0) {
    throw std::invalid_argument("run_rb: at least one sequence per length is required");
  }
  res.lengths = cfg.lengths;
  res.sequences = cfg.sequences;
  res.shots = cfg.shots;
  std::size_t n_qubits = 0;
  unsigned all = 0;
  for (const auto &reg : res.registers) {
    for (std::size_t q : reg) {
      n_qubits = std::max(n_qubits, q + 1);
    }
    all |= register_mask(reg);
  }
  if (n_qubits > kMaxSimQubits) {
    throw std::invalid_argument("run_rb: registers exceed simulator capacity");
  }
  std::vector<unsigned> masks = submasks(all);
  std::size_t n_len = cfg.lengths.size();
  std::size_t n_tasks = n_len * cfg.sequences;
  std::vector<std::vector<double>> task_surv(n_tasks);
  parallel_for(n_tasks, [&](std::size_t t) {
    std::size_t li = t / cfg.sequences;
    RBSequence seq = gen_rb_registers(cfg.n, res.registers, n_qubits, cfg.lengths[li], derive_seed(cfg.seed, "rb-sequence", t));
    ExecProgram prog = lower_rb(seq, cfg.noise, cfg.p_corr);
    Distribution d = run_exact(prog);
    std::vector<std::size_t> key_qubit;
    for (const auto &k : d.keys) {
      key_qubit.push_back(static_cast<std::size_t>(std::stoul(k.substr(1))));
    }
    if (cfg.shots == 0) {
      task_surv[t] = survivals(d.probs, key_qubit, seq.expected, masks);
    } else {
      std::map<std::string, double> freq;
      for (const auto &[bits, c] : sample_counts(d, cfg.shots, derive_seed(cfg.seed, "rb-shots", t))) {
        freq[bits] = static_cast<double>(c);
      }
      task_surv[t] = survivals(freq, key_qubit, seq.expected, masks);
    }
  });
  std::uint64_t boot_seed = derive_seed(cfg.seed, "rb-bootstrap");
  auto matrix_for = [&](const std::vector<std::size_t> &obs) {
    std::vector<std::vector<double>> m(n_len, std::vector<double>(cfg.sequences, 0.0));
    for (std::size_t t = 0; t < n_tasks; t++) {
      double s = 0;
      for (std::size_t o : obs) {
        s += task_surv[t][o];
      }
      m[t / cfg.sequences][t % cfg.sequences] = s / static_cast<double>(obs.size());
    }
    return m;
  };
  auto means_of = [](const std::vector<std::vector<double>> &m) {
    std::vector<double> out;
    for (const auto &row : m) {
      double s = 0;
      for (double v : row) {
        s += v;
      }
      out.push_back(s / static_cast<double>(row.size()));
    }
    return out;
  };
  for (std::size_t o = 0; o < masks.size(); o++) {
    ObservableDecay od;
    od.mask = masks[o];
    for (std::size_t q = 0; q < n_qubits; q++) {
      od.label += ((masks[o] >> q) & 1u) ? 'Z' : 'I';
    }
    auto m = matrix_for({o});
    od.survival = means_of(m);
    od.fit = fit_decay(cfg.lengths, m, cfg.n_boot, boot_seed);
    res.observables.push_back(std::move(od));
  }
  for (const auto &reg : res.registers) {
    unsigned rm = register_mask(reg);
    std::vector<std::size_t> obs;
    for (std::size_t o = 0; o < masks.size(); o++) {
      if ((masks[o] & ~rm) == 0) {
        obs.push_back(o);
      }
    }
    auto m = matrix_for(obs);
    res.survival.push_back(means_of(m));
    res.fits.push_back(fit_decay(cfg.lengths, m, cfg.n_boot, boot_seed));
  }
  return res;
}

double predicted_rb_alpha(std::size_t n, double p_sq_depol, double p_tq_depol) {
  if (n == 1) {
    double lambda = 1 - depolarizing_strength(p_sq_depol, 2);
    double s = 0;
    for (std::size_t i = 0; i < kClifford1Size; i++) {
      std::size_t pulses = 0;
      for (const auto &op : clifford1_native(i, 0)) {
        pulses += std::holds_alternative<RxyOp>(op) ? 1 : 0;
      }
      s += std::pow(lambda, static_cast<double>(pulses));
    }
    return s / static_cast<double>(kClifford1Size);
  }
  if (n == 2) {
    double lambda = 1 - depolarizing_strength(p_tq_depol, 4);
    const double weights[4] = {576, 5184, 5184, 576};
    double s = 0;
    for (int k = 0; k < 4; k++) {
      s += weights[k] * std::pow(lambda, k);
    }
    return s / static_cast<double>(kClifford2Size);
  }
  throw std::invalid_argument("predicted_rb_alpha: n must be 1 or 2");
}

double clifford_infidelity(double alpha, std::size_t n) {
  double d = static_cast<double>(std::size_t{1} << n);
  return (d - 1) * (1 - alpha) / d;
}

unsigned pair_observable_mask(std::size_t i, std::size_t first_qubit) {
  const unsigned pattern[3] = {1u, 2u, 3u};
  if (i > 2) {
    throw std::out_of_range("pair_observable_mask: index must be 0, 1 or 2");
  }
  return pattern[i] << first_qubit;
}

double CrosstalkResult::max_delta_significance() const {
  double m = 0;
  for (int i = 0; i < 3; i++) {
    for (int j = 0; j < 3; j++) {
      if (sigma_delta[i][j] > 0) {
        m = std::max(m, delta[i][j] / sigma_delta[i][j]);
      }
    }
  }
  return m;
}

CrosstalkResult crosstalk_stats(const RBResult &individual1, const RBResult &individual2, const RBResult &simultaneous) {
  const RBResult *ind[2] = {&individual1, &individual2};
  for (const auto *r : ind) {
    if (r->n != 2 || r->fits.size() != 1) {
      throw std::invalid_argument("crosstalk_stats: individual runs must be single-register two-qubit RB");
    }
  }
  if (simultaneous.n != 2 || simultaneous.registers.size() != 2 || simultaneous.fits.size() != 2) {
    throw std::invalid_argument("crosstalk_stats: simultaneous run must hold two two-qubit registers");
  }
  std::size_t first[2];
  for (int z = 0; z < 2; z++) {
    const auto &reg = simultaneous.registers[z];
    if (reg[1] != reg[0] + 1) {
      throw std::invalid_argument("crosstalk_stats: register qubits must be adjacent");
    }
    first[z] = reg[0];
  }
  CrosstalkResult x;
  const ObservableDecay *b[2][3];
  try {
    for (int z = 0; z < 2; z++) {
      for (std::size_t i = 0; i < 3; i++) {
        b[z][i] = &simultaneous.observable(pair_observable_mask(i, first[z]));
      }
    }
    for (std::size_t i = 0; i < 3; i++) {
      for (std::size_t j = 0; j < 3; j++) {
        simultaneous.observable(pair_observable_mask(i, first[0]) | pair_observable_mask(j, first[1]));
      }
    }
  } catch (const std::out_of_range &) {
    throw std::invalid_argument("crosstalk_stats: simultaneous run is missing Z-type observables");
  }
  for (int z = 0; z < 2; z++) {
    x.alpha[z] = ind[z]->fits[0].alpha;
    x.alpha_both[z] = simultaneous.fits[z].alpha;
    x.gamma[z] = std::abs(x.alpha[z] - x.alpha_both[z]);
    x.sigma_gamma[z] = std::hypot(ind[z]->fits[0].sigma_alpha, simultaneous.fits[z].sigma_alpha);
    for (int i = 0; i < 3; i++) {
      x.beta[z][i] = b[z][i]->fit.alpha;
      x.sigma_beta[z][i] = b[z][i]->fit.sigma_alpha;
    }
  }
  for (std::size_t i = 0; i < 3; i++) {
    for (std::size_t j = 0; j < 3; j++) {
      const auto &mu = simultaneous.observable(pair_observable_mask(i, first[0]) | pair_observable_mask(j, first[1]));
      x.mu[i][j] = mu.fit.alpha;
      x.sigma_mu[i][j] = mu.fit.sigma_alpha;
      x.delta[i][j] = std::abs(x.beta[0][i] * x.beta[1][j] - x.mu[i][j]);
      const auto &b1 = b[0][i]->fit.boot_alpha, &b2 = b[1][j]->fit.boot_alpha, &bm = mu.fit.boot_alpha;
      std::size_t nb = std::min({b1.size(), b2.size(), bm.size()});
      if (nb > 1) {
        double mean = 0, sq = 0;
        for (std::size_t k = 0; k < nb; k++) {
          double v = b1[k] * b2[k] - bm[k];
          mean += v;
          sq += v * v;
        }
        mean /= static_cast<double>(nb);
        x.sigma_delta[i][j] = std::sqrt(std::max(0.0, (sq - static_cast<double>(nb) * mean * mean) / static_cast<double>(nb - 1)));
      }
    }
  }
  return x;
}

}  // namespace qccd
