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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "qccd/clifford.hpp"
#include "qccd/qv.hpp"
#include "qccd/random.hpp"
#include "qccd/rb.hpp"
#include "qccd/simulator.hpp"
#include "qccd/teleport.hpp"

namespace qccd {
namespace {

// Conjugation maps every Pauli string to a signed Pauli string.
bool maps_paulis_to_paulis(const Eigen::MatrixXcd &u, std::size_t n) {
  std::vector<Eigen::MatrixXcd> one = {Eigen::Matrix2cd::Identity(), oracle::X(), oracle::Y(), oracle::Z()};
  std::vector<Eigen::MatrixXcd> ps = {Eigen::MatrixXcd::Identity(1, 1)};
  for (std::size_t k = 0; k < n; k++) {
    std::vector<Eigen::MatrixXcd> next;
    for (const auto &a : ps) {
      for (const auto &p : one) {
        next.push_back(oracle::kron(a, p));
      }
    }
    ps = next;
  }
  double d = static_cast<double>(u.rows());
  for (const auto &p : ps) {
    Eigen::MatrixXcd img = u * p * u.adjoint();
    bool found = false;
    for (const auto &q : ps) {
      if (std::abs(std::abs((q.adjoint() * img).trace()) - d) < 1e-9) {
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

TEST(Clifford1, GroupEnumeration) {
  const auto &g = clifford1_group();
  ASSERT_EQ(g.size(), kClifford1Size);
  EXPECT_LT(oracle::phase_dist(g[0], Eigen::Matrix2cd::Identity()), 1e-12);
  std::set<std::string> keys;
  for (const auto &u : g) {
    EXPECT_TRUE(maps_paulis_to_paulis(u, 1));
    keys.insert(clifford_key(u));
  }
  EXPECT_EQ(keys.size(), 24u);
}

TEST(Clifford1, SamplingIsUniform) {
  const std::size_t n = 100000;
  std::vector<std::size_t> freq(24, 0);
  Rng rng(31);
  for (std::size_t k = 0; k < n; k++) {
    freq[sample_clifford(1, rng).index]++;
  }
  double p = 1.0 / 24, sigma = std::sqrt(n * p * (1 - p));
  // 3 sigma per element over 24 elements: one excursion is within chance, none beyond 4 sigma.
  std::size_t beyond3 = 0;
  double chi2 = 0;
  for (std::size_t i = 0; i < 24; i++) {
    double dev = static_cast<double>(freq[i]) - n * p;
    EXPECT_LE(std::abs(dev), 4 * sigma) << i;
    beyond3 += std::abs(dev) > 3 * sigma;
    chi2 += dev * dev / (n * p);
  }
  EXPECT_LE(beyond3, 1u);
  // 99.9% quantile of chi-square with 23 degrees of freedom
  EXPECT_LT(chi2, 49.73);
}

TEST(Clifford2, CosetSweepGivesWholeGroup) {
  std::set<std::string> keys;
  std::array<std::size_t, 4> per_class{};
  double zz = 0;
  for (std::size_t i = 0; i < kClifford2Size; i++) {
    Mat4 u = clifford2_element(i);
    keys.insert(clifford_key(u));
    per_class[static_cast<int>(clifford2_class(i))]++;
    zz += static_cast<double>(clifford2_zz_count(i));
  }
  EXPECT_EQ(keys.size(), 11520u);
  EXPECT_EQ(per_class, (std::array<std::size_t, 4>{576, 5184, 5184, 576}));
  EXPECT_DOUBLE_EQ(zz / kClifford2Size, 1.5);
  EXPECT_NEAR(mean_zz_per_clifford2(), 1.5, 1e-12);
  EXPECT_GE(mean_zz_per_clifford2(), 1.4);
  EXPECT_LE(mean_zz_per_clifford2(), 1.6);
}

TEST(Clifford2, ElementsAreCliffordAndNativeMatches) {
  Rng rng(32);
  for (int k = 0; k < 200; k++) {
    std::size_t i = rng() % kClifford2Size;
    Mat4 u = clifford2_element(i);
    EXPECT_TRUE(maps_paulis_to_paulis(u, 2));
    EXPECT_EQ(clifford_index(u), i);
    auto native = clifford2_native(i, 0, 1);
    std::size_t zz = std::count_if(native.begin(), native.end(), [](const GateOp &op) { return std::holds_alternative<ZzOp>(op); });
    EXPECT_EQ(zz, clifford2_zz_count(i));
    EXPECT_LT(oracle::phase_dist(oracle::product(native, 2), u), 1e-9);
  }
  for (std::size_t i = 0; i < 24; i++) {
    EXPECT_LT(oracle::phase_dist(oracle::product(clifford1_native(i, 0), 1), clifford1_group()[i]), 1e-9);
  }
}

TEST(Clifford2, ClosureUnderProducts) {
  Rng rng(33);
  for (int k = 0; k < 100; k++) {
    auto a = sample_clifford(2, rng), b = sample_clifford(2, rng);
    Eigen::MatrixXcd ab = a.matrix * b.matrix;
    EXPECT_TRUE(maps_paulis_to_paulis(ab, 2));
    EXPECT_TRUE(is_clifford(ab));
    EXPECT_LT(clifford_index(ab), kClifford2Size);
  }
  Mat4 t = Mat4::Identity();
  t(3, 3) = std::exp(oracle::C(0, kPi / 4));
  EXPECT_FALSE(is_clifford(t));
}

TEST(Clifford2, SampledClassFrequencies) {
  const std::size_t n = 20000;
  std::array<double, 4> f{};
  Rng rng(34);
  for (std::size_t k = 0; k < n; k++) {
    f[static_cast<int>(clifford2_class(sample_clifford(2, rng).index))] += 1.0 / n;
  }
  std::array<double, 4> p = {0.05, 0.45, 0.45, 0.05};
  for (int c = 0; c < 4; c++) {
    EXPECT_NEAR(f[c], p[c], 4 * std::sqrt(p[c] * (1 - p[c]) / n));
  }
}

std::string bits_of(const std::vector<int> &v) {
  std::string s;
  for (int b : v) {
    s += b ? '1' : '0';
  }
  return s;
}

TEST(RBGen, NoiselessSequencesInvert) {
  for (std::size_t len : {1, 3, 8}) {
    for (std::uint64_t seed = 0; seed < 4; seed++) {
      for (std::size_t n : {1, 2}) {
        auto seq = gen_rb(n, len, derive_seed(seed, "t", len));
        EXPECT_EQ(seq.layers.size(), len + 1);
        Distribution d = run_exact(seq.circuit, NoiseModel::ideal());
        EXPECT_NEAR(d[bits_of(seq.expected)], 1.0, 1e-10);
      }
      auto sim = gen_rb_simultaneous(len, seed);
      EXPECT_EQ(sim.circuit.n_qubits, 4u);
      Distribution d = run_exact(sim.circuit, NoiseModel::ideal());
      EXPECT_NEAR(d[bits_of(sim.expected)], 1.0, 1e-10);
    }
  }
}

TEST(RBGen, LengthOneInversionIsGroupInverse) {
  auto seq = gen_rb(2, 1, 5);
  ASSERT_EQ(seq.layers.size(), 2u);
  Eigen::MatrixXcd c = oracle::product(seq.layers[0], 2);
  Eigen::MatrixXcd inv = oracle::product(seq.layers[1], 2);
  EXPECT_LT(oracle::phase_dist(inv * c, Eigen::Matrix4cd::Identity()), 1e-9);
  // The randomizing X flips follow the inversion layer.
  std::size_t flips = std::count_if(seq.circuit.ops.begin(), seq.circuit.ops.end(), [](const GateOp &op) {
    auto *r = std::get_if<RxyOp>(&op);
    return r && r->theta == kPi && r->phi == 0;
  });
  EXPECT_GE(flips, static_cast<std::size_t>(std::count(seq.expected.begin(), seq.expected.end(), 1)));
}

TEST(RBFit, NoiselessIdentity) {
  std::vector<std::size_t> ls = {1, 2, 4, 8, 16, 32};
  std::vector<double> m;
  for (auto l : ls) {
    m.push_back(0.5 * std::pow(0.99, static_cast<double>(l)) + 0.5);
  }
  DecayFit f = fit_curve(ls, m);
  EXPECT_NEAR(f.alpha, 0.99, 1e-9);
  EXPECT_NEAR(f.A, 0.5, 1e-8);
  EXPECT_EQ(f.B, 0.5);
  EXPECT_FALSE(f.degenerate);
}

TEST(RBFit, DegenerateAndTooFewLengths) {
  EXPECT_TRUE(fit_curve({1, 2, 4}, {0.7, 0.7, 0.7}).degenerate);
  EXPECT_THROW(fit_curve({1, 1, 4}, {0.9, 0.9, 0.8}), std::invalid_argument);
}

TEST(RBFit, BootstrapCoverage) {
  std::vector<std::size_t> ls = {1, 2, 4, 8, 16, 32};
  const double alpha = 0.97;
  std::size_t covered = 0;
  for (std::uint64_t rep = 0; rep < 100; rep++) {
    Rng rng(derive_seed(35, "coverage", rep));
    std::normal_distribution<double> noise(0, 0.01);
    std::vector<std::vector<double>> surv(ls.size());
    for (std::size_t i = 0; i < ls.size(); i++) {
      for (int s = 0; s < 20; s++) {
        surv[i].push_back(0.5 * std::pow(alpha, static_cast<double>(ls[i])) + 0.5 + noise(rng));
      }
    }
    DecayFit f = fit_decay(ls, surv, 200, derive_seed(35, "boot", rep));
    EXPECT_EQ(f.boot_alpha.size(), 200u);
    covered += std::abs(f.alpha - alpha) <= 2 * f.sigma_alpha;
  }
  EXPECT_GE(covered, 90u);
}

TEST(RBPrediction, MatchesEnumeration) {
  for (double r : {2e-3, 8e-3, 2e-2}) {
    double lam = 1 - 4 * r / 3;
    double avg = 0;
    for (std::size_t i = 0; i < kClifford2Size; i++) {
      avg += std::pow(lam, static_cast<double>(clifford2_zz_count(i)));
    }
    avg /= kClifford2Size;
    EXPECT_NEAR(predicted_rb_alpha(2, 0, r), avg, 1e-12);
    // one 1q channel per native pulse
    double one = 0;
    for (std::size_t i = 0; i < kClifford1Size; i++) {
      auto ops = clifford1_native(i, 0);
      auto pulses = std::count_if(ops.begin(), ops.end(), [](const GateOp &op) { return std::holds_alternative<RxyOp>(op); });
      one += std::pow(1 - 2 * r, static_cast<double>(pulses)) / kClifford1Size;
    }
    EXPECT_NEAR(predicted_rb_alpha(1, r, 0), one, 1e-12);
  }
  EXPECT_NEAR(clifford_infidelity(0.99, 2), 0.75 * 0.01, 1e-15);
  EXPECT_NEAR(clifford_infidelity(0.99, 1), 0.5 * 0.01, 1e-15);
}

TEST(RBClosedLoop, SingleQubitExact) {
  RBConfig cfg;
  cfg.n = 1;
  cfg.sequences = 30;
  cfg.shots = 0;
  cfg.seed = 36;
  cfg.noise = NoiseModel::ideal();
  cfg.noise.p_sq_depol = 5e-3;
  RBResult r = run_rb(cfg);
  ASSERT_EQ(r.fits.size(), 1u);
  for (const auto &s : r.survival[0]) {
    EXPECT_GE(s, 0);
    EXPECT_LE(s, 1);
  }
  // Native 1q Cliffords carry a variable pulse count, so compare with the empirical per-Clifford rate.
  EXPECT_GT(r.fits[0].alpha, 0.95);
  EXPECT_LT(r.fits[0].alpha, 1.0);
  EXPECT_GT(r.fits[0].sigma_alpha, 0);
}

void fill(RBResult &r, std::size_t n_reg, std::vector<unsigned> masks, double a, double s) {
  r.n = 2;
  r.fits.assign(n_reg, DecayFit{});
  for (auto &f : r.fits) {
    f.alpha = a;
    f.sigma_alpha = s;
  }
  for (unsigned m : masks) {
    ObservableDecay o;
    o.mask = m;
    o.fit.alpha = a;
    o.fit.sigma_alpha = s;
    r.observables.push_back(o);
  }
}

TEST(Crosstalk, RecomputesTableValues) {
  RBResult i1, i2, sim;
  fill(i1, 1, {1, 2, 3}, 0.9866, 0.0009);
  i1.registers = {{0, 1}};
  fill(i2, 1, {1, 2, 3}, 0.9861, 0.0009);
  i2.registers = {{0, 1}};
  std::vector<unsigned> masks;
  for (unsigned m = 1; m < 16; m++) {
    masks.push_back(m);
  }
  fill(sim, 2, masks, 0.9856, 0.0008);
  sim.registers = {{0, 1}, {2, 3}};
  CrosstalkResult x = crosstalk_stats(i1, i2, sim);
  // Rounded inputs give 1.0e-3, inside the 9(10)e-4 estimate.
  EXPECT_NEAR(x.gamma[0], 1.0e-3, 1e-12);
  EXPECT_NEAR(x.gamma[0], 9e-4, 10e-4);
  EXPECT_NEAR(x.sigma_gamma[0], std::hypot(0.0009, 0.0008), 1e-15);
  for (int i = 0; i < 3; i++) {
    for (int j = 0; j < 3; j++) {
      EXPECT_EQ(x.delta[i][j], std::abs(x.beta[0][i] * x.beta[1][j] - x.mu[i][j]));
    }
  }
  for (int z = 0; z < 2; z++) {
    EXPECT_EQ(x.gamma[z], std::abs(x.alpha[z] - x.alpha_both[z]));
  }
  sim.observables.pop_back();
  EXPECT_THROW(crosstalk_stats(i1, i2, sim), std::invalid_argument);
}

TEST(Crosstalk, ObservableMasks) {
  EXPECT_EQ(pair_observable_mask(0, 0), 1u);
  EXPECT_EQ(pair_observable_mask(1, 0), 2u);
  EXPECT_EQ(pair_observable_mask(2, 0), 3u);
  EXPECT_EQ(pair_observable_mask(2, 2), 12u);
}

TEST(Hofmann, BoundValues) {
  EXPECT_NEAR(hofmann_bound(0.933, 0.941), 0.8992, 1e-12);
  EXPECT_DOUBLE_EQ(hofmann_bound(1, 1), 1);
  EXPECT_LT(hofmann_bound(0.9, 0.95), hofmann_bound(0.91, 0.95));
  EXPECT_LT(hofmann_bound(0.9, 0.95), hofmann_bound(0.9, 0.96));
}

// |q3 q0> labels; CNOT with control q0 and target q3 acting on (q3, q0) ordering.
std::string truth_oracle(const TeleportInput &in) {
  auto vec = [](char c) {
    Eigen::Vector2cd v;
    double s = 1 / std::sqrt(2.0);
    switch (c) {
      case '0': v << 1, 0; break;
      case '1': v << 0, 1; break;
      case '+': v << s, s; break;
      default: v << s, -s; break;
    }
    return v;
  };
  Eigen::Vector4cd psi = oracle::kron(vec(in.q3), vec(in.q0));
  Eigen::Matrix4cd cnot = Eigen::Matrix4cd::Zero();
  // basis |q3 q0>: flip q3 when q0 = 1
  cnot(0, 0) = cnot(2, 2) = 1;
  cnot(3, 1) = cnot(1, 3) = 1;
  Eigen::Vector4cd out = cnot * psi;
  const char *labels = (in.q3 == '0' || in.q3 == '1') ? "01" : "+-";
  for (char a : {labels[0], labels[1]}) {
    for (char b : {labels[0], labels[1]}) {
      Eigen::Vector4cd basis = oracle::kron(vec(a), vec(b));
      if (std::abs(std::abs(basis.dot(out)) - 1) < 1e-12) {
        return std::string{a, b};
      }
    }
  }
  return "?";
}

TEST(Teleport, TruthTable) {
  auto inputs = teleport_inputs();
  std::set<std::string> labels;
  for (const auto &in : inputs) {
    labels.insert(in.label());
    TeleportInput e = teleport_expected(in);
    EXPECT_EQ(std::string({e.q3, e.q0}), truth_oracle(in)) << in.label();
  }
  EXPECT_EQ(labels.size(), 8u);
  EXPECT_EQ(teleport_expected({'0', '1'}).label(), "|11>");
}

TEST(Teleport, ConstructionIsCnot) {
  EXPECT_LT(teleport_construction_error(), 1e-10);
  for (const auto &in : teleport_inputs()) {
    EXPECT_EQ(teleport_circuit(in).count_zz(), 3u);
  }
}

TEST(Teleport, NoiselessSuite) {
  TeleportResult r = teleport_suite(NoiseModel::ideal(), 200, 37);
  EXPECT_EQ(r.f1, 1.0);
  EXPECT_EQ(r.f2, 1.0);
  EXPECT_EQ(r.f_avg_lb, 1.0);
  for (double s : r.success) {
    EXPECT_EQ(s, 1.0);
  }
}

TEST(Teleport, FeedforwardOffBreaksTable) {
  double worst = 1;
  for (const auto &in : teleport_inputs()) {
    Circuit c = teleport_circuit(in, false);
    Distribution d = run_exact(c, NoiseModel::ideal());
    TeleportInput e = teleport_expected(in);
    worst = std::min(worst, d.marginal({"out3", "out0"})[std::string{e.q3 == '1' || e.q3 == '-' ? '1' : '0',
                                                                    e.q0 == '1' || e.q0 == '-' ? '1' : '0'}]);
  }
  EXPECT_LT(worst, 0.9);
}

TEST(QVGen, BlockAndGateCounts) {
  for (std::uint64_t seed = 1; seed <= 5; seed++) {
    Circuit c4 = gen_qv_circuit(4, seed);
    EXPECT_EQ(c4.ops.size() - 4, 8u);
    EXPECT_EQ(compile_qv_circuit(c4, false).count_zz(), 24u);
    Circuit c6 = gen_qv_circuit(6, seed);
    EXPECT_EQ(compile_qv_circuit(c6, false).count_zz(), 54u);
    EXPECT_LE(compile_qv_circuit(c6, true).count_zz(), 54u);
  }
  Circuit c2 = gen_qv_circuit(2, 3);
  std::size_t blocks = 0;
  for (const auto &op : c2.ops) {
    if (auto *u = std::get_if<Unitary4Op>(&op)) {
      blocks++;
      EXPECT_EQ(std::min(u->q0, u->q1), 0u);
      EXPECT_EQ(std::max(u->q0, u->q1), 1u);
    }
  }
  EXPECT_EQ(blocks, 2u);
  EXPECT_EQ(serialize_circuit(gen_qv_circuit(4, 9)), serialize_circuit(gen_qv_circuit(4, 9)));
}

TEST(QVGen, MergedSixQubitMeanNearFortyFive) {
  double total = 0;
  const int n = 40;
  for (int s = 0; s < n; s++) {
    total += static_cast<double>(compile_qv_circuit(gen_qv_circuit(6, 1000 + s), true).count_zz());
  }
  EXPECT_NEAR(total / n, 45, 6);
}

TEST(QVHeavy, EdgeCases) {
  Distribution u;
  u.keys = {"a"};
  u.probs = {{"0", 0.5}, {"1", 0.5}};
  EXPECT_TRUE(heavy_set(u, 1).empty());
  Distribution d;
  d.keys = {"a", "b"};
  d.probs = {{"00", 0.4}, {"01", 0.1}, {"10", 0.3}, {"11", 0.2}};
  EXPECT_EQ(heavy_set(d, 2), (std::vector<std::string>{"00", "10"}));
  Distribution sparse;
  sparse.keys = {"a", "b"};
  sparse.probs = {{"11", 1.0}};
  EXPECT_EQ(heavy_set(sparse, 2), (std::vector<std::string>{"11"}));
}

TEST(QVAnalyze, Statistics) {
  Distribution d;
  d.keys = {"a", "b"};
  d.probs = {{"00", 0.4}, {"01", 0.1}, {"10", 0.3}, {"11", 0.2}};
  std::map<std::string, std::size_t> c1 = {{"00", 60}, {"10", 20}, {"01", 20}};
  std::map<std::string, std::size_t> c2 = {{"00", 30}, {"11", 70}};
  QVResult r = qv_analyze(2, {d, d}, {c1, c2});
  EXPECT_DOUBLE_EQ(r.h_mean, 110.0 / 200);
  EXPECT_DOUBLE_EQ(r.sigma, std::sqrt(0.55 * 0.45 / 200));
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.ideal_heavy_mean, 0.7, 1e-12);
  EXPECT_NEAR(r.confidence, 0.5 * std::erfc((2.0 / 3 - 0.55) / (r.sigma * std::sqrt(2.0))), 1e-12);
  EXPECT_THROW(qv_analyze(2, {d}, {c1, c2}), std::invalid_argument);
  std::map<std::string, std::size_t> good = {{"00", 95}, {"01", 5}};
  QVResult p = qv_analyze(2, {d, d}, {good, good});
  EXPECT_EQ(p.pass, p.h_mean - 2 * p.sigma > 2.0 / 3);
  EXPECT_TRUE(p.pass);
}

TEST(QVAnalyze, DepolarizedFails) {
  std::vector<Distribution> ideal;
  std::vector<std::map<std::string, std::size_t>> counts;
  for (std::uint64_t s = 0; s < 20; s++) {
    ideal.push_back(run_exact(compile_qv_circuit(gen_qv_circuit(3, s), false), NoiseModel::ideal()));
    Distribution flat;
    flat.keys = ideal.back().keys;
    for (int i = 0; i < 8; i++) {
      flat.probs[std::string{char('0' + (i >> 2)), char('0' + ((i >> 1) & 1)), char('0' + (i & 1))}] = 1.0 / 8;
    }
    counts.push_back(sample_counts(flat, 200, s));
  }
  QVResult r = qv_analyze(3, ideal, counts);
  EXPECT_NEAR(r.h_mean, 0.5, 0.06);
  EXPECT_FALSE(r.pass);
}

TEST(QVRun, NoiselessBandAndIdealOracle) {
  QVConfig cfg = default_qv_config(4);
  EXPECT_EQ(cfg.circuits, 100u);
  EXPECT_EQ(cfg.shots, 500u);
  cfg.noise = NoiseModel::ideal();
  cfg.seed = 38;
  QVResult r = run_qv(cfg);
  EXPECT_GE(r.h_mean, 0.80);
  EXPECT_LE(r.h_mean, 0.90);
  EXPECT_TRUE(r.pass);
  // ideal heavy probability recomputed from the SU(4) circuits with the matrix oracle
  double mean = 0;
  for (const auto &rec : r.records) {
    Circuit c = gen_qv_circuit(4, rec.seed);
    std::vector<GateOp> gates;
    for (const auto &op : c.ops) {
      if (!std::holds_alternative<MeasureOp>(op)) {
        gates.push_back(op);
      }
    }
    Eigen::MatrixXcd u = oracle::product(gates, 4);
    std::vector<double> p(16);
    for (int i = 0; i < 16; i++) {
      p[i] = std::norm(u(i, 0));
    }
    std::vector<double> s = p;
    std::sort(s.begin(), s.end());
    double med = 0.5 * (s[7] + s[8]), heavy = 0;
    for (double x : p) {
      heavy += x > med ? x : 0;
    }
    EXPECT_NEAR(rec.ideal_heavy_prob, heavy, 1e-9);
    mean += heavy / r.records.size();
  }
  EXPECT_NEAR(r.ideal_heavy_mean, mean, 1e-9);
  EXPECT_NEAR(mean, 0.85, 0.03);
}

TEST(QVRun, ReproducibleAndCapacity) {
  QVConfig cfg = default_qv_config(3);
  cfg.circuits = 10;
  cfg.shots = 50;
  cfg.seed = 39;
  QVResult a = run_qv(cfg), b = run_qv(cfg);
  EXPECT_EQ(a.h_mean, b.h_mean);
  EXPECT_EQ(a.pass, b.pass);
  for (std::size_t i = 0; i < a.records.size(); i++) {
    EXPECT_EQ(a.records[i].heavy_shots, b.records[i].heavy_shots);
  }
  QVConfig big = default_qv_config(9);
  EXPECT_THROW(run_qv(big), std::invalid_argument);
  EXPECT_TRUE(default_qv_config(6).merge);
  EXPECT_EQ(default_qv_config(6).circuits, 400u);
  EXPECT_EQ(default_qv_config(6).shots, 100u);
}

}  // namespace
}  // namespace qccd
