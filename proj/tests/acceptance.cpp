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


#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>

#include "qccd/qv.hpp"
#include "qccd/random.hpp"
#include "qccd/rb.hpp"
#include "qccd/routing.hpp"
#include "qccd/scheduler.hpp"
#include "qccd/simulator.hpp"
#include "qccd/synthesis.hpp"
#include "qccd/teleport.hpp"
#include "qccd/zz_wrapper.hpp"

using namespace qccd;

namespace {

constexpr std::uint64_t kSeed = 2026;

constexpr double kQv4Low = 0.72, kQv4High = 0.82;
constexpr double kZzTarget = 45, kZzTol = 6;
constexpr double kTeleportLow = 0.85, kTeleportHigh = 0.96;
constexpr double kRbSigmas = 2;
constexpr double kCrosstalkSigmas = 2, kDetectSigmas = 3, kCorrStrength = 5e-3;
constexpr double kSu4Tol = 1e-8, kSu2Tol = 1e-9;
constexpr double kRoundTripTol = 1e-8;
constexpr double kComposite = 1735.86, kCompositeTol = 1e-9;
constexpr double kTrackTol = 1e-10, kUntrackedMin = 1e-6;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome qv4() {
  QVConfig cfg = default_qv_config(4);
  cfg.seed = kSeed;
  QVResult r = run_qv(cfg);
  bool ok = r.h_mean >= kQv4Low && r.h_mean <= kQv4High && r.pass && r.h_mean - 2 * r.sigma > 2.0 / 3;
  return {ok, fmt("h=%.4f sigma=%.4f h-2sigma=%.4f (%zux%zu, band [%.2f, %.2f])", r.h_mean, r.sigma,
                  r.h_mean - 2 * r.sigma, r.n_circuits, r.n_shots, kQv4Low, kQv4High)};
}

Outcome qv6() {
  QVConfig cfg = default_qv_config(6);
  cfg.seed = kSeed;
  QVResult r = run_qv(cfg);
  bool ok = cfg.merge && std::abs(r.mean_zz - kZzTarget) <= kZzTol && r.pass;
  return {ok, fmt("mean ZZ=%.2f (45+-6) h=%.4f sigma=%.4f pass=%d (%zux%zu, merge)", r.mean_zz, r.h_mean, r.sigma,
                  r.pass, r.n_circuits, r.n_shots)};
}

Outcome teleport() {
  TeleportResult ideal = teleport_suite(NoiseModel::ideal(), 2000, kSeed);
  bool table = true;
  for (const auto &in : teleport_inputs()) {
    Distribution d = run_exact(teleport_circuit(in), NoiseModel::ideal());
    TeleportInput e = teleport_expected(in);
    auto bit = [](char c) { return c == '1' || c == '-' ? '1' : '0'; };
    table = table && std::abs(d.marginal({"out3", "out0"})[std::string{bit(e.q3), bit(e.q0)}] - 1) < 1e-12;
  }
  TeleportResult noisy = teleport_suite(NoiseModel(), 2000, kSeed);
  bool ok = ideal.f1 == 1.0 && ideal.f2 == 1.0 && table && noisy.f_avg_lb >= kTeleportLow &&
            noisy.f_avg_lb <= kTeleportHigh;
  return {ok, fmt("noiseless f1=%.6f f2=%.6f truth table %s; default noise f1=%.4f f2=%.4f F_lb=%.4f (band [%.2f, %.2f])",
                  ideal.f1, ideal.f2, table ? "8/8" : "MISMATCH", noisy.f1, noisy.f2, noisy.f_avg_lb, kTeleportLow,
                  kTeleportHigh)};
}

Outcome rb_closed_loop() {
  bool ok = true;
  std::string detail;
  for (double r : {2e-3, 8e-3, 2e-2}) {
    RBConfig cfg;
    cfg.n = 2;
    cfg.sequences = 50;
    cfg.shots = 500;
    cfg.lengths = {1, 2, 4, 8, 16, 32};
    cfg.seed = derive_seed(kSeed, "rb-closed-loop", static_cast<std::uint64_t>(r * 1e6));
    cfg.noise = NoiseModel::ideal();
    cfg.noise.p_tq_depol = r;
    RBResult res = run_rb(cfg);
    double pred = predicted_rb_alpha(2, 0, r);
    const DecayFit &f = res.fits[0];
    double z = (f.alpha - pred) / f.sigma_alpha;
    ok = ok && std::abs(z) <= kRbSigmas;
    detail += fmt("r=%.0e alpha=%.5f pred=%.5f sigma=%.5f z=%+.2f; ", r, f.alpha, pred, f.sigma_alpha, z);
  }
  return {ok, detail + "(50 seq x 500 shots, |z| <= 2)"};
}

CrosstalkResult crosstalk_run(double p_corr, std::uint64_t seed) {
  RBConfig cfg;
  cfg.n = 2;
  cfg.sequences = 50;
  cfg.shots = 500;
  cfg.noise = NoiseModel();
  cfg.seed = derive_seed(seed, "rb-individual", 1);
  RBResult i1 = run_rb(cfg);
  cfg.seed = derive_seed(seed, "rb-individual", 2);
  RBResult i2 = run_rb(cfg);
  cfg.seed = derive_seed(seed, "rb-simultaneous");
  cfg.simultaneous = true;
  cfg.p_corr = p_corr;
  RBResult s = run_rb(cfg);
  return crosstalk_stats(i1, i2, s);
}

Outcome crosstalk() {
  CrosstalkResult ind = crosstalk_run(0, kSeed);
  bool ok = true;
  double worst_gamma = 0;
  for (int z = 0; z < 2; z++) {
    double s = ind.gamma[z] / ind.sigma_gamma[z];
    worst_gamma = std::max(worst_gamma, s);
    ok = ok && ind.gamma[z] <= kCrosstalkSigmas * ind.sigma_gamma[z];
  }
  for (int i = 0; i < 3; i++) {
    for (int j = 0; j < 3; j++) {
      ok = ok && ind.delta[i][j] <= kCrosstalkSigmas * ind.sigma_delta[i][j];
    }
  }
  CrosstalkResult corr = crosstalk_run(kCorrStrength, kSeed);
  double detect = corr.max_delta_significance();
  ok = ok && detect > kDetectSigmas;
  return {ok, fmt("independent: gamma1=%.1e gamma2=%.1e max gamma/sigma=%.3f max delta/sigma=%.3f (<= 2); "
                  "correlated %.0e: max delta/sigma=%.2f (> 3)",
                  ind.gamma[0], ind.gamma[1], worst_gamma, ind.max_delta_significance(), kCorrStrength, detect)};
}

Outcome synthesis() {
  double su4 = 0, su2 = 0;
  bool three = true;
  for (std::uint64_t s = 0; s < 1000; s++) {
    Mat4 u = haar_su4(derive_seed(kSeed, "acc-su4", s));
    auto seq = synth_su4(u, {.quantize = false});
    three = three && seq.count_zz() == 3;
    su4 = std::max(su4, phase_distance(seq.unitary(), u));
    Mat2 v = haar_su2(derive_seed(kSeed, "acc-su2", s));
    su2 = std::max(su2, phase_distance(synth_su2(v, {.quantize = false}).unitary(), v));
  }
  const ZZGateSource &zz = resolve_zz_gate();
  bool wrapper = zz.native_fallback ? (std::isfinite(zz.search.residual) && zz.search.residual > 0)
                                    : zz.search.residual < kWrapperTolerance;
  bool ok = su4 < kSu4Tol && su2 < kSu2Tol && three && wrapper;
  return {ok, fmt("SU(4) max dist=%.2e (3 ZZ each: %s); SU(2) max dist=%.2e; ZZ wrapper %s, residual=%.3e", su4,
                  three ? "yes" : "no", su2, zz.native_fallback ? "fallback to native U_zz" : "converged",
                  zz.search.residual)};
}

Circuit random_native(std::size_t n, std::size_t depth, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  Circuit c;
  c.n_qubits = n;
  for (std::size_t k = 0; k < depth; k++) {
    std::size_t q = rng() % n;
    switch (rng() % 4) {
      case 0: c.ops.push_back(RzOp{q, quantize_z(angle(rng))}); break;
      case 1: c.ops.push_back(RxyOp{q, kPi / 2, angle(rng)}); break;
      case 2: c.ops.push_back(RxyOp{q, kPi, angle(rng)}); break;
      default: c.ops.push_back(ZzOp{q, (q + 1 + rng() % (n - 1)) % n}); break;
    }
  }
  for (std::size_t q = 0; q < n; q++) {
    c.ops.push_back(MeasureOp{q, "m" + std::to_string(q)});
  }
  return c;
}

double max_prob_diff(const Distribution &a, const Distribution &b) {
  double d = 0;
  for (const auto &[k, p] : a.probs) {
    d = std::max(d, std::abs(p - b[k]));
  }
  for (const auto &[k, p] : b.probs) {
    d = std::max(d, std::abs(p - a[k]));
  }
  return d;
}

Outcome routing() {
  std::vector<std::size_t> start = {0, 1, 2, 3, 4, 5}, target = start;
  std::size_t perms = 0, max_rounds = 0;
  bool correct = true;
  do {
    auto rounds = route_permutation(start, target);
    max_rounds = std::max(max_rounds, rounds.size());
    correct = correct && apply_rounds(start, rounds) == target;
    perms++;
  } while (std::next_permutation(target.begin(), target.end()));
  double worst = 0;
  bool replayed = true;
  for (std::uint64_t s = 0; s < 100; s++) {
    Circuit c = random_native(4, 30, derive_seed(kSeed, "acc-route", s));
    TransportSchedule sch = compile_schedule(c, Mode::N4);
    try {
      replay(sch);
    } catch (const IllegalOperand &) {
      replayed = false;
    }
    worst = std::max(worst, max_prob_diff(run_exact(sch, NoiseModel::ideal()), run_exact(c, NoiseModel::ideal())));
  }
  bool ok = perms == 720 && max_rounds <= 6 && correct && replayed && worst < kRoundTripTol;
  return {ok, fmt("%zu perms, max rounds=%zu, all correct=%s; 100 circuits replay=%s max prob diff=%.2e", perms,
                  max_rounds, correct ? "yes" : "no", replayed ? "clean" : "ILLEGAL", worst)};
}

Outcome budget() {
  MachineConfig cfg = default_config(Mode::N4);
  std::vector<ScheduleEvent> ev(4);
  ev[0].kind = EventKind::TRANSPORT;
  ev[0].duration_us = cfg.transport.scheduled_us(TransportKind::INTERZONE_SHIFT);
  ev[1].kind = EventKind::COOLING;
  ev[1].duration_us = cfg.timing.cooling_us(1);
  ev[2].kind = EventKind::COOLING;
  ev[2].duration_us = cfg.timing.cooling_us(2);
  ev[3].kind = EventKind::TQ_GATE;
  ev[3].duration_us = cfg.timing.tq_gate_us;
  double t = 0;
  for (auto &e : ev) {
    e.zones = {2};
    e.start_us = t;
    t += e.duration_us;
  }
  double composite = time_budget(ev).total_us;
  Circuit qv = compile_qv_circuit(gen_qv_circuit(6, kSeed), true);
  TimeBudget b = time_budget(compile_schedule(qv, Mode::N6));
  bool ok = std::abs(composite - kComposite) < kCompositeTol && b.largest_category() == "cooling";
  return {ok, fmt("composite=%.6f us; N=6 QV (%zu ZZ): cooling=%.0f transport=%.0f tq=%.0f sq=%.0f meas=%.0f, "
                  "largest=%s",
                  composite, qv.count_zz(), b.cooling_us, b.transport_us, b.tq_gates_us, b.sq_gates_us,
                  b.measure_init_us, b.largest_category().c_str())};
}

Outcome phase_tracking() {
  StarkOffsets off;
  off.per_kind = {0.17, 0.05, 0.02, 0.11, 0.07, 0.03};
  std::vector<Circuit> suite;
  Circuit ramsey;
  ramsey.n_qubits = 4;
  ramsey.ops = {RxyOp{0, kPi / 2, 0}, RxyOp{2, kPi / 2, 0.3}, ZzOp{0, 2}, RxyOp{0, kPi / 2, 0.5},
                RxyOp{2, kPi / 2, 0}, MeasureOp{0, "a"}, MeasureOp{2, "b"}};
  suite.push_back(ramsey);
  for (std::uint64_t s = 0; s < 10; s++) {
    suite.push_back(random_native(4, 24, derive_seed(kSeed, "acc-phase", s)));
  }
  double on = 0, ramsey_off = 0;
  std::size_t differ = 0;
  for (std::size_t i = 0; i < suite.size(); i++) {
    TransportSchedule s = compile_schedule(suite[i], Mode::N4);
    Distribution ref = run_exact(s, NoiseModel::ideal());
    on = std::max(on, max_prob_diff(run_exact(track_phases(s, off), NoiseModel::ideal(), off), ref));
    double d = max_prob_diff(run_exact(s, NoiseModel::ideal(), off), ref);
    if (i == 0) {
      ramsey_off = d;
    }
    differ += d > kUntrackedMin;
  }
  bool ok = on < kTrackTol && ramsey_off > kUntrackedMin;
  return {ok, fmt("tracking on: max diff=%.2e over %zu circuits (< 1e-10); tracking off: Ramsey diff=%.3f, "
                  "%zu/%zu circuits differ",
                  on, suite.size(), ramsey_off, differ, suite.size())};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {qv4,       qv6,      teleport, rb_closed_loop, crosstalk,
                                                           synthesis, routing, budget,   phase_tracking};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); k++) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu: %s  %s [%.1fs]\n", k + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
