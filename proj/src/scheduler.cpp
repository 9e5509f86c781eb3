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

#include "qccd/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>
#include <unordered_map>

#include "qccd/synthesis.hpp"

namespace qccd {

std::size_t TransportSchedule::count(EventKind k) const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [k](const ScheduleEvent &e) { return e.kind == k; }));
}

double TransportSchedule::makespan_us() const {
  double t = 0;
  for (const auto &e : events) {
    t = std::max(t, e.end_us());
  }
  return t;
}

namespace {

/** Chain positions that share a four-ion crystal in the initial configuration. */
std::vector<std::size_t> gate_pair_starts(Mode mode) {
  auto [lay, st] = default_machine(mode);
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  for (const auto &c : st.crystals) {
    std::size_t nq = c.qubits().size();
    if (nq == 2) {
      out.push_back(pos);
    }
    pos += nq;
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> two_qubit_sequence(const Circuit &c) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto &op : c.ops) {
    if (const auto *z = std::get_if<ZzOp>(&op)) {
      out.emplace_back(z->q0, z->q1);
    } else if (const auto *u = std::get_if<Unitary4Op>(&op)) {
      out.emplace_back(u->q0, u->q1);
    }
  }
  return out;
}

/** Target order placing a and b adjacent with the fewest odd-even rounds. */
std::vector<std::size_t> pairing_target(const std::vector<std::size_t> &order, std::size_t a, std::size_t b,
                                        std::vector<SwapRound> *rounds_out) {
  std::vector<std::size_t> rest;
  for (std::size_t q : order) {
    if (q != a && q != b) {
      rest.push_back(q);
    }
  }
  std::vector<std::size_t> best;
  std::vector<SwapRound> best_rounds;
  std::tuple<std::size_t, std::size_t> best_key{SIZE_MAX, SIZE_MAX};
  for (std::size_t p = 0; p <= rest.size(); p++) {
    for (int o = 0; o < 2; o++) {
      std::vector<std::size_t> t(rest.begin(), rest.begin() + static_cast<long>(p));
      t.push_back(o == 0 ? a : b);
      t.push_back(o == 0 ? b : a);
      t.insert(t.end(), rest.begin() + static_cast<long>(p), rest.end());
      auto rounds = route_permutation(order, t);
      std::tuple<std::size_t, std::size_t> key{rounds.size(), count_transpositions(rounds)};
      if (key < best_key) {
        best_key = key;
        best = t;
        best_rounds = rounds;
      }
    }
  }
  if (rounds_out) {
    *rounds_out = best_rounds;
  }
  return best;
}

std::vector<std::size_t> order_from_assignment(const std::vector<std::size_t> &qubit_to_ion) {
  std::vector<std::size_t> order(qubit_to_ion.size());
  for (std::size_t q = 0; q < qubit_to_ion.size(); q++) {
    order[qubit_to_ion[q]] = q;
  }
  return order;
}

std::size_t cost_of(const std::vector<std::pair<std::size_t, std::size_t>> &seq,
                    const std::vector<std::size_t> &qubit_to_ion) {
  std::vector<std::size_t> order = order_from_assignment(qubit_to_ion);
  std::size_t cost = 0;
  for (auto [a, b] : seq) {
    std::vector<SwapRound> rounds;
    order = pairing_target(order, a, b, &rounds);
    cost += rounds.size();
  }
  return cost;
}

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

std::size_t routing_cost(const Circuit &c, Mode mode, const std::vector<std::size_t> &qubit_to_ion) {
  if (qubit_to_ion.size() != mode_qubits(mode)) {
    throw std::invalid_argument("routing_cost: assignment size does not match the mode");
  }
  return cost_of(two_qubit_sequence(c), qubit_to_ion);
}

AssignmentResult assign_ions(const Circuit &c, Mode mode) {
  std::size_t n = mode_qubits(mode);
  if (c.n_qubits > n) {
    throw std::invalid_argument("assign_ions: circuit has " + std::to_string(c.n_qubits) +
                                " qubits, mode capacity is " + std::to_string(n));
  }
  auto seq = two_qubit_sequence(c);
  std::vector<std::size_t> greedy(n, SIZE_MAX);
  std::vector<bool> used(n, false);
  for (auto [a, b] : seq) {
    if (greedy[a] != SIZE_MAX || greedy[b] != SIZE_MAX) {
      continue;
    }
    for (std::size_t p : gate_pair_starts(mode)) {
      if (!used[p] && !used[p + 1]) {
        greedy[a] = p;
        greedy[b] = p + 1;
        used[p] = used[p + 1] = true;
        break;
      }
    }
  }
  for (std::size_t q = 0; q < n; q++) {
    if (greedy[q] == SIZE_MAX) {
      for (std::size_t p = 0; p < n; p++) {
        if (!used[p]) {
          greedy[q] = p;
          used[p] = true;
          break;
        }
      }
    }
  }
  AssignmentResult r;
  r.qubit_to_ion = identity_map(n);
  r.identity_cost = cost_of(seq, r.qubit_to_ion);
  r.cost = r.identity_cost;
  std::size_t gc = cost_of(seq, greedy);
  if (gc < r.cost) {
    r.cost = gc;
    r.qubit_to_ion = greedy;
  }
  bool improved = true;
  while (improved && r.cost > 0) {
    improved = false;
    for (std::size_t i = 0; i < n && !improved; i++) {
      for (std::size_t j = i + 1; j < n && !improved; j++) {
        auto cand = r.qubit_to_ion;
        std::swap(cand[i], cand[j]);
        std::size_t cc = cost_of(seq, cand);
        if (cc < r.cost) {
          r.cost = cc;
          r.qubit_to_ion = cand;
          improved = true;
        }
      }
    }
  }
  return r;
}

namespace {

// ---------------------------------------------------------------------------
// Primitive-level planner over label-abstracted trap states.

using Compact = std::vector<std::string>;

std::string join(const Compact &c) {
  std::string s;
  for (const auto &x : c) {
    s += x;
    s += '|';
  }
  return s;
}

bool is_qubit_char(char ch) { return ch != 'c'; }

std::string species_of(const std::string &s) {
  std::string p;
  for (char ch : s) {
    p += is_qubit_char(ch) ? 'q' : 'c';
  }
  return p;
}

enum class GoalKind { PAIR, ISOLATE, ORDER, EXACT };

struct Goal {
  GoalKind kind;
  /** Chain label sequence (ORDER) or full encoding (EXACT). */
  std::string target;
};

bool goal_met(const Compact &c, const TrapLayout &lay, const Goal &g) {
  switch (g.kind) {
    case GoalKind::PAIR:
      for (std::size_t s = 0; s < c.size(); s++) {
        if (lay.is_gate_center(s) && c[s].size() == 4 && c[s].find('A') != std::string::npos &&
            c[s].find('B') != std::string::npos) {
          return true;
        }
      }
      return false;
    case GoalKind::ISOLATE:
      for (std::size_t s = 0; s < c.size(); s++) {
        if (lay.is_gate_center(s) && c[s].size() == 2 && c[s].find('A') != std::string::npos) {
          return true;
        }
      }
      return false;
    case GoalKind::ORDER: {
      std::string seq;
      for (const auto &x : c) {
        for (char ch : x) {
          if (is_qubit_char(ch)) {
            seq += ch;
          }
        }
      }
      return seq == g.target;
    }
    case GoalKind::EXACT:
      return join(c) == g.target;
  }
  return false;
}

struct Move {
  TransportOp op;
  Compact next;
  double cost;
};

std::vector<Move> moves_from(const Compact &c, const MachineConfig &cfg) {
  const TrapLayout &lay = cfg.layout;
  std::vector<Move> out;
  double cool12 = cfg.cooling.enabled ? cfg.timing.cooling_us(1) + cfg.timing.cooling_us(2) : 0.0;
  std::size_t n = c.size();
  for (std::size_t s = 0; s < n; s++) {
    if (c[s].size() == 2) {
      for (int d = -1; d <= 1; d += 2) {
        if ((d < 0 && s == 0) || (d > 0 && s + 1 >= n)) {
          continue;
        }
        std::size_t t = static_cast<std::size_t>(static_cast<long>(s) + d);
        if (!c[t].empty()) {
          continue;
        }
        bool intra = lay.zone_of(s) == lay.zone_of(t);
        TransportKind k = intra ? TransportKind::INTRAZONE_SHIFT : TransportKind::INTERZONE_SHIFT;
        Compact nx = c;
        std::swap(nx[s], nx[t]);
        out.push_back({{k, s, t}, nx, cfg.transport.scheduled_us(k) + (intra ? 0.0 : cool12)});
      }
    }
    if (lay.is_gate_center(s)) {
      if (c[s].size() == 4) {
        Compact nx = c;
        std::reverse(nx[s].begin(), nx[s].end());
        out.push_back({{TransportKind::SWAP, s, s}, nx, cfg.transport.scheduled_us(TransportKind::SWAP)});
        if (c[s - 1].empty() && c[s + 1].empty()) {
          Compact sp = c;
          sp[s - 1] = c[s].substr(0, 2);
          sp[s + 1] = c[s].substr(2, 2);
          sp[s].clear();
          if (allowed_pattern(species_of(sp[s - 1])) && allowed_pattern(species_of(sp[s + 1]))) {
            out.push_back({{TransportKind::SPLIT, s, s}, sp, cfg.transport.scheduled_us(TransportKind::SPLIT)});
          }
        }
      } else if (c[s].empty() && c[s - 1].size() == 2 && c[s + 1].size() == 2) {
        std::string merged = c[s - 1] + c[s + 1];
        if (allowed_pattern(species_of(merged))) {
          Compact nx = c;
          nx[s] = merged;
          nx[s - 1].clear();
          nx[s + 1].clear();
          out.push_back({{TransportKind::COMBINE, s, s}, nx, cfg.transport.scheduled_us(TransportKind::COMBINE)});
        }
      }
    }
  }
  return out;
}

std::vector<TransportOp> plan(const Compact &start, const MachineConfig &cfg, const Goal &goal) {
  struct Node {
    Compact state;
    long parent;
    TransportOp op;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<double> dist;
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  nodes.push_back({start, -1, {}});
  index[join(start)] = 0;
  dist.push_back(0);
  pq.push({0, 0});
  std::vector<bool> done;
  constexpr std::size_t kMaxNodes = 2000000;
  while (!pq.empty()) {
    auto [d, id] = pq.top();
    pq.pop();
    if (id < done.size() && done[id]) {
      continue;
    }
    if (done.size() <= id) {
      done.resize(nodes.size(), false);
    }
    done[id] = true;
    if (goal_met(nodes[id].state, cfg.layout, goal)) {
      std::vector<TransportOp> ops;
      for (long k = static_cast<long>(id); nodes[static_cast<std::size_t>(k)].parent >= 0;
           k = nodes[static_cast<std::size_t>(k)].parent) {
        ops.push_back(nodes[static_cast<std::size_t>(k)].op);
      }
      std::reverse(ops.begin(), ops.end());
      return ops;
    }
    for (auto &mv : moves_from(nodes[id].state, cfg)) {
      double nd = d + mv.cost;
      std::string key = join(mv.next);
      auto it = index.find(key);
      if (it == index.end()) {
        if (nodes.size() >= kMaxNodes) {
          throw std::logic_error("transport planner: search space exhausted");
        }
        std::size_t nid = nodes.size();
        nodes.push_back({std::move(mv.next), static_cast<long>(id), mv.op});
        index.emplace(std::move(key), nid);
        dist.push_back(nd);
        pq.push({nd, nid});
      } else if (nd < dist[it->second] - 1e-9) {
        std::size_t nid = it->second;
        if (nid < done.size() && done[nid]) {
          continue;
        }
        dist[nid] = nd;
        nodes[nid].parent = static_cast<long>(id);
        nodes[nid].op = mv.op;
        pq.push({nd, nid});
      }
    }
  }
  throw std::logic_error("transport planner: goal unreachable");
}

Compact encode(const MachineState &s, const TrapLayout &lay, const std::function<char(std::size_t)> &label) {
  Compact c(lay.num_sites());
  for (const auto &cr : s.crystals) {
    std::string x;
    for (const auto &ion : cr.ions) {
      x += ion.species == Species::COOLANT ? 'c' : label(*ion.logical_id);
    }
    c[cr.site] = x;
  }
  return c;
}

char id_char(std::size_t q) { return static_cast<char>('0' + q); }

struct PlanCache {
  std::mutex mu;
  std::map<std::string, std::vector<TransportOp>> entries;
};

PlanCache &plan_cache() {
  static PlanCache cache;
  return cache;
}

std::string config_key(const MachineConfig &cfg) {
  std::string k;
  for (const auto &z : cfg.layout.zones()) {
    k += z.name + ":" + std::to_string(static_cast<int>(z.kind)) + ",";
  }
  for (const auto &p : cfg.transport.primitives) {
    k += std::to_string(p.duration_us) + ",";
  }
  k += std::to_string(cfg.transport.overhead) + (cfg.cooling.enabled ? "c" : "n");
  k += std::to_string(cfg.timing.cool_us[0]) + std::to_string(cfg.timing.cool_us[1]);
  return k;
}

std::vector<TransportOp> cached_plan(const Compact &start, const MachineConfig &cfg, const Goal &goal) {
  std::string key = config_key(cfg) + "#" + std::to_string(static_cast<int>(goal.kind)) + "#" + goal.target + "#" +
                    join(start);
  auto &cache = plan_cache();
  {
    std::lock_guard<std::mutex> lk(cache.mu);
    auto it = cache.entries.find(key);
    if (it != cache.entries.end()) {
      return it->second;
    }
  }
  auto ops = plan(start, cfg, goal);
  std::lock_guard<std::mutex> lk(cache.mu);
  cache.entries.emplace(key, ops);
  return ops;
}

// ---------------------------------------------------------------------------
// Compilation.

class Compiler {
 public:
  Compiler(const MachineConfig &cfg, MachineState init, std::size_t n_circuit_qubits)
      : cfg_(cfg), state_(std::move(init)), initial_(state_), n_(n_circuit_qubits) {}

  void route_pair(std::size_t a, std::size_t b) {
    std::vector<SwapRound> rounds;
    pairing_target(state_.chain_order(), a, b, &rounds);
    for (const auto &r : rounds) {
      for (std::size_t i : r.positions) {
        exchange_at(i);
      }
    }
  }

  void route_to(const std::vector<std::size_t> &target) {
    auto rounds = route_permutation(state_.chain_order(), target);
    for (const auto &r : rounds) {
      for (std::size_t i : r.positions) {
        exchange_at(i);
      }
    }
    if (state_.chain_order() != target) {
      throw std::logic_error("compile_schedule: routing did not reach the target order");
    }
  }

  void pair(std::size_t a, std::size_t b) {
    run_plan(marked({a, b}), {GoalKind::PAIR, ""});
  }

  void isolate(std::size_t q) { run_plan(marked({q}), {GoalKind::ISOLATE, ""}); }

  void restore() {
    route_to(initial_.chain_order());
    Compact goal = encode(initial_, cfg_.layout, id_char);
    run_plan(encode(state_, cfg_.layout, id_char), {GoalKind::EXACT, join(goal)});
    if (!state_.same_configuration(initial_)) {
      throw std::logic_error("compile_schedule: failed to restore the initial configuration");
    }
  }

  void cool(std::size_t site, int stage) {
    ScheduleEvent e;
    e.kind = EventKind::COOLING;
    e.duration_us = cfg_.timing.cooling_us(stage);
    e.cooling_stage = stage;
    e.site = site;
    e.zones = {cfg_.layout.zone_of(site)};
    e.qubits = state_.crystals[*state_.crystal_at(site)].qubits();
    e.label = "cool" + std::to_string(stage);
    state_ = insert_cooling(cfg_, std::move(state_), site, stage);
    events_.push_back(std::move(e));
  }

  void gate(EventKind kind, const GateOp &op, const std::vector<std::size_t> &qubits, double duration,
            bool mid = false) {
    std::size_t ci = state_.locate(qubits[0]);
    const Crystal &c = state_.crystals[ci];
    if (kind != EventKind::SQ_GATE || duration > 0) {
      bool policy_cool = cfg_.cooling.enabled &&
                         (kind == EventKind::TQ_GATE ||
                          (kind == EventKind::SQ_GATE &&
                           std::max(c.heat_axial, c.heat_radial) > cfg_.cooling.heat_threshold));
      if (policy_cool) {
        cool(c.site, 3);
      }
      const Crystal &cc = state_.crystals[state_.locate(qubits[0])];
      if (cfg_.cooling.enabled && (kind == EventKind::TQ_GATE || kind == EventKind::SQ_GATE) &&
          std::max(cc.heat_axial, cc.heat_radial) > cfg_.cooling.heat_threshold) {
        throw std::logic_error("compile_schedule: heat above threshold before a gate");
      }
      state_ = apply_gate(cfg_, std::move(state_), kind, qubits, duration);
    }
    const Crystal &cc = state_.crystals[state_.locate(qubits[0])];
    ScheduleEvent e;
    e.kind = kind;
    e.duration_us = duration;
    e.site = cc.site;
    e.zones = {cfg_.layout.zone_of(cc.site)};
    e.qubits = qubits;
    e.op = op;
    e.mid_circuit = mid;
    e.label = op_name(op);
    events_.push_back(std::move(e));
  }

  std::vector<ScheduleEvent> take_events() { return std::move(events_); }
  const MachineState &state() const { return state_; }

 private:
  Compact marked(std::initializer_list<std::size_t> qs) const {
    std::vector<std::size_t> v(qs);
    return encode(state_, cfg_.layout, [&](std::size_t q) {
      for (std::size_t k = 0; k < v.size(); k++) {
        if (v[k] == q) {
          return static_cast<char>('A' + k);
        }
      }
      return 'q';
    });
  }

  void exchange_at(std::size_t i) {
    auto order = state_.chain_order();
    std::size_t a = order[i], b = order[i + 1];
    Compact start = marked({a, b});
    std::string target;
    for (std::size_t k = 0; k < order.size(); k++) {
      target += k == i ? 'B' : k == i + 1 ? 'A' : 'q';
    }
    run_plan(start, {GoalKind::ORDER, target});
    std::swap(order[i], order[i + 1]);
    if (state_.chain_order() != order) {
      throw std::logic_error("compile_schedule: exchange macro disturbed other qubits");
    }
  }

  void run_plan(const Compact &start, const Goal &goal) {
    for (const auto &op : cached_plan(start, cfg_, goal)) {
      emit_transport(op);
    }
  }

  void emit_transport(const TransportOp &op) {
    ScheduleEvent e;
    e.kind = EventKind::TRANSPORT;
    e.duration_us = cfg_.transport.scheduled_us(op.kind);
    e.transport = op;
    e.label = transport_name(op.kind);
    std::set<std::size_t> qs;
    auto collect = [&](std::size_t site) {
      if (auto ci = state_.crystal_at(site)) {
        for (std::size_t q : state_.crystals[*ci].qubits()) {
          qs.insert(q);
        }
      }
    };
    bool shift = op.kind == TransportKind::INTRAZONE_SHIFT || op.kind == TransportKind::INTERZONE_SHIFT;
    if (shift) {
      collect(op.site);
      e.zones = {cfg_.layout.zone_of(op.site)};
      if (cfg_.layout.zone_of(op.target) != e.zones[0]) {
        e.zones.push_back(cfg_.layout.zone_of(op.target));
      }
      e.site = op.target;
    } else {
      collect(op.site - 1);
      collect(op.site);
      collect(op.site + 1);
      e.zones = {cfg_.layout.zone_of(op.site)};
      e.site = op.site;
    }
    e.qubits.assign(qs.begin(), qs.end());
    state_ = apply_transport(cfg_, std::move(state_), op);
    events_.push_back(std::move(e));
    if (op.kind == TransportKind::INTERZONE_SHIFT && cfg_.cooling.enabled) {
      cool(op.target, 1);
      cool(op.target, 2);
    }
  }

  const MachineConfig &cfg_;
  MachineState state_;
  MachineState initial_;
  std::size_t n_;
  std::vector<ScheduleEvent> events_;
};

bool is_terminal_measure(const std::vector<GateOp> &ops, std::size_t k) {
  for (std::size_t j = k + 1; j < ops.size(); j++) {
    if (!std::holds_alternative<MeasureOp>(ops[j])) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<ScheduleEvent> list_schedule(std::vector<ScheduleEvent> events) {
  std::map<std::size_t, double> zone_free, qubit_free;
  std::map<std::string, double> key_written, key_read;
  for (auto &e : events) {
    double t = 0;
    for (std::size_t z : e.zones) {
      t = std::max(t, zone_free[z]);
    }
    for (std::size_t q : e.qubits) {
      t = std::max(t, qubit_free[q]);
    }
    const MeasureOp *m = e.op ? std::get_if<MeasureOp>(&*e.op) : nullptr;
    const CondOp *c = e.op ? std::get_if<CondOp>(&*e.op) : nullptr;
    if (c) {
      t = std::max(t, key_written[c->key]);
    }
    if (m) {
      t = std::max({t, key_written[m->key], key_read[m->key]});
    }
    e.start_us = t;
    double end = e.end_us();
    for (std::size_t z : e.zones) {
      zone_free[z] = end;
    }
    for (std::size_t q : e.qubits) {
      qubit_free[q] = end;
    }
    if (c) {
      key_read[c->key] = std::max(key_read[c->key], end);
    }
    if (m) {
      key_written[m->key] = end;
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const ScheduleEvent &a, const ScheduleEvent &b) { return a.start_us < b.start_us; });
  return events;
}

TransportSchedule compile_schedule(const Circuit &c, Mode mode, const MachineConfig &cfg,
                                   const CompileOptions &opts) {
  std::size_t n_mode = mode_qubits(mode);
  if (c.n_qubits > n_mode) {
    throw std::invalid_argument("compile_schedule: circuit has " + std::to_string(c.n_qubits) +
                                " qubits, mode capacity is " + std::to_string(n_mode));
  }
  auto violations = validate_circuit(c);
  if (!violations.empty()) {
    throw std::invalid_argument("compile_schedule: invalid circuit: " + violations.front().message);
  }
  for (const auto &op : c.ops) {
    if (std::holds_alternative<Unitary2Op>(op) || std::holds_alternative<Unitary4Op>(op)) {
      throw std::invalid_argument("compile_schedule: circuit must be synthesized to native ops first");
    }
  }
  cfg.noise.validate();

  TransportSchedule sched;
  sched.mode = mode;
  sched.n_qubits = c.n_qubits;
  sched.config = cfg;
  sched.measurement_keys = c.measurement_keys();
  sched.qubit_to_ion = opts.optimize_assignment ? assign_ions(c, mode).qubit_to_ion : identity_map(n_mode);

  MachineState init = relabel(default_machine(mode).second, sched.qubit_to_ion);
  init.validate(cfg.layout, n_mode);
  FrameResult fr = commute_z_forward(c.ops, c.n_qubits, false);
  sched.residual_frame = fr.residual;

  Compiler comp(cfg, init, c.n_qubits);
  const auto &ops = fr.ops;
  for (std::size_t k = 0; k < ops.size(); k++) {
    const GateOp &op = ops[k];
    if (const auto *z = std::get_if<ZzOp>(&op)) {
      comp.route_pair(z->q0, z->q1);
      comp.pair(z->q0, z->q1);
      comp.gate(EventKind::TQ_GATE, op, {z->q0, z->q1}, cfg.timing.tq_gate_us);
    } else if (const auto *x = std::get_if<RxyOp>(&op)) {
      comp.isolate(x->q);
      comp.gate(EventKind::SQ_GATE, op, {x->q}, cfg.timing.sq_duration_us(x->theta));
    } else if (const auto *m = std::get_if<MeasureOp>(&op)) {
      bool mid = !is_terminal_measure(ops, k);
      comp.isolate(m->q);
      comp.gate(EventKind::MEASURE, op, {m->q}, mid ? cfg.timing.measure_lc_us : cfg.timing.measure_hf_us, mid);
    } else if (const auto *r = std::get_if<ResetOp>(&op)) {
      comp.isolate(r->q);
      comp.gate(EventKind::INIT, op, {r->q}, cfg.timing.init_us);
    } else if (const auto *cd = std::get_if<CondOp>(&op)) {
      if (const auto *ix = std::get_if<RxyOp>(&cd->inner)) {
        comp.isolate(ix->q);
        comp.gate(EventKind::SQ_GATE, op, {ix->q}, cfg.timing.sq_duration_us(ix->theta));
      } else {
        comp.gate(EventKind::SQ_GATE, op, {std::get<RzOp>(cd->inner).q}, 0.0);
      }
    } else if (const auto *rz = std::get_if<RzOp>(&op)) {
      comp.gate(EventKind::SQ_GATE, op, {rz->q}, 0.0);
    }
  }
  comp.restore();
  sched.final_permutation = comp.state().chain_order();
  sched.events = list_schedule(comp.take_events());
  return sched;
}

TransportSchedule compile_schedule(const Circuit &c, Mode mode) {
  return compile_schedule(c, mode, default_config(mode));
}

MachineState replay(const TransportSchedule &s) {
  const MachineConfig &cfg = s.config;
  MachineState st = relabel(default_machine(s.mode).second, s.qubit_to_ion);
  std::size_t n_mode = mode_qubits(s.mode);
  std::map<std::size_t, double> zone_busy;
  for (const auto &e : s.events) {
    for (std::size_t z : e.zones) {
      if (zone_busy[z] > e.start_us + 1e-9) {
        throw IllegalOperand("replay: overlapping events in zone " + cfg.layout.zones().at(z).name);
      }
      zone_busy[z] = e.end_us();
    }
    switch (e.kind) {
      case EventKind::TRANSPORT:
        st = apply_transport(cfg, std::move(st), *e.transport);
        break;
      case EventKind::COOLING:
        st = insert_cooling(cfg, std::move(st), e.site, e.cooling_stage);
        break;
      default:
        if (e.duration_us > 0) {
          st = apply_gate(cfg, std::move(st), e.kind, e.qubits, e.duration_us);
        }
        break;
    }
    st.validate(cfg.layout, n_mode);
  }
  return st;
}

double TimeBudget::fraction(EventKind k) const {
  double s = sum_us();
  if (s <= 0) {
    return 0;
  }
  switch (k) {
    case EventKind::COOLING:
      return cooling_us / s;
    case EventKind::TRANSPORT:
      return transport_us / s;
    case EventKind::TQ_GATE:
      return tq_gates_us / s;
    case EventKind::SQ_GATE:
      return sq_gates_us / s;
    default:
      return measure_init_us / s;
  }
}

std::string TimeBudget::largest_category() const {
  std::vector<std::pair<double, std::string>> v = {{cooling_us, "cooling"},
                                                   {transport_us, "transport"},
                                                   {tq_gates_us, "tq_gates"},
                                                   {sq_gates_us, "sq_gates"},
                                                   {measure_init_us, "measure_init"}};
  return std::max_element(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first < b.first; })->second;
}

TimeBudget time_budget(const std::vector<ScheduleEvent> &events) {
  TimeBudget b;
  for (const auto &e : events) {
    switch (e.kind) {
      case EventKind::COOLING:
        b.cooling_us += e.duration_us;
        break;
      case EventKind::TRANSPORT:
        b.transport_us += e.duration_us;
        break;
      case EventKind::TQ_GATE:
        b.tq_gates_us += e.duration_us;
        break;
      case EventKind::SQ_GATE:
        b.sq_gates_us += e.duration_us;
        break;
      case EventKind::MEASURE:
      case EventKind::INIT:
        b.measure_init_us += e.duration_us;
        break;
    }
    b.total_us = std::max(b.total_us, e.end_us());
  }
  return b;
}

TimeBudget time_budget(const TransportSchedule &s) { return time_budget(s.events); }

TransportSchedule track_phases(const TransportSchedule &s, const StarkOffsets &offsets) {
  TransportSchedule out = s;
  out.phases_tracked = !offsets.all_zero();
  out.tracked_offsets = offsets;
  if (offsets.all_zero()) {
    return out;
  }
  std::map<std::size_t, double> frame;
  for (auto &e : out.events) {
    if (e.kind == EventKind::SQ_GATE && e.op) {
      if (auto *x = std::get_if<RxyOp>(&*e.op)) {
        x->phi += frame[x->q];
      } else if (auto *c = std::get_if<CondOp>(&*e.op)) {
        if (auto *ix = std::get_if<RxyOp>(&c->inner)) {
          ix->phi += frame[ix->q];
        }
      }
    }
    if (e.kind == EventKind::INIT) {
      for (std::size_t q : e.qubits) {
        frame[q] = 0;
      }
    }
    if (e.duration_us > 0) {
      for (std::size_t q : e.qubits) {
        frame[q] += offsets[e.kind];
      }
    }
  }
  for (std::size_t q = 0; q < out.residual_frame.size(); q++) {
    out.residual_frame[q] = wrap_angle(out.residual_frame[q] - frame[q]);
  }
  return out;
}

}  // namespace qccd
