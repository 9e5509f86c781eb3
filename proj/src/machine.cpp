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

#include "qccd/machine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qccd {

TrapLayout::TrapLayout(std::vector<Zone> zones, double intrazone_distance_um)
    : zones_(std::move(zones)), intrazone_distance_um_(intrazone_distance_um) {
  std::set<std::string> names;
  for (std::size_t z = 0; z < zones_.size(); z++) {
    if (!names.insert(zones_[z].name).second) {
      throw std::invalid_argument("TrapLayout: duplicate zone name '" + zones_[z].name + "'");
    }
    if (zones_[z].kind == ZoneKind::GATE) {
      sites_.push_back({z, SubSlot::LEFT});
      sites_.push_back({z, SubSlot::CENTER});
      sites_.push_back({z, SubSlot::RIGHT});
    } else {
      sites_.push_back({z, SubSlot::WHOLE});
    }
  }
  if (!(intrazone_distance_um_ > 0)) {
    throw std::invalid_argument("TrapLayout: intrazone distance must be positive");
  }
}

std::string TrapLayout::site_name(std::size_t site) const {
  const Site &s = sites_.at(site);
  std::string n = zones_[s.zone].name;
  switch (s.slot) {
    case SubSlot::LEFT:
      return n + "L";
    case SubSlot::CENTER:
      return n + "C";
    case SubSlot::RIGHT:
      return n + "R";
    default:
      return n;
  }
}

std::size_t TrapLayout::site_index(const std::string &name) const {
  for (std::size_t s = 0; s < sites_.size(); s++) {
    if (site_name(s) == name) {
      return s;
    }
  }
  throw std::invalid_argument("TrapLayout: no site named '" + name + "'");
}

bool TrapLayout::is_gate_center(std::size_t site) const {
  return site < sites_.size() && sites_[site].slot == SubSlot::CENTER;
}

std::size_t TrapLayout::center_site(std::size_t zone) const {
  for (std::size_t s = 0; s < sites_.size(); s++) {
    if (sites_[s].zone == zone && sites_[s].slot == SubSlot::CENTER) {
      return s;
    }
  }
  throw std::invalid_argument("TrapLayout: zone '" + zones_.at(zone).name + "' is not a gate zone");
}

std::vector<std::size_t> TrapLayout::gate_zones() const {
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < zones_.size(); z++) {
    if (zones_[z].kind == ZoneKind::GATE) {
      out.push_back(z);
    }
  }
  return out;
}

TrapLayout default_layout() {
  return TrapLayout({{"L", ZoneKind::LOAD},
                     {"A1", ZoneKind::AUXILIARY},
                     {"G1", ZoneKind::GATE},
                     {"A2", ZoneKind::AUXILIARY},
                     {"G2", ZoneKind::GATE}});
}

std::size_t mode_qubits(Mode m) { return m == Mode::N4 ? 4 : 6; }

std::string mode_name(Mode m) { return m == Mode::N4 ? "N4" : "N6"; }

Mode parse_mode(const std::string &s) {
  std::string t;
  for (char c : s) {
    t += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  if (t == "N4" || t == "4") {
    return Mode::N4;
  }
  if (t == "N6" || t == "6") {
    return Mode::N6;
  }
  throw std::invalid_argument("unknown mode '" + s + "' (expected n4 or n6)");
}

std::string Crystal::pattern() const {
  std::string p;
  for (const auto &ion : ions) {
    p += ion.species == Species::QUBIT ? 'q' : 'c';
  }
  return p;
}

std::vector<std::size_t> Crystal::qubits() const {
  std::vector<std::size_t> out;
  for (const auto &ion : ions) {
    if (ion.species == Species::QUBIT && ion.logical_id) {
      out.push_back(*ion.logical_id);
    }
  }
  return out;
}

bool allowed_pattern(const std::string &p) { return p == "cqqc" || p == "qc" || p == "cq" || p == "qccq"; }

std::string transport_name(TransportKind k) {
  switch (k) {
    case TransportKind::INTRAZONE_SHIFT:
      return "intrazone_shift";
    case TransportKind::INTERZONE_SHIFT:
      return "interzone_shift";
    case TransportKind::SPLIT:
      return "split";
    case TransportKind::COMBINE:
      return "combine";
    case TransportKind::SWAP:
      return "swap";
  }
  return "?";
}

TransportTable::TransportTable() {
  (*this)[TransportKind::INTRAZONE_SHIFT] = {TransportKind::INTRAZONE_SHIFT, 57.8, 1, 1, true, true};
  (*this)[TransportKind::INTERZONE_SHIFT] = {TransportKind::INTERZONE_SHIFT, 282.6, 1, 1, true, true};
  (*this)[TransportKind::SPLIT] = {TransportKind::SPLIT, 128.2, 0.75, 1, false, true};
  (*this)[TransportKind::COMBINE] = {TransportKind::COMBINE, 128.2, 0.75, 1, false, true};
  (*this)[TransportKind::SWAP] = {TransportKind::SWAP, 200.0, 2, 4, false, true};
}

double TimingTable::cooling_us(int stage) const {
  if (stage < 1 || stage > 3) {
    throw std::invalid_argument("cooling stage must be 1, 2 or 3");
  }
  return cool_us[stage - 1];
}

double TimingTable::sq_duration_us(double theta) const { return sq_pi2_us * std::abs(theta) / (std::acos(-1.0) / 2); }

NoiseModel NoiseModel::ideal() {
  NoiseModel n;
  n.p_tq_depol = 0;
  n.p_sq_depol = 0;
  n.p_spam = 0;
  n.p_meas_lc = 0;
  n.p_meas_crosstalk_idle = 0;
  n.t2_spin_echo_s = INFINITY;
  n.p_scrub_per_shot = 0;
  n.dd_memory_multiplier = 1.0;
  return n;
}

std::vector<std::string> NoiseModel::keys() {
  return {"p_tq_depol", "p_sq_depol",       "p_spam",           "p_meas_lc", "p_meas_crosstalk_idle",
          "t2_spin_echo_s", "p_scrub_per_shot", "dd_memory_multiplier"};
}

namespace {

template <class NM>
auto *noise_field(NM &n, const std::string &key) {
  if (key == "p_tq_depol") return &n.p_tq_depol;
  if (key == "p_sq_depol") return &n.p_sq_depol;
  if (key == "p_spam") return &n.p_spam;
  if (key == "p_meas_lc") return &n.p_meas_lc;
  if (key == "p_meas_crosstalk_idle") return &n.p_meas_crosstalk_idle;
  if (key == "t2_spin_echo_s" || key == "t2") return &n.t2_spin_echo_s;
  if (key == "p_scrub_per_shot" || key == "p_scrub") return &n.p_scrub_per_shot;
  if (key == "dd_memory_multiplier") return &n.dd_memory_multiplier;
  throw std::invalid_argument("unknown noise parameter '" + key + "'");
}

}  // namespace

void NoiseModel::set(const std::string &key, double value) { *noise_field(*this, key) = value; }

double NoiseModel::get(const std::string &key) const { return *noise_field(*this, key); }

void NoiseModel::validate() const {
  for (const char *k : {"p_tq_depol", "p_sq_depol", "p_spam", "p_meas_lc", "p_meas_crosstalk_idle",
                        "p_scrub_per_shot"}) {
    double v = get(k);
    if (!(v >= 0 && v <= 1)) {
      throw std::invalid_argument(std::string("noise parameter ") + k + " must be in [0, 1]");
    }
  }
  if (p_scrub_per_shot >= 1) {
    throw std::invalid_argument("p_scrub_per_shot must be below 1");
  }
  if (!(t2_spin_echo_s > 0)) {
    throw std::invalid_argument("t2_spin_echo_s must be positive");
  }
  if (!(dd_memory_multiplier >= 0 && dd_memory_multiplier <= 1)) {
    throw std::invalid_argument("dd_memory_multiplier must be in [0, 1]");
  }
}

std::string event_kind_name(EventKind k) {
  static const char *names[] = {"transport", "cooling", "sq_gate", "tq_gate", "measure", "init"};
  return names[static_cast<int>(k)];
}

bool StarkOffsets::all_zero() const {
  return std::all_of(per_kind.begin(), per_kind.end(), [](double v) { return v == 0; });
}

MachineConfig default_config(Mode mode) {
  MachineConfig cfg;
  if (mode == Mode::N4) {
    cfg.layout = default_layout();
  } else {
    std::vector<Zone> zones = default_layout().zones();
    zones.push_back({"A3", ZoneKind::AUXILIARY});
    cfg.layout = TrapLayout(zones);
  }
  return cfg;
}

std::optional<std::size_t> MachineState::crystal_at(std::size_t site) const {
  for (std::size_t i = 0; i < crystals.size(); i++) {
    if (crystals[i].site == site) {
      return i;
    }
  }
  return std::nullopt;
}

std::size_t MachineState::locate(std::size_t qubit) const {
  for (std::size_t i = 0; i < crystals.size(); i++) {
    for (const auto &ion : crystals[i].ions) {
      if (ion.logical_id == qubit) {
        return i;
      }
    }
  }
  throw std::out_of_range("MachineState: qubit " + std::to_string(qubit) + " not present");
}

std::vector<std::size_t> MachineState::chain_order() const {
  std::vector<std::size_t> out;
  for (const auto &c : crystals) {
    for (std::size_t q : c.qubits()) {
      out.push_back(q);
    }
  }
  return out;
}

std::size_t MachineState::num_qubits() const { return chain_order().size(); }

bool MachineState::same_configuration(const MachineState &other) const {
  if (crystals.size() != other.crystals.size()) {
    return false;
  }
  for (std::size_t i = 0; i < crystals.size(); i++) {
    if (crystals[i].site != other.crystals[i].site || crystals[i].ions != other.crystals[i].ions) {
      return false;
    }
  }
  return true;
}

void MachineState::validate(const TrapLayout &layout, std::size_t n_qubits) const {
  std::set<std::size_t> sites;
  std::set<std::size_t> ids;
  std::size_t nq = 0, nc = 0;
  for (const auto &c : crystals) {
    if (c.site >= layout.num_sites()) {
      throw IllegalOperand("crystal at nonexistent site");
    }
    if (!sites.insert(c.site).second) {
      throw IllegalOperand("two crystals at site " + layout.site_name(c.site));
    }
    if (!allowed_pattern(c.pattern())) {
      throw IllegalOperand("disallowed crystal configuration " + c.pattern());
    }
    if (c.ions.size() == 4 && !layout.is_gate_center(c.site)) {
      throw IllegalOperand("four-ion crystal outside a gate center");
    }
    if (c.heat_axial < 0 || c.heat_radial < 0) {
      throw IllegalOperand("negative heat");
    }
    for (const auto &ion : c.ions) {
      if (ion.species == Species::QUBIT) {
        nq++;
        if (!ion.logical_id || !ids.insert(*ion.logical_id).second) {
          throw IllegalOperand("qubit ion without a unique logical id");
        }
      } else {
        nc++;
      }
    }
  }
  if (nq != n_qubits || nc != n_qubits) {
    throw IllegalOperand("ion counts do not match the mode");
  }
  for (std::size_t q = 0; q < n_qubits; q++) {
    if (!ids.count(q)) {
      throw IllegalOperand("logical qubit missing");
    }
  }
}

std::string MachineState::describe(const TrapLayout &layout) const {
  std::ostringstream os;
  for (const auto &c : crystals) {
    os << layout.site_name(c.site) << "[";
    for (std::size_t i = 0; i < c.ions.size(); i++) {
      if (i) {
        os << ",";
      }
      if (c.ions[i].species == Species::COOLANT) {
        os << "c";
      } else {
        os << "q" << *c.ions[i].logical_id;
      }
    }
    os << "] ";
  }
  return os.str();
}

namespace {

Ion qubit_ion(std::size_t id) { return Ion{Species::QUBIT, id}; }
Ion coolant_ion() { return Ion{Species::COOLANT, std::nullopt}; }

void sort_crystals(MachineState &s) {
  std::sort(s.crystals.begin(), s.crystals.end(), [](const Crystal &a, const Crystal &b) { return a.site < b.site; });
}

}  // namespace

std::pair<TrapLayout, MachineState> default_machine(Mode mode) {
  MachineConfig cfg = default_config(mode);
  const TrapLayout &lay = cfg.layout;
  MachineState s;
  if (mode == Mode::N4) {
    s.crystals.push_back({{coolant_ion(), qubit_ion(0), qubit_ion(1), coolant_ion()}, lay.site_index("G1C")});
    s.crystals.push_back({{coolant_ion(), qubit_ion(2), qubit_ion(3), coolant_ion()}, lay.site_index("G2C")});
  } else {
    s.crystals.push_back({{qubit_ion(0), coolant_ion()}, lay.site_index("A1")});
    s.crystals.push_back({{coolant_ion(), qubit_ion(1), qubit_ion(2), coolant_ion()}, lay.site_index("G1C")});
    s.crystals.push_back({{coolant_ion(), qubit_ion(3)}, lay.site_index("A2")});
    s.crystals.push_back({{qubit_ion(4), coolant_ion(), coolant_ion(), qubit_ion(5)}, lay.site_index("G2C")});
  }
  s.phase_frame.assign(mode_qubits(mode), 0.0);
  sort_crystals(s);
  return {lay, s};
}

MachineState apply_transport(const MachineConfig &cfg, MachineState s, const TransportOp &op) {
  const TrapLayout &lay = cfg.layout;
  const TransportPrimitive &prim = cfg.transport[op.kind];
  auto need = [&](bool cond, const std::string &msg) {
    if (!cond) {
      throw IllegalOperand(transport_name(op.kind) + " at " +
                           (op.site < lay.num_sites() ? lay.site_name(op.site) : std::string("?")) + ": " + msg);
    }
  };
  need(op.site < lay.num_sites(), "site out of range");
  switch (op.kind) {
    case TransportKind::INTRAZONE_SHIFT:
    case TransportKind::INTERZONE_SHIFT: {
      need(op.target < lay.num_sites(), "destination out of range");
      auto src = s.crystal_at(op.site);
      need(src.has_value(), "no crystal to move");
      need(s.crystals[*src].ions.size() == 2, "only two-ion crystals are shifted");
      need(op.site + 1 == op.target || op.target + 1 == op.site, "destination not adjacent");
      bool same_zone = lay.zone_of(op.site) == lay.zone_of(op.target);
      need(same_zone == (op.kind == TransportKind::INTRAZONE_SHIFT),
           same_zone ? "destination is in the same zone" : "destination is in another zone");
      need(!s.crystal_at(op.target).has_value(), "destination occupied");
      Crystal &c = s.crystals[*src];
      c.site = op.target;
      c.heat_axial += prim.axial_heat;
      c.heat_radial += prim.radial_heat;
      break;
    }
    case TransportKind::SPLIT: {
      need(lay.is_gate_center(op.site), "not a gate zone center");
      auto src = s.crystal_at(op.site);
      need(src.has_value() && s.crystals[*src].ions.size() == 4, "split requires a four-ion crystal");
      need(!s.crystal_at(op.site - 1) && !s.crystal_at(op.site + 1), "side slots occupied");
      Crystal parent = s.crystals[*src];
      s.crystals.erase(s.crystals.begin() + static_cast<long>(*src));
      Crystal left{{parent.ions[0], parent.ions[1]}, op.site - 1, parent.heat_axial + prim.axial_heat,
                   parent.heat_radial + prim.radial_heat};
      Crystal right{{parent.ions[2], parent.ions[3]}, op.site + 1, left.heat_axial, left.heat_radial};
      need(allowed_pattern(left.pattern()) && allowed_pattern(right.pattern()), "products not allowed");
      s.crystals.push_back(left);
      s.crystals.push_back(right);
      break;
    }
    case TransportKind::COMBINE: {
      need(lay.is_gate_center(op.site), "not a gate zone center");
      need(!s.crystal_at(op.site).has_value(), "center occupied");
      auto l = s.crystal_at(op.site - 1);
      auto r = s.crystal_at(op.site + 1);
      need(l && r, "combine needs crystals in both side slots");
      Crystal a = s.crystals[*l], b = s.crystals[*r];
      need(a.ions.size() == 2 && b.ions.size() == 2, "combine needs two-ion crystals");
      Crystal m;
      m.ions = a.ions;
      m.ions.insert(m.ions.end(), b.ions.begin(), b.ions.end());
      m.site = op.site;
      m.heat_axial = std::max(a.heat_axial, b.heat_axial) + prim.axial_heat;
      m.heat_radial = std::max(a.heat_radial, b.heat_radial) + prim.radial_heat;
      need(allowed_pattern(m.pattern()), "result " + m.pattern() + " not allowed");
      std::size_t hi = std::max(*l, *r), lo = std::min(*l, *r);
      s.crystals.erase(s.crystals.begin() + static_cast<long>(hi));
      s.crystals.erase(s.crystals.begin() + static_cast<long>(lo));
      s.crystals.push_back(m);
      break;
    }
    case TransportKind::SWAP: {
      need(lay.is_gate_center(op.site), "not a gate zone center");
      auto src = s.crystal_at(op.site);
      need(src.has_value() && s.crystals[*src].ions.size() == 4, "swap requires a four-ion crystal");
      Crystal &c = s.crystals[*src];
      std::reverse(c.ions.begin(), c.ions.end());
      c.heat_axial += prim.axial_heat;
      c.heat_radial += prim.radial_heat;
      break;
    }
  }
  sort_crystals(s);
  s.clock_us += cfg.transport.scheduled_us(op.kind);
  return s;
}

MachineState insert_cooling(const MachineConfig &cfg, MachineState s, std::size_t site, int stage) {
  double d = cfg.timing.cooling_us(stage);
  auto c = s.crystal_at(site);
  if (!c) {
    throw IllegalOperand("cooling at " + cfg.layout.site_name(site) + ": no crystal present");
  }
  s.crystals[*c].heat_axial = 0;
  s.crystals[*c].heat_radial = 0;
  s.clock_us += d;
  return s;
}

MachineState apply_gate(const MachineConfig &cfg, MachineState s, EventKind kind,
                        const std::vector<std::size_t> &qubits, double duration_us) {
  const TrapLayout &lay = cfg.layout;
  if (kind == EventKind::TQ_GATE) {
    if (qubits.size() != 2) {
      throw IllegalOperand("two-qubit gate needs two qubits");
    }
    std::size_t a = s.locate(qubits[0]), b = s.locate(qubits[1]);
    if (a != b || s.crystals[a].ions.size() != 4 || !lay.is_gate_center(s.crystals[a].site)) {
      throw IllegalOperand("two-qubit gate qubits are not paired in a gate zone");
    }
  } else if (kind == EventKind::SQ_GATE || kind == EventKind::MEASURE || kind == EventKind::INIT) {
    for (std::size_t q : qubits) {
      const Crystal &c = s.crystals[s.locate(q)];
      if (c.ions.size() != 2 || !lay.is_gate_center(c.site)) {
        throw IllegalOperand(event_kind_name(kind) + " on q" + std::to_string(q) +
                             " requires an isolated crystal at a gate center");
      }
    }
  } else {
    throw IllegalOperand("apply_gate: not a gate event");
  }
  s.clock_us += duration_us;
  return s;
}

MachineState relabel(MachineState s, const std::vector<std::size_t> &qubit_to_ion) {
  std::size_t n = qubit_to_ion.size();
  std::vector<std::size_t> ion_to_qubit(n, n);
  for (std::size_t q = 0; q < n; q++) {
    if (qubit_to_ion[q] >= n || ion_to_qubit[qubit_to_ion[q]] != n) {
      throw std::invalid_argument("relabel: assignment is not a permutation");
    }
    ion_to_qubit[qubit_to_ion[q]] = q;
  }
  std::size_t pos = 0;
  for (auto &c : s.crystals) {
    for (auto &ion : c.ions) {
      if (ion.species == Species::QUBIT) {
        if (pos >= n) {
          throw std::invalid_argument("relabel: assignment size does not match the machine");
        }
        ion.logical_id = ion_to_qubit[pos++];
      }
    }
  }
  if (pos != n) {
    throw std::invalid_argument("relabel: assignment size does not match the machine");
  }
  return s;
}

}  // namespace qccd
