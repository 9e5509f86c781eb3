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

#ifndef QCCD_MACHINE_HPP
#define QCCD_MACHINE_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qccd {

enum class ZoneKind { LOAD, GATE, STORAGE, AUXILIARY };
enum class SubSlot { WHOLE, LEFT, CENTER, RIGHT };

struct Zone {
  std::string name;
  ZoneKind kind = ZoneKind::AUXILIARY;
};

struct Site {
  std::size_t zone = 0;
  SubSlot slot = SubSlot::WHOLE;
};

/**
 * Linear trap. Gate zones expose three sites (left, center, right); every
 * other zone is a single site. Sites are numbered along the trap axis.
 */
class TrapLayout {
 public:
  TrapLayout() = default;
  explicit TrapLayout(std::vector<Zone> zones, double intrazone_distance_um = 110.0);

  const std::vector<Zone> &zones() const { return zones_; }
  const std::vector<Site> &sites() const { return sites_; }
  std::size_t num_sites() const { return sites_.size(); }
  double intrazone_distance_um() const { return intrazone_distance_um_; }

  std::string site_name(std::size_t site) const;
  std::size_t site_index(const std::string &name) const;
  std::size_t zone_of(std::size_t site) const { return sites_.at(site).zone; }
  bool is_gate_center(std::size_t site) const;
  /** Center site of a gate zone. */
  std::size_t center_site(std::size_t zone) const;
  std::vector<std::size_t> gate_zones() const;

 private:
  std::vector<Zone> zones_;
  std::vector<Site> sites_;
  double intrazone_distance_um_ = 110.0;
};

/** L, A1, G1, A2, G2. */
TrapLayout default_layout();

enum class Mode { N4, N6 };

std::size_t mode_qubits(Mode m);
std::string mode_name(Mode m);
Mode parse_mode(const std::string &s);

enum class Species { QUBIT, COOLANT };

struct Ion {
  Species species = Species::QUBIT;
  /** Logical qubit carried by a qubit ion. */
  std::optional<std::size_t> logical_id;

  bool operator==(const Ion &) const = default;
};

struct Crystal {
  std::vector<Ion> ions;
  std::size_t site = 0;
  double heat_axial = 0;
  double heat_radial = 0;

  /** Species pattern such as "cqqc". */
  std::string pattern() const;
  std::vector<std::size_t> qubits() const;
};

bool allowed_pattern(const std::string &pattern);

enum class TransportKind { INTRAZONE_SHIFT, INTERZONE_SHIFT, SPLIT, COMBINE, SWAP };

std::string transport_name(TransportKind k);

struct TransportPrimitive {
  TransportKind kind = TransportKind::INTRAZONE_SHIFT;
  double duration_us = 0;
  double axial_heat = 0;
  double radial_heat = 0;
  /** Heat entries known only as upper bounds. */
  bool axial_is_bound = false;
  bool radial_is_bound = false;
};

struct TransportTable {
  std::array<TransportPrimitive, 5> primitives;
  double overhead = 1.10;

  TransportTable();
  const TransportPrimitive &operator[](TransportKind k) const { return primitives[static_cast<int>(k)]; }
  TransportPrimitive &operator[](TransportKind k) { return primitives[static_cast<int>(k)]; }
  double scheduled_us(TransportKind k) const { return (*this)[k].duration_us * overhead; }
};

struct TimingTable {
  double init_us = 10;
  double measure_hf_us = 120;
  double measure_lc_us = 60;
  std::array<double, 3> cool_us = {550, 850, 650};
  double sq_pi2_us = 5;
  double tq_gate_us = 25;

  double cooling_us(int stage) const;
  /** Pulse time scaled from the pi/2 time. */
  double sq_duration_us(double theta) const;
};

/**
 * Gate-level noise. Depolarizing entries are average gate infidelities r;
 * the simulator converts them to channel strength p = r d / (d - 1).
 */
struct NoiseModel {
  double p_tq_depol = 8.0e-3;
  double p_sq_depol = 1.1e-4;
  double p_spam = 3e-3;
  double p_meas_lc = 7e-3;
  double p_meas_crosstalk_idle = 1e-2;
  double t2_spin_echo_s = 2.0;
  double p_scrub_per_shot = 1e-3;
  double dd_memory_multiplier = 1.0;

  static NoiseModel ideal();
  void validate() const;
  /** Sets one field by name; throws std::invalid_argument for unknown names. */
  void set(const std::string &key, double value);
  static std::vector<std::string> keys();
  double get(const std::string &key) const;
};

enum class EventKind { TRANSPORT, COOLING, SQ_GATE, TQ_GATE, MEASURE, INIT };

std::string event_kind_name(EventKind k);

/** Frame rotation (radians) each event of a kind imprints on the qubits it touches. */
struct StarkOffsets {
  std::array<double, 6> per_kind = {0, 0, 0, 0, 0, 0};

  double operator[](EventKind k) const { return per_kind[static_cast<int>(k)]; }
  double &operator[](EventKind k) { return per_kind[static_cast<int>(k)]; }
  bool all_zero() const;
};

struct CoolingPolicy {
  bool enabled = true;
  /** A stage-3 cool precedes a single-qubit gate when axial or radial heat exceeds this. */
  double heat_threshold = 5.0;
};

struct MachineConfig {
  TrapLayout layout;
  TransportTable transport;
  TimingTable timing;
  NoiseModel noise;
  StarkOffsets stark;
  CoolingPolicy cooling;
};

MachineConfig default_config(Mode mode);

class IllegalOperand : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MachineState {
  /** Sorted by site. */
  std::vector<Crystal> crystals;
  std::vector<double> phase_frame;
  double clock_us = 0;

  std::optional<std::size_t> crystal_at(std::size_t site) const;
  /** Index of the crystal holding a logical qubit. */
  std::size_t locate(std::size_t qubit) const;
  /** Logical qubits in trap order. */
  std::vector<std::size_t> chain_order() const;
  std::size_t num_qubits() const;
  /** Placement, patterns and labels (not heat or clock) compared. */
  bool same_configuration(const MachineState &other) const;
  /** Checks patterns, site uniqueness and ion conservation. */
  void validate(const TrapLayout &layout, std::size_t n_qubits) const;
  std::string describe(const TrapLayout &layout) const;
};

/** Initial machine for a mode; chain position k carries logical qubit k. */
std::pair<TrapLayout, MachineState> default_machine(Mode mode);

/**
 * Shifts use site = source and target = destination; split, combine and
 * swap use site = the gate zone's center.
 */
struct TransportOp {
  TransportKind kind = TransportKind::INTRAZONE_SHIFT;
  std::size_t site = 0;
  std::size_t target = 0;

  bool operator==(const TransportOp &) const = default;
};

MachineState apply_transport(const MachineConfig &cfg, MachineState state, const TransportOp &op);
MachineState insert_cooling(const MachineConfig &cfg, MachineState state, std::size_t site, int stage);

/** Checks placement rules for a gate event and advances the clock. */
MachineState apply_gate(const MachineConfig &cfg, MachineState state, EventKind kind,
                        const std::vector<std::size_t> &qubits, double duration_us);

/** Relabels qubit ions: the ion at chain position qubit_to_ion[q] carries q. */
MachineState relabel(MachineState state, const std::vector<std::size_t> &qubit_to_ion);

}  // namespace qccd

#endif
