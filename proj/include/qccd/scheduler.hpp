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

#ifndef QCCD_SCHEDULER_HPP
#define QCCD_SCHEDULER_HPP

#include <optional>
#include <string>
#include <vector>

#include "qccd/circuit.hpp"
#include "qccd/machine.hpp"
#include "qccd/routing.hpp"

namespace qccd {

struct ScheduleEvent {
  double start_us = 0;
  double duration_us = 0;
  EventKind kind = EventKind::TRANSPORT;
  /** Zones occupied while the event runs. */
  std::vector<std::size_t> zones;
  /** Logical qubits on the crystals involved. */
  std::vector<std::size_t> qubits;
  std::optional<TransportOp> transport;
  int cooling_stage = 0;
  /** Site of the crystal the event acts on (destination for shifts). */
  std::size_t site = 0;
  /** Gate payload: RXY, ZZ, MEASURE, RESET or COND. */
  std::optional<GateOp> op;
  bool mid_circuit = false;
  std::string label;

  double end_us() const { return start_us + duration_us; }
};

struct TransportSchedule {
  Mode mode = Mode::N4;
  std::size_t n_qubits = 0;
  MachineConfig config;
  /** Sorted by start time; ties keep dependency order. */
  std::vector<ScheduleEvent> events;
  std::vector<std::size_t> qubit_to_ion;
  /** Logical qubits in trap order after the last event. */
  std::vector<std::size_t> final_permutation;
  std::vector<std::string> measurement_keys;
  /** Software Z frame left after the last gate, per logical qubit. */
  std::vector<double> residual_frame;
  bool phases_tracked = false;
  StarkOffsets tracked_offsets;

  std::size_t count(EventKind k) const;
  double makespan_us() const;
};

struct CompileOptions {
  /** Use assign_ions; otherwise qubit q sits on ion q. */
  bool optimize_assignment = true;
};

struct AssignmentResult {
  std::vector<std::size_t> qubit_to_ion;
  std::size_t cost = 0;
  std::size_t identity_cost = 0;
};

/** Abstract routing cost: total odd-even rounds over the circuit's two-qubit sequence. */
std::size_t routing_cost(const Circuit &c, Mode mode, const std::vector<std::size_t> &qubit_to_ion);

/**
 * Greedy seeding (first interacting pairs onto the gate-zone pairs of the
 * initial configuration) followed by pairwise-exchange descent; the identity
 * map wins ties.
 */
AssignmentResult assign_ions(const Circuit &c, Mode mode);

/** Native circuit to timed schedule on the given machine. */
TransportSchedule compile_schedule(const Circuit &c, Mode mode, const MachineConfig &cfg,
                                   const CompileOptions &opts = {});
TransportSchedule compile_schedule(const Circuit &c, Mode mode);

/** Replays events in order; throws IllegalOperand on any violation. Returns the final state. */
MachineState replay(const TransportSchedule &s);

struct TimeBudget {
  double cooling_us = 0;
  double transport_us = 0;
  double tq_gates_us = 0;
  double sq_gates_us = 0;
  double measure_init_us = 0;
  double total_us = 0;

  double sum_us() const { return cooling_us + transport_us + tq_gates_us + sq_gates_us + measure_init_us; }
  double fraction(EventKind k) const;
  std::string largest_category() const;
};

TimeBudget time_budget(const TransportSchedule &s);
TimeBudget time_budget(const std::vector<ScheduleEvent> &events);

/** Adds the accumulated per-qubit frame to the phase of every RXY event. */
TransportSchedule track_phases(const TransportSchedule &s, const StarkOffsets &offsets);

/** Builds an event list with start times from emission-ordered events by list scheduling. */
std::vector<ScheduleEvent> list_schedule(std::vector<ScheduleEvent> events);

}  // namespace qccd

#endif
