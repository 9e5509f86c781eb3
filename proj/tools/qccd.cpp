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


// Command-line driver: qv, rb, teleport, schedule, defaults.
// Exit codes: 0 pass, 1 benchmark failed, 2 error.

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qccd/circuit.hpp"
#include "qccd/machine.hpp"
#include "qccd/qv.hpp"
#include "qccd/rb.hpp"
#include "qccd/report.hpp"
#include "qccd/scheduler.hpp"
#include "qccd/simulator.hpp"
#include "qccd/synthesis.hpp"
#include "qccd/teleport.hpp"

using namespace qccd;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct Common {
  std::uint64_t seed = 1;
  std::string noise = "default";
  std::string config_path;
  std::string out_path;
  Json config_file = Json::object();
  NoiseModel noise_model;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("--seed", c.seed, "Root seed");
  cmd->add_option("--noise", c.noise, "'default', 'ideal' or k=v[,k=v...]");
  cmd->add_option("--config", c.config_path, "JSON config file; command-line flags take precedence");
  cmd->add_option("--out", c.out_path, "Report path (stdout when omitted)");
}

/** Fills options not given on the command line from the config file. */
void resolve(CLI::App *cmd, Common &c, const std::map<std::string, std::function<void(const Json &)>> &setters) {
  if (!c.config_path.empty()) {
    c.config_file = Json::parse(read_file(c.config_path));
    if (!c.config_file.is_object()) {
      throw std::invalid_argument("config file must hold a JSON object");
    }
  }
  NoiseModel base;
  for (const auto &[key, value] : c.config_file.items()) {
    if (key == "noise") {
      base = value.is_string() ? parse_noise_overrides(value.get<std::string>()) : noise_from_json(value);
      continue;
    }
    if (key == "machine") {
      continue;
    }
    if (key == "seed") {
      if (cmd->count("--seed") == 0) {
        c.seed = value.get<std::uint64_t>();
      }
      continue;
    }
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
    if (cmd->count("--" + key) == 0) {
      it->second(value);
    }
  }
  c.noise_model = parse_noise_overrides(c.noise, base);
}

int emit(const Common &c, const std::string &benchmark, Json config, const Json &result, const Json &summary, bool pass) {
  config["seed"] = c.seed;
  config["noise"] = to_json(c.noise_model);
  Json report = {{"benchmark", benchmark}, {"config", config}, {"seed", c.seed},       {"result", result},
                 {"summary", summary},     {"pass", pass},     {"timestamp", utc_timestamp()}};
  std::string text = report.dump(2) + "\n";
  if (c.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.out_path);
    if (!out) {
      throw std::runtime_error("cannot write '" + c.out_path + "'");
    }
    out << text;
    std::cout << benchmark << ": " << summary.dump() << " -> " << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kExitPass : kExitFail;
}

std::vector<std::size_t> parse_lengths(const std::string &s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = std::stol(item, &used);
    if (used != item.size() || v < 1) {
      throw std::invalid_argument("lengths must be positive integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

StarkOffsets parse_stark(const std::string &s) {
  StarkOffsets o;
  if (s.empty()) {
    return o;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("stark offsets must be kind=radians");
    }
    std::string kind = item.substr(0, eq);
    bool found = false;
    for (int k = 0; k < 6; k++) {
      if (event_kind_name(static_cast<EventKind>(k)) == kind) {
        o.per_kind[k] = std::stod(item.substr(eq + 1));
        found = true;
      }
    }
    if (!found) {
      throw std::invalid_argument("unknown event kind '" + kind + "'");
    }
  }
  return o;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"QCCD compiler, scheduler, simulator and benchmark harness"};
  app.require_subcommand(1);

  Common qv_c, rb_c, tp_c, sc_c;

  auto *qv = app.add_subcommand("qv", "Quantum volume benchmark");
  std::size_t qv_n = 4, qv_circuits = 0, qv_shots = 0;
  bool qv_merge = false, qv_no_merge = false, qv_scheduled = false;
  qv->add_option("--n", qv_n, "Number of qubits");
  qv->add_option("--circuits", qv_circuits, "Random circuits (default 100, or 400 above N=4)");
  qv->add_option("--shots", qv_shots, "Shots per circuit (default 500, or 100 above N=4)");
  qv->add_flag("--merge", qv_merge, "Merge SU(4) blocks before synthesis");
  qv->add_flag("--no-merge", qv_no_merge, "Disable block merging");
  qv->add_flag("--scheduled", qv_scheduled, "Simulate compiled transport schedules");
  add_common(qv, qv_c);

  auto *rb = app.add_subcommand("rb", "Randomized benchmarking");
  std::size_t rb_qubits = 2, rb_sequences = 50, rb_shots = 500, rb_boot = 200;
  bool rb_simultaneous = false;
  std::string rb_lengths = "1,2,4,8,16,32", rb_csv_path;
  double rb_corr = 0;
  rb->add_option("--qubits", rb_qubits, "Qubits per register (1 or 2)");
  rb->add_flag("--simultaneous", rb_simultaneous, "Individual and simultaneous runs with cross-talk statistics");
  rb->add_option("--lengths", rb_lengths, "Comma-separated sequence lengths");
  rb->add_option("--sequences", rb_sequences, "Sequences per length");
  rb->add_option("--shots", rb_shots, "Shots per sequence (0 for exact expectations)");
  rb->add_option("--boot", rb_boot, "Bootstrap resamples");
  rb->add_option("--corr", rb_corr, "Correlated ZZ dephasing between the pairs per layer");
  rb->add_option("--csv", rb_csv_path, "Decay-curve CSV path");
  add_common(rb, rb_c);

  auto *tp = app.add_subcommand("teleport", "Teleported CNOT truth table and fidelity bound");
  std::size_t tp_shots = 2000;
  bool tp_scheduled = false;
  tp->add_option("--shots", tp_shots, "Shots per input (0 for exact probabilities)");
  tp->add_flag("--scheduled", tp_scheduled, "Simulate the compiled N4 schedule");
  add_common(tp, tp_c);

  auto *sc = app.add_subcommand("schedule", "Compile a circuit file to a timed transport schedule");
  std::string sc_circuit, sc_mode, sc_stark;
  bool sc_no_assign = false, sc_track = false, sc_merge = false;
  sc->add_option("--circuit", sc_circuit, "Circuit JSON file");
  sc->add_option("--mode", sc_mode, "n4 or n6 (default from the qubit count)");
  sc->add_flag("--no-assign", sc_no_assign, "Keep qubit q on ion q");
  sc->add_flag("--merge", sc_merge, "Merge SU(4) blocks before synthesis");
  sc->add_option("--stark", sc_stark, "Per-event-kind frame offsets kind=rad[,kind=rad...]");
  sc->add_flag("--track-phases", sc_track, "Absorb the Stark offsets into the software frame");
  add_common(sc, sc_c);

  auto *df = app.add_subcommand("defaults", "Print the default machine configuration");
  std::string df_mode = "n4";
  df->add_option("--mode", df_mode, "n4 or n6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (*qv) {
      auto from = [](auto &dst) { return [&dst](const Json &v) { dst = v.get<std::decay_t<decltype(dst)>>(); }; };
      resolve(qv, qv_c,
              {{"n", from(qv_n)},
               {"circuits", from(qv_circuits)},
               {"shots", from(qv_shots)},
               {"merge", from(qv_merge)},
               {"scheduled", from(qv_scheduled)}});
      if (qv_n > kMaxSimQubits) {
        throw std::invalid_argument("n exceeds simulator capacity");
      }
      QVConfig cfg = default_qv_config(qv_n);
      if (qv_circuits) cfg.circuits = qv_circuits;
      if (qv_shots) cfg.shots = qv_shots;
      if (qv_merge) cfg.merge = true;
      if (qv_no_merge) cfg.merge = false;
      cfg.scheduled = qv_scheduled;
      cfg.seed = qv_c.seed;
      cfg.noise = qv_c.noise_model;
      QVResult r = run_qv(cfg);
      Json config = {{"command", "qv"},      {"n", cfg.n},         {"circuits", cfg.circuits},
                     {"shots", cfg.shots},   {"merge", cfg.merge}, {"scheduled", cfg.scheduled}};
      Json summary = {{"h_mean", r.h_mean}, {"sigma", r.sigma}, {"confidence", r.confidence}, {"mean_zz", r.mean_zz}};
      return emit(qv_c, "qv", config, to_json(r), summary, r.pass);
    }
    if (*rb) {
      auto from = [](auto &dst) { return [&dst](const Json &v) { dst = v.get<std::decay_t<decltype(dst)>>(); }; };
      resolve(rb, rb_c,
              {{"qubits", from(rb_qubits)},
               {"simultaneous", from(rb_simultaneous)},
               {"lengths", from(rb_lengths)},
               {"sequences", from(rb_sequences)},
               {"shots", from(rb_shots)},
               {"boot", from(rb_boot)},
               {"corr", from(rb_corr)},
               {"csv", from(rb_csv_path)}});
      RBConfig cfg;
      cfg.n = rb_qubits;
      cfg.lengths = parse_lengths(rb_lengths);
      cfg.sequences = rb_sequences;
      cfg.shots = rb_shots;
      cfg.n_boot = rb_boot;
      cfg.noise = rb_c.noise_model;
      Json config = {{"command", "rb"},           {"qubits", rb_qubits},   {"simultaneous", rb_simultaneous},
                     {"lengths", cfg.lengths},    {"sequences", rb_sequences}, {"shots", rb_shots},
                     {"boot", rb_boot},           {"corr", rb_corr},       {"bootstrap", "nonparametric"}};
      if (rb_simultaneous && rb_qubits == 2) {
        cfg.seed = derive_seed(rb_c.seed, "rb-individual", 1);
        RBResult i1 = run_rb(cfg);
        cfg.seed = derive_seed(rb_c.seed, "rb-individual", 2);
        RBResult i2 = run_rb(cfg);
        cfg.seed = derive_seed(rb_c.seed, "rb-simultaneous");
        cfg.simultaneous = true;
        cfg.p_corr = rb_corr;
        RBResult s = run_rb(cfg);
        CrosstalkResult x = crosstalk_stats(i1, i2, s);
        bool pass = true;
        for (int z = 0; z < 2; z++) {
          pass = pass && x.gamma[z] <= 2 * x.sigma_gamma[z];
        }
        for (int i = 0; i < 3; i++) {
          for (int j = 0; j < 3; j++) {
            pass = pass && x.delta[i][j] <= 2 * x.sigma_delta[i][j];
          }
        }
        if (!rb_csv_path.empty()) {
          std::ofstream(rb_csv_path) << rb_csv(s);
        }
        Json result = {{"individual_1", to_json(i1)}, {"individual_2", to_json(i2)}, {"simultaneous", to_json(s)},
                       {"crosstalk", to_json(x)}};
        Json summary = {{"gamma_1", x.gamma[0]},
                        {"gamma_2", x.gamma[1]},
                        {"max_delta_significance", x.max_delta_significance()}};
        return emit(rb_c, "rb", config, result, summary, pass);
      }
      cfg.seed = rb_c.seed;
      cfg.simultaneous = rb_simultaneous;
      cfg.p_corr = rb_corr;
      RBResult r = run_rb(cfg);
      if (!rb_csv_path.empty()) {
        std::ofstream(rb_csv_path) << rb_csv(r);
      }
      bool pass = true;
      Json summary = Json::array();
      for (const auto &f : r.fits) {
        pass = pass && !f.degenerate;
        summary.push_back({{"alpha", f.alpha}, {"sigma_alpha", f.sigma_alpha},
                           {"clifford_infidelity", clifford_infidelity(f.alpha, r.n)}});
      }
      return emit(rb_c, "rb", config, to_json(r), summary, pass);
    }
    if (*tp) {
      auto from = [](auto &dst) { return [&dst](const Json &v) { dst = v.get<std::decay_t<decltype(dst)>>(); }; };
      resolve(tp, tp_c, {{"shots", from(tp_shots)}, {"scheduled", from(tp_scheduled)}});
      TeleportResult r = teleport_suite(tp_c.noise_model, tp_shots, tp_c.seed, tp_scheduled);
      Json config = {{"command", "teleport"}, {"shots", tp_shots}, {"scheduled", tp_scheduled}};
      Json summary = {{"f1", r.f1}, {"f2", r.f2}, {"f_avg_lb", r.f_avg_lb}};
      return emit(tp_c, "teleport", config, to_json(r), summary, r.f1 + r.f2 > 1);
    }
    if (*sc) {
      auto from = [](auto &dst) { return [&dst](const Json &v) { dst = v.get<std::decay_t<decltype(dst)>>(); }; };
      resolve(sc, sc_c,
              {{"circuit", from(sc_circuit)},
               {"mode", from(sc_mode)},
               {"stark", from(sc_stark)},
               {"merge", from(sc_merge)},
               {"track-phases", from(sc_track)}});
      if (sc_circuit.empty()) {
        throw std::invalid_argument("schedule requires --circuit");
      }
      Circuit c = parse_circuit(read_file(sc_circuit));
      Mode mode = sc_mode.empty() ? (c.n_qubits <= 4 ? Mode::N4 : Mode::N6) : parse_mode(sc_mode);
      MachineConfig mc = default_config(mode);
      if (sc_c.config_file.contains("machine")) {
        mc = machine_config_from_json(sc_c.config_file["machine"], mc);
      }
      mc.noise = sc_c.noise_model;
      Circuit native = synthesize_circuit(sc_merge ? merge_two_qubit_blocks(c) : c);
      CompileOptions opts;
      opts.optimize_assignment = !sc_no_assign;
      TransportSchedule s = compile_schedule(native, mode, mc, opts);
      StarkOffsets stark = parse_stark(sc_stark);
      if (sc_track) {
        s = track_phases(s, stark);
      }
      replay(s);
      TimeBudget b = time_budget(s);
      Json counts = Json::object();
      for (int k = 0; k < 6; k++) {
        counts[event_kind_name(static_cast<EventKind>(k))] = s.count(static_cast<EventKind>(k));
      }
      Json result = {{"mode", mode_name(mode)},
                     {"zz_count", native.count_zz()},
                     {"qubit_to_ion", s.qubit_to_ion},
                     {"final_permutation", s.final_permutation},
                     {"makespan_us", s.makespan_us()},
                     {"event_counts", counts},
                     {"budget", to_json(b)},
                     {"events", schedule_events_json(s)}};
      Json config = {{"command", "schedule"}, {"circuit", sc_circuit},  {"mode", mode_name(mode)},
                     {"assign", !sc_no_assign}, {"merge", sc_merge},   {"stark", sc_stark},
                     {"track_phases", sc_track}, {"machine", to_json(mc)}};
      Json summary = {{"makespan_us", s.makespan_us()}, {"largest_category", b.largest_category()}};
      return emit(sc_c, "schedule", config, result, summary, true);
    }
    if (*df) {
      std::cout << to_json(default_config(parse_mode(df_mode))).dump(2) << "\n";
      return kExitPass;
    }
  } catch (const CircuitParseError &e) {
    std::cerr << "error: " << e.what() << " (line " << e.line() << ", column " << e.column() << ")\n";
    return kExitError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
