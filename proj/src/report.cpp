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


#include "qccd/report.hpp"

#include <sstream>
#include <stdexcept>

namespace qccd {

namespace {

const char *kZoneKinds[] = {"load", "gate", "storage", "auxiliary"};

ZoneKind zone_kind_from(const std::string &s) {
  for (int k = 0; k < 4; k++) {
    if (s == kZoneKinds[k]) {
      return static_cast<ZoneKind>(k);
    }
  }
  throw std::invalid_argument("unknown zone kind '" + s + "'");
}

EventKind event_kind_from(const std::string &s) {
  for (int k = 0; k < 6; k++) {
    if (event_kind_name(static_cast<EventKind>(k)) == s) {
      return static_cast<EventKind>(k);
    }
  }
  throw std::invalid_argument("unknown event kind '" + s + "'");
}

void require_object(const Json &j, const std::string &what) {
  if (!j.is_object()) {
    throw std::invalid_argument(what + " must be a JSON object");
  }
}

}  // namespace

Json to_json(const NoiseModel &n) {
  Json j = Json::object();
  for (const auto &k : NoiseModel::keys()) {
    j[k] = n.get(k);
  }
  return j;
}

NoiseModel noise_from_json(const Json &j, NoiseModel base) {
  require_object(j, "noise");
  for (const auto &[k, v] : j.items()) {
    if (!v.is_number()) {
      throw std::invalid_argument("noise." + k + " must be a number");
    }
    base.set(k, v.get<double>());
  }
  base.validate();
  return base;
}

NoiseModel parse_noise_overrides(const std::string &spec, NoiseModel base) {
  if (spec.empty() || spec == "default") {
    return base;
  }
  if (spec == "ideal") {
    return NoiseModel::ideal();
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("noise override '" + item + "' is not key=value");
    }
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != val.size() || val.empty()) {
      throw std::invalid_argument("noise override '" + item + "' has a non-numeric value");
    }
    base.set(key, v);
  }
  base.validate();
  return base;
}

Json to_json(const MachineConfig &cfg) {
  Json j;
  Json zones = Json::array();
  for (const auto &z : cfg.layout.zones()) {
    zones.push_back({{"name", z.name}, {"kind", kZoneKinds[static_cast<int>(z.kind)]}});
  }
  j["layout"] = {{"zones", zones}, {"intrazone_distance_um", cfg.layout.intrazone_distance_um()}};
  Json tr = Json::object();
  for (const auto &p : cfg.transport.primitives) {
    tr[transport_name(p.kind)] = {{"duration_us", p.duration_us},
                                  {"axial_heat", p.axial_heat},
                                  {"radial_heat", p.radial_heat},
                                  {"axial_is_bound", p.axial_is_bound},
                                  {"radial_is_bound", p.radial_is_bound}};
  }
  tr["overhead"] = cfg.transport.overhead;
  j["transport"] = tr;
  j["timing"] = {{"init_us", cfg.timing.init_us},
                 {"measure_hf_us", cfg.timing.measure_hf_us},
                 {"measure_lc_us", cfg.timing.measure_lc_us},
                 {"cool1_us", cfg.timing.cool_us[0]},
                 {"cool2_us", cfg.timing.cool_us[1]},
                 {"cool3_us", cfg.timing.cool_us[2]},
                 {"sq_pi2_us", cfg.timing.sq_pi2_us},
                 {"tq_gate_us", cfg.timing.tq_gate_us}};
  j["noise"] = to_json(cfg.noise);
  Json stark = Json::object();
  for (int k = 0; k < 6; k++) {
    stark[event_kind_name(static_cast<EventKind>(k))] = cfg.stark.per_kind[k];
  }
  j["stark"] = stark;
  j["cooling"] = {{"enabled", cfg.cooling.enabled}, {"heat_threshold", cfg.cooling.heat_threshold}};
  return j;
}

MachineConfig machine_config_from_json(const Json &j, MachineConfig base) {
  require_object(j, "machine config");
  for (const auto &[section, v] : j.items()) {
    if (section == "layout") {
      require_object(v, "layout");
      std::vector<Zone> zones;
      for (const auto &z : v.at("zones")) {
        zones.push_back({z.at("name").get<std::string>(), zone_kind_from(z.at("kind").get<std::string>())});
      }
      base.layout = TrapLayout(zones, v.value("intrazone_distance_um", 110.0));
    } else if (section == "transport") {
      require_object(v, "transport");
      for (const auto &[name, p] : v.items()) {
        if (name == "overhead") {
          base.transport.overhead = p.get<double>();
          continue;
        }
        bool found = false;
        for (auto &prim : base.transport.primitives) {
          if (transport_name(prim.kind) == name) {
            prim.duration_us = p.value("duration_us", prim.duration_us);
            prim.axial_heat = p.value("axial_heat", prim.axial_heat);
            prim.radial_heat = p.value("radial_heat", prim.radial_heat);
            found = true;
          }
        }
        if (!found) {
          throw std::invalid_argument("unknown transport primitive '" + name + "'");
        }
      }
    } else if (section == "timing") {
      require_object(v, "timing");
      auto &t = base.timing;
      for (const auto &[k, x] : v.items()) {
        double d = x.get<double>();
        if (!(d > 0)) {
          throw std::invalid_argument("timing." + k + " must be positive");
        }
        if (k == "init_us") t.init_us = d;
        else if (k == "measure_hf_us") t.measure_hf_us = d;
        else if (k == "measure_lc_us") t.measure_lc_us = d;
        else if (k == "cool1_us") t.cool_us[0] = d;
        else if (k == "cool2_us") t.cool_us[1] = d;
        else if (k == "cool3_us") t.cool_us[2] = d;
        else if (k == "sq_pi2_us") t.sq_pi2_us = d;
        else if (k == "tq_gate_us") t.tq_gate_us = d;
        else throw std::invalid_argument("unknown timing key '" + k + "'");
      }
    } else if (section == "noise") {
      base.noise = noise_from_json(v, base.noise);
    } else if (section == "stark") {
      require_object(v, "stark");
      for (const auto &[k, x] : v.items()) {
        base.stark[event_kind_from(k)] = x.get<double>();
      }
    } else if (section == "cooling") {
      base.cooling.enabled = v.value("enabled", base.cooling.enabled);
      base.cooling.heat_threshold = v.value("heat_threshold", base.cooling.heat_threshold);
    } else {
      throw std::invalid_argument("unknown machine config section '" + section + "'");
    }
  }
  return base;
}

Json to_json(const DecayFit &f) {
  return {{"A", f.A}, {"alpha", f.alpha}, {"B", f.B}, {"sigma_alpha", f.sigma_alpha}, {"degenerate", f.degenerate}};
}

Json to_json(const RBResult &r) {
  Json j;
  j["n"] = r.n;
  j["registers"] = r.registers;
  j["lengths"] = r.lengths;
  j["sequences"] = r.sequences;
  j["shots"] = r.shots;
  Json regs = Json::array();
  for (std::size_t k = 0; k < r.fits.size(); k++) {
    Json f = to_json(r.fits[k]);
    f["survival"] = r.survival[k];
    f["clifford_infidelity"] = clifford_infidelity(r.fits[k].alpha, r.n);
    if (r.n == 2) {
      f["infidelity_per_zz"] = clifford_infidelity(r.fits[k].alpha, r.n) / 1.5;
    }
    regs.push_back(f);
  }
  j["register_fits"] = regs;
  Json obs = Json::array();
  for (const auto &o : r.observables) {
    Json f = to_json(o.fit);
    f["observable"] = o.label;
    f["survival"] = o.survival;
    obs.push_back(f);
  }
  j["observables"] = obs;
  j["bootstrap"] = "nonparametric";
  return j;
}

Json to_json(const CrosstalkResult &x) {
  Json j;
  for (int z = 0; z < 2; z++) {
    std::string s = std::to_string(z + 1);
    j["alpha_" + s] = x.alpha[z];
    j["alpha_" + s + "_both"] = x.alpha_both[z];
    j["gamma_" + s] = x.gamma[z];
    j["sigma_gamma_" + s] = x.sigma_gamma[z];
    j["beta_" + s] = std::vector<double>(x.beta[z], x.beta[z] + 3);
    j["sigma_beta_" + s] = std::vector<double>(x.sigma_beta[z], x.sigma_beta[z] + 3);
  }
  Json mu = Json::array(), smu = Json::array(), d = Json::array(), sd = Json::array();
  for (int i = 0; i < 3; i++) {
    mu.push_back(std::vector<double>(x.mu[i], x.mu[i] + 3));
    smu.push_back(std::vector<double>(x.sigma_mu[i], x.sigma_mu[i] + 3));
    d.push_back(std::vector<double>(x.delta[i], x.delta[i] + 3));
    sd.push_back(std::vector<double>(x.sigma_delta[i], x.sigma_delta[i] + 3));
  }
  j["mu"] = mu;
  j["sigma_mu"] = smu;
  j["delta"] = d;
  j["sigma_delta"] = sd;
  j["max_delta_significance"] = x.max_delta_significance();
  return j;
}

Json to_json(const TeleportResult &t) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < t.inputs.size(); k++) {
    rows.push_back({{"input", t.inputs[k].label()},
                    {"expected", teleport_expected(t.inputs[k]).label()},
                    {"success", t.success[k]}});
  }
  return {{"truth_table", rows},        {"f1", t.f1},
          {"f2", t.f2},                 {"f_avg_lb", t.f_avg_lb},
          {"construction_error", t.construction_error},
          {"shots", t.shots},           {"scheduled", t.scheduled}};
}

Json to_json(const QVResult &q) {
  Json recs = Json::array();
  for (const auto &r : q.records) {
    recs.push_back({{"seed", r.seed},
                    {"blocks", r.blocks},
                    {"zz_count", r.zz_count},
                    {"ideal_heavy_prob", r.ideal_heavy_prob},
                    {"heavy_shots", r.heavy_shots},
                    {"shots", r.shots},
                    {"heavy_fraction", r.heavy_fraction}});
  }
  return {{"n", q.n},
          {"n_circuits", q.n_circuits},
          {"n_shots", q.n_shots},
          {"h_mean", q.h_mean},
          {"sigma", q.sigma},
          {"pass", q.pass},
          {"confidence", q.confidence},
          {"ideal_heavy_mean", q.ideal_heavy_mean},
          {"mean_zz", q.mean_zz},
          {"records", recs}};
}

Json to_json(const TimeBudget &b) {
  return {{"cooling_us", b.cooling_us},
          {"transport_us", b.transport_us},
          {"tq_gates_us", b.tq_gates_us},
          {"sq_gates_us", b.sq_gates_us},
          {"measure_init_us", b.measure_init_us},
          {"total_us", b.total_us},
          {"largest_category", b.largest_category()}};
}

Json schedule_events_json(const TransportSchedule &s) {
  Json events = Json::array();
  const auto &lay = s.config.layout;
  for (const auto &e : s.events) {
    Json zones = Json::array();
    for (std::size_t z : e.zones) {
      zones.push_back(lay.zones().at(z).name);
    }
    Json operands = {{"qubits", e.qubits}, {"site", lay.site_name(e.site)}};
    if (e.transport) {
      operands["transport"] = transport_name(e.transport->kind);
      if (e.transport->kind == TransportKind::INTRAZONE_SHIFT || e.transport->kind == TransportKind::INTERZONE_SHIFT) {
        operands["from"] = lay.site_name(e.transport->site);
        operands["to"] = lay.site_name(e.transport->target);
      }
    }
    if (e.kind == EventKind::COOLING) {
      operands["stage"] = e.cooling_stage;
    }
    if (e.kind == EventKind::MEASURE) {
      operands["mid_circuit"] = e.mid_circuit;
    }
    if (e.op) {
      operands["gate"] = op_name(*e.op);
    }
    events.push_back({{"start_us", e.start_us},
                      {"dur_us", e.duration_us},
                      {"kind", event_kind_name(e.kind)},
                      {"zone", zones},
                      {"operands", operands},
                      {"label", e.label}});
  }
  return events;
}

Json to_json(const Distribution &d) {
  Json probs = Json::object();
  for (const auto &[k, v] : d.probs) {
    probs[k] = v;
  }
  return {{"keys", d.keys}, {"probs", probs}};
}

std::string rb_csv(const RBResult &r) {
  std::ostringstream os;
  os.precision(17);
  os << "length";
  for (std::size_t k = 0; k < r.fits.size(); k++) {
    os << ",register" << k;
  }
  for (const auto &o : r.observables) {
    os << "," << o.label;
  }
  os << "\n";
  for (std::size_t l = 0; l < r.lengths.size(); l++) {
    os << r.lengths[l];
    for (const auto &s : r.survival) {
      os << "," << s[l];
    }
    for (const auto &o : r.observables) {
      os << "," << o.survival[l];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace qccd
