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


#ifndef QCCD_REPORT_HPP
#define QCCD_REPORT_HPP

#include <string>

#include <json.hpp>

#include "qccd/machine.hpp"
#include "qccd/qv.hpp"
#include "qccd/rb.hpp"
#include "qccd/scheduler.hpp"
#include "qccd/teleport.hpp"

namespace qccd {

using Json = nlohmann::json;

Json to_json(const NoiseModel &n);
/** Overlays the given keys on `base`; unknown keys throw std::invalid_argument. */
NoiseModel noise_from_json(const Json &j, NoiseModel base = {});
/** "default", "ideal", or a comma-separated k=v list applied to `base`. */
NoiseModel parse_noise_overrides(const std::string &spec, NoiseModel base = {});

Json to_json(const MachineConfig &cfg);
/**
 * Overlays "layout" (list of {name, kind}), "transport" (per primitive
 * duration/heat and "overhead"), "timing", "noise" and "stark" sections on
 * `base`.
 */
MachineConfig machine_config_from_json(const Json &j, MachineConfig base);

Json to_json(const DecayFit &f);
Json to_json(const RBResult &r);
Json to_json(const CrosstalkResult &x);
Json to_json(const TeleportResult &t);
Json to_json(const QVResult &q);
Json to_json(const TimeBudget &b);
Json schedule_events_json(const TransportSchedule &s);
Json to_json(const Distribution &d);

/** length,<register fits...>,<observable survivals...> rows for plotting. */
std::string rb_csv(const RBResult &r);

}  // namespace qccd

#endif
