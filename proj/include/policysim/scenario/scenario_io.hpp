// Copyright 2026 The policysim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>

#include "policysim/scenario/scenario.hpp"

namespace policysim {

/// Scenario directory layout:
///   nodes.csv          node_id,x_m,y_m                                  (optional)
///   network.csv        link_id,from,to,length_m,speed_mps,capacity_vph,modes
///   vehicle_types.csv  id,fuel_type,joules_per_meter,cost_per_hour,seats,standing
///   routes.csv         route_id,agency_id,vehicle_type_id,stops,periods
///                      stops   = node:dwell_s;node:dwell_s;...
///                      periods = start-end-headway;...
///   population.csv     person_id,age,household_id,income_usd,home_node
///   plans.csv          person_id,seq,activity,node,end_time   (end_time blank on the last row)
///   config.txt         key=value
Scenario load_scenario(const std::filesystem::path& dir);
void save_scenario(const Scenario& s, const std::filesystem::path& dir);

}  // namespace policysim
