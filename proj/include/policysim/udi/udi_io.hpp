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

#include "policysim/udi/decision.hpp"

namespace policysim {

/// Reads the four UDI tables from `dir`:
///   FrequencyAdjustment.csv  route_id,start_time,end_time,headway_secs,exact_times
///   VehicleFleetMix.csv      route_id,vehicle_type_id
///   MassTransitFares.csv     route_id,age_min,age_max,fare
///   ModeIncentives.csv       mode,age_min,age_max,income_min,income_max,amount
/// All four files must exist; a header-only (or empty) file is an empty table.
/// Only syntax is checked here; business rules live in validate().
DecisionVector load_udi(const std::filesystem::path& dir);

void save_udi(const DecisionVector& d, const std::filesystem::path& dir);

}  // namespace policysim
