// SPDX-License-Identifier: Apache-2.0
//
// sibeam - beamformed self-interference modeling and analysis for
// multi-panel mmWave full-duplex systems
// Copyright (C) 2026 sibeam contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <filesystem>

#include <json.hpp>

#include "sibeam/grid.hpp"

namespace sibeam
{

// A full simulation run: array/platform/budget setup plus the two direction
// lattices. Defaults reproduce the standard measurement configuration.
struct RunSetup
{
    SimulationSetup sim;
    DirectionGrid tx_grid = default_measurement_grid();
    DirectionGrid rx_grid = default_measurement_grid();
};

// JSON keys: rows, cols, spacing_wl, carrier_hz, separation_m,
// panel_angle_deg, arrangement ("triangular" | "coaxial"), ptx_dbm,
// pnoise_dbm, eirp_dbm, calibration_db, broadside_inr_db, tx_grid/rx_grid
// ({az_min, az_max, el_min, el_max, step}). All keys optional; unknown keys
// are rejected. Throws ConfigError.
RunSetup run_setup_from_json(const nlohmann::json &j);
RunSetup load_simulation_config(const std::filesystem::path &path);

// The setup serialized back out (used for run metadata).
nlohmann::json run_setup_to_json(const RunSetup &setup);

} // namespace sibeam
