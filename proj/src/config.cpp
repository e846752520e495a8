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

#include "sibeam/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace sibeam
{

namespace
{

const std::set<std::string> kTopLevelKeys = {
    "rows",         "cols",        "spacing_wl",      "carrier_hz",
    "separation_m", "panel_angle_deg", "arrangement", "ptx_dbm",
    "pnoise_dbm",   "eirp_dbm",    "calibration_db",  "broadside_inr_db",
    "tx_grid",      "rx_grid"};

DirectionGrid grid_from_json(const nlohmann::json &j, const char *name)
{
    for (const auto &[key, unused] : j.items())
        if (key != "az_min" && key != "az_max" && key != "el_min" && key != "el_max" &&
            key != "step")
            throw ConfigError(std::string(name) + ": unknown key '" + key + "'");
    return build_measurement_grid(j.value("az_min", -60.0), j.value("az_max", 60.0),
                                  j.value("el_min", -10.0), j.value("el_max", 10.0),
                                  j.value("step", 1.0));
}

} // namespace

RunSetup run_setup_from_json(const nlohmann::json &j)
{
    if (!j.is_object())
        throw ConfigError("configuration must be a JSON object");
    for (const auto &[key, unused] : j.items())
        if (!kTopLevelKeys.count(key))
            throw ConfigError("unknown configuration key '" + key + "'");

    RunSetup setup;
    UpaConfig array;
    array.rows = j.value("rows", std::size_t{16});
    array.cols = j.value("cols", std::size_t{16});
    array.element_spacing_wavelengths = j.value("spacing_wl", 0.5);
    array.carrier_hz = j.value("carrier_hz", 28e9);
    array.validate();
    setup.sim.tx_array = array;
    setup.sim.rx_array = array;

    const double separation = j.value("separation_m", 0.30);
    const double panel_angle = j.value("panel_angle_deg", 60.0);
    const std::string arrangement = j.value("arrangement", std::string("triangular"));
    if (arrangement == "triangular")
        setup.sim.geometry = PlatformGeometry::triangular(separation, panel_angle);
    else if (arrangement == "coaxial")
        setup.sim.geometry = PlatformGeometry::coaxial(separation);
    else
        throw ConfigError("arrangement must be 'triangular' or 'coaxial', got '" +
                          arrangement + "'");

    setup.sim.budget.ptx_dbm = j.value("ptx_dbm", -15.0);
    setup.sim.budget.pnoise_dbm = j.value("pnoise_dbm", -68.0);
    setup.sim.budget.eirp_dbm = j.value("eirp_dbm", 60.0);
    setup.sim.calibration_db = j.value("calibration_db", std::nan(""));
    setup.sim.broadside_inr_db = j.value("broadside_inr_db", 40.0);

    if (j.contains("tx_grid"))
        setup.tx_grid = grid_from_json(j.at("tx_grid"), "tx_grid");
    if (j.contains("rx_grid"))
        setup.rx_grid = grid_from_json(j.at("rx_grid"), "rx_grid");

    setup.sim.validate();
    return setup;
}

RunSetup load_simulation_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open configuration file " + path.string());
    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError("malformed configuration JSON in " + path.string() + ": " +
                          e.what());
    }
    return run_setup_from_json(j);
}

nlohmann::json run_setup_to_json(const RunSetup &setup)
{
    auto grid_json = [](const DirectionGrid &g) {
        nlohmann::json j = {{"az_min", g.azimuths_deg().front()},
                            {"az_max", g.azimuths_deg().back()},
                            {"el_min", g.elevations_deg().front()},
                            {"el_max", g.elevations_deg().back()}};
        j["step"] = g.azimuth_count() > 1
                        ? g.azimuths_deg()[1] - g.azimuths_deg()[0]
                        : (g.elevation_count() > 1
                               ? g.elevations_deg()[1] - g.elevations_deg()[0]
                               : 1.0);
        return j;
    };

    const bool coaxial = setup.sim.geometry.tx.yaw_deg == 0.0 &&
                         setup.sim.geometry.rx.yaw_deg == 0.0;
    nlohmann::json j = {
        {"rows", setup.sim.tx_array.rows},
        {"cols", setup.sim.tx_array.cols},
        {"spacing_wl", setup.sim.tx_array.element_spacing_wavelengths},
        {"carrier_hz", setup.sim.tx_array.carrier_hz},
        {"separation_m", setup.sim.geometry.separation_m},
        {"panel_angle_deg", setup.sim.geometry.panel_angle_deg},
        {"arrangement", coaxial ? "coaxial" : "triangular"},
        {"ptx_dbm", setup.sim.budget.ptx_dbm},
        {"pnoise_dbm", setup.sim.budget.pnoise_dbm},
        {"eirp_dbm", setup.sim.budget.eirp_dbm},
        {"broadside_inr_db", setup.sim.broadside_inr_db},
        {"tx_grid", grid_json(setup.tx_grid)},
        {"rx_grid", grid_json(setup.rx_grid)},
    };
    if (!std::isnan(setup.sim.calibration_db))
        j["calibration_db"] = setup.sim.calibration_db;
    return j;
}

} // namespace sibeam
