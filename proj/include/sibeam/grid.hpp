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

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "sibeam/channel.hpp"
#include "sibeam/geometry.hpp"
#include "sibeam/linkmath.hpp"

namespace sibeam
{

// Dense 4-D tensor of INR values (dB) indexed [tx_az, tx_el, rx_az, rx_el].
// The flat pair index (i, j) = (tx flat, rx flat) maps to offset
// i * rx_grid.size() + j, so a "row" holds one transmit beam's receive map.
class InrGrid
{
  public:
    InrGrid(DirectionGrid tx_grid, DirectionGrid rx_grid, std::vector<double> values_db);

    const DirectionGrid &tx_grid() const { return tx_grid_; }
    const DirectionGrid &rx_grid() const { return rx_grid_; }
    std::size_t pair_count() const { return values_db_.size(); }

    double value(std::size_t tx_flat, std::size_t rx_flat) const
    {
        return values_db_[tx_flat * rx_grid_.size() + rx_flat];
    }

    const std::vector<double> &values_db() const { return values_db_; }

  private:
    DirectionGrid tx_grid_;
    DirectionGrid rx_grid_;
    std::vector<double> values_db_;
};

// Everything needed to synthesize an INR grid from the spherical-wave model.
// calibration_db = NaN requests auto-calibration so the broadside-broadside
// pair lands on broadside_inr_db under the default link budget. Calibration
// is a rig property, so run-specific budget changes shift the grid.
struct SimulationSetup
{
    UpaConfig tx_array;
    UpaConfig rx_array;
    PlatformGeometry geometry = PlatformGeometry::triangular();
    LinkBudget budget;
    double calibration_db = std::nan("");
    double broadside_inr_db = 40.0;

    void validate() const;
};

// Conjugate beams -> coupling -> isolation -> P_SI -> INR, for every
// direction pair. Deterministic for any thread count. calibration_out, when
// given, receives the channel calibration actually applied.
InrGrid simulate_grid(const SimulationSetup &setup, const DirectionGrid &tx_grid,
                      const DirectionGrid &rx_grid, unsigned threads = 0,
                      double *calibration_out = nullptr);

// Canonical interchange format: CSV with header
//   tx_az_deg,tx_el_deg,rx_az_deg,rx_el_deg,inr_db
// one row per pair, any row order. Lines starting with '#' are comments.
// Loader errors carry line numbers for malformed rows, duplicates, and
// missing pairs. metadata_comment, when nonempty, is written verbatim ahead
// of the header (each line should already carry its '#').
InrGrid load_grid_csv(const std::filesystem::path &path);
void save_grid_csv(const InrGrid &grid, const std::filesystem::path &path,
                   const std::string &metadata_comment = "");

// Fast binary cache: little-endian float64 tensor plus a JSON sidecar with
// the direction grids. CSV remains the canonical format.
void save_grid_binary(const InrGrid &grid, const std::filesystem::path &data_path,
                      const std::filesystem::path &sidecar_path);
InrGrid load_grid_binary(const std::filesystem::path &data_path,
                         const std::filesystem::path &sidecar_path);

// Receive-side INR map for one transmit beam (rx flat order), and the
// transmit-side counterpart. Off-lattice directions raise DataError naming
// the nearest lattice point.
std::vector<double> slice_for_tx(const InrGrid &grid, const Direction &tx_dir);
std::vector<double> slice_for_rx(const InrGrid &grid, const Direction &rx_dir);

} // namespace sibeam
