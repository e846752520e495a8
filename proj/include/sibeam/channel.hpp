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

#include <Eigen/Dense>
#include <complex>
#include <filesystem>

#include "sibeam/beamforming.hpp"
#include "sibeam/geometry.hpp"
#include "sibeam/linkmath.hpp"

namespace sibeam
{

// Complex coupling matrix between tx elements (columns) and rx elements
// (rows). Entries are normalized to the center-to-center distance;
// calibration_db is a uniform scalar gain mapping the normalized coupling
// onto absolute isolation.
class ChannelMatrix
{
  public:
    ChannelMatrix(Eigen::MatrixXcd entries, double calibration_db = 0.0);

    const Eigen::MatrixXcd &entries() const { return entries_; }
    std::size_t rx_elements() const { return static_cast<std::size_t>(entries_.rows()); }
    std::size_t tx_elements() const { return static_cast<std::size_t>(entries_.cols()); }

    double calibration_db() const { return calibration_db_; }
    void set_calibration_db(double db) { calibration_db_ = db; }

  private:
    Eigen::MatrixXcd entries_;
    double calibration_db_ = 0.0;
};

// Spherical-wave near-field channel: entry (m, n) = (r0 / r_mn) exp(-j 2 pi
// r_mn / lambda) with r_mn the exact distance between rx element m and tx
// element n in the global frame and r0 the center-to-center distance.
// Throws ConfigError on degenerate geometry (coincident elements) or when
// the two arrays disagree on the carrier.
ChannelMatrix spherical_wave_channel(const UpaConfig &tx, const UpaConfig &rx,
                                     const PlatformGeometry &geom,
                                     double calibration_db = 0.0);

// Beamformed coupling w^T H f (plain transpose; the weights are already
// conjugated), including the calibration gain. Throws ConfigError on
// dimension mismatch.
std::complex<double> coupling_gain(const BeamWeights &w, const ChannelMatrix &H,
                                   const BeamWeights &f);

// Sets the channel calibration so the broadside-broadside beam pair lands on
// target_inr_db under the given budget. Returns the calibration in dB.
double calibrate_to_broadside_inr(ChannelMatrix &H, const UpaConfig &tx,
                                  const UpaConfig &rx, const LinkBudget &budget,
                                  double target_inr_db = 40.0);

// Binary channel dump: little-endian complex64 entries, rx-major (row-major),
// with a JSON sidecar carrying dimensions and calibration.
void save_channel(const ChannelMatrix &H, const std::filesystem::path &data_path,
                  const std::filesystem::path &sidecar_path);
ChannelMatrix load_channel(const std::filesystem::path &data_path,
                           const std::filesystem::path &sidecar_path);

} // namespace sibeam
