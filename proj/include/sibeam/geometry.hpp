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
#include <cstddef>
#include <vector>

#include "sibeam/errors.hpp"

namespace sibeam
{

inline constexpr double kSpeedOfLightMps = 299792458.0;

// Steering direction in the azimuth-elevation convention used throughout:
// broadside is (0, 0) along the local +x axis, azimuth increases toward +y,
// elevation increases toward +z. Azimuth is normalized to [-180, 180),
// elevation must lie in [-90, 90].
struct Direction
{
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;

    Direction() = default;
    Direction(double az_deg, double el_deg);
};

// Absolute angular difference in degrees, folded into [0, 180].
double angle_diff_deg(double alpha_deg, double beta_deg);

// Unit vector [cos(el)cos(az), cos(el)sin(az), sin(el)].
Eigen::Vector3d direction_unit_vector(const Direction &d);

// Uniform planar array on the local y-z plane, boresight along local +x.
struct UpaConfig
{
    std::size_t rows = 16;
    std::size_t cols = 16;
    double element_spacing_wavelengths = 0.5;
    double carrier_hz = 28e9;

    std::size_t element_count() const { return rows * cols; }
    double wavelength_m() const { return kSpeedOfLightMps / carrier_hz; }
    double element_spacing_m() const { return element_spacing_wavelengths * wavelength_m(); }

    // Diagonal of the rectangular element footprint; the aperture used by the
    // near/far-field rules of thumb.
    double aperture_m() const;

    void validate() const; // throws ConfigError
};

// Element positions in the array-local frame (x = 0 plane), centered on the
// origin, row-major order (row index moves along z, column index along y).
std::vector<Eigen::Vector3d> element_positions(const UpaConfig &cfg);

// Far-field distance 2 D^2 / lambda.
double far_field_distance_m(const UpaConfig &cfg);

// Reactive/radiating near-field boundary 0.62 sqrt(D^3 / lambda).
double nearfield_boundary_m(const UpaConfig &cfg);

// Rigid pose of one panel. The local frame has +x along the boresight,
// +y in the direction of increasing azimuth and +z increasing elevation.
// Roll is fixed at zero (local +y stays horizontal).
struct PanelPose
{
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    double yaw_deg = 0.0;   // boresight azimuth in the global frame
    double pitch_deg = 0.0; // boresight elevation in the global frame

    Eigen::Matrix3d rotation() const; // columns are the local x/y/z axes
    Eigen::Vector3d boresight() const;
};

struct PlatformGeometry
{
    PanelPose tx;
    PanelPose rx;
    double panel_angle_deg = 60.0;
    double separation_m = 0.30;

    // Panels on adjacent sides of an equilateral platform: boresights yawed
    // +/- panel_angle_deg off the platform bisector, centers separation_m
    // apart across the bisector. This is the default arrangement.
    static PlatformGeometry triangular(double separation_m = 0.30,
                                       double panel_angle_deg = 60.0);

    // Panels stacked along a shared boresight axis, separation_m apart.
    // Element-pair distances are symmetric under tx/rx exchange in this
    // arrangement, so simulated INR grids over identical direction lattices
    // are exactly transpose-symmetric. Used by the symmetry checks.
    static PlatformGeometry coaxial(double separation_m = 0.30);

    void validate() const; // throws ConfigError
};

// Uniform, strictly increasing lattice of steering directions. Flat indexing
// is azimuth-major: flat = az_index * elevation_count() + el_index.
class DirectionGrid
{
  public:
    DirectionGrid(std::vector<double> azimuths_deg, std::vector<double> elevations_deg);

    std::size_t azimuth_count() const { return azimuths_.size(); }
    std::size_t elevation_count() const { return elevations_.size(); }
    std::size_t size() const { return azimuths_.size() * elevations_.size(); }

    const std::vector<double> &azimuths_deg() const { return azimuths_; }
    const std::vector<double> &elevations_deg() const { return elevations_; }

    std::size_t flat_index(std::size_t az_index, std::size_t el_index) const;
    std::size_t az_index_of(std::size_t flat) const { return flat / elevations_.size(); }
    std::size_t el_index_of(std::size_t flat) const { return flat % elevations_.size(); }
    Direction at(std::size_t flat) const;

    // Flat index of a direction on the lattice; throws DataError naming the
    // nearest lattice point when the direction is off-lattice.
    std::size_t index_of(const Direction &d) const;
    bool contains(const Direction &d) const;

    bool operator==(const DirectionGrid &other) const;

  private:
    std::vector<double> azimuths_;
    std::vector<double> elevations_;
};

// Inclusive lattice from az_min..az_max x el_min..el_max in steps of
// step_deg. Throws ConfigError when a range is not divisible by the step.
DirectionGrid build_measurement_grid(double az_min_deg, double az_max_deg,
                                     double el_min_deg, double el_max_deg,
                                     double step_deg);

// The dense lattice used throughout: -60..60 azimuth x -10..10 elevation in
// 1 degree steps, 121 x 21 = 2541 directions.
DirectionGrid default_measurement_grid();

} // namespace sibeam
