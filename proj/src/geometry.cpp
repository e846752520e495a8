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

#include "sibeam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sibeam
{

namespace
{

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
constexpr double kLatticeTolDeg = 1e-9;

double normalize_azimuth(double az_deg)
{
    double a = std::fmod(az_deg + 180.0, 360.0);
    if (a < 0.0)
        a += 360.0;
    return a - 180.0;
}

// Nearest entry of a sorted vector; used for off-lattice error messages.
double nearest_entry(const std::vector<double> &values, double x)
{
    auto it = std::lower_bound(values.begin(), values.end(), x);
    if (it == values.end())
        return values.back();
    if (it == values.begin())
        return values.front();
    const double above = *it;
    const double below = *(it - 1);
    return (x - below) <= (above - x) ? below : above;
}

// Index of x in a sorted uniform lattice, or -1 when off-lattice.
long lattice_index(const std::vector<double> &values, double x)
{
    auto it = std::lower_bound(values.begin(), values.end(), x - kLatticeTolDeg);
    if (it == values.end())
        return -1;
    if (std::abs(*it - x) > kLatticeTolDeg)
        return -1;
    return static_cast<long>(it - values.begin());
}

} // namespace

Direction::Direction(double az_deg, double el_deg)
    : azimuth_deg(normalize_azimuth(az_deg)), elevation_deg(el_deg)
{
    if (!std::isfinite(az_deg) || !std::isfinite(el_deg))
        throw ConfigError("direction angles must be finite");
    if (el_deg < -90.0 || el_deg > 90.0)
    {
        std::ostringstream msg;
        msg << "elevation " << el_deg << " deg outside [-90, 90]";
        throw ConfigError(msg.str());
    }
}

double angle_diff_deg(double alpha_deg, double beta_deg)
{
    const double zeta = std::fmod(std::abs(alpha_deg - beta_deg), 360.0);
    return zeta <= 180.0 ? zeta : 360.0 - zeta;
}

Eigen::Vector3d direction_unit_vector(const Direction &d)
{
    const double az = d.azimuth_deg * kDegToRad;
    const double el = d.elevation_deg * kDegToRad;
    return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

double UpaConfig::aperture_m() const
{
    const double dr = static_cast<double>(rows - 1);
    const double dc = static_cast<double>(cols - 1);
    return element_spacing_m() * std::sqrt(dr * dr + dc * dc);
}

void UpaConfig::validate() const
{
    if (rows < 1 || cols < 1)
        throw ConfigError("array must have at least one row and one column");
    if (!(element_spacing_wavelengths > 0.0))
        throw ConfigError("element spacing must be positive");
    if (!(carrier_hz > 0.0))
        throw ConfigError("carrier frequency must be positive");
}

std::vector<Eigen::Vector3d> element_positions(const UpaConfig &cfg)
{
    cfg.validate();
    const double d = cfg.element_spacing_m();
    const double y0 = 0.5 * static_cast<double>(cfg.cols - 1);
    const double z0 = 0.5 * static_cast<double>(cfg.rows - 1);

    std::vector<Eigen::Vector3d> positions;
    positions.reserve(cfg.element_count());
    for (std::size_t r = 0; r < cfg.rows; r++)
        for (std::size_t c = 0; c < cfg.cols; c++)
            positions.emplace_back(0.0, (static_cast<double>(c) - y0) * d,
                                   (static_cast<double>(r) - z0) * d);
    return positions;
}

double far_field_distance_m(const UpaConfig &cfg)
{
    cfg.validate();
    const double D = cfg.aperture_m();
    return 2.0 * D * D / cfg.wavelength_m();
}

double nearfield_boundary_m(const UpaConfig &cfg)
{
    cfg.validate();
    const double D = cfg.aperture_m();
    return 0.62 * std::sqrt(D * D * D / cfg.wavelength_m());
}

Eigen::Matrix3d PanelPose::rotation() const
{
    if (std::abs(pitch_deg) >= 90.0 - 1e-9)
        throw ConfigError("panel pitch must stay within (-90, 90) degrees");
    const Eigen::Vector3d x = direction_unit_vector(Direction(yaw_deg, pitch_deg));
    // Local +y stays horizontal: y = z_global x x, normalized.
    Eigen::Vector3d y = Eigen::Vector3d::UnitZ().cross(x);
    y.normalize();
    const Eigen::Vector3d z = x.cross(y);
    Eigen::Matrix3d R;
    R.col(0) = x;
    R.col(1) = y;
    R.col(2) = z;
    return R;
}

Eigen::Vector3d PanelPose::boresight() const
{
    return direction_unit_vector(Direction(yaw_deg, pitch_deg));
}

PlatformGeometry PlatformGeometry::triangular(double separation_m, double panel_angle_deg)
{
    PlatformGeometry g;
    g.separation_m = separation_m;
    g.panel_angle_deg = panel_angle_deg;
    g.tx.center = Eigen::Vector3d(0.0, -0.5 * separation_m, 0.0);
    g.tx.yaw_deg = -panel_angle_deg;
    g.rx.center = Eigen::Vector3d(0.0, 0.5 * separation_m, 0.0);
    g.rx.yaw_deg = panel_angle_deg;
    return g;
}

PlatformGeometry PlatformGeometry::coaxial(double separation_m)
{
    PlatformGeometry g;
    g.separation_m = separation_m;
    g.panel_angle_deg = 0.0;
    g.tx.center = Eigen::Vector3d(-0.5 * separation_m, 0.0, 0.0);
    g.rx.center = Eigen::Vector3d(0.5 * separation_m, 0.0, 0.0);
    return g;
}

void PlatformGeometry::validate() const
{
    if (!(separation_m > 0.0))
        throw ConfigError("panel separation must be positive");
    const double dist = (tx.center - rx.center).norm();
    if (std::abs(dist - separation_m) > 1e-9)
    {
        std::ostringstream msg;
        msg << "panel centers are " << dist << " m apart but separation_m is "
            << separation_m;
        throw ConfigError(msg.str());
    }
    if (std::abs(tx.boresight().norm() - 1.0) > 1e-12 ||
        std::abs(rx.boresight().norm() - 1.0) > 1e-12)
        throw ConfigError("panel boresight vectors must be unit norm");
}

DirectionGrid::DirectionGrid(std::vector<double> azimuths_deg,
                             std::vector<double> elevations_deg)
    : azimuths_(std::move(azimuths_deg)), elevations_(std::move(elevations_deg))
{
    auto check_axis = [](const std::vector<double> &v, const char *name) {
        if (v.empty())
            throw ConfigError(std::string(name) + " axis is empty");
        for (double x : v)
            if (!std::isfinite(x))
                throw ConfigError(std::string(name) + " axis has non-finite entry");
        if (v.size() < 2)
            return;
        const double step = v[1] - v[0];
        if (!(step > 0.0))
            throw ConfigError(std::string(name) + " axis must be strictly increasing");
        for (std::size_t i = 1; i < v.size(); i++)
        {
            const double gap = v[i] - v[i - 1];
            if (std::abs(gap - step) > kLatticeTolDeg)
                throw ConfigError(std::string(name) + " axis is not uniformly spaced");
        }
    };
    check_axis(azimuths_, "azimuth");
    check_axis(elevations_, "elevation");
}

std::size_t DirectionGrid::flat_index(std::size_t az_index, std::size_t el_index) const
{
    return az_index * elevations_.size() + el_index;
}

Direction DirectionGrid::at(std::size_t flat) const
{
    return Direction(azimuths_[az_index_of(flat)], elevations_[el_index_of(flat)]);
}

std::size_t DirectionGrid::index_of(const Direction &d) const
{
    const long ai = lattice_index(azimuths_, d.azimuth_deg);
    const long ei = lattice_index(elevations_, d.elevation_deg);
    if (ai < 0 || ei < 0)
    {
        std::ostringstream msg;
        msg << "direction (" << d.azimuth_deg << ", " << d.elevation_deg
            << ") is not on the lattice; nearest lattice point is ("
            << nearest_entry(azimuths_, d.azimuth_deg) << ", "
            << nearest_entry(elevations_, d.elevation_deg) << ")";
        throw DataError(msg.str());
    }
    return flat_index(static_cast<std::size_t>(ai), static_cast<std::size_t>(ei));
}

bool DirectionGrid::contains(const Direction &d) const
{
    return lattice_index(azimuths_, d.azimuth_deg) >= 0 &&
           lattice_index(elevations_, d.elevation_deg) >= 0;
}

bool DirectionGrid::operator==(const DirectionGrid &other) const
{
    return azimuths_ == other.azimuths_ && elevations_ == other.elevations_;
}

DirectionGrid build_measurement_grid(double az_min_deg, double az_max_deg,
                                     double el_min_deg, double el_max_deg,
                                     double step_deg)
{
    if (!(step_deg > 0.0))
        throw ConfigError("grid step must be positive");
    if (az_max_deg < az_min_deg || el_max_deg < el_min_deg)
        throw ConfigError("grid range maximum must be >= minimum");

    auto axis = [step_deg](double lo, double hi, const char *name) {
        const double span = hi - lo;
        const double steps = span / step_deg;
        const double rounded = std::round(steps);
        if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps)))
        {
            std::ostringstream msg;
            msg << name << " range " << lo << ".." << hi << " is not divisible by step "
                << step_deg;
            throw ConfigError(msg.str());
        }
        const std::size_t n = static_cast<std::size_t>(rounded) + 1;
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; i++)
            values[i] = lo + static_cast<double>(i) * step_deg;
        if (n > 1)
            values.back() = hi;
        return values;
    };

    return DirectionGrid(axis(az_min_deg, az_max_deg, "azimuth"),
                         axis(el_min_deg, el_max_deg, "elevation"));
}

DirectionGrid default_measurement_grid()
{
    return build_measurement_grid(-60.0, 60.0, -10.0, 10.0, 1.0);
}

} // namespace sibeam
