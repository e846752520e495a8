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

#include <doctest.h>

#include <random>

#include "sibeam/geometry.hpp"

using namespace sibeam;

TEST_CASE("angle_diff handles wraparound and identity")
{
    CHECK(angle_diff_deg(350.0, 10.0) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(angle_diff_deg(-60.0, 60.0) == doctest::Approx(120.0).epsilon(1e-12));
    for (double a : {-723.4, -180.0, 0.0, 13.7, 359.99})
        CHECK(angle_diff_deg(a, a) == 0.0);
    CHECK(angle_diff_deg(0.0, 360.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(angle_diff_deg(12.5, 12.5 + 3 * 360.0) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("angle_diff is symmetric and bounded")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-1000.0, 1000.0);
    for (int i = 0; i < 2000; i++)
    {
        const double a = dist(rng);
        const double b = dist(rng);
        const double d = angle_diff_deg(a, b);
        CHECK(d == angle_diff_deg(b, a));
        CHECK(d >= 0.0);
        CHECK(d <= 180.0);
    }
}

TEST_CASE("direction unit vectors match the axis convention")
{
    const Eigen::Vector3d broadside = direction_unit_vector(Direction(0.0, 0.0));
    CHECK((broadside - Eigen::Vector3d(1, 0, 0)).norm() < 1e-15);
    const Eigen::Vector3d east = direction_unit_vector(Direction(90.0, 0.0));
    CHECK((east - Eigen::Vector3d(0, 1, 0)).norm() < 1e-15);
    const Eigen::Vector3d up = direction_unit_vector(Direction(0.0, 90.0));
    CHECK((up - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> az(-180.0, 180.0);
    std::uniform_real_distribution<double> el(-90.0, 90.0);
    for (int i = 0; i < 500; i++)
        CHECK(std::abs(direction_unit_vector(Direction(az(rng), el(rng))).norm() - 1.0) <
              1e-12);
}

TEST_CASE("direction normalizes azimuth and validates elevation")
{
    CHECK(Direction(190.0, 0.0).azimuth_deg == doctest::Approx(-170.0));
    CHECK(Direction(-180.0, 0.0).azimuth_deg == doctest::Approx(-180.0));
    CHECK(Direction(180.0, 0.0).azimuth_deg == doctest::Approx(-180.0));
    CHECK_THROWS_AS(Direction(0.0, 91.0), ConfigError);
    CHECK_THROWS_AS(Direction(0.0, -90.5), ConfigError);
}

TEST_CASE("element positions: layout, spacing, symmetry")
{
    UpaConfig single{1, 1};
    const auto one = element_positions(single);
    REQUIRE(one.size() == 1);
    CHECK(one[0].norm() == 0.0);

    UpaConfig dflt;
    const auto positions = element_positions(dflt);
    REQUIRE(positions.size() == 256);
    // Adjacent columns sit half a wavelength apart: 5.35343675 mm at 28 GHz.
    CHECK((positions[1] - positions[0]).norm() ==
          doctest::Approx(5.35343675e-3).epsilon(1e-9));
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto &p : positions)
    {
        centroid += p;
        CHECK(p.x() == 0.0);
    }
    CHECK(centroid.norm() / 256.0 < 1e-12);

    UpaConfig two{2, 2};
    const auto quad = element_positions(two);
    REQUIRE(quad.size() == 4);
    for (const auto &p : quad)
    {
        bool has_y_mirror = false, has_z_mirror = false;
        for (const auto &q : quad)
        {
            if ((q - Eigen::Vector3d(p.x(), -p.y(), p.z())).norm() < 1e-15)
                has_y_mirror = true;
            if ((q - Eigen::Vector3d(p.x(), p.y(), -p.z())).norm() < 1e-15)
                has_z_mirror = true;
        }
        CHECK(has_y_mirror);
        CHECK(has_z_mirror);
    }
}

TEST_CASE("near/far field rules of thumb")
{
    UpaConfig dflt;
    CHECK(far_field_distance_m(dflt) == doctest::Approx(2.409046537).epsilon(1e-8));
    CHECK(nearfield_boundary_m(dflt) == doctest::Approx(0.2293077605).epsilon(1e-8));

    UpaConfig single{1, 1};
    CHECK(far_field_distance_m(single) == 0.0);
    CHECK(nearfield_boundary_m(single) == 0.0);

    // Doubling the carrier halves the wavelength and element spacing, so the
    // far-field distance halves.
    UpaConfig doubled = dflt;
    doubled.carrier_hz = 2.0 * dflt.carrier_hz;
    CHECK(far_field_distance_m(doubled) ==
          doctest::Approx(0.5 * far_field_distance_m(dflt)).epsilon(1e-12));

    // The reactive boundary grows with aperture.
    double previous = 0.0;
    for (std::size_t n : {2, 4, 8, 16, 32})
    {
        UpaConfig cfg{n, n};
        const double b = nearfield_boundary_m(cfg);
        CHECK(b > previous);
        previous = b;
    }
}

TEST_CASE("measurement grid construction")
{
    const DirectionGrid dflt = default_measurement_grid();
    CHECK(dflt.azimuth_count() == 121);
    CHECK(dflt.elevation_count() == 21);
    CHECK(dflt.size() == 2541);

    CHECK(build_measurement_grid(0, 0, 0, 0, 1).size() == 1);
    CHECK(build_measurement_grid(-2, 2, 0, 0, 1).size() == 5);
    CHECK_THROWS_AS(build_measurement_grid(0, 1, 0, 0, 0.3), ConfigError);
    CHECK_THROWS_AS(build_measurement_grid(0, -1, 0, 0, 1), ConfigError);
    CHECK_THROWS_AS(build_measurement_grid(0, 1, 0, 0, 0), ConfigError);
}

TEST_CASE("direction grid indexing")
{
    const DirectionGrid grid = build_measurement_grid(-3, 3, -1, 1, 1);
    REQUIRE(grid.size() == 21);
    for (std::size_t i = 0; i < grid.size(); i++)
        CHECK(grid.index_of(grid.at(i)) == i);

    CHECK(grid.contains(Direction(0, 0)));
    CHECK(!grid.contains(Direction(0.5, 0)));
    CHECK_THROWS_WITH_AS(static_cast<void>(grid.index_of(Direction(0.4, 0))),
                         doctest::Contains("nearest lattice point"), DataError);
}

TEST_CASE("platform geometry invariants")
{
    const PlatformGeometry tri = PlatformGeometry::triangular();
    tri.validate();
    CHECK((tri.tx.center - tri.rx.center).norm() == doctest::Approx(0.30).epsilon(1e-12));
    CHECK(angle_diff_deg(tri.tx.yaw_deg, tri.rx.yaw_deg) ==
          doctest::Approx(120.0).epsilon(1e-12));
    CHECK(std::abs(tri.tx.boresight().norm() - 1.0) < 1e-12);

    const PlatformGeometry coax = PlatformGeometry::coaxial();
    coax.validate();
    CHECK((coax.tx.center - coax.rx.center).norm() == doctest::Approx(0.30).epsilon(1e-12));
    CHECK((coax.tx.boresight() - coax.rx.boresight()).norm() < 1e-15);

    PlatformGeometry broken = tri;
    broken.separation_m = 0.4;
    CHECK_THROWS_AS(broken.validate(), ConfigError);
}
