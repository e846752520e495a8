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

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "sibeam/channel.hpp"

using namespace sibeam;

namespace
{

PlatformGeometry swapped(const PlatformGeometry &g)
{
    PlatformGeometry s = g;
    std::swap(s.tx, s.rx);
    return s;
}

} // namespace

TEST_CASE("single-element channel: unit magnitude, exact-distance phase")
{
    UpaConfig single{1, 1};
    const double r = 0.25;
    const PlatformGeometry geom = PlatformGeometry::coaxial(r);
    const ChannelMatrix H = spherical_wave_channel(single, single, geom);
    REQUIRE(H.rx_elements() == 1);
    REQUIRE(H.tx_elements() == 1);

    const std::complex<double> entry = H.entries()(0, 0);
    CHECK(std::abs(entry) == doctest::Approx(1.0).epsilon(1e-14));
    const double k = 2.0 * 3.14159265358979323846 / single.wavelength_m();
    const std::complex<double> expected = std::exp(std::complex<double>(0.0, -k * r));
    CHECK(std::abs(entry - expected) < 1e-12);
}

TEST_CASE("swapping the arrays transposes the channel")
{
    UpaConfig cfg{4, 3};
    const PlatformGeometry geom = PlatformGeometry::triangular();
    const ChannelMatrix H = spherical_wave_channel(cfg, cfg, geom);
    const ChannelMatrix Ht = spherical_wave_channel(cfg, cfg, swapped(geom));
    REQUIRE(H.rx_elements() == Ht.tx_elements());
    for (Eigen::Index m = 0; m < H.entries().rows(); m++)
        for (Eigen::Index n = 0; n < H.entries().cols(); n++)
            CHECK(std::abs(H.entries()(m, n) - Ht.entries()(n, m)) < 1e-12);
}

TEST_CASE("entry magnitudes bounded by extreme element distances")
{
    UpaConfig cfg;
    const PlatformGeometry geom = PlatformGeometry::triangular();
    const ChannelMatrix H = spherical_wave_channel(cfg, cfg, geom);

    // Brute-force distance extremes over all element pairs.
    const auto tx_local = element_positions(cfg);
    const auto rx_local = element_positions(cfg);
    const Eigen::Matrix3d Rt = geom.tx.rotation();
    const Eigen::Matrix3d Rr = geom.rx.rotation();
    double r_min = 1e300, r_max = 0.0;
    for (const auto &q : tx_local)
    {
        const Eigen::Vector3d tq = geom.tx.center + Rt * q;
        for (const auto &p : rx_local)
        {
            const double r = (geom.rx.center + Rr * p - tq).norm();
            r_min = std::min(r_min, r);
            r_max = std::max(r_max, r);
        }
    }
    const double r0 = (geom.tx.center - geom.rx.center).norm();
    for (Eigen::Index m = 0; m < H.entries().rows(); m++)
    {
        for (Eigen::Index n = 0; n < H.entries().cols(); n++)
        {
            const double mag = std::abs(H.entries()(m, n));
            CHECK(mag >= r0 / r_max - 1e-12);
            CHECK(mag <= r0 / r_min + 1e-12);
        }
    }
}

TEST_CASE("coupling gain: scalar case and phase invariance")
{
    Eigen::MatrixXcd entries(1, 1);
    entries(0, 0) = std::complex<double>(0.3, -0.4);
    const ChannelMatrix H(entries, 0.0);

    BeamWeights w{Eigen::VectorXcd::Ones(1), Direction(0, 0)};
    BeamWeights f{Eigen::VectorXcd::Ones(1), Direction(0, 0)};
    w.weights[0] = std::complex<double>(0.6, 0.8);
    f.weights[0] = std::complex<double>(0.0, 1.0);
    const std::complex<double> c = coupling_gain(w, H, f);
    CHECK(std::abs(c - w.weights[0] * entries(0, 0) * f.weights[0]) < 1e-15);

    // Global phase rotation of f leaves |coupling| unchanged.
    UpaConfig cfg{4, 4};
    const PlatformGeometry geom = PlatformGeometry::triangular();
    const ChannelMatrix Hc = spherical_wave_channel(cfg, cfg, geom);
    BeamWeights wt = conjugate_weights(cfg, Direction(5, 2));
    BeamWeights ft = conjugate_weights(cfg, Direction(-10, 0));
    const double base = std::abs(coupling_gain(wt, Hc, ft));
    for (double phase : {0.3, 1.7, -2.9})
    {
        BeamWeights rotated = ft;
        rotated.weights *= std::exp(std::complex<double>(0.0, phase));
        CHECK(std::abs(coupling_gain(wt, Hc, rotated)) ==
              doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("coupling equals the brute-force double sum")
{
    UpaConfig cfg;
    const PlatformGeometry geom = PlatformGeometry::triangular();
    ChannelMatrix H = spherical_wave_channel(cfg, cfg, geom, -7.5);

    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> az(-60.0, 60.0);
    std::uniform_real_distribution<double> el(-10.0, 10.0);
    for (int i = 0; i < 5; i++)
    {
        const BeamWeights w = conjugate_weights(cfg, Direction(az(rng), el(rng)));
        const BeamWeights f = conjugate_weights(cfg, Direction(az(rng), el(rng)));
        const std::complex<double> fast = coupling_gain(w, H, f);
        const std::complex<double> slow = oracles::coupling_double_sum(
            w.weights, H.entries(), f.weights, H.calibration_db());
        CHECK(std::abs(fast - slow) <= 1e-9 * std::abs(slow));
    }
}

TEST_CASE("coupling gain rejects dimension mismatches")
{
    UpaConfig big, small{2, 2};
    const PlatformGeometry geom = PlatformGeometry::triangular();
    const ChannelMatrix H = spherical_wave_channel(big, big, geom);
    const BeamWeights w = conjugate_weights(small, Direction(0, 0));
    const BeamWeights f = conjugate_weights(big, Direction(0, 0));
    CHECK_THROWS_AS(coupling_gain(w, H, f), ConfigError);
}

TEST_CASE("coincident elements raise a degenerate-geometry error")
{
    // 2x2 arrays, side-by-side, with the element pitch equal to the panel
    // separation so one tx element lands exactly on an rx element.
    UpaConfig cfg{2, 2};
    cfg.element_spacing_wavelengths = 0.30 / cfg.wavelength_m();
    PlatformGeometry geom;
    geom.separation_m = 0.30;
    geom.tx.center = Eigen::Vector3d(0.0, 0.0, 0.0);
    geom.rx.center = Eigen::Vector3d(0.0, 0.30, 0.0);
    CHECK_THROWS_WITH_AS(spherical_wave_channel(cfg, cfg, geom),
                         doctest::Contains("degenerate"), ConfigError);
}

TEST_CASE("channel binary dump round-trips")
{
    UpaConfig cfg{3, 2};
    const PlatformGeometry geom = PlatformGeometry::triangular();
    const ChannelMatrix H = spherical_wave_channel(cfg, cfg, geom, -12.25);

    const auto dir = std::filesystem::temp_directory_path() / "sibeam_channel_test";
    std::filesystem::create_directories(dir);
    const auto bin = dir / "channel.bin";
    const auto meta = dir / "channel.json";
    save_channel(H, bin, meta);
    CHECK(std::filesystem::file_size(bin) == 6 * 6 * 2 * sizeof(float));

    const ChannelMatrix loaded = load_channel(bin, meta);
    CHECK(loaded.calibration_db() == doctest::Approx(-12.25));
    REQUIRE(loaded.rx_elements() == H.rx_elements());
    for (Eigen::Index m = 0; m < H.entries().rows(); m++)
    {
        for (Eigen::Index n = 0; n < H.entries().cols(); n++)
        {
            // complex64 storage: equality after float rounding.
            CHECK(static_cast<float>(H.entries()(m, n).real()) ==
                  loaded.entries()(m, n).real());
            CHECK(static_cast<float>(H.entries()(m, n).imag()) ==
                  loaded.entries()(m, n).imag());
        }
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("broadside calibration lands the target INR")
{
    UpaConfig cfg;
    const PlatformGeometry geom = PlatformGeometry::triangular();
    ChannelMatrix H = spherical_wave_channel(cfg, cfg, geom);
    LinkBudget budget;
    calibrate_to_broadside_inr(H, cfg, cfg, budget, 40.0);

    const BeamWeights w = conjugate_weights(cfg, Direction(0, 0));
    const BeamWeights f = conjugate_weights(cfg, Direction(0, 0));
    const double iso = isolation_db(coupling_gain(w, H, f));
    const double inr = inr_db(budget, self_interference_dbm(budget, iso));
    CHECK(inr == doctest::Approx(40.0).epsilon(1e-9));
}
