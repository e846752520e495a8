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

#include "sibeam/beamforming.hpp"

#include <cmath>

namespace sibeam
{

Eigen::VectorXcd array_response(const UpaConfig &cfg, const Direction &d)
{
    const auto positions = element_positions(cfg);
    const Eigen::Vector3d u = direction_unit_vector(d);
    const double k = 2.0 * 3.14159265358979323846 / cfg.wavelength_m();
    const double amp = 1.0 / std::sqrt(static_cast<double>(cfg.element_count()));

    Eigen::VectorXcd a(positions.size());
    for (std::size_t n = 0; n < positions.size(); n++)
    {
        const double phase = k * positions[n].dot(u);
        a[static_cast<Eigen::Index>(n)] =
            std::complex<double>(amp * std::cos(phase), amp * std::sin(phase));
    }
    return a;
}

BeamWeights conjugate_weights(const UpaConfig &cfg, const Direction &d)
{
    return {array_response(cfg, d).conjugate(), d};
}

double default_element_gain_db()
{
    // 75 dB total at broadside for the 16x16 default; the array factor
    // contributes 10 log10(256).
    return 75.0 - 10.0 * std::log10(256.0);
}

std::vector<double> beam_gain_pattern_db(const UpaConfig &cfg, const BeamWeights &w,
                                         const DirectionGrid &probe_grid,
                                         double element_gain_db)
{
    const double array_gain_db = 10.0 * std::log10(static_cast<double>(cfg.element_count()));
    std::vector<double> gains(probe_grid.size());
    for (std::size_t i = 0; i < probe_grid.size(); i++)
    {
        const Eigen::VectorXcd a = array_response(cfg, probe_grid.at(i));
        const std::complex<double> match = w.weights.transpose() * a;
        gains[i] = 20.0 * std::log10(std::abs(match)) + array_gain_db + element_gain_db;
    }
    return gains;
}

} // namespace sibeam
