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
#include <vector>

#include "sibeam/geometry.hpp"

namespace sibeam
{

// Unit-norm beamforming weight vector steered to a direction.
struct BeamWeights
{
    Eigen::VectorXcd weights;
    Direction steering;
};

// Array response a(d): element n carries (1/sqrt(N)) exp(+j k <p_n, u(d)>),
// unit Euclidean norm. Element order matches element_positions().
Eigen::VectorXcd array_response(const UpaConfig &cfg, const Direction &d);

// Conjugate (matched filter) beamforming weights: elementwise conjugate of
// the array response in the steering direction.
BeamWeights conjugate_weights(const UpaConfig &cfg, const Direction &d);

// Element/system gain constant applied on top of the array factor so that
// the default 16x16 array yields 75 dB of total transmit gain at broadside
// (-15 dBm in, 60 dBm EIRP out).
double default_element_gain_db();

// Power gain (dB) of the beam probed across a direction grid, flat order:
// gain(d) = 20 log10(|w^T a(d)| sqrt(N)) + element_gain_db.
std::vector<double> beam_gain_pattern_db(const UpaConfig &cfg, const BeamWeights &w,
                                         const DirectionGrid &probe_grid,
                                         double element_gain_db = default_element_gain_db());

} // namespace sibeam
