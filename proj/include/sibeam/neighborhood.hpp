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

#include <vector>

#include "sibeam/grid.hpp"

namespace sibeam
{

// Angular deviation allowed around a nominal steering direction: at most
// dtheta_deg in azimuth and dphi_deg in elevation.
struct NeighborhoodSpec
{
    int dtheta_deg = 0;
    int dphi_deg = 0;
};

// Lattice directions within the neighborhood of a center (inclusive).
// The center must be on the lattice. Edge neighborhoods clip; no axis wraps.
std::vector<Direction> neighborhood_directions(const DirectionGrid &grid,
                                               const Direction &center,
                                               const NeighborhoodSpec &spec);

// Per-pair min / max / range of INR over the product neighborhood
// T_tx(i) x T_rx(j), aligned with the source grid's flat pair index.
struct PairNeighborhoodStats
{
    NeighborhoodSpec spec;
    std::vector<double> inr_min_db;
    std::vector<double> inr_max_db;
    std::vector<double> inr_rng_db;
};

// Separable sliding-window min/max (monotonic deque) along each of the four
// tensor axes; O(pair count) per spec. Equals a brute-force scan exactly.
PairNeighborhoodStats pair_neighborhood_stats(const InrGrid &grid,
                                              const NeighborhoodSpec &spec,
                                              unsigned threads = 0);

enum class BeamSide
{
    kTx,
    kRx
};

// Max / median / min INR seen by each beam on one side across all
// counterpart beams. Median of an even count is the midpoint of the two
// central order statistics.
struct BeamSummary
{
    Direction direction;
    double max_db;
    double median_db;
    double min_db;
};

std::vector<BeamSummary> per_beam_summary(const InrGrid &grid, BeamSide side);

// Fraction of counterpart beams with INR <= threshold, per beam (flat order).
std::vector<double> threshold_fraction(const InrGrid &grid, BeamSide side,
                                       double threshold_db);

// Fraction of counterpart beams whose neighborhood minimum INR is <=
// threshold, per beam. The overload taking precomputed stats avoids
// recomputing the sliding filters.
std::vector<double> neighborhood_threshold_fraction(const InrGrid &grid, BeamSide side,
                                                    const NeighborhoodSpec &spec,
                                                    double threshold_db,
                                                    unsigned threads = 0);
std::vector<double> neighborhood_threshold_fraction(const InrGrid &grid,
                                                    const PairNeighborhoodStats &stats,
                                                    BeamSide side, double threshold_db);

} // namespace sibeam
