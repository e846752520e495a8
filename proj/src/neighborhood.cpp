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

#include "sibeam/neighborhood.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "sibeam/parallel.hpp"

namespace sibeam
{

namespace
{

void check_spec(const NeighborhoodSpec &spec)
{
    if (spec.dtheta_deg < 0 || spec.dphi_deg < 0)
        throw ConfigError("neighborhood spec must be non-negative");
}

// Lattice radius (in steps) equivalent to an angular deviation in degrees.
std::size_t lattice_radius(const std::vector<double> &axis, int deviation_deg)
{
    if (axis.size() < 2)
        return 0;
    const double step = axis[1] - axis[0];
    return static_cast<std::size_t>(std::floor(deviation_deg / step + 1e-9));
}

// Centered sliding min/max along one tensor axis, windows clipped at the
// edges (no axis wraps). Monotonic deque, one pass per lane; every lane
// writes only its own outputs, so the result is thread-count independent.
template <bool IsMin>
void sliding_pass(const std::vector<double> &in, std::vector<double> &out,
                  const std::array<std::size_t, 4> &shape, int axis, std::size_t radius,
                  unsigned threads)
{
    std::size_t stride = 1;
    for (int k = 3; k > axis; k--)
        stride *= shape[static_cast<std::size_t>(k)];
    const std::size_t len = shape[static_cast<std::size_t>(axis)];
    const std::size_t lanes = in.size() / len;
    const std::size_t block = len * stride;

    parallel_chunks(lanes, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<std::size_t> dq(len);
        for (std::size_t lane = begin; lane < end; lane++)
        {
            const double *src = in.data() + (lane / stride) * block + (lane % stride);
            double *dst = out.data() + (lane / stride) * block + (lane % stride);
            std::size_t head = 0, tail = 0, next = 0;
            for (std::size_t t = 0; t < len; t++)
            {
                const std::size_t upper = std::min(len - 1, t + radius);
                while (next <= upper)
                {
                    const double v = src[next * stride];
                    if constexpr (IsMin)
                    {
                        while (tail > head && src[dq[tail - 1] * stride] > v)
                            tail--;
                    }
                    else
                    {
                        while (tail > head && src[dq[tail - 1] * stride] < v)
                            tail--;
                    }
                    dq[tail++] = next++;
                }
                const std::size_t lower = t >= radius ? t - radius : 0;
                while (dq[head] < lower)
                    head++;
                dst[t * stride] = src[dq[head] * stride];
            }
        }
    });
}

template <bool IsMin>
std::vector<double> sliding_extremum_4d(const std::vector<double> &values,
                                        const std::array<std::size_t, 4> &shape,
                                        const std::array<std::size_t, 4> &radii,
                                        unsigned threads)
{
    std::vector<double> a = values;
    std::vector<double> b(values.size());
    for (int axis = 0; axis < 4; axis++)
    {
        sliding_pass<IsMin>(a, b, shape, axis, radii[static_cast<std::size_t>(axis)], threads);
        std::swap(a, b);
    }
    return a;
}

} // namespace

std::vector<Direction> neighborhood_directions(const DirectionGrid &grid,
                                               const Direction &center,
                                               const NeighborhoodSpec &spec)
{
    check_spec(spec);
    grid.index_of(center); // validates the center is on the lattice

    std::vector<Direction> members;
    for (std::size_t i = 0; i < grid.size(); i++)
    {
        const Direction d = grid.at(i);
        if (angle_diff_deg(d.azimuth_deg, center.azimuth_deg) <= spec.dtheta_deg + 1e-9 &&
            angle_diff_deg(d.elevation_deg, center.elevation_deg) <= spec.dphi_deg + 1e-9)
            members.push_back(d);
    }
    return members;
}

PairNeighborhoodStats pair_neighborhood_stats(const InrGrid &grid,
                                              const NeighborhoodSpec &spec,
                                              unsigned threads)
{
    check_spec(spec);
    const auto &tx = grid.tx_grid();
    const auto &rx = grid.rx_grid();
    const std::array<std::size_t, 4> shape = {tx.azimuth_count(), tx.elevation_count(),
                                              rx.azimuth_count(), rx.elevation_count()};
    const std::array<std::size_t, 4> radii = {
        lattice_radius(tx.azimuths_deg(), spec.dtheta_deg),
        lattice_radius(tx.elevations_deg(), spec.dphi_deg),
        lattice_radius(rx.azimuths_deg(), spec.dtheta_deg),
        lattice_radius(rx.elevations_deg(), spec.dphi_deg)};

    PairNeighborhoodStats stats;
    stats.spec = spec;
    stats.inr_min_db = sliding_extremum_4d<true>(grid.values_db(), shape, radii, threads);
    stats.inr_max_db = sliding_extremum_4d<false>(grid.values_db(), shape, radii, threads);

    stats.inr_rng_db.resize(grid.pair_count());
    parallel_chunks(grid.pair_count(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; i++)
            stats.inr_rng_db[i] = stats.inr_max_db[i] - stats.inr_min_db[i];
    });
    return stats;
}

std::vector<BeamSummary> per_beam_summary(const InrGrid &grid, BeamSide side)
{
    const std::size_t n_beams = side == BeamSide::kTx ? grid.tx_grid().size()
                                                      : grid.rx_grid().size();
    const std::size_t n_counter = side == BeamSide::kTx ? grid.rx_grid().size()
                                                        : grid.tx_grid().size();
    const DirectionGrid &beam_grid = side == BeamSide::kTx ? grid.tx_grid() : grid.rx_grid();

    std::vector<BeamSummary> summaries(n_beams,
                                       BeamSummary{Direction(), 0.0, 0.0, 0.0});
    std::vector<double> scratch(n_counter);
    for (std::size_t b = 0; b < n_beams; b++)
    {
        for (std::size_t c = 0; c < n_counter; c++)
            scratch[c] = side == BeamSide::kTx ? grid.value(b, c) : grid.value(c, b);

        const auto [mn, mx] = std::minmax_element(scratch.begin(), scratch.end());
        const double min_v = *mn;
        const double max_v = *mx;

        const std::size_t mid = n_counter / 2;
        std::nth_element(scratch.begin(), scratch.begin() + static_cast<long>(mid),
                         scratch.end());
        double median = scratch[mid];
        if (n_counter % 2 == 0)
        {
            const double lower =
                *std::max_element(scratch.begin(), scratch.begin() + static_cast<long>(mid));
            median = 0.5 * (lower + median);
        }
        summaries[b] = {beam_grid.at(b), max_v, median, min_v};
    }
    return summaries;
}

std::vector<double> threshold_fraction(const InrGrid &grid, BeamSide side,
                                       double threshold_db)
{
    const std::size_t n_beams = side == BeamSide::kTx ? grid.tx_grid().size()
                                                      : grid.rx_grid().size();
    const std::size_t n_counter = side == BeamSide::kTx ? grid.rx_grid().size()
                                                        : grid.tx_grid().size();
    std::vector<double> fractions(n_beams);
    for (std::size_t b = 0; b < n_beams; b++)
    {
        std::size_t count = 0;
        for (std::size_t c = 0; c < n_counter; c++)
        {
            const double v = side == BeamSide::kTx ? grid.value(b, c) : grid.value(c, b);
            if (v <= threshold_db)
                count++;
        }
        fractions[b] = static_cast<double>(count) / static_cast<double>(n_counter);
    }
    return fractions;
}

std::vector<double> neighborhood_threshold_fraction(const InrGrid &grid,
                                                    const PairNeighborhoodStats &stats,
                                                    BeamSide side, double threshold_db)
{
    if (stats.inr_min_db.size() != grid.pair_count())
        throw DataError("neighborhood stats do not match the grid shape");
    const std::size_t n_tx = grid.tx_grid().size();
    const std::size_t n_rx = grid.rx_grid().size();
    const std::size_t n_beams = side == BeamSide::kTx ? n_tx : n_rx;
    const std::size_t n_counter = side == BeamSide::kTx ? n_rx : n_tx;

    std::vector<double> fractions(n_beams);
    for (std::size_t b = 0; b < n_beams; b++)
    {
        std::size_t count = 0;
        for (std::size_t c = 0; c < n_counter; c++)
        {
            const std::size_t offset =
                side == BeamSide::kTx ? b * n_rx + c : c * n_rx + b;
            if (stats.inr_min_db[offset] <= threshold_db)
                count++;
        }
        fractions[b] = static_cast<double>(count) / static_cast<double>(n_counter);
    }
    return fractions;
}

std::vector<double> neighborhood_threshold_fraction(const InrGrid &grid, BeamSide side,
                                                    const NeighborhoodSpec &spec,
                                                    double threshold_db, unsigned threads)
{
    const PairNeighborhoodStats stats = pair_neighborhood_stats(grid, spec, threads);
    return neighborhood_threshold_fraction(grid, stats, side, threshold_db);
}

} // namespace sibeam
