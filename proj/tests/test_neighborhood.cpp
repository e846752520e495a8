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

#include <algorithm>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "sibeam/neighborhood.hpp"

using namespace sibeam;

TEST_CASE("neighborhood direction sets")
{
    const DirectionGrid grid = default_measurement_grid();

    CHECK(neighborhood_directions(grid, Direction(0, 0), {2, 2}).size() == 25);
    CHECK(neighborhood_directions(grid, Direction(0, 0), {0, 0}).size() == 1);
    // Corner clipping.
    CHECK(neighborhood_directions(grid, Direction(-60, -10), {1, 1}).size() == 4);
    CHECK(neighborhood_directions(grid, Direction(60, 10), {2, 1}).size() == 6);

    CHECK_THROWS_AS(neighborhood_directions(grid, Direction(0.5, 0), {1, 1}), DataError);
    CHECK_THROWS_AS(neighborhood_directions(grid, Direction(0, 0), {-1, 0}), ConfigError);
}

TEST_CASE("interior cardinality follows the (2dt+1)(2dp+1) bound")
{
    const DirectionGrid grid = default_measurement_grid();
    for (int dt = 0; dt <= 5; dt++)
    {
        for (int dp = 0; dp <= 5; dp++)
        {
            const auto members = neighborhood_directions(grid, Direction(0, 0), {dt, dp});
            const std::size_t expected =
                static_cast<std::size_t>(2 * dt + 1) * static_cast<std::size_t>(2 * dp + 1);
            CHECK(members.size() == expected);
        }
    }
    // Product rule over a beam pair: (2,2) gives 25^2 = 625 combinations.
    const auto tx = neighborhood_directions(grid, Direction(0, 0), {2, 2});
    const auto rx = neighborhood_directions(grid, Direction(10, 3), {2, 2});
    CHECK(tx.size() * rx.size() == 625);
}

TEST_CASE("degenerate and constant stats")
{
    std::mt19937_64 rng(100);
    const InrGrid grid = oracles::random_grid(rng, 6, 4, 5, 3);

    const PairNeighborhoodStats zero = pair_neighborhood_stats(grid, {0, 0});
    CHECK(zero.inr_min_db == grid.values_db());
    CHECK(zero.inr_max_db == grid.values_db());
    for (double r : zero.inr_rng_db)
        CHECK(r == 0.0);

    const InrGrid constant(grid.tx_grid(), grid.rx_grid(),
                           std::vector<double>(grid.pair_count(), 13.5));
    const PairNeighborhoodStats flat = pair_neighborhood_stats(constant, {2, 1});
    for (std::size_t k = 0; k < flat.inr_min_db.size(); k++)
    {
        CHECK(flat.inr_min_db[k] == 13.5);
        CHECK(flat.inr_max_db[k] == 13.5);
        CHECK(flat.inr_rng_db[k] == 0.0);
    }
}

TEST_CASE("separable filter equals the brute-force scan exactly")
{
    std::mt19937_64 rng(4242);
    for (int round = 0; round < 25; round++)
    {
        const std::size_t taz = 1 + rng() % 9;
        const std::size_t tel = 1 + rng() % 5;
        const std::size_t raz = 1 + rng() % 9;
        const std::size_t rel = 1 + rng() % 5;
        const InrGrid grid = oracles::random_grid(rng, taz, tel, raz, rel);
        const NeighborhoodSpec spec{static_cast<int>(rng() % 4),
                                    static_cast<int>(rng() % 3)};

        const PairNeighborhoodStats fast = pair_neighborhood_stats(grid, spec);
        const oracles::BruteStats slow = oracles::brute_force_stats(grid, spec);
        CHECK(fast.inr_min_db == slow.min_db);
        CHECK(fast.inr_max_db == slow.max_db);
        CHECK(fast.inr_rng_db == slow.rng_db);
    }
}

TEST_CASE("separable filter is deterministic across thread counts")
{
    std::mt19937_64 rng(515);
    const InrGrid grid = oracles::random_grid(rng, 9, 5, 9, 5);
    const NeighborhoodSpec spec{2, 1};
    const PairNeighborhoodStats one = pair_neighborhood_stats(grid, spec, 1);
    const PairNeighborhoodStats many = pair_neighborhood_stats(grid, spec, 4);
    CHECK(one.inr_min_db == many.inr_min_db);
    CHECK(one.inr_max_db == many.inr_max_db);
}

TEST_CASE("nesting monotonicity of neighborhood extrema")
{
    std::mt19937_64 rng(31337);
    const InrGrid grid = oracles::random_grid(rng, 7, 4, 6, 3);
    const PairNeighborhoodStats small = pair_neighborhood_stats(grid, {1, 1});
    const PairNeighborhoodStats large = pair_neighborhood_stats(grid, {3, 2});
    for (std::size_t k = 0; k < grid.pair_count(); k++)
    {
        const double center = grid.values_db()[k];
        CHECK(large.inr_min_db[k] <= small.inr_min_db[k]);
        CHECK(small.inr_min_db[k] <= center);
        CHECK(center <= small.inr_max_db[k]);
        CHECK(small.inr_max_db[k] <= large.inr_max_db[k]);
        CHECK(small.inr_rng_db[k] <= large.inr_rng_db[k]);
    }
}

TEST_CASE("per-beam summaries")
{
    // 1 tx beam, 2 rx beams with values {3, 7}: summary (7, 5, 3).
    DirectionGrid tx({0.0}, {0.0});
    DirectionGrid rx({0.0, 1.0}, {0.0});
    const InrGrid toy(tx, rx, {3.0, 7.0});
    const auto summary = per_beam_summary(toy, BeamSide::kTx);
    REQUIRE(summary.size() == 1);
    CHECK(summary[0].max_db == 7.0);
    CHECK(summary[0].median_db == 5.0);
    CHECK(summary[0].min_db == 3.0);

    // Constant grid: all three equal the constant.
    const InrGrid constant(tx, rx, {4.0, 4.0});
    const auto flat = per_beam_summary(constant, BeamSide::kRx);
    for (const auto &s : flat)
    {
        CHECK(s.max_db == 4.0);
        CHECK(s.median_db == 4.0);
        CHECK(s.min_db == 4.0);
    }

    // Random grid against a sort-based oracle, both sides.
    std::mt19937_64 rng(606);
    const InrGrid grid = oracles::random_grid(rng, 5, 3, 4, 3);
    for (const auto side : {BeamSide::kTx, BeamSide::kRx})
    {
        const auto sums = per_beam_summary(grid, side);
        const std::size_t n_beams =
            side == BeamSide::kTx ? grid.tx_grid().size() : grid.rx_grid().size();
        const std::size_t n_counter =
            side == BeamSide::kTx ? grid.rx_grid().size() : grid.tx_grid().size();
        REQUIRE(sums.size() == n_beams);
        for (std::size_t b = 0; b < n_beams; b++)
        {
            std::vector<double> row(n_counter);
            for (std::size_t c = 0; c < n_counter; c++)
                row[c] = side == BeamSide::kTx ? grid.value(b, c) : grid.value(c, b);
            std::sort(row.begin(), row.end());
            const double median =
                n_counter % 2 == 1
                    ? row[n_counter / 2]
                    : 0.5 * (row[n_counter / 2 - 1] + row[n_counter / 2]);
            CHECK(sums[b].min_db == row.front());
            CHECK(sums[b].max_db == row.back());
            CHECK(sums[b].median_db == doctest::Approx(median).epsilon(1e-15));
        }
    }
}

TEST_CASE("threshold fractions")
{
    std::mt19937_64 rng(808);
    const InrGrid grid = oracles::random_grid(rng, 4, 3, 5, 2);

    const auto all = threshold_fraction(grid, BeamSide::kTx,
                                        std::numeric_limits<double>::infinity());
    for (double f : all)
        CHECK(f == 1.0);

    const auto none = threshold_fraction(grid, BeamSide::kRx, -1000.0);
    for (double f : none)
        CHECK(f == 0.0);

    // Counting oracle, including the tie-counts-as-met convention.
    const double thr = grid.values_db()[3];
    for (const auto side : {BeamSide::kTx, BeamSide::kRx})
    {
        const auto fractions = threshold_fraction(grid, side, thr);
        const std::size_t n_beams =
            side == BeamSide::kTx ? grid.tx_grid().size() : grid.rx_grid().size();
        const std::size_t n_counter =
            side == BeamSide::kTx ? grid.rx_grid().size() : grid.tx_grid().size();
        for (std::size_t b = 0; b < n_beams; b++)
        {
            std::size_t count = 0;
            for (std::size_t c = 0; c < n_counter; c++)
            {
                const double v = side == BeamSide::kTx ? grid.value(b, c) : grid.value(c, b);
                if (v <= thr)
                    count++;
            }
            CHECK(fractions[b] ==
                  doctest::Approx(static_cast<double>(count) / n_counter).epsilon(1e-15));
        }
    }
}

TEST_CASE("neighborhood threshold fractions")
{
    std::mt19937_64 rng(909);
    const InrGrid grid = oracles::random_grid(rng, 6, 3, 6, 3);
    const double thr = 0.0;

    // (0,0) reduces to the plain threshold fraction.
    CHECK(neighborhood_threshold_fraction(grid, BeamSide::kTx, {0, 0}, thr) ==
          threshold_fraction(grid, BeamSide::kTx, thr));

    // Enlarging the neighborhood never decreases a fraction.
    const auto f11 = neighborhood_threshold_fraction(grid, BeamSide::kRx, {1, 1}, thr);
    const auto f22 = neighborhood_threshold_fraction(grid, BeamSide::kRx, {2, 2}, thr);
    for (std::size_t b = 0; b < f11.size(); b++)
        CHECK(f22[b] >= f11[b]);

    // Brute-force oracle.
    const NeighborhoodSpec spec{2, 1};
    const oracles::BruteStats slow = oracles::brute_force_stats(grid, spec);
    const std::size_t n_tx = grid.tx_grid().size();
    const std::size_t n_rx = grid.rx_grid().size();
    const auto fractions = neighborhood_threshold_fraction(grid, BeamSide::kTx, spec, thr);
    for (std::size_t i = 0; i < n_tx; i++)
    {
        std::size_t count = 0;
        for (std::size_t j = 0; j < n_rx; j++)
            if (slow.min_db[i * n_rx + j] <= thr)
                count++;
        CHECK(fractions[i] ==
              doctest::Approx(static_cast<double>(count) / n_rx).epsilon(1e-15));
    }
}
