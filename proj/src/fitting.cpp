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

#include "sibeam/fitting.hpp"

#include <cmath>
#include <optional>

namespace sibeam
{

namespace
{

// Gamma fit over the strictly positive part of a sample set; nullopt when
// the data cannot support one (too few points or degenerate).
std::optional<GammaFitDb> try_gamma_fit(std::vector<double> &&samples)
{
    std::erase_if(samples, [](double x) { return !(x > 0.0); });
    if (samples.size() < 10)
        return std::nullopt;
    try
    {
        return fit_gamma_db(samples);
    }
    catch (const DataError &)
    {
        return std::nullopt;
    }
}

} // namespace

GridFitResult fit_grid_models(const InrGrid &grid, const GridFitOptions &options)
{
    if (options.max_delta < 0 || options.max_delta > 20)
        throw ConfigError("max_delta must lie in 0..20");

    GridFitResult result;
    result.global = fit_normal_db(grid.values_db());
    result.tables.parametrization = GammaParametrization::kScale;

    for (int dphi = 0; dphi <= options.max_delta; dphi++)
    {
        for (int dtheta = 0; dtheta <= options.max_delta; dtheta++)
        {
            const NeighborhoodSpec spec{dtheta, dphi};
            const PairNeighborhoodStats stats =
                pair_neighborhood_stats(grid, spec, options.threads);
            const std::pair<int, int> key{dtheta, dphi};

            result.tables.min_table[key] = fit_normal_db(stats.inr_min_db);
            result.tables.max_table[key] = fit_normal_db(stats.inr_max_db);
            if (dtheta != 0 || dphi != 0)
            {
                if (auto fit = try_gamma_fit(std::vector<double>(stats.inr_rng_db)))
                    result.tables.range_table[key] = *fit;
            }

            if (dtheta == dphi && dtheta >= 1)
            {
                // Conditioned fits: bin the reductions/increases by the
                // center INR, 1 dB bins centered on integers.
                std::map<int, std::vector<double>> min_bins, max_bins;
                const auto &values = grid.values_db();
                for (std::size_t i = 0; i < values.size(); i++)
                {
                    const int bin = static_cast<int>(std::llround(values[i]));
                    min_bins[bin].push_back(values[i] - stats.inr_min_db[i]);
                    max_bins[bin].push_back(stats.inr_max_db[i] - values[i]);
                }
                for (auto &[bin, samples] : min_bins)
                {
                    if (samples.size() < options.min_bin_count)
                        continue;
                    const std::size_t count = samples.size();
                    if (auto fit = try_gamma_fit(std::move(samples)))
                    {
                        result.tables.delta_min_table[{dtheta, bin}] = *fit;
                        result.delta_min_bin_counts[{dtheta, bin}] = count;
                    }
                }
                for (auto &[bin, samples] : max_bins)
                {
                    if (samples.size() < options.min_bin_count)
                        continue;
                    const std::size_t count = samples.size();
                    if (auto fit = try_gamma_fit(std::move(samples)))
                    {
                        result.tables.delta_max_table[{dtheta, bin}] = *fit;
                        result.delta_max_bin_counts[{dtheta, bin}] = count;
                    }
                }
            }
        }
    }
    return result;
}

nlohmann::json grid_fit_to_json(const GridFitResult &result)
{
    auto counts = [](const std::map<std::pair<int, int>, std::size_t> &m) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &[key, count] : m)
            arr.push_back({{"delta", key.first}, {"inr_db", key.second}, {"count", count}});
        return arr;
    };
    return {
        {"global", to_json(result.global)},
        {"tables", fit_tables_to_json(result.tables, result.global)},
        {"delta_min_bin_counts", counts(result.delta_min_bin_counts)},
        {"delta_max_bin_counts", counts(result.delta_max_bin_counts)},
    };
}

} // namespace sibeam
