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

#include <map>
#include <utility>

#include "sibeam/models.hpp"
#include "sibeam/neighborhood.hpp"

namespace sibeam
{

// Controls for re-deriving model tables from an ingested grid.
struct GridFitOptions
{
    int max_delta = 5;              // rng/min/max fits over {0..max_delta}^2
    std::size_t min_bin_count = 100; // conditioned bins below this are absent
    unsigned threads = 0;
};

// Model tables fitted from a grid: a global normal fit plus neighborhood
// tables in the same shape as the embedded ones. Conditioned tables use
// 1 dB center-INR bins centered on integers; bins with too few samples are
// absent. bin_counts records the per-bin sample counts actually used.
struct GridFitResult
{
    NormalFitDb global;
    FitTables tables;
    std::map<std::pair<int, int>, std::size_t> delta_min_bin_counts;
    std::map<std::pair<int, int>, std::size_t> delta_max_bin_counts;
};

GridFitResult fit_grid_models(const InrGrid &grid, const GridFitOptions &options = {});

nlohmann::json grid_fit_to_json(const GridFitResult &result);

} // namespace sibeam
