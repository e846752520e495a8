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

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "sibeam/neighborhood.hpp"
#include "sibeam/stats.hpp"

namespace sibeam
{

// How a stored Gamma second parameter is to be read. The embedded tables are
// internally consistent only under the scale reading; the enum keeps the
// alternative loadable.
enum class GammaParametrization
{
    kScale,
    kRate
};

// Fitted-parameter tables keyed by neighborhood size (and nominal INR for the
// conditioned fits). Gamma fits are normalized to shape/scale on load.
struct FitTables
{
    GammaParametrization parametrization = GammaParametrization::kScale;

    // (dtheta, dphi) in {0..5}^2; the (0, 0) range cell does not exist.
    std::map<std::pair<int, int>, GammaFitDb> range_table;
    std::map<std::pair<int, int>, NormalFitDb> min_table;
    std::map<std::pair<int, int>, NormalFitDb> max_table;

    // Conditioned reductions/increases, keyed (delta, nominal INR dB) with
    // delta = dtheta = dphi in 1..5 and INR in {-20, -10, ..., 40}.
    std::map<std::pair<int, int>, GammaFitDb> delta_min_table;
    std::map<std::pair<int, int>, GammaFitDb> delta_max_table;
};

// Global dB-domain fit of the full measurement set: mu 20.32, sigma^2 70.69.
const NormalFitDb &global_fit();

// Headline statistics reported for the measured dataset, kept as reference
// constants for comparisons and reports.
struct MeasuredReference
{
    double median_inr_db = 20.27;
    double max_inr_db = 46.99;
    double min_inr_db = -44.57;
};
const MeasuredReference &measured_reference();

// The embedded parameter tables (parsed once from the compiled-in JSON
// asset) and their serialization.
const FitTables &embedded_fit_tables();
const char *embedded_fit_tables_json();
FitTables fit_tables_from_json(const nlohmann::json &j);
nlohmann::json fit_tables_to_json(const FitTables &tables, const NormalFitDb &global);

// FNV-1a hash over a canonical serialization of every table cell; the test
// suite pins the embedded tables against the frozen value.
std::uint64_t table_integrity_hash(const FitTables &tables, const NormalFitDb &global);

// Single-fit JSON serialization:
//   {"family": "normal_db", "params": {...}} /
//   {"family": "gamma_db", "params": {...}, "parametrization": "scale"}.
nlohmann::json to_json(const NormalFitDb &fit);
nlohmann::json to_json(const GammaFitDb &fit);
NormalFitDb normal_fit_from_json(const nlohmann::json &j);
GammaFitDb gamma_fit_from_json(const nlohmann::json &j);

// P(INR <= threshold) for a random beam pair under the global fit.
double global_prob_below(double threshold_db);

// Mean INR range over a neighborhood, from the embedded Gamma fit
// (shape * scale). Throws ConfigError for (0, 0) or specs outside {0..5}^2.
double expected_range_db(const NeighborhoodSpec &spec);

// Draws from the embedded fits. Out-of-domain specs throw ConfigError.
double sample_global_inr(Rng &rng);
double sample_inr_min(const NeighborhoodSpec &spec, Rng &rng);
double sample_inr_max(const NeighborhoodSpec &spec, Rng &rng);
double sample_inr_range(const NeighborhoodSpec &spec, Rng &rng);

enum class DeltaTable
{
    kMin,
    kMax
};

// Conditioned Gamma fit for a diagonal spec and nominal INR. Exact cell when
// the INR is tabulated, linear interpolation of (shape, scale) between the
// bracketing columns otherwise. INR outside [-20, 40] clamps to the boundary
// cell and sets `clamped`. Off-diagonal specs throw ConfigError.
struct DeltaFitLookup
{
    GammaFitDb fit;
    bool clamped = false;
};
DeltaFitLookup delta_fit_lookup(DeltaTable table, const NeighborhoodSpec &spec,
                                double inr_db);

// Realizations around a beam pair of nominal INR: the neighborhood minimum
// is inr_db minus a Gamma reduction, the maximum inr_db plus a Gamma
// increase. The composed variants draw the nominal INR from the global fit
// first.
double sample_inr_min_conditioned(const NeighborhoodSpec &spec, double inr_db, Rng &rng);
double sample_inr_max_conditioned(const NeighborhoodSpec &spec, double inr_db, Rng &rng);
double sample_inr_min_composed(const NeighborhoodSpec &spec, Rng &rng);
double sample_inr_max_composed(const NeighborhoodSpec &spec, Rng &rng);

// P(neighborhood minimum <= threshold): unconditioned via the normal fit,
// conditioned on a nominal INR via the Gamma reduction.
double prob_min_below(const NeighborhoodSpec &spec, double threshold_db);
double prob_min_below(const NeighborhoodSpec &spec, double inr_db, double threshold_db);

} // namespace sibeam
