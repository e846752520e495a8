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

#include "sibeam/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sibeam
{

namespace
{

constexpr int kDeltaInrMin = -20;
constexpr int kDeltaInrMax = 40;
constexpr int kDeltaInrStep = 10;

GammaParametrization parametrization_from_string(const std::string &s)
{
    if (s == "scale")
        return GammaParametrization::kScale;
    if (s == "rate")
        return GammaParametrization::kRate;
    throw DataError("unknown gamma parametrization '" + s + "'");
}

GammaFitDb gamma_from_cell(double shape, double second, GammaParametrization p)
{
    if (!(shape > 0.0) || !(second > 0.0))
        throw DataError("gamma table cell parameters must be positive");
    const double scale = p == GammaParametrization::kScale ? second : 1.0 / second;
    return {shape, scale};
}

NormalFitDb normal_from_cell(double mu, double sigma2)
{
    if (!(sigma2 > 0.0))
        throw DataError("normal table cell variance must be positive");
    return {mu, sigma2};
}

const GammaFitDb &lookup_gamma(const std::map<std::pair<int, int>, GammaFitDb> &table,
                               const NeighborhoodSpec &spec, const char *what)
{
    const auto it = table.find({spec.dtheta_deg, spec.dphi_deg});
    if (it == table.end())
    {
        std::ostringstream msg;
        msg << "no " << what << " fit for neighborhood (" << spec.dtheta_deg << ", "
            << spec.dphi_deg << ")";
        throw ConfigError(msg.str());
    }
    return it->second;
}

const NormalFitDb &lookup_normal(const std::map<std::pair<int, int>, NormalFitDb> &table,
                                 const NeighborhoodSpec &spec, const char *what)
{
    const auto it = table.find({spec.dtheta_deg, spec.dphi_deg});
    if (it == table.end())
    {
        std::ostringstream msg;
        msg << "no " << what << " fit for neighborhood (" << spec.dtheta_deg << ", "
            << spec.dphi_deg << ")";
        throw ConfigError(msg.str());
    }
    return it->second;
}

} // namespace

const NormalFitDb &global_fit()
{
    static const NormalFitDb fit{20.32, 70.69};
    return fit;
}

const MeasuredReference &measured_reference()
{
    static const MeasuredReference ref;
    return ref;
}

FitTables fit_tables_from_json(const nlohmann::json &j)
{
    FitTables tables;
    tables.parametrization =
        parametrization_from_string(j.at("parametrization").get<std::string>());

    const NormalFitDb global = normal_from_cell(j.at("global").at("mu_db").get<double>(),
                                                j.at("global").at("sigma2_db").get<double>());

    auto load_square = [&](const char *name, bool is_gamma) {
        const auto &block = j.at(name);
        const auto dthetas = block.at("dtheta").get<std::vector<int>>();
        const auto dphis = block.at("dphi").get<std::vector<int>>();
        const auto &cells = block.at("cells");
        if (cells.size() != dphis.size())
            throw DataError(std::string(name) + ": row count does not match dphi axis");
        for (std::size_t r = 0; r < dphis.size(); r++)
        {
            const auto &row = cells.at(r);
            if (row.size() != dthetas.size())
                throw DataError(std::string(name) + ": column count does not match dtheta axis");
            for (std::size_t c = 0; c < dthetas.size(); c++)
            {
                const auto &cell = row.at(c);
                const std::pair<int, int> key{dthetas[c], dphis[r]};
                if (cell.is_null())
                    continue; // absent cell, e.g. the undefined (0,0) range fit
                if (is_gamma)
                    tables.range_table[key] = gamma_from_cell(
                        cell.at(0).get<double>(), cell.at(1).get<double>(),
                        tables.parametrization);
                else
                {
                    auto &dst = std::string(name) == "min_normal" ? tables.min_table
                                                                  : tables.max_table;
                    dst[key] = normal_from_cell(cell.at(0).get<double>(),
                                                cell.at(1).get<double>());
                }
            }
        }
    };

    load_square("range_gamma", true);
    load_square("min_normal", false);
    load_square("max_normal", false);

    auto load_delta = [&](const char *name,
                          std::map<std::pair<int, int>, GammaFitDb> &dst) {
        const auto &block = j.at(name);
        const auto deltas = block.at("delta").get<std::vector<int>>();
        const auto inrs = block.at("inr_db").get<std::vector<int>>();
        const auto &cells = block.at("cells");
        if (cells.size() != deltas.size())
            throw DataError(std::string(name) + ": row count does not match delta axis");
        for (std::size_t r = 0; r < deltas.size(); r++)
        {
            const auto &row = cells.at(r);
            if (row.size() != inrs.size())
                throw DataError(std::string(name) + ": column count does not match inr axis");
            for (std::size_t c = 0; c < inrs.size(); c++)
            {
                if (row.at(c).is_null())
                    continue;
                dst[{deltas[r], inrs[c]}] =
                    gamma_from_cell(row.at(c).at(0).get<double>(),
                                    row.at(c).at(1).get<double>(), tables.parametrization);
            }
        }
    };

    load_delta("delta_min_gamma", tables.delta_min_table);
    load_delta("delta_max_gamma", tables.delta_max_table);

    // Both the min and max tables restate the global fit at (0, 0).
    for (const auto *t : {&tables.min_table, &tables.max_table})
    {
        const auto it = t->find({0, 0});
        if (it == t->end() || std::abs(it->second.mu_db - global.mu_db) > 1e-12 ||
            std::abs(it->second.sigma2_db - global.sigma2_db) > 1e-12)
            throw DataError("min/max tables must carry the global fit at (0, 0)");
    }
    return tables;
}

nlohmann::json fit_tables_to_json(const FitTables &tables, const NormalFitDb &global)
{
    std::vector<int> dthetas, dphis;
    for (const auto &[key, unused] : tables.min_table)
    {
        dthetas.push_back(key.first);
        dphis.push_back(key.second);
    }
    std::sort(dthetas.begin(), dthetas.end());
    dthetas.erase(std::unique(dthetas.begin(), dthetas.end()), dthetas.end());
    std::sort(dphis.begin(), dphis.end());
    dphis.erase(std::unique(dphis.begin(), dphis.end()), dphis.end());

    auto square = [&](auto getter) {
        nlohmann::json cells = nlohmann::json::array();
        for (int dphi : dphis)
        {
            nlohmann::json row = nlohmann::json::array();
            for (int dtheta : dthetas)
                row.push_back(getter(dtheta, dphi));
            cells.push_back(row);
        }
        return nlohmann::json{{"dtheta", dthetas}, {"dphi", dphis},
                              {"rows_are", "dphi"}, {"cells", cells}};
    };

    auto gamma_cell = [&](const std::map<std::pair<int, int>, GammaFitDb> &t, int a,
                          int b) -> nlohmann::json {
        const auto it = t.find({a, b});
        if (it == t.end())
            return nullptr;
        return nlohmann::json::array({it->second.shape, it->second.scale_db});
    };
    auto normal_cell = [&](const std::map<std::pair<int, int>, NormalFitDb> &t, int a,
                           int b) -> nlohmann::json {
        const auto it = t.find({a, b});
        if (it == t.end())
            return nullptr;
        return nlohmann::json::array({it->second.mu_db, it->second.sigma2_db});
    };

    std::vector<int> deltas, inrs;
    for (const auto &table : {tables.delta_min_table, tables.delta_max_table})
    {
        for (const auto &[key, unused] : table)
        {
            deltas.push_back(key.first);
            inrs.push_back(key.second);
        }
    }
    std::sort(deltas.begin(), deltas.end());
    deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
    std::sort(inrs.begin(), inrs.end());
    inrs.erase(std::unique(inrs.begin(), inrs.end()), inrs.end());

    auto delta_block = [&](const std::map<std::pair<int, int>, GammaFitDb> &t) {
        nlohmann::json cells = nlohmann::json::array();
        for (int d : deltas)
        {
            nlohmann::json row = nlohmann::json::array();
            for (int inr : inrs)
                row.push_back(gamma_cell(t, d, inr));
            cells.push_back(row);
        }
        return nlohmann::json{{"delta", deltas}, {"inr_db", inrs}, {"cells", cells}};
    };

    return {
        {"parametrization", "scale"},
        {"global", {{"mu_db", global.mu_db}, {"sigma2_db", global.sigma2_db}}},
        {"range_gamma",
         square([&](int a, int b) { return gamma_cell(tables.range_table, a, b); })},
        {"min_normal",
         square([&](int a, int b) { return normal_cell(tables.min_table, a, b); })},
        {"max_normal",
         square([&](int a, int b) { return normal_cell(tables.max_table, a, b); })},
        {"delta_min_gamma", delta_block(tables.delta_min_table)},
        {"delta_max_gamma", delta_block(tables.delta_max_table)},
    };
}

const FitTables &embedded_fit_tables()
{
    static const FitTables tables =
        fit_tables_from_json(nlohmann::json::parse(embedded_fit_tables_json()));
    return tables;
}

std::uint64_t table_integrity_hash(const FitTables &tables, const NormalFitDb &global)
{
    std::string canon;
    char buf[96];
    auto append = [&](const char *fmt, auto... args) {
        const int len = std::snprintf(buf, sizeof(buf), fmt, args...);
        if (!canon.empty())
            canon += ';';
        canon.append(buf, static_cast<std::size_t>(len));
    };

    append("global:%.2f,%.2f", global.mu_db, global.sigma2_db);
    for (int dphi = 0; dphi <= 5; dphi++)
        for (int dtheta = 0; dtheta <= 5; dtheta++)
            if (auto it = tables.range_table.find({dtheta, dphi});
                it != tables.range_table.end())
                append("range_gamma:%d,%d,%.2f,%.2f", dtheta, dphi, it->second.shape,
                       it->second.scale_db);
    for (int dphi = 0; dphi <= 5; dphi++)
        for (int dtheta = 0; dtheta <= 5; dtheta++)
            if (auto it = tables.min_table.find({dtheta, dphi}); it != tables.min_table.end())
                append("min_normal:%d,%d,%.2f,%.2f", dtheta, dphi, it->second.mu_db,
                       it->second.sigma2_db);
    for (int dphi = 0; dphi <= 5; dphi++)
        for (int dtheta = 0; dtheta <= 5; dtheta++)
            if (auto it = tables.max_table.find({dtheta, dphi}); it != tables.max_table.end())
                append("max_normal:%d,%d,%.2f,%.2f", dtheta, dphi, it->second.mu_db,
                       it->second.sigma2_db);
    for (int d = 1; d <= 5; d++)
        for (int inr = kDeltaInrMin; inr <= kDeltaInrMax; inr += kDeltaInrStep)
            if (auto it = tables.delta_min_table.find({d, inr});
                it != tables.delta_min_table.end())
                append("delta_min_gamma:%d,%d,%.2f,%.2f", d, inr, it->second.shape,
                       it->second.scale_db);
    for (int d = 1; d <= 5; d++)
        for (int inr = kDeltaInrMin; inr <= kDeltaInrMax; inr += kDeltaInrStep)
            if (auto it = tables.delta_max_table.find({d, inr});
                it != tables.delta_max_table.end())
                append("delta_max_gamma:%d,%d,%.2f,%.2f", d, inr, it->second.shape,
                       it->second.scale_db);

    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : canon)
    {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

nlohmann::json to_json(const NormalFitDb &fit)
{
    return {{"family", "normal_db"},
            {"params", {{"mu_db", fit.mu_db}, {"sigma2_db", fit.sigma2_db}}}};
}

nlohmann::json to_json(const GammaFitDb &fit)
{
    return {{"family", "gamma_db"},
            {"params", {{"shape", fit.shape}, {"scale_db", fit.scale_db}}},
            {"parametrization", "scale"}};
}

NormalFitDb normal_fit_from_json(const nlohmann::json &j)
{
    if (j.at("family").get<std::string>() != "normal_db")
        throw DataError("expected a normal_db fit");
    return normal_from_cell(j.at("params").at("mu_db").get<double>(),
                            j.at("params").at("sigma2_db").get<double>());
}

GammaFitDb gamma_fit_from_json(const nlohmann::json &j)
{
    if (j.at("family").get<std::string>() != "gamma_db")
        throw DataError("expected a gamma_db fit");
    const auto p = parametrization_from_string(
        j.value("parametrization", std::string("scale")));
    return gamma_from_cell(j.at("params").at("shape").get<double>(),
                           j.at("params").at("scale_db").get<double>(), p);
}

double global_prob_below(double threshold_db)
{
    return normal_cdf(threshold_db, global_fit());
}

double expected_range_db(const NeighborhoodSpec &spec)
{
    const GammaFitDb &fit =
        lookup_gamma(embedded_fit_tables().range_table, spec, "INR range");
    return fit.mean_db();
}

double sample_global_inr(Rng &rng)
{
    return sample_normal(global_fit(), rng);
}

double sample_inr_min(const NeighborhoodSpec &spec, Rng &rng)
{
    return sample_normal(lookup_normal(embedded_fit_tables().min_table, spec, "minimum INR"),
                         rng);
}

double sample_inr_max(const NeighborhoodSpec &spec, Rng &rng)
{
    return sample_normal(lookup_normal(embedded_fit_tables().max_table, spec, "maximum INR"),
                         rng);
}

double sample_inr_range(const NeighborhoodSpec &spec, Rng &rng)
{
    return sample_gamma(lookup_gamma(embedded_fit_tables().range_table, spec, "INR range"),
                        rng);
}

DeltaFitLookup delta_fit_lookup(DeltaTable table, const NeighborhoodSpec &spec,
                                double inr_db)
{
    if (spec.dtheta_deg != spec.dphi_deg)
    {
        std::ostringstream msg;
        msg << "conditioned fits are tabulated for diagonal neighborhoods only, got ("
            << spec.dtheta_deg << ", " << spec.dphi_deg << ")";
        throw ConfigError(msg.str());
    }
    const int delta = spec.dtheta_deg;
    if (delta < 1 || delta > 5)
        throw ConfigError("conditioned fits cover diagonal neighborhoods 1..5 degrees");
    if (!std::isfinite(inr_db))
        throw ConfigError("nominal INR must be finite");

    const auto &tbl = table == DeltaTable::kMin ? embedded_fit_tables().delta_min_table
                                                : embedded_fit_tables().delta_max_table;

    DeltaFitLookup result;
    double x = inr_db;
    if (x < kDeltaInrMin)
    {
        x = kDeltaInrMin;
        result.clamped = true;
    }
    else if (x > kDeltaInrMax)
    {
        x = kDeltaInrMax;
        result.clamped = true;
    }

    const double offset = (x - kDeltaInrMin) / kDeltaInrStep;
    const int lo_col = std::min(static_cast<int>(std::floor(offset)),
                                (kDeltaInrMax - kDeltaInrMin) / kDeltaInrStep - 1);
    const int lo_inr = kDeltaInrMin + lo_col * kDeltaInrStep;
    const double t = (x - lo_inr) / kDeltaInrStep;

    const GammaFitDb &lo = tbl.at({delta, lo_inr});
    if (t <= 0.0)
    {
        result.fit = lo;
        return result;
    }
    const GammaFitDb &hi = tbl.at({delta, lo_inr + kDeltaInrStep});
    if (t >= 1.0)
    {
        result.fit = hi;
        return result;
    }
    result.fit = {lo.shape + t * (hi.shape - lo.shape),
                  lo.scale_db + t * (hi.scale_db - lo.scale_db)};
    return result;
}

double sample_inr_min_conditioned(const NeighborhoodSpec &spec, double inr_db, Rng &rng)
{
    const DeltaFitLookup lookup = delta_fit_lookup(DeltaTable::kMin, spec, inr_db);
    return inr_db - sample_gamma(lookup.fit, rng);
}

double sample_inr_max_conditioned(const NeighborhoodSpec &spec, double inr_db, Rng &rng)
{
    const DeltaFitLookup lookup = delta_fit_lookup(DeltaTable::kMax, spec, inr_db);
    return inr_db + sample_gamma(lookup.fit, rng);
}

double sample_inr_min_composed(const NeighborhoodSpec &spec, Rng &rng)
{
    return sample_inr_min_conditioned(spec, sample_global_inr(rng), rng);
}

double sample_inr_max_composed(const NeighborhoodSpec &spec, Rng &rng)
{
    return sample_inr_max_conditioned(spec, sample_global_inr(rng), rng);
}

double prob_min_below(const NeighborhoodSpec &spec, double threshold_db)
{
    return normal_cdf(threshold_db,
                      lookup_normal(embedded_fit_tables().min_table, spec, "minimum INR"));
}

double prob_min_below(const NeighborhoodSpec &spec, double inr_db, double threshold_db)
{
    const DeltaFitLookup lookup = delta_fit_lookup(DeltaTable::kMin, spec, inr_db);
    // P(min <= threshold) = P(reduction >= inr - threshold).
    return 1.0 - gamma_cdf(inr_db - threshold_db, lookup.fit);
}

} // namespace sibeam
