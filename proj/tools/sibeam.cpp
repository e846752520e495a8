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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sibeam/config.hpp"
#include "sibeam/fitting.hpp"
#include "sibeam/grid.hpp"
#include "sibeam/models.hpp"
#include "sibeam/neighborhood.hpp"
#include "sibeam/version.hpp"

namespace
{

using namespace sibeam;

std::string g_command_line;

// Leading comment block carried by every output file: command line, seed,
// version. No timestamps, so identical commands reproduce identical bytes.
std::string metadata_comment(std::optional<std::uint64_t> seed)
{
    std::ostringstream out;
    out << "# command: " << g_command_line << "\n";
    out << "# seed: " << (seed ? std::to_string(*seed) : std::string("none")) << "\n";
    out << "# version: " << kVersion << "\n";
    return out.str();
}

nlohmann::json metadata_json(std::optional<std::uint64_t> seed)
{
    nlohmann::json j = {{"command", g_command_line}, {"version", kVersion}};
    if (seed)
        j["seed"] = *seed;
    else
        j["seed"] = nullptr;
    return j;
}

void write_text_file(const std::filesystem::path &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot open " + path.string() + " for writing");
    out << content;
    if (!out)
        throw DataError("failed writing " + path.string());
}

NeighborhoodSpec parse_neighborhood(const std::string &text)
{
    const auto comma = text.find(',');
    try
    {
        if (comma == std::string::npos)
        {
            const int d = std::stoi(text);
            return {d, d};
        }
        return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    }
    catch (const std::exception &)
    {
        throw ConfigError("cannot parse neighborhood '" + text + "', expected D or D,D");
    }
}

struct GridStats
{
    std::size_t pairs;
    double min_db;
    double max_db;
    double median_db;
    double fraction_above_0db;   // INR > 0
    double fraction_at_least_10db;
    double fraction_at_most_3db;
};

GridStats grid_stats(const InrGrid &grid)
{
    const auto &v = grid.values_db();
    EmpiricalCdf cdf{std::vector<double>(v)};
    std::size_t above0 = 0, atleast10 = 0, atmost3 = 0;
    for (double x : v)
    {
        if (x > 0.0)
            above0++;
        if (x >= 10.0)
            atleast10++;
        if (x <= 3.0)
            atmost3++;
    }
    const double n = static_cast<double>(v.size());
    return {v.size(),
            cdf.sorted().front(),
            cdf.sorted().back(),
            cdf.quantile(0.5),
            static_cast<double>(above0) / n,
            static_cast<double>(atleast10) / n,
            static_cast<double>(atmost3) / n};
}

nlohmann::json grid_stats_json(const GridStats &s)
{
    return {{"pairs", s.pairs},
            {"min_inr_db", s.min_db},
            {"max_inr_db", s.max_db},
            {"median_inr_db", s.median_db},
            {"fraction_above_0db", s.fraction_above_0db},
            {"fraction_at_least_10db", s.fraction_at_least_10db},
            {"fraction_at_most_3db", s.fraction_at_most_3db}};
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs
{
    std::string config_path;
    std::string out_path;
    std::string cache_base;
    std::string meta_path;
    double ptx_dbm = std::nan("");
    double pnoise_dbm = std::nan("");
    unsigned threads = 0;
};

int cmd_simulate(const SimulateArgs &args)
{
    RunSetup setup;
    if (!args.config_path.empty())
        setup = load_simulation_config(args.config_path);
    if (!std::isnan(args.ptx_dbm))
        setup.sim.budget.ptx_dbm = args.ptx_dbm;
    if (!std::isnan(args.pnoise_dbm))
        setup.sim.budget.pnoise_dbm = args.pnoise_dbm;

    double calibration_db = 0.0;
    const InrGrid grid =
        simulate_grid(setup.sim, setup.tx_grid, setup.rx_grid, args.threads, &calibration_db);

    save_grid_csv(grid, args.out_path, metadata_comment(std::nullopt));
    if (!args.cache_base.empty())
        save_grid_binary(grid, args.cache_base + ".bin", args.cache_base + ".json");

    nlohmann::json meta = {{"meta", metadata_json(std::nullopt)},
                           {"setup", run_setup_to_json(setup)},
                           {"calibration_db", calibration_db},
                           {"pairs", grid.pair_count()}};
    const std::string meta_path =
        args.meta_path.empty() ? args.out_path + ".meta.json" : args.meta_path;
    write_text_file(meta_path, meta.dump(2) + "\n");

    std::cerr << "simulate: " << grid.pair_count() << " pairs -> " << args.out_path
              << " (calibration " << calibration_db << " dB)\n";
    return 0;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs
{
    std::string grid_path;
    std::string out_dir;
    std::string neighborhood = "2,2";
    std::vector<double> thresholds = {10.0, 20.0, 30.0};
    double nbr_threshold_db = 0.0;
    std::size_t cdf_points = 10000;
    unsigned threads = 0;
};

void append_csv_row(std::string &buffer, const char *side, const Direction &d,
                    std::initializer_list<double> values)
{
    char tmp[192];
    int len = std::snprintf(tmp, sizeof(tmp), "%s,%.6g,%.6g", side, d.azimuth_deg,
                            d.elevation_deg);
    buffer.append(tmp, static_cast<std::size_t>(len));
    for (double v : values)
    {
        len = std::snprintf(tmp, sizeof(tmp), ",%.9g", v);
        buffer.append(tmp, static_cast<std::size_t>(len));
    }
    buffer += '\n';
}

int cmd_analyze(const AnalyzeArgs &args)
{
    const InrGrid grid = load_grid_csv(args.grid_path);
    const NeighborhoodSpec spec = parse_neighborhood(args.neighborhood);
    std::filesystem::create_directories(args.out_dir);
    const std::filesystem::path dir(args.out_dir);
    const std::string meta = metadata_comment(std::nullopt);

    // Per-pair neighborhood stats, streamed (the full lattice yields
    // several hundred MB of rows).
    const PairNeighborhoodStats stats = pair_neighborhood_stats(grid, spec, args.threads);
    {
        const std::filesystem::path path = dir / "pair_stats.csv";
        std::FILE *out = std::fopen(path.string().c_str(), "wb");
        if (!out)
            throw DataError("cannot open " + path.string() + " for writing");
        std::string buffer = meta;
        buffer += "tx_az_deg,tx_el_deg,rx_az_deg,rx_el_deg,inr_db,inr_min_db,inr_max_db,inr_rng_db\n";
        char tmp[256];
        const auto &tx = grid.tx_grid();
        const auto &rx = grid.rx_grid();
        for (std::size_t i = 0; i < tx.size(); i++)
        {
            const Direction td = tx.at(i);
            for (std::size_t j = 0; j < rx.size(); j++)
            {
                const Direction rd = rx.at(j);
                const std::size_t off = i * rx.size() + j;
                const int len = std::snprintf(
                    tmp, sizeof(tmp), "%.6g,%.6g,%.6g,%.6g,%.9f,%.9f,%.9f,%.9f\n",
                    td.azimuth_deg, td.elevation_deg, rd.azimuth_deg, rd.elevation_deg,
                    grid.value(i, j), stats.inr_min_db[off], stats.inr_max_db[off],
                    stats.inr_rng_db[off]);
                buffer.append(tmp, static_cast<std::size_t>(len));
                if (buffer.size() > (1 << 22))
                {
                    std::fwrite(buffer.data(), 1, buffer.size(), out);
                    buffer.clear();
                }
            }
        }
        std::fwrite(buffer.data(), 1, buffer.size(), out);
        if (std::fclose(out) != 0)
            throw DataError("failed writing " + path.string());
    }

    // Per-beam summaries, both sides.
    {
        std::string csv = meta;
        csv += "side,az_deg,el_deg,max_db,median_db,min_db\n";
        for (const auto side : {BeamSide::kTx, BeamSide::kRx})
        {
            const char *name = side == BeamSide::kTx ? "tx" : "rx";
            for (const BeamSummary &s : per_beam_summary(grid, side))
                append_csv_row(csv, name, s.direction, {s.max_db, s.median_db, s.min_db});
        }
        write_text_file(dir / "beam_summary.csv", csv);
    }

    // Plain threshold fractions.
    {
        std::string csv = meta;
        csv += "side,az_deg,el_deg,threshold_db,fraction\n";
        for (const auto side : {BeamSide::kTx, BeamSide::kRx})
        {
            const char *name = side == BeamSide::kTx ? "tx" : "rx";
            const DirectionGrid &beams =
                side == BeamSide::kTx ? grid.tx_grid() : grid.rx_grid();
            for (double thr : args.thresholds)
            {
                const auto fractions = threshold_fraction(grid, side, thr);
                for (std::size_t b = 0; b < fractions.size(); b++)
                    append_csv_row(csv, name, beams.at(b), {thr, fractions[b]});
            }
        }
        write_text_file(dir / "threshold_fractions.csv", csv);
    }

    // Neighborhood threshold fractions for the analyzed spec.
    {
        std::string csv = meta;
        csv += "side,az_deg,el_deg,dtheta_deg,dphi_deg,threshold_db,fraction\n";
        for (const auto side : {BeamSide::kTx, BeamSide::kRx})
        {
            const char *name = side == BeamSide::kTx ? "tx" : "rx";
            const DirectionGrid &beams =
                side == BeamSide::kTx ? grid.tx_grid() : grid.rx_grid();
            const auto fractions =
                neighborhood_threshold_fraction(grid, stats, side, args.nbr_threshold_db);
            for (std::size_t b = 0; b < fractions.size(); b++)
                append_csv_row(csv, name, beams.at(b),
                               {static_cast<double>(spec.dtheta_deg),
                                static_cast<double>(spec.dphi_deg), args.nbr_threshold_db,
                                fractions[b]});
        }
        write_text_file(dir / "neighborhood_fractions.csv", csv);
    }

    // Quantile-decimated empirical CDF for plotting.
    {
        EmpiricalCdf cdf{std::vector<double>(grid.values_db())};
        const std::size_t points = std::min(args.cdf_points, cdf.size());
        std::string csv = meta;
        csv += "inr_db,cdf\n";
        char tmp[96];
        for (std::size_t k = 0; k < points; k++)
        {
            const double q = static_cast<double>(k + 1) / static_cast<double>(points);
            const int len =
                std::snprintf(tmp, sizeof(tmp), "%.9g,%.9g\n", cdf.quantile(q), q);
            csv.append(tmp, static_cast<std::size_t>(len));
        }
        write_text_file(dir / "cdf.csv", csv);
    }

    // Headline summary of the grid.
    {
        nlohmann::json j = {{"meta", metadata_json(std::nullopt)},
                            {"stats", grid_stats_json(grid_stats(grid))}};
        write_text_file(dir / "summary.json", j.dump(2) + "\n");
    }

    std::cerr << "analyze: wrote " << dir.string() << " (neighborhood " << spec.dtheta_deg
              << "," << spec.dphi_deg << ")\n";
    return 0;
}

// ---- fit -------------------------------------------------------------------

struct FitArgs
{
    std::string grid_path;
    std::string out_path;
    int max_delta = 5;
    std::size_t min_bin_count = 100;
    unsigned threads = 0;
};

int cmd_fit(const FitArgs &args)
{
    const InrGrid grid = load_grid_csv(args.grid_path);
    GridFitOptions options;
    options.max_delta = args.max_delta;
    options.min_bin_count = args.min_bin_count;
    options.threads = args.threads;

    const GridFitResult result = fit_grid_models(grid, options);
    nlohmann::json j = grid_fit_to_json(result);
    j["meta"] = metadata_json(std::nullopt);
    write_text_file(args.out_path, j.dump(2) + "\n");

    std::cerr << "fit: mu " << result.global.mu_db << " sigma2 " << result.global.sigma2_db
              << " -> " << args.out_path << "\n";
    return 0;
}

// ---- sample ----------------------------------------------------------------

struct SampleArgs
{
    std::string quantity = "global";
    std::string neighborhood;
    double inr_db = std::nan("");
    std::size_t n = 1;
    std::uint64_t seed = 1;
    std::string out_path;
    bool csv = false;
};

int cmd_sample(const SampleArgs &args)
{
    Rng rng(args.seed);
    NeighborhoodSpec spec{0, 0};
    const bool needs_spec = args.quantity != "global";
    if (needs_spec)
    {
        if (args.neighborhood.empty())
            throw ConfigError("--neighborhood is required for quantity '" + args.quantity +
                              "'");
        spec = parse_neighborhood(args.neighborhood);
    }

    const bool conditioned =
        args.quantity == "inr-min-cond" || args.quantity == "inr-max-cond";
    if (conditioned && !std::isnan(args.inr_db))
    {
        const auto lookup = delta_fit_lookup(args.quantity == "inr-min-cond"
                                                 ? DeltaTable::kMin
                                                 : DeltaTable::kMax,
                                             spec, args.inr_db);
        if (lookup.clamped)
            std::cerr << "warning: nominal INR " << args.inr_db
                      << " dB outside the tabulated [-20, 40] dB, clamped\n";
    }

    auto draw = [&]() -> double {
        if (args.quantity == "global")
            return sample_global_inr(rng);
        if (args.quantity == "inr-min")
            return sample_inr_min(spec, rng);
        if (args.quantity == "inr-max")
            return sample_inr_max(spec, rng);
        if (args.quantity == "range")
            return sample_inr_range(spec, rng);
        if (args.quantity == "inr-min-cond")
            return std::isnan(args.inr_db) ? sample_inr_min_composed(spec, rng)
                                           : sample_inr_min_conditioned(spec, args.inr_db, rng);
        if (args.quantity == "inr-max-cond")
            return std::isnan(args.inr_db) ? sample_inr_max_composed(spec, rng)
                                           : sample_inr_max_conditioned(spec, args.inr_db, rng);
        throw ConfigError("unknown sample quantity '" + args.quantity + "'");
    };

    std::string out;
    if (!args.out_path.empty())
        out += metadata_comment(args.seed);
    if (args.csv)
        out += "sample_db\n";
    char tmp[64];
    for (std::size_t i = 0; i < args.n; i++)
    {
        const int len = std::snprintf(tmp, sizeof(tmp), "%.10g\n", draw());
        out.append(tmp, static_cast<std::size_t>(len));
    }

    if (args.out_path.empty())
        std::fputs(out.c_str(), stdout);
    else
        write_text_file(args.out_path, out);
    return 0;
}

// ---- report ----------------------------------------------------------------

struct ReportArgs
{
    std::string grid_path;
    std::string out_path;
};

int cmd_report(const ReportArgs &args)
{
    const InrGrid grid = load_grid_csv(args.grid_path);
    const GridStats s = grid_stats(grid);

    std::printf("pairs:                  %zu\n", s.pairs);
    std::printf("min_inr_db:             %.4f\n", s.min_db);
    std::printf("max_inr_db:             %.4f\n", s.max_db);
    std::printf("median_inr_db:          %.4f\n", s.median_db);
    std::printf("fraction_above_0db:     %.6f\n", s.fraction_above_0db);
    std::printf("fraction_at_least_10db: %.6f\n", s.fraction_at_least_10db);
    std::printf("fraction_at_most_3db:   %.6f\n", s.fraction_at_most_3db);

    if (!args.out_path.empty())
    {
        nlohmann::json j = {{"meta", metadata_json(std::nullopt)},
                            {"stats", grid_stats_json(s)}};
        write_text_file(args.out_path, j.dump(2) + "\n");
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    std::ostringstream cmd;
    for (int i = 0; i < argc; i++)
        cmd << (i ? " " : "") << argv[i];
    g_command_line = cmd.str();

    CLI::App app{"Beamformed self-interference simulation and analysis"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto *sim = app.add_subcommand("simulate", "Synthesize an INR grid over beam pairs");
    sim->add_option("--config", sim_args.config_path, "Geometry/budget JSON configuration");
    sim->add_option("--out", sim_args.out_path, "Output grid CSV")->required();
    sim->add_option("--cache", sim_args.cache_base, "Binary cache base path (.bin/.json)");
    sim->add_option("--meta", sim_args.meta_path, "Metadata JSON path");
    sim->add_option("--ptx-dbm", sim_args.ptx_dbm, "Override transmit input power");
    sim->add_option("--pnoise-dbm", sim_args.pnoise_dbm, "Override receive noise power");
    sim->add_option("--threads", sim_args.threads, "Worker threads (0 = all cores)");

    AnalyzeArgs an_args;
    auto *an = app.add_subcommand("analyze", "Neighborhood and per-beam statistics");
    an->add_option("--grid", an_args.grid_path, "Input grid CSV")->required();
    an->add_option("--out-dir", an_args.out_dir, "Output directory")->required();
    an->add_option("--neighborhood", an_args.neighborhood, "Spec D,D in degrees (default 2,2)");
    an->add_option("--thresholds", an_args.thresholds, "INR thresholds in dB")
        ->delimiter(',');
    an->add_option("--nbr-threshold", an_args.nbr_threshold_db,
                   "Threshold for neighborhood-min fractions (dB)");
    an->add_option("--cdf-points", an_args.cdf_points, "Decimated CDF point count");
    an->add_option("--threads", an_args.threads, "Worker threads (0 = all cores)");

    FitArgs fit_args;
    auto *fit = app.add_subcommand("fit", "Fit distribution models to a grid");
    fit->add_option("--grid", fit_args.grid_path, "Input grid CSV")->required();
    fit->add_option("--out", fit_args.out_path, "Output fits JSON")->required();
    fit->add_option("--max-delta", fit_args.max_delta, "Largest neighborhood size");
    fit->add_option("--min-bin-count", fit_args.min_bin_count,
                    "Minimum samples per conditioned bin");
    fit->add_option("--threads", fit_args.threads, "Worker threads (0 = all cores)");

    SampleArgs sm_args;
    auto *sm = app.add_subcommand("sample", "Draw realizations from the embedded models");
    sm->add_option("--quantity", sm_args.quantity,
                   "global|inr-min|inr-max|inr-min-cond|inr-max-cond|range");
    sm->add_option("--neighborhood", sm_args.neighborhood, "Spec D,D in degrees");
    sm->add_option("--inr-db", sm_args.inr_db,
                   "Nominal INR for conditioned draws (omit to compose with a global draw)");
    sm->add_option("--n", sm_args.n, "Number of draws");
    sm->add_option("--seed", sm_args.seed, "Generator seed");
    sm->add_option("--out", sm_args.out_path, "Output file (default stdout)");
    sm->add_flag("--csv", sm_args.csv, "Emit a CSV header");

    ReportArgs rp_args;
    auto *rp = app.add_subcommand("report", "Headline statistics of a grid");
    rp->add_option("--grid", rp_args.grid_path, "Input grid CSV")->required();
    rp->add_option("--out", rp_args.out_path, "Optional JSON output");

    try
    {
        app.parse(argc, argv);
        if (sim->parsed())
            return cmd_simulate(sim_args);
        if (an->parsed())
            return cmd_analyze(an_args);
        if (fit->parsed())
            return cmd_fit(fit_args);
        if (sm->parsed())
            return cmd_sample(sm_args);
        if (rp->parsed())
            return cmd_report(rp_args);
        return 2;
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 2;
    }
    catch (const ConfigError &e)
    {
        std::cerr << "error (config): " << e.what() << "\n";
        return 2;
    }
    catch (const DataError &e)
    {
        std::cerr << "error (data): " << e.what() << "\n";
        return 3;
    }
    catch (const NumericError &e)
    {
        std::cerr << "error (numeric): " << e.what() << "\n";
        return 4;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
