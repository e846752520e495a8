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

// End-to-end checks of the command-line interface: runs the built binary
// through a shell, inspects files, output, and exit codes.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sibeam/grid.hpp"

namespace fs = std::filesystem;

namespace
{

const char *cli_path()
{
    return SIBEAM_CLI_PATH;
}

struct RunResult
{
    int exit_code;
    std::string output; // stdout only
};

RunResult run(const std::string &args, bool merge_stderr = false)
{
    static int counter = 0;
    const fs::path out_file =
        fs::temp_directory_path() / ("sibeam_cli_out_" + std::to_string(counter++) + ".txt");
    const std::string cmd = std::string(cli_path()) + " " + args + " > " +
                            out_file.string() +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    fs::remove(out_file);
    return result;
}

std::string read_file(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path work_dir()
{
    const fs::path dir = fs::temp_directory_path() / "sibeam_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const std::string &name, const nlohmann::json &j)
{
    const fs::path p = work_dir() / name;
    std::ofstream out(p);
    out << j.dump(2);
    return p;
}

std::size_t data_row_count(const fs::path &csv)
{
    std::ifstream in(csv);
    std::string line;
    std::size_t rows = 0;
    bool header_seen = false;
    while (std::getline(in, line))
    {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen)
        {
            header_seen = true;
            continue;
        }
        rows++;
    }
    return rows;
}

nlohmann::json tiny_config()
{
    return {{"rows", 4},
            {"cols", 4},
            {"tx_grid", {{"az_min", -2}, {"az_max", 2}, {"el_min", -1}, {"el_max", 1}, {"step", 1}}},
            {"rx_grid", {{"az_min", -2}, {"az_max", 2}, {"el_min", -1}, {"el_max", 1}, {"step", 1}}}};
}

} // namespace

TEST_CASE("simulate: row count, metadata, reproducibility")
{
    const fs::path cfg = write_config("tiny.json", tiny_config());
    const fs::path out = work_dir() / "grid.csv";

    const RunResult first =
        run("simulate --config " + cfg.string() + " --out " + out.string());
    CHECK(first.exit_code == 0);
    CHECK(data_row_count(out) == 15 * 15);

    const std::string content = read_file(out);
    CHECK(content.rfind("# command:", 0) == 0);
    CHECK(content.find("# version: 0.1.0") != std::string::npos);

    const nlohmann::json meta = nlohmann::json::parse(read_file(out.string() + ".meta.json"));
    CHECK(meta.at("pairs") == 225);
    CHECK(meta.contains("calibration_db"));
    CHECK(meta.at("setup").at("rows") == 4);

    // Re-running the identical command reproduces identical bytes.
    const RunResult second =
        run("simulate --config " + cfg.string() + " --out " + out.string());
    CHECK(second.exit_code == 0);
    CHECK(read_file(out) == content);

    // The produced CSV loads back through the library.
    const sibeam::InrGrid grid = sibeam::load_grid_csv(out);
    CHECK(grid.pair_count() == 225);

    // 3 azimuths x 1 elevation on both sides: 9 data rows.
    nlohmann::json tiny3 = tiny_config();
    tiny3["tx_grid"] = {{"az_min", -1}, {"az_max", 1}, {"el_min", 0}, {"el_max", 0},
                        {"step", 1}};
    tiny3["rx_grid"] = tiny3["tx_grid"];
    const fs::path cfg3 = write_config("tiny_3x1.json", tiny3);
    const fs::path out3 = work_dir() / "grid_3x1.csv";
    REQUIRE(run("simulate --config " + cfg3.string() + " --out " + out3.string())
                .exit_code == 0);
    CHECK(data_row_count(out3) == 9);
}

TEST_CASE("simulate: binary cache and budget overrides")
{
    const fs::path cfg = write_config("tiny2.json", tiny_config());
    const fs::path out = work_dir() / "grid2.csv";
    const fs::path cache = work_dir() / "grid2_cache";

    const RunResult r = run("simulate --config " + cfg.string() + " --out " + out.string() +
                            " --cache " + cache.string() + " --ptx-dbm -10");
    CHECK(r.exit_code == 0);
    const sibeam::InrGrid cached =
        sibeam::load_grid_binary(cache.string() + ".bin", cache.string() + ".json");
    const sibeam::InrGrid csv = sibeam::load_grid_csv(out);
    CHECK(cached.pair_count() == csv.pair_count());
    // ptx override shifts INR by +5 dB relative to the default-budget run.
    const fs::path base_out = work_dir() / "grid2_base.csv";
    REQUIRE(run("simulate --config " + cfg.string() + " --out " + base_out.string())
                .exit_code == 0);
    const sibeam::InrGrid base = sibeam::load_grid_csv(base_out);
    CHECK(csv.value(0, 0) == doctest::Approx(base.value(0, 0) + 5.0).epsilon(1e-9));
}

TEST_CASE("exit codes: config, data, and usage errors")
{
    const RunResult missing =
        run("simulate --config /nonexistent.json --out /tmp/x.csv", true);
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("cannot open configuration file") != std::string::npos);

    const fs::path bad = work_dir() / "bad.csv";
    {
        std::ofstream out(bad);
        out << "tx_az_deg,tx_el_deg,rx_az_deg,rx_el_deg,inr_db\n0,0,0,0\n";
    }
    const RunResult malformed = run("report --grid " + bad.string(), true);
    CHECK(malformed.exit_code == 3);
    CHECK(malformed.output.find("line 2") != std::string::npos);
    CHECK(run("analyze --grid " + bad.string() + " --out-dir " + work_dir().string())
              .exit_code == 3);

    CHECK(run("sample --quantity bogus --n 1").exit_code == 2);
    CHECK(run("sample --quantity inr-min --n 1").exit_code == 2); // missing neighborhood
    CHECK(run("nonsense").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
    const RunResult version = run("--version");
    CHECK(version.exit_code == 0);
    CHECK(version.output.find("0.1.0") != std::string::npos);
}

TEST_CASE("report lists the headline statistics")
{
    const fs::path cfg = write_config("tiny3.json", tiny_config());
    const fs::path out = work_dir() / "grid3.csv";
    REQUIRE(run("simulate --config " + cfg.string() + " --out " + out.string()).exit_code ==
            0);

    const fs::path json_out = work_dir() / "report.json";
    const RunResult r = run("report --grid " + out.string() + " --out " + json_out.string());
    CHECK(r.exit_code == 0);
    for (const char *key : {"min_inr_db", "max_inr_db", "median_inr_db",
                            "fraction_above_0db", "fraction_at_least_10db",
                            "fraction_at_most_3db"})
        CHECK(r.output.find(key) != std::string::npos);

    // Fractions match a counting oracle over the same file.
    const sibeam::InrGrid grid = sibeam::load_grid_csv(out);
    std::size_t above0 = 0;
    for (double v : grid.values_db())
        if (v > 0.0)
            above0++;
    const nlohmann::json j = nlohmann::json::parse(read_file(json_out));
    CHECK(j.at("stats").at("fraction_above_0db").get<double>() ==
          doctest::Approx(static_cast<double>(above0) / grid.pair_count()));
    CHECK(j.at("stats").at("pairs") == grid.pair_count());
}

TEST_CASE("sample: determinism under --seed")
{
    const fs::path a = work_dir() / "samples_a.csv";
    const fs::path b = work_dir() / "samples_b.csv";
    REQUIRE(run("sample --quantity inr-min-cond --neighborhood 2,2 --inr-db 20 --n 64 "
                "--seed 99 --csv --out " + a.string()).exit_code == 0);
    REQUIRE(run("sample --quantity inr-min-cond --neighborhood 2,2 --inr-db 20 --n 64 "
                "--seed 99 --csv --out " + b.string()).exit_code == 0);
    // Identical apart from the first metadata line (the command embeds the path).
    auto strip_first_line = [](std::string s) {
        return s.substr(s.find('\n') + 1);
    };
    CHECK(strip_first_line(read_file(a)) == strip_first_line(read_file(b)));

    const RunResult one = run("sample --quantity global --n 8 --seed 5");
    const RunResult two = run("sample --quantity global --n 8 --seed 5");
    const RunResult other = run("sample --quantity global --n 8 --seed 6");
    CHECK(one.output == two.output);
    CHECK(one.output != other.output);
    // One value per line.
    std::istringstream lines(one.output);
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line))
        if (!line.empty())
            count++;
    CHECK(count == 8);
}

TEST_CASE("analyze: outputs and symmetric summaries on a coaxial grid")
{
    nlohmann::json cfg_json = tiny_config();
    cfg_json["arrangement"] = "coaxial";
    cfg_json["rows"] = 8;
    cfg_json["cols"] = 8;
    cfg_json["tx_grid"] = {{"az_min", -4}, {"az_max", 4}, {"el_min", -1}, {"el_max", 1},
                           {"step", 1}};
    cfg_json["rx_grid"] = cfg_json["tx_grid"];
    const fs::path cfg = write_config("coax.json", cfg_json);
    const fs::path grid_csv = work_dir() / "coax_grid.csv";
    REQUIRE(run("simulate --config " + cfg.string() + " --out " + grid_csv.string())
                .exit_code == 0);

    const fs::path out_dir = work_dir() / "coax_analysis";
    const RunResult r = run("analyze --grid " + grid_csv.string() + " --out-dir " +
                            out_dir.string() + " --neighborhood 1,1");
    CHECK(r.exit_code == 0);
    for (const char *name : {"pair_stats.csv", "beam_summary.csv",
                             "threshold_fractions.csv", "neighborhood_fractions.csv",
                             "cdf.csv", "summary.json"})
        CHECK(fs::exists(out_dir / name));

    // Transpose-symmetric grid: tx and rx summaries coincide beam by beam.
    std::ifstream in(out_dir / "beam_summary.csv");
    std::string line;
    std::vector<std::string> tx_rows, rx_rows;
    while (std::getline(in, line))
    {
        if (line.rfind("tx,", 0) == 0)
            tx_rows.push_back(line.substr(3));
        else if (line.rfind("rx,", 0) == 0)
            rx_rows.push_back(line.substr(3));
    }
    REQUIRE(!tx_rows.empty());
    REQUIRE(tx_rows.size() == rx_rows.size());
    for (std::size_t i = 0; i < tx_rows.size(); i++)
        CHECK(tx_rows[i] == rx_rows[i]);

    // (0,0) neighborhood turns the range column into zeros.
    const fs::path zero_dir = work_dir() / "coax_zero";
    REQUIRE(run("analyze --grid " + grid_csv.string() + " --out-dir " + zero_dir.string() +
                " --neighborhood 0,0").exit_code == 0);
    std::ifstream zero_in(zero_dir / "pair_stats.csv");
    bool header_seen = false;
    while (std::getline(zero_in, line))
    {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen)
        {
            header_seen = true;
            continue;
        }
        const auto last_comma = line.rfind(',');
        CHECK(std::stod(line.substr(last_comma + 1)) == 0.0);
    }
}

TEST_CASE("fit: output parses and validates against the table schema")
{
    const fs::path cfg = write_config("tiny4.json", tiny_config());
    const fs::path grid_csv = work_dir() / "grid4.csv";
    REQUIRE(run("simulate --config " + cfg.string() + " --out " + grid_csv.string())
                .exit_code == 0);

    const fs::path fits = work_dir() / "fits.json";
    const RunResult r = run("fit --grid " + grid_csv.string() + " --out " + fits.string() +
                            " --max-delta 1 --min-bin-count 5");
    CHECK(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(read_file(fits));
    CHECK(j.at("meta").at("version") == "0.1.0");
    CHECK(j.at("global").at("family") == "normal_db");
    CHECK(j.at("tables").at("parametrization") == "scale");
    CHECK(j.at("tables").at("min_normal").at("cells").size() == 2);
}
