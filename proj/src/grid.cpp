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

#include "sibeam/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sibeam/parallel.hpp"

namespace sibeam
{

namespace
{

constexpr const char *kCsvHeader = "tx_az_deg,tx_el_deg,rx_az_deg,rx_el_deg,inr_db";

std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Angles are keyed in integer micro-degrees so textual variants of the same
// angle ("0.5", "0.50") collapse to one lattice entry.
long long microdeg(double x)
{
    return std::llround(x * 1e6);
}

struct ParsedRow
{
    double fields[5];
    std::size_t line_no;
};

// Parses one CSV data line into 5 double fields; returns false and an error
// description on malformed input.
bool parse_row(const char *begin, const char *end, double fields[5], std::string &error)
{
    const char *p = begin;
    for (int f = 0; f < 5; f++)
    {
        char *after = nullptr;
        fields[f] = std::strtod(p, &after);
        if (after == p)
        {
            error = "expected a number in field " + std::to_string(f + 1);
            return false;
        }
        p = after;
        while (p < end && (*p == ' ' || *p == '\t'))
            p++;
        if (f < 4)
        {
            if (p >= end || *p != ',')
            {
                error = "expected 5 comma-separated fields, found " + std::to_string(f + 1);
                return false;
            }
            p++;
        }
    }
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r'))
        p++;
    if (p != end)
    {
        error = "trailing content after field 5";
        return false;
    }
    return true;
}

std::vector<double> sorted_values(const std::map<long long, std::size_t> &keys)
{
    std::vector<double> out;
    out.reserve(keys.size());
    for (const auto &[k, unused] : keys)
        out.push_back(static_cast<double>(k) / 1e6);
    return out;
}

} // namespace

InrGrid::InrGrid(DirectionGrid tx_grid, DirectionGrid rx_grid, std::vector<double> values_db)
    : tx_grid_(std::move(tx_grid)), rx_grid_(std::move(rx_grid)),
      values_db_(std::move(values_db))
{
    if (values_db_.size() != tx_grid_.size() * rx_grid_.size())
    {
        std::ostringstream msg;
        msg << "value count " << values_db_.size() << " does not match grid shape "
            << tx_grid_.size() << " x " << rx_grid_.size();
        throw DataError(msg.str());
    }
    for (double v : values_db_)
        if (!std::isfinite(v))
            throw DataError("INR grid has non-finite entries");
}

void SimulationSetup::validate() const
{
    tx_array.validate();
    rx_array.validate();
    geometry.validate();
    if (!std::isfinite(budget.ptx_dbm) || !std::isfinite(budget.pnoise_dbm))
        throw ConfigError("link budget must be finite");
    if (!std::isnan(calibration_db) && !std::isfinite(calibration_db))
        throw ConfigError("calibration must be finite or unset");
}

InrGrid simulate_grid(const SimulationSetup &setup, const DirectionGrid &tx_grid,
                      const DirectionGrid &rx_grid, unsigned threads,
                      double *calibration_out)
{
    setup.validate();

    ChannelMatrix H = spherical_wave_channel(setup.tx_array, setup.rx_array, setup.geometry);
    if (std::isnan(setup.calibration_db))
    {
        // Calibration is a property of the rig, referenced to the default
        // budget; run-specific budget changes then shift the grid physically.
        calibrate_to_broadside_inr(H, setup.tx_array, setup.rx_array, LinkBudget{},
                                   setup.broadside_inr_db);
    }
    else
        H.set_calibration_db(setup.calibration_db);
    if (calibration_out)
        *calibration_out = H.calibration_db();

    const std::size_t n_tx = tx_grid.size();
    const std::size_t n_rx = rx_grid.size();
    const Eigen::Index tx_el = static_cast<Eigen::Index>(setup.tx_array.element_count());
    const Eigen::Index rx_el = static_cast<Eigen::Index>(setup.rx_array.element_count());

    // Per-direction responses are computed once and reused across pairs.
    // F holds conjugate transmit weights; A holds raw receive responses so
    // that w^T (H f) = a^H (H f) is a plain Eigen dot per pair.
    Eigen::MatrixXcd F(tx_el, static_cast<Eigen::Index>(n_tx));
    parallel_chunks(n_tx, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; i++)
            F.col(static_cast<Eigen::Index>(i)) =
                array_response(setup.tx_array, tx_grid.at(i)).conjugate();
    });
    Eigen::MatrixXcd A(rx_el, static_cast<Eigen::Index>(n_rx));
    parallel_chunks(n_rx, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; j++)
            A.col(static_cast<Eigen::Index>(j)) =
                array_response(setup.rx_array, rx_grid.at(j));
    });

    // B = H * F: one beamformed channel projection per transmit beam.
    Eigen::MatrixXcd B(rx_el, static_cast<Eigen::Index>(n_tx));
    parallel_chunks(n_tx, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; i++)
            B.col(static_cast<Eigen::Index>(i)) =
                H.entries() * F.col(static_cast<Eigen::Index>(i));
    });

    const double offset_db =
        setup.budget.ptx_dbm - setup.budget.pnoise_dbm + H.calibration_db();

    std::vector<double> values(n_tx * n_rx);
    parallel_chunks(n_tx, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; i++)
        {
            const auto b = B.col(static_cast<Eigen::Index>(i));
            double *row = values.data() + i * n_rx;
            for (std::size_t j = 0; j < n_rx; j++)
            {
                // a.dot(b) conjugates a, giving exactly w^T (H f).
                const std::complex<double> c = A.col(static_cast<Eigen::Index>(j)).dot(b);
                const double mag = std::abs(c);
                if (!(mag > 0.0) || !std::isfinite(mag))
                    throw NumericError("beamformed coupling degenerated to zero");
                row[j] = offset_db + 20.0 * std::log10(mag);
            }
        }
    });

    return InrGrid(tx_grid, rx_grid, std::move(values));
}

void save_grid_csv(const InrGrid &grid, const std::filesystem::path &path,
                   const std::string &metadata_comment)
{
    std::FILE *out = std::fopen(path.string().c_str(), "wb");
    if (!out)
        throw DataError("cannot open " + path.string() + " for writing");

    std::string buffer;
    buffer.reserve(1 << 22);
    if (!metadata_comment.empty())
    {
        buffer += metadata_comment;
        if (metadata_comment.back() != '\n')
            buffer += '\n';
    }
    buffer += kCsvHeader;
    buffer += '\n';

    const auto &tx = grid.tx_grid();
    const auto &rx = grid.rx_grid();
    char line[160];
    for (std::size_t i = 0; i < tx.size(); i++)
    {
        const Direction td = tx.at(i);
        for (std::size_t j = 0; j < rx.size(); j++)
        {
            const Direction rd = rx.at(j);
            const int len = std::snprintf(line, sizeof(line), "%.6g,%.6g,%.6g,%.6g,%.9f\n",
                                          td.azimuth_deg, td.elevation_deg, rd.azimuth_deg,
                                          rd.elevation_deg, grid.value(i, j));
            buffer.append(line, static_cast<std::size_t>(len));
            if (buffer.size() > (1 << 22) - 256)
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

InrGrid load_grid_csv(const std::filesystem::path &path)
{
    const std::string text = read_file(path);

    // Pass 1: validate rows and collect the distinct lattice angles.
    std::map<long long, std::size_t> tx_az, tx_el, rx_az, rx_el;
    bool header_seen = false;
    std::size_t data_rows = 0;
    std::size_t line_no = 0;

    auto for_each_line = [&text](auto &&fn) {
        const char *p = text.data();
        const char *end = text.data() + text.size();
        std::size_t line = 0;
        while (p < end)
        {
            const char *nl = static_cast<const char *>(std::memchr(p, '\n', end - p));
            const char *line_end = nl ? nl : end;
            line++;
            fn(p, line_end, line);
            p = nl ? nl + 1 : end;
        }
    };

    auto is_blank = [](const char *b, const char *e) {
        for (const char *p = b; p < e; p++)
            if (*p != ' ' && *p != '\t' && *p != '\r')
                return false;
        return true;
    };

    for_each_line([&](const char *b, const char *e, std::size_t line) {
        line_no = line;
        if (is_blank(b, e) || *b == '#')
            return;
        if (!header_seen)
        {
            std::string head(b, e);
            while (!head.empty() && (head.back() == '\r' || head.back() == ' '))
                head.pop_back();
            if (head != kCsvHeader)
                throw DataError("line " + std::to_string(line) +
                                ": expected header '" + kCsvHeader + "'");
            header_seen = true;
            return;
        }
        double fields[5];
        std::string error;
        if (!parse_row(b, e, fields, error))
            throw DataError("line " + std::to_string(line) + ": " + error);
        for (int f = 0; f < 4; f++)
            if (!std::isfinite(fields[f]))
                throw DataError("line " + std::to_string(line) + ": non-finite angle");
        if (!std::isfinite(fields[4]))
            throw DataError("line " + std::to_string(line) + ": non-finite INR value");
        tx_az.emplace(microdeg(fields[0]), 0);
        tx_el.emplace(microdeg(fields[1]), 0);
        rx_az.emplace(microdeg(fields[2]), 0);
        rx_el.emplace(microdeg(fields[3]), 0);
        data_rows++;
    });

    if (!header_seen)
        throw DataError(path.string() + ": missing header row");
    if (data_rows == 0)
        throw DataError(path.string() + ": no data rows");

    auto index_map = [](std::map<long long, std::size_t> &m) {
        std::size_t idx = 0;
        for (auto &[k, v] : m)
            v = idx++;
    };
    index_map(tx_az);
    index_map(tx_el);
    index_map(rx_az);
    index_map(rx_el);

    DirectionGrid tx_grid(sorted_values(tx_az), sorted_values(tx_el));
    DirectionGrid rx_grid(sorted_values(rx_az), sorted_values(rx_el));

    const std::size_t expected = tx_grid.size() * rx_grid.size();
    std::vector<double> values(expected, 0.0);
    std::vector<std::uint8_t> seen(expected, 0);

    // Pass 2: fill the tensor, flagging duplicates as they appear.
    header_seen = false;
    for_each_line([&](const char *b, const char *e, std::size_t line) {
        if (is_blank(b, e) || *b == '#')
            return;
        if (!header_seen)
        {
            header_seen = true;
            return;
        }
        double fields[5];
        std::string error;
        parse_row(b, e, fields, error); // validated in pass 1
        const std::size_t ti = tx_grid.flat_index(tx_az.at(microdeg(fields[0])),
                                                  tx_el.at(microdeg(fields[1])));
        const std::size_t ri = rx_grid.flat_index(rx_az.at(microdeg(fields[2])),
                                                  rx_el.at(microdeg(fields[3])));
        const std::size_t offset = ti * rx_grid.size() + ri;
        if (seen[offset])
        {
            std::ostringstream msg;
            msg << "line " << line << ": duplicate direction tuple (" << fields[0] << ", "
                << fields[1] << ", " << fields[2] << ", " << fields[3] << ")";
            throw DataError(msg.str());
        }
        seen[offset] = 1;
        values[offset] = fields[4];
    });

    if (data_rows != expected)
    {
        // Name the first missing pair for the error message.
        for (std::size_t i = 0; i < expected; i++)
        {
            if (!seen[i])
            {
                const std::size_t ti = i / rx_grid.size();
                const std::size_t ri = i % rx_grid.size();
                const Direction td = tx_grid.at(ti);
                const Direction rd = rx_grid.at(ri);
                std::ostringstream msg;
                msg << path.string() << ": grid incomplete, " << (expected - data_rows)
                    << " of " << expected << " direction pairs missing (first missing: tx("
                    << td.azimuth_deg << ", " << td.elevation_deg << ") rx("
                    << rd.azimuth_deg << ", " << rd.elevation_deg << "))";
                throw DataError(msg.str());
            }
        }
    }

    return InrGrid(std::move(tx_grid), std::move(rx_grid), std::move(values));
}

namespace
{

nlohmann::json grid_axes_json(const DirectionGrid &g)
{
    return {{"azimuths_deg", g.azimuths_deg()}, {"elevations_deg", g.elevations_deg()}};
}

DirectionGrid grid_axes_from_json(const nlohmann::json &j)
{
    return DirectionGrid(j.at("azimuths_deg").get<std::vector<double>>(),
                         j.at("elevations_deg").get<std::vector<double>>());
}

} // namespace

void save_grid_binary(const InrGrid &grid, const std::filesystem::path &data_path,
                      const std::filesystem::path &sidecar_path)
{
    std::ofstream out(data_path, std::ios::binary);
    if (!out)
        throw DataError("cannot open " + data_path.string() + " for writing");
    out.write(reinterpret_cast<const char *>(grid.values_db().data()),
              static_cast<std::streamsize>(grid.values_db().size() * sizeof(double)));
    if (!out)
        throw DataError("failed writing " + data_path.string());

    nlohmann::json sidecar = {
        {"dtype", "float64"},
        {"endianness", "little"},
        {"layout", "tx_az,tx_el,rx_az,rx_el"},
        {"tx_grid", grid_axes_json(grid.tx_grid())},
        {"rx_grid", grid_axes_json(grid.rx_grid())},
    };
    std::ofstream meta(sidecar_path);
    if (!meta)
        throw DataError("cannot open " + sidecar_path.string() + " for writing");
    meta << sidecar.dump(2) << "\n";
}

InrGrid load_grid_binary(const std::filesystem::path &data_path,
                         const std::filesystem::path &sidecar_path)
{
    std::ifstream meta(sidecar_path);
    if (!meta)
        throw DataError("cannot open " + sidecar_path.string());
    nlohmann::json sidecar;
    try
    {
        meta >> sidecar;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw DataError("malformed grid sidecar: " + std::string(e.what()));
    }
    DirectionGrid tx_grid = grid_axes_from_json(sidecar.at("tx_grid"));
    DirectionGrid rx_grid = grid_axes_from_json(sidecar.at("rx_grid"));

    const std::size_t count = tx_grid.size() * rx_grid.size();
    std::vector<double> values(count);
    std::ifstream in(data_path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + data_path.string());
    in.read(reinterpret_cast<char *>(values.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double))
        throw DataError(data_path.string() + " is shorter than the sidecar shape");
    char extra = 0;
    if (in.read(&extra, 1))
        throw DataError(data_path.string() + " is longer than the sidecar shape");

    return InrGrid(std::move(tx_grid), std::move(rx_grid), std::move(values));
}

std::vector<double> slice_for_tx(const InrGrid &grid, const Direction &tx_dir)
{
    const std::size_t i = grid.tx_grid().index_of(tx_dir);
    const std::size_t n_rx = grid.rx_grid().size();
    std::vector<double> slice(n_rx);
    for (std::size_t j = 0; j < n_rx; j++)
        slice[j] = grid.value(i, j);
    return slice;
}

std::vector<double> slice_for_rx(const InrGrid &grid, const Direction &rx_dir)
{
    const std::size_t j = grid.rx_grid().index_of(rx_dir);
    const std::size_t n_tx = grid.tx_grid().size();
    std::vector<double> slice(n_tx);
    for (std::size_t i = 0; i < n_tx; i++)
        slice[i] = grid.value(i, j);
    return slice;
}

} // namespace sibeam
