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

#include "sibeam/channel.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sibeam
{

ChannelMatrix::ChannelMatrix(Eigen::MatrixXcd entries, double calibration_db)
    : entries_(std::move(entries)), calibration_db_(calibration_db)
{
    if (entries_.rows() < 1 || entries_.cols() < 1)
        throw ConfigError("channel matrix must be non-empty");
    if (!entries_.allFinite())
        throw DataError("channel matrix has non-finite entries");
    if (!std::isfinite(calibration_db_))
        throw ConfigError("channel calibration must be finite");
}

ChannelMatrix spherical_wave_channel(const UpaConfig &tx, const UpaConfig &rx,
                                     const PlatformGeometry &geom, double calibration_db)
{
    tx.validate();
    rx.validate();
    geom.validate();
    if (tx.carrier_hz != rx.carrier_hz)
        throw ConfigError("tx and rx arrays must share the carrier frequency");

    const double lambda = tx.wavelength_m();
    const double k = 2.0 * 3.14159265358979323846 / lambda;
    const double r0 = (geom.tx.center - geom.rx.center).norm();

    const Eigen::Matrix3d Rtx = geom.tx.rotation();
    const Eigen::Matrix3d Rrx = geom.rx.rotation();
    const auto tx_local = element_positions(tx);
    const auto rx_local = element_positions(rx);

    std::vector<Eigen::Vector3d> tx_global(tx_local.size());
    for (std::size_t n = 0; n < tx_local.size(); n++)
        tx_global[n] = geom.tx.center + Rtx * tx_local[n];
    std::vector<Eigen::Vector3d> rx_global(rx_local.size());
    for (std::size_t m = 0; m < rx_local.size(); m++)
        rx_global[m] = geom.rx.center + Rrx * rx_local[m];

    Eigen::MatrixXcd H(rx_global.size(), tx_global.size());
    for (std::size_t n = 0; n < tx_global.size(); n++)
    {
        for (std::size_t m = 0; m < rx_global.size(); m++)
        {
            const double r = (rx_global[m] - tx_global[n]).norm();
            if (!(r > 0.0))
            {
                std::ostringstream msg;
                msg << "degenerate geometry: tx element " << n << " and rx element " << m
                    << " coincide";
                throw ConfigError(msg.str());
            }
            const double amp = r0 / r;
            const double phase = -k * r;
            H(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
                std::complex<double>(amp * std::cos(phase), amp * std::sin(phase));
        }
    }
    return ChannelMatrix(std::move(H), calibration_db);
}

std::complex<double> coupling_gain(const BeamWeights &w, const ChannelMatrix &H,
                                   const BeamWeights &f)
{
    if (static_cast<std::size_t>(w.weights.size()) != H.rx_elements() ||
        static_cast<std::size_t>(f.weights.size()) != H.tx_elements())
    {
        std::ostringstream msg;
        msg << "beam/channel dimension mismatch: w has " << w.weights.size()
            << ", f has " << f.weights.size() << ", channel is " << H.rx_elements()
            << " x " << H.tx_elements();
        throw ConfigError(msg.str());
    }
    const std::complex<double> raw = w.weights.transpose() * H.entries() * f.weights;
    return raw * std::pow(10.0, H.calibration_db() / 20.0);
}

double calibrate_to_broadside_inr(ChannelMatrix &H, const UpaConfig &tx,
                                  const UpaConfig &rx, const LinkBudget &budget,
                                  double target_inr_db)
{
    const BeamWeights f = conjugate_weights(tx, Direction(0.0, 0.0));
    const BeamWeights w = conjugate_weights(rx, Direction(0.0, 0.0));

    H.set_calibration_db(0.0);
    const double iso_raw = isolation_db(coupling_gain(w, H, f));
    if (below_measurement_floor(iso_raw))
        throw NumericError("broadside coupling is zero; cannot calibrate");

    const double iso_target = budget.ptx_dbm - budget.pnoise_dbm - target_inr_db;
    const double calibration = iso_raw - iso_target;
    H.set_calibration_db(calibration);
    return calibration;
}

void save_channel(const ChannelMatrix &H, const std::filesystem::path &data_path,
                  const std::filesystem::path &sidecar_path)
{
    std::ofstream out(data_path, std::ios::binary);
    if (!out)
        throw DataError("cannot open " + data_path.string() + " for writing");

    // rx-major (row-major) little-endian complex64.
    for (Eigen::Index m = 0; m < H.entries().rows(); m++)
    {
        for (Eigen::Index n = 0; n < H.entries().cols(); n++)
        {
            const std::complex<double> v = H.entries()(m, n);
            const float re = static_cast<float>(v.real());
            const float im = static_cast<float>(v.imag());
            out.write(reinterpret_cast<const char *>(&re), sizeof(float));
            out.write(reinterpret_cast<const char *>(&im), sizeof(float));
        }
    }
    if (!out)
        throw DataError("failed writing " + data_path.string());

    nlohmann::json sidecar = {
        {"dtype", "complex64"},
        {"endianness", "little"},
        {"layout", "rx_major"},
        {"rx_elements", H.rx_elements()},
        {"tx_elements", H.tx_elements()},
        {"calibration_db", H.calibration_db()},
    };
    std::ofstream meta(sidecar_path);
    if (!meta)
        throw DataError("cannot open " + sidecar_path.string() + " for writing");
    meta << sidecar.dump(2) << "\n";
}

ChannelMatrix load_channel(const std::filesystem::path &data_path,
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
        throw DataError("malformed channel sidecar: " + std::string(e.what()));
    }

    const std::size_t rows = sidecar.at("rx_elements").get<std::size_t>();
    const std::size_t cols = sidecar.at("tx_elements").get<std::size_t>();
    const double calibration = sidecar.at("calibration_db").get<double>();

    std::ifstream in(data_path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + data_path.string());

    Eigen::MatrixXcd H(rows, cols);
    for (std::size_t m = 0; m < rows; m++)
    {
        for (std::size_t n = 0; n < cols; n++)
        {
            float re = 0.0f, im = 0.0f;
            in.read(reinterpret_cast<char *>(&re), sizeof(float));
            in.read(reinterpret_cast<char *>(&im), sizeof(float));
            if (!in)
                throw DataError("channel data file " + data_path.string() +
                                " is shorter than the sidecar dimensions");
            H(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
                std::complex<double>(re, im);
        }
    }
    char extra = 0;
    if (in.read(&extra, 1))
        throw DataError("channel data file " + data_path.string() +
                        " is longer than the sidecar dimensions");
    return ChannelMatrix(std::move(H), calibration);
}

} // namespace sibeam
