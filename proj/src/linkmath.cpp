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

#include "sibeam/linkmath.hpp"

#include <cmath>
#include <limits>

namespace sibeam
{

double db_from_linear(double x)
{
    return 10.0 * std::log10(x);
}

double linear_from_db(double db)
{
    return std::pow(10.0, db / 10.0);
}

double isolation_db(std::complex<double> coupling)
{
    const double mag = std::abs(coupling);
    if (mag == 0.0)
        return std::numeric_limits<double>::infinity();
    return -20.0 * std::log10(mag);
}

bool below_measurement_floor(double isolation_db_value)
{
    return std::isinf(isolation_db_value) && isolation_db_value > 0.0;
}

double self_interference_dbm(const LinkBudget &budget, double isolation_db_value)
{
    return budget.ptx_dbm - isolation_db_value;
}

double inr_db(const LinkBudget &budget, double psi_dbm)
{
    return psi_dbm - budget.pnoise_dbm;
}

double sinr_db(double snr_db, double inr_db_value)
{
    // SNR_dB - 10 log10(1 + inr); log1p keeps the INR -> -inf limit exact.
    const double inr_lin = linear_from_db(inr_db_value);
    return snr_db - 10.0 / std::log(10.0) * std::log1p(inr_lin);
}

DuplexRegime classify_inr(double inr_db_value)
{
    if (inr_db_value > kRegimeBoundaryDb)
        return DuplexRegime::kSelfInterferenceLimited;
    if (inr_db_value < -kRegimeBoundaryDb)
        return DuplexRegime::kNoiseLimited;
    return DuplexRegime::kIntermediate;
}

} // namespace sibeam
