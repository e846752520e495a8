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

#include <complex>

namespace sibeam
{

// Transmit input power, receive-output noise power (over 100 MHz) and EIRP.
struct LinkBudget
{
    double ptx_dbm = -15.0;
    double pnoise_dbm = -68.0;
    double eirp_dbm = 60.0;
};

// Power-quantity dB conversions (factor 10 log10). Single source of truth.
double db_from_linear(double x);
double linear_from_db(double db);

// Isolation L = 1 / |coupling|^2 in dB, i.e. -20 log10(|coupling|).
// Zero coupling maps to +infinity ("below measurement floor").
double isolation_db(std::complex<double> coupling);
bool below_measurement_floor(double isolation_db_value);

// Self-interference power at the receive array output: P_tx / L.
double self_interference_dbm(const LinkBudget &budget, double isolation_db_value);

// INR = P_SI / P_noise.
double inr_db(const LinkBudget &budget, double psi_dbm);

// SINR = SNR / (1 + INR), evaluated in a form stable for very low INR.
double sinr_db(double snr_db, double inr_db_value);

// Operating-regime classification. Boundaries at +/-3 dB around INR = 0 dB;
// the desired-operation reporting threshold is INR <= 0 dB.
enum class DuplexRegime
{
    kNoiseLimited,
    kIntermediate,
    kSelfInterferenceLimited
};

inline constexpr double kRegimeBoundaryDb = 3.0;
inline constexpr double kDesiredInrThresholdDb = 0.0;

DuplexRegime classify_inr(double inr_db_value);

} // namespace sibeam
