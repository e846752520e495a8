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

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "sibeam/errors.hpp"

namespace sibeam
{

// Normal distribution over a dB-domain quantity.
struct NormalFitDb
{
    double mu_db = 0.0;
    double sigma2_db = 1.0; // variance, dB^2
    double sigma_db() const;
};

// Gamma distribution over a dB-domain quantity, shape/scale parametrization.
struct GammaFitDb
{
    double shape = 1.0;    // alpha > 0
    double scale_db = 1.0; // s > 0, dB
    double mean_db() const { return shape * scale_db; }
    double variance_db2() const { return shape * scale_db * scale_db; }
};

// Error function, series/continued-fraction implementation, |error| < 1e-12.
double erf(double x);

// P(a, x) = gamma(a, x) / Gamma(a): series for x < a + 1, continued fraction
// otherwise. Throws NumericError on a <= 0, x < 0, or non-convergence.
double lower_incomplete_gamma_regularized(double a, double x);

// Digamma / trigamma via upward recurrence and the asymptotic series.
// Throw NumericError for x <= 0.
double digamma(double x);
double trigamma(double x);

double normal_cdf(double x, const NormalFitDb &fit);

// Gamma CDF P(shape, x / scale); 0 for x < 0.
double gamma_cdf(double x, const GammaFitDb &fit);

// Caches the shape-dependent constants; useful when evaluating many points
// against one fit.
class GammaCdfEvaluator
{
  public:
    explicit GammaCdfEvaluator(const GammaFitDb &fit);
    double operator()(double x) const;

  private:
    GammaFitDb fit_;
    double lgamma_shape_;
};

// Sample mean and population (n-denominator) variance. Requires >= 2 samples
// and nonzero variance; throws DataError otherwise.
NormalFitDb fit_normal_db(std::span<const double> samples);

// Maximum-likelihood Gamma fit: Newton iteration on
// ln(alpha) - psi(alpha) = ln(mean) - mean(ln), then scale = mean / alpha.
// Tolerance 1e-10, at most 100 iterations, method-of-moments fallback on
// non-convergence. Requires >= 10 strictly positive samples.
GammaFitDb fit_gamma_db(std::span<const double> samples);

// Right-continuous empirical CDF with a midpoint quantile convention.
class EmpiricalCdf
{
  public:
    explicit EmpiricalCdf(std::vector<double> samples); // throws DataError when empty

    double cdf(double x) const;        // fraction of samples <= x
    double quantile(double q) const;   // q in [0, 1]
    std::size_t size() const { return sorted_.size(); }
    const std::vector<double> &sorted() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

// All samplers take an explicit seeded generator; no global state.
using Rng = std::mt19937_64;

// 53-bit uniform draw in [0, 1).
double uniform01(Rng &rng);

// Box-Muller standard normal draw (two uniforms per sample).
double sample_standard_normal(Rng &rng);

double sample_normal(const NormalFitDb &fit, Rng &rng);

// Marsaglia-Tsang Gamma draw with the shape < 1 boost.
double sample_gamma(const GammaFitDb &fit, Rng &rng);

} // namespace sibeam
