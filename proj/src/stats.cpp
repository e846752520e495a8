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

#include "sibeam/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sibeam
{

namespace
{

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxSeriesIterations = 10000;

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x, double lgamma_a)
{
    double term = 1.0 / a;
    double sum = term;
    double denom = a;
    for (int n = 0; n < kMaxSeriesIterations; n++)
    {
        denom += 1.0;
        term *= x / denom;
        sum += term;
        if (std::abs(term) < std::abs(sum) * std::numeric_limits<double>::epsilon())
            return sum * std::exp(-x + a * std::log(x) - lgamma_a);
    }
    throw NumericError("incomplete gamma series failed to converge");
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_fraction(double a, double x, double lgamma_a)
{
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxSeriesIterations; i++)
    {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < std::numeric_limits<double>::epsilon())
            return std::exp(-x + a * std::log(x) - lgamma_a) * h;
    }
    throw NumericError("incomplete gamma continued fraction failed to converge");
}

double gamma_p(double a, double x, double lgamma_a)
{
    if (x == 0.0)
        return 0.0;
    if (x < a + 1.0)
        return gamma_p_series(a, x, lgamma_a);
    return 1.0 - gamma_q_fraction(a, x, lgamma_a);
}

void check_gamma_fit(const GammaFitDb &fit)
{
    if (!(fit.shape > 0.0) || !(fit.scale_db > 0.0))
    {
        std::ostringstream msg;
        msg << "gamma parameters must be positive (shape " << fit.shape << ", scale "
            << fit.scale_db << ")";
        throw NumericError(msg.str());
    }
}

} // namespace

double NormalFitDb::sigma_db() const
{
    return std::sqrt(sigma2_db);
}

double erf(double x)
{
    if (std::isnan(x))
        return x;
    if (x == 0.0)
        return 0.0;
    // Saturates to +-1 far beyond double resolution of the tail.
    if (std::abs(x) > 8.0)
        return x > 0.0 ? 1.0 : -1.0;
    const double p = gamma_p(0.5, x * x, std::lgamma(0.5));
    return x > 0.0 ? p : -p;
}

double lower_incomplete_gamma_regularized(double a, double x)
{
    if (!(a > 0.0))
        throw NumericError("incomplete gamma requires a > 0");
    if (x < 0.0 || std::isnan(x))
        throw NumericError("incomplete gamma requires x >= 0");
    return gamma_p(a, x, std::lgamma(a));
}

double digamma(double x)
{
    if (!(x > 0.0))
        throw NumericError("digamma requires x > 0");
    double result = 0.0;
    while (x < 10.0)
    {
        result -= 1.0 / x;
        x += 1.0;
    }
    // Asymptotic series with Bernoulli coefficients.
    const double inv = 1.0 / x;
    const double t = inv * inv;
    double series = t * (1.0 / 12.0 -
                    t * (1.0 / 120.0 -
                    t * (1.0 / 252.0 -
                    t * (1.0 / 240.0 -
                    t * (1.0 / 132.0 -
                    t * (691.0 / 32760.0 -
                    t * (1.0 / 12.0)))))));
    return result + std::log(x) - 0.5 * inv - series;
}

double trigamma(double x)
{
    if (!(x > 0.0))
        throw NumericError("trigamma requires x > 0");
    double result = 0.0;
    while (x < 10.0)
    {
        result += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double t = inv * inv;
    const double series = inv * (1.0 +
                          inv * (0.5 +
                          inv * (1.0 / 6.0 -
                          t * (1.0 / 30.0 -
                          t * (1.0 / 42.0 -
                          t * (1.0 / 30.0 -
                          t * (5.0 / 66.0 -
                          t * (691.0 / 2730.0 -
                          t * (7.0 / 6.0)))))))));
    return result + series;
}

double normal_cdf(double x, const NormalFitDb &fit)
{
    if (!(fit.sigma2_db > 0.0))
        throw NumericError("normal variance must be positive");
    return 0.5 * (1.0 + erf((x - fit.mu_db) / (fit.sigma_db() * std::sqrt(2.0))));
}

double gamma_cdf(double x, const GammaFitDb &fit)
{
    check_gamma_fit(fit);
    if (x <= 0.0)
        return 0.0;
    return lower_incomplete_gamma_regularized(fit.shape, x / fit.scale_db);
}

GammaCdfEvaluator::GammaCdfEvaluator(const GammaFitDb &fit)
    : fit_(fit), lgamma_shape_(std::lgamma(fit.shape))
{
    check_gamma_fit(fit);
}

double GammaCdfEvaluator::operator()(double x) const
{
    if (x <= 0.0)
        return 0.0;
    return gamma_p(fit_.shape, x / fit_.scale_db, lgamma_shape_);
}

NormalFitDb fit_normal_db(std::span<const double> samples)
{
    if (samples.size() < 2)
        throw DataError("normal fit requires at least 2 samples");
    double mean = 0.0;
    for (double s : samples)
        mean += s;
    mean /= static_cast<double>(samples.size());

    double var = 0.0;
    for (double s : samples)
        var += (s - mean) * (s - mean);
    var /= static_cast<double>(samples.size()); // population variance

    if (!(var > 0.0))
        throw DataError("normal fit requires nonzero sample variance");
    return {mean, var};
}

GammaFitDb fit_gamma_db(std::span<const double> samples)
{
    if (samples.size() < 10)
        throw DataError("gamma fit requires at least 10 samples");
    double mean = 0.0;
    double mean_log = 0.0;
    for (double x : samples)
    {
        if (!(x > 0.0))
            throw DataError("gamma fit requires strictly positive samples");
        mean += x;
        mean_log += std::log(x);
    }
    mean /= static_cast<double>(samples.size());
    mean_log /= static_cast<double>(samples.size());

    const double s = std::log(mean) - mean_log; // >= 0 by Jensen
    if (!(s > 1e-13))
        throw DataError("gamma fit is degenerate: samples are (nearly) constant");

    // Minka's closed-form initializer, then Newton on ln(a) - psi(a) = s.
    double a = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
    bool converged = false;
    for (int it = 0; it < 100; it++)
    {
        const double g = std::log(a) - digamma(a) - s;
        const double dg = 1.0 / a - trigamma(a);
        double step = g / dg;
        double next = a - step;
        while (next <= 0.0)
        {
            step *= 0.5;
            next = a - step;
        }
        const bool done = std::abs(next - a) <= 1e-10 * (1.0 + std::abs(next));
        a = next;
        if (done)
        {
            converged = true;
            break;
        }
    }
    if (!converged)
    {
        // Method-of-moments fallback.
        double var = 0.0;
        for (double x : samples)
            var += (x - mean) * (x - mean);
        var /= static_cast<double>(samples.size());
        if (!(var > 0.0))
            throw DataError("gamma fit is degenerate: zero variance");
        a = mean * mean / var;
    }
    return {a, mean / a};
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples))
{
    if (sorted_.empty())
        throw DataError("empirical CDF requires at least one sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::cdf(double x) const
{
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double q) const
{
    if (!(q >= 0.0 && q <= 1.0))
        throw DataError("quantile argument must lie in [0, 1]");
    const double n = static_cast<double>(sorted_.size());
    const double h = q * n;
    const double k = std::floor(h);
    if (h == k && k >= 1.0 && k <= n - 1.0)
    {
        const std::size_t i = static_cast<std::size_t>(k);
        return 0.5 * (sorted_[i - 1] + sorted_[i]);
    }
    const std::size_t i = std::min(static_cast<std::size_t>(k), sorted_.size() - 1);
    return sorted_[i];
}

double uniform01(Rng &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sample_standard_normal(Rng &rng)
{
    const double u1 = 1.0 - uniform01(rng); // (0, 1], keeps log finite
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double sample_normal(const NormalFitDb &fit, Rng &rng)
{
    return fit.mu_db + fit.sigma_db() * sample_standard_normal(rng);
}

double sample_gamma(const GammaFitDb &fit, Rng &rng)
{
    check_gamma_fit(fit);
    double shape = fit.shape;
    double boost = 1.0;
    if (shape < 1.0)
    {
        // Draw for shape + 1 and boost by U^(1/shape).
        const double u = 1.0 - uniform01(rng);
        boost = std::pow(u, 1.0 / shape);
        shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;)
    {
        double x;
        double v;
        do
        {
            x = sample_standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = 1.0 - uniform01(rng);
        if (u < 1.0 - 0.0331 * x * x * x * x)
            return d * v * boost * fit.scale_db;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v * boost * fit.scale_db;
    }
}

} // namespace sibeam
