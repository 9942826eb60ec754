// SPDX-License-Identifier: Apache-2.0
//
// spimwave: spectral-efficiency analysis for spatial path index modulation
// Copyright (C) 2026 The spimwave authors
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

#include "spimwave/montecarlo.hpp"
#include "spimwave/errors.hpp"
#include "spimwave/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace spimwave
{
    void MonteCarloSpec::validate() const
    {
        if (n_samples < kMinSamples)
            throw ParameterError("MonteCarloSpec: n_samples must be >= " + std::to_string(kMinSamples));
        if (batch == 0)
            throw ParameterError("MonteCarloSpec: batch must be >= 1");
    }

    namespace
    {
        struct WorkUnit
        {
            std::size_t component;
            std::size_t index;
            std::size_t count;
        };

        struct Moments
        {
            double sum = 0.0;
            double sum_sq = 0.0;
        };
    }

    // The estimator averages ln p(y | B_k) - ln p(y) over samples y drawn from
    // component k. Its mean is I(y; B) and the same draws give h(y) - h(y | B),
    // which removes the chi-square noise of ln p(y) that a bare h(y) estimate carries.
    MonteCarloResult mc_run(const CovarianceSet &covs, const MonteCarloSpec &spec)
    {
        spec.validate();

        const std::size_t k = covs.size();
        const std::size_t n_r = covs.n_r();
        const std::size_t per_component = spec.n_samples / k;
        if (per_component == 0)
            throw ParameterError("mc_run: fewer samples than mixture components");

        std::vector<Cholesky> factors;
        factors.reserve(k);
        for (std::size_t i = 0; i < k; ++i)
            factors.emplace_back(covs.sigma(i));

        std::vector<WorkUnit> units;
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t start = 0, b = 0; start < per_component; start += spec.batch, ++b)
                units.push_back({c, b, std::min(spec.batch, per_component - start)});

        const double ln_k = std::log(static_cast<double>(k));
        std::vector<Moments> moments(units.size());

        parallel_for(units.size(), [&](std::size_t u)
        {
            const WorkUnit &unit = units[u];
            Rng rng(spec.seed, derive_stream({unit.component, unit.index}));
            const Cholesky &own = factors[unit.component];

            std::vector<cplx> z(n_r), y(n_r);
            std::vector<double> log_p(k);
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            Moments m;

            for (std::size_t s = 0; s < unit.count; ++s)
            {
                for (auto &v : z)
                {
                    const double re = rng.normal();
                    const double im = rng.normal();
                    v = cplx(re * inv_sqrt2, im * inv_sqrt2);
                }
                own.multiply_lower(z, y);

                // ln p(y | j) up to the shared -N_r ln(pi)
                double peak = -INFINITY;
                for (std::size_t j = 0; j < k; ++j)
                {
                    log_p[j] = -factors[j].quadratic_form(y) - factors[j].log_det();
                    peak = std::max(peak, log_p[j]);
                }
                double acc = 0.0;
                for (double v : log_p)
                    acc += std::exp(v - peak);
                const double ln_mixture = peak + std::log(acc) - ln_k;

                const double term = log_p[unit.component] - ln_mixture;
                m.sum += term;
                m.sum_sq += term * term;
            }
            moments[u] = m;
        });

        Moments total;
        for (const auto &m : moments)
        {
            total.sum += m.sum;
            total.sum_sq += m.sum_sq;
        }
        const double n = static_cast<double>(per_component * k);
        const double mean = total.sum / n;
        const double var = std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1.0));
        const double se_bits = std::sqrt(var / n) / kLn2;

        const double spatial_bits = mean / kLn2;
        MonteCarloResult r;
        r.spatial = {spatial_bits, se_bits};
        r.mutual_information = {i_shannon_conditional(covs) + spatial_bits, se_bits};
        r.samples = per_component * k;
        return r;
    }

    McEstimate mc_mutual_information(const CovarianceSet &covs, const MonteCarloSpec &spec)
    {
        return mc_run(covs, spec).mutual_information;
    }

    McEstimate mc_spatial_information(const CovarianceSet &covs, const MonteCarloSpec &spec)
    {
        return mc_run(covs, spec).spatial;
    }
}
