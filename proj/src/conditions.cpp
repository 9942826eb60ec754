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

#include "spimwave/conditions.hpp"
#include "spimwave/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace spimwave
{
    double theorem1_margin(double w1, double w2)
    {
        if (!(w2 > 0.0))
            throw ParameterError("theorem1_margin: w2 must be > 0");
        if (!(w1 >= w2))
            throw ParameterError("theorem1_margin: paths must be ordered, w1 >= w2");
        return 4.0 * w2 - w1;
    }

    namespace
    {
        void check_gains(std::span<const double> w, const char *who)
        {
            if (w.size() < 2)
                throw ParameterError(std::string(who) + ": requires M >= 2 paths");
            for (double v : w)
                if (!(v > 0.0) || !std::isfinite(v))
                    throw ParameterError(std::string(who) + ": gains must be finite and > 0");
        }

        double geometric_mean_tail(std::span<const double> w)
        {
            if (w.size() == 2)
                return w[1];
            double acc = 0.0;
            for (std::size_t n = 1; n < w.size(); ++n)
                acc += std::log(w[n]);
            return std::exp(acc / static_cast<double>(w.size() - 1));
        }

        double base_threshold(std::size_t m)
        {
            const double md = static_cast<double>(m);
            return std::pow(md, -md / (md - 1.0));
        }
    }

    ThresholdResult theorem2_threshold(std::span<const double> w, std::span<const double> g, double n0)
    {
        check_gains(w, "theorem2_threshold");
        if (g.size() != w.size())
            throw ParameterError("theorem2_threshold: gain lists differ in length");
        for (double v : g)
            if (!(v > 0.0))
                throw ParameterError("theorem2_threshold: array gains must be > 0");
        if (!(n0 >= 0.0))
            throw ParameterError("theorem2_threshold: noise power must be >= 0");

        double inv_sum = 0.0;
        for (std::size_t n = 0; n < w.size(); ++n)
            inv_sum += 1.0 / (w[n] * g[n]);

        ThresholdResult r;
        r.tau = base_threshold(w.size()) * std::exp(4.0 * n0 * inv_sum);
        r.geo_mean = geometric_mean_tail(w);
        r.holds = r.geo_mean > r.tau * w[0];
        return r;
    }

    bool corollary2_check(std::span<const double> w)
    {
        const std::vector<double> ones(w.size(), 1.0);
        return theorem2_threshold(w, ones, 0.0).holds;
    }

    bool corollary2_log_form(std::span<const double> w)
    {
        check_gains(w, "corollary2_log_form");
        const double md = static_cast<double>(w.size());
        double lhs = 0.0;
        for (std::size_t n = 1; n < w.size(); ++n)
            lhs += std::log(w[n]);
        lhs /= md - 1.0;
        const double c = -(md / (md - 1.0)) * std::log(md);
        return lhs > c + std::log(w[0]);
    }

    double decay_condition_value(double m, double gamma, double n0, double g1)
    {
        if (!(gamma > 0.0 && gamma < 1.0))
            throw ParameterError("decay_condition_value: gamma must lie in (0, 1)");
        if (!(m >= 1.0))
            throw ParameterError("decay_condition_value: M must be >= 1");
        if (!(n0 >= 0.0) || !(g1 > 0.0))
            throw ParameterError("decay_condition_value: requires N_0 >= 0 and g_1 > 0");
        if (m == 1.0)
            return 1.0;

        // sum_{n=1}^{M} gamma^{-(n-1)} = (gamma^{1-M} - gamma) / (1 - gamma)
        const double inv_gain_sum = (std::pow(gamma, 1.0 - m) - gamma) / (1.0 - gamma);
        const double penalty = n0 > 0.0 ? std::exp(-4.0 * n0 * inv_gain_sum / g1) : 1.0;
        return std::pow(m, m / (m - 1.0)) * std::pow(gamma, m / 2.0) * penalty;
    }

    double spim_margin(const MarginQuery &q)
    {
        if (!(q.gamma > 0.0 && q.gamma < 1.0))
            throw ParameterError("spim_margin: gamma must lie in (0, 1)");
        if (q.b_max < 0 || q.b_max > 30)
            throw ParameterError("spim_margin: b_max must lie in [0, 30]");

        const double m_max = std::ldexp(1.0, q.b_max);
        double best = 1.0;
        if (q.relax_integer)
        {
            const auto steps = static_cast<long>(std::llround((m_max - 1.0) / kRelaxedMarginStep));
            for (long i = 1; i <= steps; ++i)
            {
                const double m = 1.0 + static_cast<double>(i) * kRelaxedMarginStep;
                if (decay_condition_value(m, q.gamma, q.n0, q.g1) > 1.0)
                    best = m;
            }
        }
        else
        {
            for (int b = 1; b <= q.b_max; ++b)
            {
                const double m = std::ldexp(1.0, b);
                if (decay_condition_value(m, q.gamma, q.n0, q.g1) > 1.0)
                    best = m;
            }
        }
        return best;
    }

    double gamma_crossover(std::size_t m, double n0, double g1)
    {
        if (m < 2)
            throw ParameterError("gamma_crossover: requires M >= 2");
        const double md = static_cast<double>(m);
        auto f = [&](double gamma) { return decay_condition_value(md, gamma, n0, g1) - 1.0; };

        double lo = 1e-6;
        double hi = 1.0 - 1e-6;
        if (!(f(lo) < 0.0 && f(hi) > 0.0))
            throw NoRootError("gamma_crossover: no sign change on (1e-6, 1 - 1e-6) for M = " + std::to_string(m));

        // bisection; f is increasing in gamma on the bracket
        while (hi - lo > 1e-13)
        {
            const double mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    }
}
