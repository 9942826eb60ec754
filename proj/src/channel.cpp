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

#include "spimwave/channel.hpp"
#include "spimwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace spimwave
{
    double normalized_angle(double physical_rad)
    {
        return 0.5 * std::sin(physical_rad);
    }

    ComplexVector steering_vector(double angle, std::size_t n)
    {
        if (n == 0)
            throw ParameterError("steering_vector: antenna count must be >= 1");
        ComplexVector v(n);
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        const double centre = (static_cast<double>(n) - 1.0) / 2.0;
        for (std::size_t k = 0; k < n; ++k)
        {
            const double phase = -2.0 * kPi * angle * (static_cast<double>(k) - centre);
            v[k] = cplx(scale * std::cos(phase), scale * std::sin(phase));
        }
        return v;
    }

    ComplexVector steering_vector_tx(double phi, std::size_t n_tx)
    {
        return steering_vector(phi, n_tx);
    }

    ComplexVector steering_vector_rx(double theta, std::size_t n_rx)
    {
        return steering_vector(theta, n_rx);
    }

    ChannelRealization::ChannelRealization(std::size_t n_tx, std::size_t n_rx, std::vector<double> aod,
                                           std::vector<double> aoa, std::vector<double> gains)
        : n_tx_(n_tx), n_rx_(n_rx)
    {
        if (n_tx == 0 || n_rx == 0)
            throw ParameterError("ChannelRealization: antenna counts must be >= 1");
        if (gains.empty())
            throw ParameterError("ChannelRealization: at least one path is required");
        if (aod.size() != gains.size() || aoa.size() != gains.size())
            throw ParameterError("ChannelRealization: aod, aoa and gains must have equal length");
        for (std::size_t i = 0; i < gains.size(); ++i)
        {
            if (!(gains[i] >= 0.0) || !std::isfinite(gains[i]))
                throw ParameterError("ChannelRealization: gain " + std::to_string(i) + " must be finite and >= 0");
            if (!(std::abs(aod[i]) <= 0.5) || !(std::abs(aoa[i]) <= 0.5))
                throw ParameterError("ChannelRealization: normalized angles must lie in [-0.5, 0.5]");
        }

        std::vector<std::size_t> order(gains.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });

        aod_.reserve(order.size());
        aoa_.reserve(order.size());
        gains_.reserve(order.size());
        for (auto i : order)
        {
            aod_.push_back(aod[i]);
            aoa_.push_back(aoa[i]);
            gains_.push_back(gains[i]);
        }
    }

    ComplexMatrix build_channel(const ChannelRealization &channel)
    {
        ComplexMatrix h(channel.n_rx(), channel.n_tx());
        for (std::size_t p = 0; p < channel.n_paths(); ++p)
        {
            const double amp = std::sqrt(channel.gains()[p]);
            if (amp == 0.0)
                continue;
            const auto ar = steering_vector_rx(channel.aoa()[p], channel.n_rx());
            const auto at = steering_vector_tx(channel.aod()[p], channel.n_tx());
            for (std::size_t r = 0; r < channel.n_rx(); ++r)
            {
                const cplx lhs = amp * ar[r];
                for (std::size_t c = 0; c < channel.n_tx(); ++c)
                    h(r, c) += lhs * std::conj(at[c]);
            }
        }
        return h;
    }

    std::vector<double> decaying_gains(double gamma, std::size_t n_paths)
    {
        if (!(gamma > 0.0 && gamma < 1.0))
            throw ParameterError("decaying_gains: gamma must lie in (0, 1)");
        std::vector<double> w(n_paths);
        double g = 1.0;
        for (auto &v : w)
        {
            v = g;
            g *= gamma;
        }
        return w;
    }

    double angle_separation_floor(std::size_t n_tx, std::size_t n_rx)
    {
        return 1.0 / (4.0 * static_cast<double>(std::max(n_tx, n_rx)));
    }

    namespace
    {
        void check_range(AngleRange r, const char *name)
        {
            if (!(r.lo >= -0.5 && r.hi <= 0.5 && r.lo <= r.hi))
                throw ParameterError(std::string("sample_channel: ") + name + " must satisfy -0.5 <= lo <= hi <= 0.5");
        }

        bool well_separated(std::span<const double> angles, double floor)
        {
            for (std::size_t i = 0; i < angles.size(); ++i)
                for (std::size_t j = i + 1; j < angles.size(); ++j)
                    if (std::abs(angles[i] - angles[j]) < floor)
                        return false;
            return true;
        }

        std::vector<double> draw_angles(Rng &rng, std::size_t n, AngleRange range, double floor)
        {
            constexpr int kMaxAttempts = 100000;
            std::vector<double> a(n);
            for (int attempt = 0; attempt < kMaxAttempts; ++attempt)
            {
                for (auto &x : a)
                    x = rng.uniform(range.lo, range.hi);
                if (well_separated(a, floor))
                    return a;
            }
            throw ParameterError("sample_channel: angle range too narrow for " + std::to_string(n) +
                                 " separated paths");
        }
    }

    ChannelRealization sample_channel(Rng &rng, std::size_t n_tx, std::size_t n_rx, std::size_t n_paths,
                                      const GainModel &gain_model, AngleRange aod_range, AngleRange aoa_range)
    {
        if (n_paths == 0)
            throw ParameterError("sample_channel: n_paths must be >= 1");
        check_range(aod_range, "aod_range");
        check_range(aoa_range, "aoa_range");

        std::vector<double> gains;
        if (const auto *e = std::get_if<ExplicitGains>(&gain_model))
        {
            if (e->values.size() != n_paths)
                throw ParameterError("sample_channel: explicit gain list length differs from n_paths");
            gains = e->values;
            if (e->normalize)
            {
                const double total = std::accumulate(gains.begin(), gains.end(), 0.0);
                if (!(total > 0.0))
                    throw ParameterError("sample_channel: cannot normalize gains summing to zero");
                for (auto &g : gains)
                    g /= total;
            }
        }
        else
        {
            gains = decaying_gains(std::get<ExponentialDecay>(gain_model).gamma, n_paths);
        }

        const double floor = angle_separation_floor(n_tx, n_rx);
        auto aod = draw_angles(rng, n_paths, aod_range, floor);
        auto aoa = draw_angles(rng, n_paths, aoa_range, floor);
        return ChannelRealization(n_tx, n_rx, std::move(aod), std::move(aoa), std::move(gains));
    }
}
