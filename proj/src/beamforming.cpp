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

#include "spimwave/beamforming.hpp"
#include "spimwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace spimwave
{
    std::uint64_t binomial(std::size_t n, std::size_t k)
    {
        if (k > n)
            return 0;
        k = std::min(k, n - k);
        std::uint64_t c = 1;
        for (std::size_t i = 1; i <= k; ++i)
        {
            // c * (n - k + i) / i stays integral at every step
            const std::uint64_t num = n - k + i;
            if (c > std::numeric_limits<std::uint64_t>::max() / num)
                throw ParameterError("binomial: C(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows");
            c = c * num / i;
        }
        return c;
    }

    std::size_t alphabet_size(std::size_t m, std::size_t n_s)
    {
        if (n_s == 0 || n_s > m)
            throw ParameterError("alphabet_size: requires 1 <= n_s <= m");
        const std::uint64_t c = binomial(m, n_s);
        std::size_t k = 1;
        while (static_cast<std::uint64_t>(k) * 2 <= c)
            k *= 2;
        return k;
    }

    PatternAlphabet::PatternAlphabet(std::size_t m, std::size_t n_s, std::vector<std::vector<std::size_t>> taps)
        : m_(m), n_s_(n_s), taps_(std::move(taps))
    {
        if (n_s == 0 || n_s > m)
            throw ParameterError("PatternAlphabet: requires 1 <= n_s <= m");
        if (taps_.empty())
            throw ParameterError("PatternAlphabet: empty alphabet");
        for (const auto &p : taps_)
        {
            if (p.size() != n_s)
                throw ParameterError("PatternAlphabet: pattern width differs from n_s");
            for (std::size_t a = 0; a < p.size(); ++a)
            {
                if (p[a] >= m)
                    throw ParameterError("PatternAlphabet: tap index out of range");
                for (std::size_t b = a + 1; b < p.size(); ++b)
                    if (p[a] == p[b])
                        throw ParameterError("PatternAlphabet: two RF chains share one tap");
            }
        }
        for (std::size_t i = 0; i < taps_.size(); ++i)
            for (std::size_t j = i + 1; j < taps_.size(); ++j)
                if (taps_[i] == taps_[j])
                    throw ParameterError("PatternAlphabet: duplicate pattern");
    }

    ComplexMatrix PatternAlphabet::selection_matrix(std::size_t i) const
    {
        const auto &p = taps_.at(i);
        ComplexMatrix b(m_, n_s_);
        for (std::size_t t = 0; t < n_s_; ++t)
            b(p[t], t) = 1.0;
        return b;
    }

    PatternAlphabet pattern_alphabet(std::size_t m, std::size_t n_s)
    {
        const std::size_t k = alphabet_size(m, n_s);

        std::vector<std::vector<std::size_t>> taps;
        taps.reserve(k);
        std::vector<std::size_t> comb(n_s);
        for (std::size_t i = 0; i < n_s; ++i)
            comb[i] = i;

        while (taps.size() < k)
        {
            taps.push_back(comb);
            // advance to the next combination in lexicographic order
            std::size_t i = n_s;
            while (i > 0 && comb[i - 1] == m - n_s + (i - 1))
                --i;
            if (i == 0)
                break;
            ++comb[i - 1];
            for (std::size_t j = i; j < n_s; ++j)
                comb[j] = comb[j - 1] + 1;
        }
        return PatternAlphabet(m, n_s, std::move(taps));
    }

    BeamformerConfig build_abf(const ChannelRealization &channel, std::size_t m, std::size_t n_s)
    {
        if (m == 0)
            throw ParameterError("build_abf: m must be >= 1");
        if (m > channel.n_paths())
            throw ParameterError("build_abf: m = " + std::to_string(m) + " exceeds the " +
                                 std::to_string(channel.n_paths()) + " available paths");
        if (n_s == 0 || n_s > m)
            throw ParameterError("build_abf: requires 1 <= n_s <= m");

        const std::size_t n_tx = channel.n_tx();
        const double amp = std::sqrt(static_cast<double>(n_tx));

        BeamformerConfig cfg;
        cfg.abf = ComplexMatrix(n_tx, m);
        // paths are already ordered strongest first
        for (std::size_t j = 0; j < m; ++j)
        {
            const auto at = steering_vector_tx(channel.aod()[j], n_tx);
            for (std::size_t r = 0; r < n_tx; ++r)
                cfg.abf(r, j) = amp * at[r];
        }
        cfg.dbf = (1.0 / std::sqrt(static_cast<double>(n_s))) * ComplexMatrix::identity(n_s);
        cfg.array_gains.assign(m, static_cast<double>(n_tx));
        return cfg;
    }

    ComplexMatrix effective_channel(const ChannelRealization &channel, const BeamformerConfig &config,
                                    EffectiveChannelMode mode)
    {
        const std::size_t m = config.abf.cols();
        if (config.abf.rows() != channel.n_tx())
            throw DimensionError("effective_channel: ABF rows differ from N_t");
        if (m > channel.n_paths() || config.array_gains.size() != m)
            throw DimensionError("effective_channel: beamformer does not match the channel");

        if (mode == EffectiveChannelMode::exact)
            return build_channel(channel) * config.abf;

        ComplexMatrix ha(channel.n_rx(), m);
        for (std::size_t j = 0; j < m; ++j)
        {
            const double amp = std::sqrt(channel.gains()[j] * config.array_gains[j]);
            const auto ar = steering_vector_rx(channel.aoa()[j], channel.n_rx());
            for (std::size_t r = 0; r < channel.n_rx(); ++r)
                ha(r, j) = amp * ar[r];
        }
        return ha;
    }

    ComplexVector transmit(const BeamformerConfig &config, const ComplexMatrix &pattern, std::span<const cplx> symbol)
    {
        if (pattern.rows() != config.abf.cols() || pattern.cols() != config.dbf.rows() ||
            symbol.size() != config.dbf.cols())
            throw DimensionError("transmit: A (" + std::to_string(config.abf.rows()) + "x" +
                                 std::to_string(config.abf.cols()) + "), B (" + std::to_string(pattern.rows()) + "x" +
                                 std::to_string(pattern.cols()) + "), x (" + std::to_string(symbol.size()) +
                                 ") do not conform");
        const auto dx = config.dbf * symbol;
        const auto bdx = pattern * std::span<const cplx>(dx);
        return config.abf * std::span<const cplx>(bdx);
    }
}
