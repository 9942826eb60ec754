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

#pragma once

#include "spimwave/channel.hpp"
#include "spimwave/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spimwave
{
    // Exact binomial coefficient; throws ParameterError on overflow
    std::uint64_t binomial(std::size_t n, std::size_t k);

    // K = 2^floor(log2 C(m, n_s))
    std::size_t alphabet_size(std::size_t m, std::size_t n_s);

    // The K spatial patterns. Pattern i connects RF chain t to analog tap taps(i)[t].
    class PatternAlphabet
    {
    public:
        PatternAlphabet(std::size_t m, std::size_t n_s, std::vector<std::vector<std::size_t>> taps);

        std::size_t m() const noexcept { return m_; }
        std::size_t n_s() const noexcept { return n_s_; }
        std::size_t size() const noexcept { return taps_.size(); }
        std::span<const std::size_t> taps(std::size_t i) const { return taps_.at(i); }

        // M x N_s selection matrix B_i, columns are standard basis vectors
        ComplexMatrix selection_matrix(std::size_t i) const;

    private:
        std::size_t m_;
        std::size_t n_s_;
        std::vector<std::vector<std::size_t>> taps_;
    };

    // Lexicographically first K tap combinations
    PatternAlphabet pattern_alphabet(std::size_t m, std::size_t n_s);

    struct BeamformerConfig
    {
        ComplexMatrix abf;               // N_t x M, unit-modulus
        ComplexMatrix dbf;               // N_s x N_s, Tr(D D^H) = 1
        std::vector<double> array_gains; // g_j per steered path
    };

    // Steers column j along the j-th strongest path: sqrt(N_t) a_T(phi_j), g_j = N_t.
    // The digital stage spends the whole power budget, D = I / sqrt(N_s).
    BeamformerConfig build_abf(const ChannelRealization &channel, std::size_t m, std::size_t n_s = 1);

    enum class EffectiveChannelMode
    {
        exact,      // H A by full matrix product
        asymptotic, // columns sqrt(w_j g_j) a_R(theta_j), the large-N_t limit
    };

    // N_r x M
    ComplexMatrix effective_channel(const ChannelRealization &channel, const BeamformerConfig &config,
                                    EffectiveChannelMode mode);

    // s = A B_i D x
    ComplexVector transmit(const BeamformerConfig &config, const ComplexMatrix &pattern, std::span<const cplx> symbol);
}
