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

#include "spimwave/numerics.hpp"

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace spimwave
{
    // Normalized angles are the canonical representation: phi = sin(phi_hat) / 2,
    // so every angle lies in [-0.5, 0.5].
    double normalized_angle(double physical_rad);

    // Unit-norm ULA response, entry k = exp(-j 2 pi angle (k - (n - 1) / 2)) / sqrt(n)
    ComplexVector steering_vector(double angle, std::size_t n);
    ComplexVector steering_vector_tx(double phi, std::size_t n_tx);
    ComplexVector steering_vector_rx(double theta, std::size_t n_rx);

    // Geometric narrow-band channel H = P diag(sqrt(w)) Q^H. Paths are stored
    // strongest first; ties keep their input order.
    class ChannelRealization
    {
    public:
        ChannelRealization(std::size_t n_tx, std::size_t n_rx, std::vector<double> aod,
                           std::vector<double> aoa, std::vector<double> gains);

        std::size_t n_tx() const noexcept { return n_tx_; }
        std::size_t n_rx() const noexcept { return n_rx_; }
        std::size_t n_paths() const noexcept { return gains_.size(); }
        std::span<const double> aod() const noexcept { return aod_; }
        std::span<const double> aoa() const noexcept { return aoa_; }
        std::span<const double> gains() const noexcept { return gains_; }

    private:
        std::size_t n_tx_;
        std::size_t n_rx_;
        std::vector<double> aod_;
        std::vector<double> aoa_;
        std::vector<double> gains_;
    };

    // N_r x N_t channel matrix
    ComplexMatrix build_channel(const ChannelRealization &channel);

    struct AngleRange
    {
        double lo;
        double hi;
    };

    // Gains given explicitly; normalize rescales them to unit sum
    struct ExplicitGains
    {
        std::vector<double> values;
        bool normalize = false;
    };

    // w_n = gamma^(n - 1)
    struct ExponentialDecay
    {
        double gamma;
    };

    using GainModel = std::variant<ExplicitGains, ExponentialDecay>;

    namespace defaults
    {
        inline constexpr std::size_t kNumTx = 64;
        inline constexpr std::size_t kNumRx = 8;
        inline constexpr std::size_t kNumRfChains = 1;
        inline constexpr AngleRange kAodRange{-0.35, 0.35};
        inline constexpr AngleRange kAoaRange{-0.25, 0.25};
    }

    std::vector<double> decaying_gains(double gamma, std::size_t n_paths);

    // Minimum pairwise separation enforced by sample_channel, 1 / (4 max(N_t, N_r))
    double angle_separation_floor(std::size_t n_tx, std::size_t n_rx);

    // Draws angles uniformly from the ranges, redrawing the whole set until every
    // pair of AoDs and every pair of AoAs is separated by angle_separation_floor.
    ChannelRealization sample_channel(Rng &rng, std::size_t n_tx, std::size_t n_rx, std::size_t n_paths,
                                      const GainModel &gain_model, AngleRange aod_range = defaults::kAodRange,
                                      AngleRange aoa_range = defaults::kAoaRange);
}
