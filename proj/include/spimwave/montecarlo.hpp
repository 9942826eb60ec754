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

#include "spimwave/capacity.hpp"

#include <cstddef>
#include <cstdint>

namespace spimwave
{
    struct MonteCarloSpec
    {
        std::size_t n_samples = 100000;
        std::uint64_t seed = 1;
        std::size_t batch = 10000; // samples per work unit

        static constexpr std::size_t kMinSamples = 1000;
        void validate() const;
    };

    struct McEstimate
    {
        double estimate; // bits
        double std_error; // bits
    };

    // Full Monte-Carlo run over the Gaussian mixture y ~ (1/K) sum_k CN(0, Sigma_k).
    // Samples are stratified, exactly floor(N / K) per component.
    struct MonteCarloResult
    {
        McEstimate mutual_information; // I(y; x, B)
        McEstimate spatial;            // I(y; B)
        std::size_t samples;
    };

    MonteCarloResult mc_run(const CovarianceSet &covs, const MonteCarloSpec &spec);

    // I(y; x, B) = h(y) - N_r log2(pi e N_0)
    McEstimate mc_mutual_information(const CovarianceSet &covs, const MonteCarloSpec &spec);

    // I(y; B) = h(y) - (1/K) sum_k h(y | B_k)
    McEstimate mc_spatial_information(const CovarianceSet &covs, const MonteCarloSpec &spec);
}
