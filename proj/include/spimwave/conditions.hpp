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

#include <cstddef>
#include <span>

namespace spimwave
{
    // 4 w2 - w1. Positive means the two-path scheme wins at high SNR.
    double theorem1_margin(double w1, double w2);

    struct ThresholdResult
    {
        double tau;
        double geo_mean; // (prod_{n >= 2} w_n)^(1 / (M - 1))
        bool holds;      // geo_mean > tau * w_1, strict
    };

    // tau = M^(-M/(M-1)) exp(4 N_0 sum_n 1 / (w_n g_n)). Sufficient condition only.
    ThresholdResult theorem2_threshold(std::span<const double> w, std::span<const double> g, double n0);

    // High-SNR limit of theorem2_threshold (N_0 = 0)
    bool corollary2_check(std::span<const double> w);

    // The same verdict in log form: mean_{n >= 2} ln w_n > -(M/(M-1)) ln M + ln w_1
    bool corollary2_log_form(std::span<const double> w);

    // M^(M/(M-1)) gamma^(M/2) exp[-4 N_0 (gamma^(1-M) - gamma) / (g_1 (1 - gamma))].
    // Greater than 1 iff M decaying paths beat the single strongest one; M = 1 gives 1.
    // M may be fractional for the relaxed margin search.
    double decay_condition_value(double m, double gamma, double n0, double g1);

    struct MarginQuery
    {
        double gamma;
        double n0;
        double g1 = 64.0;
        int b_max = 6;
        bool relax_integer = false;
    };

    inline constexpr double kRelaxedMarginStep = 0.01;

    // Largest M = 2^b, b <= b_max (or, relaxed, M on a 0.01 grid over [1, 2^b_max])
    // with decay_condition_value > 1. Falls back to 1.
    double spim_margin(const MarginQuery &q);

    // Root of decay_condition_value(M, gamma) = 1 in (0, 1), |d gamma| < 1e-6
    double gamma_crossover(std::size_t m, double n0, double g1);
}
