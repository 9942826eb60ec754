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

#include "spimwave/beamforming.hpp"
#include "spimwave/channel.hpp"
#include "spimwave/numerics.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace spimwave
{
    enum class CovarianceSource
    {
        exact,
        asymptotic,
    };

    // Per-pattern received covariances Sigma_k = N_0 I + (H A B_k D)(H A B_k D)^H.
    // Log-determinants are factored once at construction.
    class CovarianceSet
    {
    public:
        CovarianceSet(double n0, std::vector<ComplexMatrix> sigmas, CovarianceSource source);

        double n0() const noexcept { return n0_; }
        std::size_t size() const noexcept { return sigmas_.size(); }
        std::size_t n_r() const noexcept { return sigmas_.front().rows(); }
        CovarianceSource source() const noexcept { return source_; }
        const ComplexMatrix &sigma(std::size_t k) const { return sigmas_.at(k); }
        std::span<const ComplexMatrix> sigmas() const noexcept { return sigmas_; }

        // ln |Sigma_k|
        double log_det(std::size_t k) const { return log_dets_.at(k); }
        // ln |Sigma_n + Sigma_t|
        double log_det_sum(std::size_t n, std::size_t t) const;

    private:
        double n0_;
        std::vector<ComplexMatrix> sigmas_;
        CovarianceSource source_;
        std::vector<double> log_dets_;
    };

    CovarianceSet covariances(const ComplexMatrix &effective, const PatternAlphabet &alphabet, double n0,
                              const ComplexMatrix &dbf, CovarianceSource source = CovarianceSource::exact);

    // Uses D = I / sqrt(N_s), matching build_abf
    CovarianceSet covariances(const ComplexMatrix &effective, const PatternAlphabet &alphabet, double n0,
                              CovarianceSource source = CovarianceSource::exact);

    // N_r (1 - log2 e): the constant separating i_app from the sum of the conditional
    // Shannon term and the spatial lower bound. Negative for every N_r >= 1.
    double approximation_gap(std::size_t n_r);

    // (1/K) sum_k log2 |Sigma_k / N_0|
    double i_shannon_conditional(const CovarianceSet &covs);

    // log2 K - N_r log2 e - (1/K) sum_n log2 sum_t |Sigma_n| / |Sigma_n + Sigma_t|.
    // A bound, so the value may be negative.
    double i_lb_spatial(const CovarianceSet &covs);

    // log2(K / (2 N_0)^N_r) - (1/K) sum_n log2 sum_t |Sigma_n + Sigma_t|^{-1}
    //   = i_shannon_conditional + i_lb_spatial - approximation_gap
    double i_app(const CovarianceSet &covs);

    // One steered path as seen through the asymptotic effective channel
    struct SteeredPath
    {
        double gain;       // w
        double array_gain; // g
        double aoa;        // normalized theta
    };

    // The first m paths of a channel with the array gains of a beamformer
    std::vector<SteeredPath> steered_paths(const ChannelRealization &channel, const BeamformerConfig &config);

    // sin^2(pi N_r d) / (N_r^2 sin^2(pi d)); returns the limit 1 when d sits within 1e-9 of an integer
    double dirichlet_gain(double delta_theta, std::size_t n_r);

    // |a_R(theta_n)^H a_R(theta_t)|^2 in closed form
    double steering_inner_product_sq(double theta_n, double theta_t, std::size_t n_r);

    // |Sigma_n + Sigma_t| for rank-one asymptotic covariances
    double det_sum_closed_form(const SteeredPath &n, const SteeredPath &t, std::size_t n_r, double n0);

    // Which determinant sits in the numerator of the spatial sum of the two-path formula
    enum class SpatialNumerator
    {
        own,     // |Sigma_n| / |Sigma_n + Sigma_t|, consistent with the general lower bound
        partner, // |Sigma_t| / |Sigma_n + Sigma_t|, as printed in the two-path display
    };

    double i_spim_m2(const SteeredPath &p1, const SteeredPath &p2, std::size_t n_r, double n0,
                     SpatialNumerator numerator = SpatialNumerator::own);

    // log2 M - (1/M) sum_n log2 sum_t [(1 + a_n/2)(1 + a_t/2) - Q_nt]^{-1}, a = w g / N_0
    double i_spim_general(std::span<const SteeredPath> paths, std::size_t n_r, double n0);

    // log2(1 + w_1 g_1 / N_0)
    double i_mmwave(double w1, double g1, double n0);

    enum class Method
    {
        closed_form_lb,
        closed_form_eq12,
        general_m,
        monte_carlo,
    };

    std::string_view method_tag(Method m);

    struct SpectralEfficiencyReport
    {
        double i_spim;
        double i_mmwave;
        Method method;
        double n0;
        std::size_t m;
        std::size_t n_r;
    };
}
