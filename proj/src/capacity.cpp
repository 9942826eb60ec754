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

#include "spimwave/capacity.hpp"
#include "spimwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace spimwave
{
    namespace
    {
        // ln sum_i exp(x_i)
        double log_sum_exp(std::span<const double> x)
        {
            const double peak = *std::max_element(x.begin(), x.end());
            if (!std::isfinite(peak))
                return peak;
            double acc = 0.0;
            for (double v : x)
                acc += std::exp(v - peak);
            return peak + std::log(acc);
        }

        void check_noise(double n0, const char *who)
        {
            if (!(n0 > 0.0) || !std::isfinite(n0))
                throw ParameterError(std::string(who) + ": noise power must be > 0");
        }
    }

    CovarianceSet::CovarianceSet(double n0, std::vector<ComplexMatrix> sigmas, CovarianceSource source)
        : n0_(n0), sigmas_(std::move(sigmas)), source_(source)
    {
        check_noise(n0, "CovarianceSet");
        if (sigmas_.empty())
            throw ParameterError("CovarianceSet: at least one covariance is required");
        const std::size_t n = sigmas_.front().rows();
        log_dets_.reserve(sigmas_.size());
        for (const auto &s : sigmas_)
        {
            if (!s.is_square() || s.rows() != n)
                throw DimensionError("CovarianceSet: covariances must be square and of equal size");
            if (!s.is_hermitian(1e-12 * std::max(1.0, s.frobenius_norm())))
                throw ParameterError("CovarianceSet: covariance is not Hermitian");
            log_dets_.push_back(hermitian_log_det(s));
        }
    }

    double CovarianceSet::log_det_sum(std::size_t n, std::size_t t) const
    {
        if (n == t)
            return static_cast<double>(n_r()) * kLn2 + log_dets_.at(n);
        return hermitian_log_det(sigmas_.at(n) + sigmas_.at(t));
    }

    CovarianceSet covariances(const ComplexMatrix &effective, const PatternAlphabet &alphabet, double n0,
                              const ComplexMatrix &dbf, CovarianceSource source)
    {
        check_noise(n0, "covariances");
        if (effective.cols() != alphabet.m())
            throw DimensionError("covariances: effective channel has " + std::to_string(effective.cols()) +
                                 " columns, alphabet expects M = " + std::to_string(alphabet.m()));
        if (dbf.rows() != alphabet.n_s() || dbf.cols() != alphabet.n_s())
            throw DimensionError("covariances: DBF must be N_s x N_s");

        const std::size_t n_r = effective.rows();
        std::vector<ComplexMatrix> sigmas;
        sigmas.reserve(alphabet.size());
        for (std::size_t k = 0; k < alphabet.size(); ++k)
        {
            const ComplexMatrix g = effective * alphabet.selection_matrix(k) * dbf;
            ComplexMatrix s = g * g.adjoint();
            for (std::size_t i = 0; i < n_r; ++i)
                s(i, i) += n0;
            // remove rounding asymmetry
            for (std::size_t i = 0; i < n_r; ++i)
            {
                s(i, i) = s(i, i).real();
                for (std::size_t j = i + 1; j < n_r; ++j)
                    s(j, i) = std::conj(s(i, j));
            }
            sigmas.push_back(std::move(s));
        }
        return CovarianceSet(n0, std::move(sigmas), source);
    }

    CovarianceSet covariances(const ComplexMatrix &effective, const PatternAlphabet &alphabet, double n0,
                              CovarianceSource source)
    {
        const ComplexMatrix dbf =
            (1.0 / std::sqrt(static_cast<double>(alphabet.n_s()))) * ComplexMatrix::identity(alphabet.n_s());
        return covariances(effective, alphabet, n0, dbf, source);
    }

    double approximation_gap(std::size_t n_r)
    {
        return static_cast<double>(n_r) * (1.0 - kLog2e);
    }

    double i_shannon_conditional(const CovarianceSet &covs)
    {
        const double k = static_cast<double>(covs.size());
        const double ln_n0 = std::log(covs.n0());
        double acc = 0.0;
        for (std::size_t i = 0; i < covs.size(); ++i)
            acc += covs.log_det(i) - static_cast<double>(covs.n_r()) * ln_n0;
        return acc / k / kLn2;
    }

    double i_lb_spatial(const CovarianceSet &covs)
    {
        const std::size_t k = covs.size();
        std::vector<double> terms(k);
        double acc = 0.0;
        for (std::size_t n = 0; n < k; ++n)
        {
            for (std::size_t t = 0; t < k; ++t)
                terms[t] = covs.log_det(n) - covs.log_det_sum(n, t);
            acc += log_sum_exp(terms);
        }
        const double kd = static_cast<double>(k);
        return std::log2(kd) - static_cast<double>(covs.n_r()) * kLog2e - acc / kd / kLn2;
    }

    double i_app(const CovarianceSet &covs)
    {
        const std::size_t k = covs.size();
        std::vector<double> terms(k);
        double acc = 0.0;
        for (std::size_t n = 0; n < k; ++n)
        {
            for (std::size_t t = 0; t < k; ++t)
                terms[t] = -covs.log_det_sum(n, t);
            acc += log_sum_exp(terms);
        }
        const double kd = static_cast<double>(k);
        const double nats = std::log(kd) - static_cast<double>(covs.n_r()) * std::log(2.0 * covs.n0()) - acc / kd;
        return nats / kLn2;
    }

    std::vector<SteeredPath> steered_paths(const ChannelRealization &channel, const BeamformerConfig &config)
    {
        const std::size_t m = config.array_gains.size();
        if (m > channel.n_paths())
            throw DimensionError("steered_paths: beamformer steers more paths than the channel has");
        std::vector<SteeredPath> paths(m);
        for (std::size_t j = 0; j < m; ++j)
            paths[j] = {channel.gains()[j], config.array_gains[j], channel.aoa()[j]};
        return paths;
    }

    double dirichlet_gain(double delta_theta, std::size_t n_r)
    {
        if (n_r == 0)
            throw ParameterError("dirichlet_gain: n_r must be >= 1");
        // periodic in delta_theta with period 1; the kernel peaks at every integer
        const double d = delta_theta - std::round(delta_theta);
        const double n = static_cast<double>(n_r);
        if (std::abs(d) < 1e-9)
            return 1.0 - (kPi * d) * (kPi * d) * (n * n - 1.0) / 3.0;
        const double num = std::sin(kPi * n * d);
        const double den = n * std::sin(kPi * d);
        return std::clamp((num * num) / (den * den), 0.0, 1.0);
    }

    double steering_inner_product_sq(double theta_n, double theta_t, std::size_t n_r)
    {
        return dirichlet_gain(theta_t - theta_n, n_r);
    }

    namespace
    {
        // 1 - Q(delta_theta) without cancellation near the main lobe, from
        // N^2 - |sum_k e^{j k x}|^2 = sum_{k<l} 4 sin^2((l - k) x / 2)
        double dirichlet_complement(double delta_theta, std::size_t n_r)
        {
            const double d = delta_theta - std::round(delta_theta);
            const double n = static_cast<double>(n_r);
            double acc = 0.0;
            for (std::size_t m = 1; m < n_r; ++m)
            {
                const double s = std::sin(kPi * static_cast<double>(m) * d);
                acc += (n - static_cast<double>(m)) * s * s;
            }
            return std::clamp(4.0 * acc / (n * n), 0.0, 1.0);
        }

        // |Sigma_n + Sigma_t| / (2 N_0)^N_r, expanded as
        // 1 + (a_n + a_t)/2 + a_n a_t (1 - Q)/4 so that nearly aligned receive
        // beams do not cancel two large products
        double reduced_det_sum(const SteeredPath &n, const SteeredPath &t, std::size_t n_r, double n0)
        {
            const double an = n.gain * n.array_gain / n0;
            const double at = t.gain * t.array_gain / n0;
            const double c = dirichlet_complement(t.aoa - n.aoa, n_r);
            return 1.0 + 0.5 * (an + at) + 0.25 * an * at * c;
        }

        void check_path(const SteeredPath &p, const char *who)
        {
            if (!(p.gain > 0.0) || !(p.array_gain > 0.0))
                throw ParameterError(std::string(who) + ": path and array gains must be > 0");
        }
    }

    double det_sum_closed_form(const SteeredPath &n, const SteeredPath &t, std::size_t n_r, double n0)
    {
        check_noise(n0, "det_sum_closed_form");
        return std::pow(2.0 * n0, static_cast<double>(n_r)) * reduced_det_sum(n, t, n_r, n0);
    }

    double i_spim_m2(const SteeredPath &p1, const SteeredPath &p2, std::size_t n_r, double n0,
                     SpatialNumerator numerator)
    {
        check_noise(n0, "i_spim_m2");
        check_path(p1, "i_spim_m2");
        check_path(p2, "i_spim_m2");

        const SteeredPath paths[2] = {p1, p2};
        const double nr = static_cast<double>(n_r);

        // |Sigma_i| / N_0^N_r = 1 + w_i g_i / N_0
        double ln_sigma[2];
        double symbol_term = 0.0;
        for (int i = 0; i < 2; ++i)
        {
            ln_sigma[i] = std::log1p(paths[i].gain * paths[i].array_gain / n0);
            symbol_term += 0.5 * ln_sigma[i];
        }

        double spatial = 0.0;
        for (int n = 0; n < 2; ++n)
        {
            double terms[2];
            for (int t = 0; t < 2; ++t)
            {
                const int num = numerator == SpatialNumerator::own ? n : t;
                // |Sigma_num| / |Sigma_n + Sigma_t| = 2^-N_r (1 + a_num) / reduced
                terms[t] = -nr * kLn2 + ln_sigma[num] - std::log(reduced_det_sum(paths[n], paths[t], n_r, n0));
            }
            spatial += 0.5 * log_sum_exp(terms);
        }
        return (symbol_term + kLn2 - nr * kLn2 - spatial) / kLn2;
    }

    double i_spim_general(std::span<const SteeredPath> paths, std::size_t n_r, double n0)
    {
        check_noise(n0, "i_spim_general");
        if (paths.empty())
            throw ParameterError("i_spim_general: at least one path is required");
        for (const auto &p : paths)
            check_path(p, "i_spim_general");

        const std::size_t m = paths.size();
        double acc = 0.0;
        for (std::size_t n = 0; n < m; ++n)
        {
            // sum_t 1/d_nt = (1/d_nn) (1 + sum_{t != n} d_nn / d_nt), with d_nn = 1 + a_n exactly
            const double a_n = paths[n].gain * paths[n].array_gain / n0;
            const double d_nn = 1.0 + a_n;
            double cross = 0.0;
            for (std::size_t t = 0; t < m; ++t)
                if (t != n)
                    cross += d_nn / reduced_det_sum(paths[n], paths[t], n_r, n0);
            acc += std::log1p(a_n) - std::log1p(cross);
        }
        const double md = static_cast<double>(m);
        return (std::log(md) + acc / md) / kLn2;
    }

    double i_mmwave(double w1, double g1, double n0)
    {
        check_noise(n0, "i_mmwave");
        if (!(w1 >= 0.0) || !(g1 >= 0.0))
            throw ParameterError("i_mmwave: gains must be >= 0");
        return std::log1p(w1 * g1 / n0) / kLn2;
    }

    std::string_view method_tag(Method m)
    {
        switch (m)
        {
        case Method::closed_form_lb:
            return "closed-form-lb";
        case Method::closed_form_eq12:
            return "closed-form-eq12";
        case Method::general_m:
            return "general-M";
        case Method::monte_carlo:
            return "monte-carlo";
        }
        return "unknown";
    }
}
