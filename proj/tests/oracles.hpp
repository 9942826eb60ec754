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

// Independent reference computations used by the tests. Nothing here calls
// into the library's numeric kernels: determinants come from cofactor
// expansion or pivoted elimination, steering vectors and kernels from direct
// summation, and randomness from the standard library engines.

#include "spimwave/numerics.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

namespace oracle
{
    using C = std::complex<double>;
    using Mat = std::vector<std::vector<C>>;

    inline constexpr double kPi = 3.141592653589793238462643383279502884;

    inline Mat to_mat(const spimwave::ComplexMatrix &m)
    {
        Mat out(m.rows(), std::vector<C>(m.cols()));
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                out[r][c] = m(r, c);
        return out;
    }

    inline spimwave::ComplexMatrix from_mat(const Mat &m)
    {
        spimwave::ComplexMatrix out(m.size(), m.empty() ? 0 : m[0].size());
        for (std::size_t r = 0; r < m.size(); ++r)
            for (std::size_t c = 0; c < m[r].size(); ++c)
                out(r, c) = m[r][c];
        return out;
    }

    // Laplace expansion along the first row; exponential cost, dimension <= 8
    inline C cofactor_det(const Mat &m)
    {
        const std::size_t n = m.size();
        if (n == 1)
            return m[0][0];
        if (n == 2)
            return m[0][0] * m[1][1] - m[0][1] * m[1][0];
        C det = 0.0;
        for (std::size_t j = 0; j < n; ++j)
        {
            Mat minor(n - 1);
            for (std::size_t r = 1; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if (c != j)
                        minor[r - 1].push_back(m[r][c]);
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            det += sign * m[0][j] * cofactor_det(minor);
        }
        return det;
    }

    // Gaussian elimination with partial pivoting
    inline C lu_det(Mat m)
    {
        const std::size_t n = m.size();
        C det = 1.0;
        for (std::size_t k = 0; k < n; ++k)
        {
            std::size_t p = k;
            for (std::size_t r = k + 1; r < n; ++r)
                if (std::abs(m[r][k]) > std::abs(m[p][k]))
                    p = r;
            if (p != k)
            {
                std::swap(m[p], m[k]);
                det = -det;
            }
            det *= m[k][k];
            if (m[k][k] == C(0.0))
                return 0.0;
            for (std::size_t r = k + 1; r < n; ++r)
            {
                const C f = m[r][k] / m[k][k];
                for (std::size_t c = k; c < n; ++c)
                    m[r][c] -= f * m[k][c];
            }
        }
        return det;
    }

    inline double log_det(const spimwave::ComplexMatrix &m) { return std::log(lu_det(to_mat(m)).real()); }

    inline Mat add(const Mat &a, const Mat &b)
    {
        Mat out = a;
        for (std::size_t r = 0; r < a.size(); ++r)
            for (std::size_t c = 0; c < a[r].size(); ++c)
                out[r][c] += b[r][c];
        return out;
    }

    inline Mat multiply(const Mat &a, const Mat &b)
    {
        Mat out(a.size(), std::vector<C>(b[0].size(), 0.0));
        for (std::size_t r = 0; r < a.size(); ++r)
            for (std::size_t k = 0; k < b.size(); ++k)
                for (std::size_t c = 0; c < b[0].size(); ++c)
                    out[r][c] += a[r][k] * b[k][c];
        return out;
    }

    inline Mat identity(std::size_t n)
    {
        Mat out(n, std::vector<C>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            out[i][i] = 1.0;
        return out;
    }

    // Entry k = exp(-j 2 pi angle (k - (n - 1) / 2)) / sqrt(n)
    inline std::vector<C> steering(double angle, std::size_t n)
    {
        std::vector<C> v(n);
        const double centre = (static_cast<double>(n) - 1.0) / 2.0;
        for (std::size_t k = 0; k < n; ++k)
            v[k] = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                              -2.0 * kPi * angle * (static_cast<double>(k) - centre));
        return v;
    }

    // |a(theta_n)^H a(theta_t)|^2 by direct summation
    inline double steering_overlap_sq(double theta_n, double theta_t, std::size_t n)
    {
        const auto a = steering(theta_n, n);
        const auto b = steering(theta_t, n);
        C acc = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            acc += std::conj(a[k]) * b[k];
        return std::norm(acc);
    }

    // N_0 I + sum_j h_j h_j^H for explicit column vectors h_j
    inline Mat covariance(double n0, const std::vector<std::vector<C>> &columns, std::size_t n)
    {
        Mat out(n, std::vector<C>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            out[i][i] = n0;
        for (const auto &h : columns)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    out[r][c] += h[r] * std::conj(h[c]);
        return out;
    }

    struct Random
    {
        std::mt19937_64 engine;
        explicit Random(std::uint64_t seed) : engine(seed) {}

        double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
        C complex_normal()
        {
            std::normal_distribution<double> n(0.0, std::sqrt(0.5));
            const double re = n(engine);
            const double im = n(engine);
            return {re, im};
        }
        std::size_t index(std::size_t lo, std::size_t hi)
        {
            return std::uniform_int_distribution<std::size_t>(lo, hi)(engine);
        }
    };

    // N_0 I + R R^H with R of size n x rank
    inline Mat random_pd(Random &rnd, std::size_t n, std::size_t rank, double n0, double scale = 1.0)
    {
        std::vector<std::vector<C>> cols(rank, std::vector<C>(n));
        for (auto &col : cols)
            for (auto &v : col)
                v = scale * rnd.complex_normal();
        return covariance(n0, cols, n);
    }

    // Reference implementations of the closed-form spectral quantities, written
    // directly from their determinant definitions (bits).
    inline double shannon_conditional(const std::vector<Mat> &sig, double n0)
    {
        const double nr = static_cast<double>(sig[0].size());
        double acc = 0.0;
        for (const auto &s : sig)
            acc += std::log2(lu_det(s).real()) - nr * std::log2(n0);
        return acc / static_cast<double>(sig.size());
    }

    inline double lb_spatial(const std::vector<Mat> &sig)
    {
        const double k = static_cast<double>(sig.size());
        const double nr = static_cast<double>(sig[0].size());
        double outer_sum = 0.0;
        for (const auto &sn : sig)
        {
            const double dn = lu_det(sn).real();
            double inner_sum = 0.0;
            for (const auto &st : sig)
                inner_sum += dn / lu_det(add(sn, st)).real();
            outer_sum += std::log2(inner_sum);
        }
        return std::log2(k) - nr * std::log2(std::exp(1.0)) - outer_sum / k;
    }

    inline double approximation(const std::vector<Mat> &sig, double n0)
    {
        const double k = static_cast<double>(sig.size());
        const double nr = static_cast<double>(sig[0].size());
        double outer_sum = 0.0;
        for (const auto &sn : sig)
        {
            double inner_sum = 0.0;
            for (const auto &st : sig)
                inner_sum += 1.0 / lu_det(add(sn, st)).real();
            outer_sum += std::log2(inner_sum);
        }
        return std::log2(k) - nr * std::log2(2.0 * n0) - outer_sum / k;
    }
}
