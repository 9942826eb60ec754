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

#include "oracles.hpp"

#include "spimwave/beamforming.hpp"
#include "spimwave/errors.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

using namespace spimwave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    // Largest power of two not exceeding c, by repeated doubling
    std::size_t floor_pow2(std::uint64_t c)
    {
        std::size_t k = 1;
        while (2 * k <= c)
            k *= 2;
        return k;
    }

    // C(n, k) via Pascal's triangle
    std::uint64_t pascal(std::size_t n, std::size_t k)
    {
        std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(n + 1, 0));
        for (std::size_t i = 0; i <= n; ++i)
        {
            t[i][0] = 1;
            for (std::size_t j = 1; j <= i; ++j)
                t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
        }
        return t[n][k];
    }

    ChannelRealization two_path_channel(double sep = 0.2)
    {
        return ChannelRealization(64, 8, {-0.1, -0.1 + sep}, {0.05, -0.15}, {0.9, 0.1});
    }
}

TEST_CASE("pattern_alphabet for two paths and one RF chain is {e1, e2}", "[beamforming]")
{
    const auto alpha = pattern_alphabet(2, 1);
    REQUIRE(alpha.size() == 2);
    const auto b0 = alpha.selection_matrix(0);
    const auto b1 = alpha.selection_matrix(1);
    CHECK(b0(0, 0) == cplx(1.0));
    CHECK(b0(1, 0) == cplx(0.0));
    CHECK(b1(0, 0) == cplx(0.0));
    CHECK(b1(1, 0) == cplx(1.0));
}

TEST_CASE("pattern_alphabet with a single path has one trivial pattern", "[beamforming]")
{
    const auto alpha = pattern_alphabet(1, 1);
    REQUIRE(alpha.size() == 1);
    CHECK(alpha.selection_matrix(0)(0, 0) == cplx(1.0));
}

TEST_CASE("pattern_alphabet keeps the lexicographically first combinations", "[beamforming]")
{
    const auto alpha = pattern_alphabet(3, 2);
    REQUIRE(alpha.size() == 2);
    // all combinations in lexicographic order: {0,1}, {0,2}, {1,2}
    CHECK(std::vector<std::size_t>(alpha.taps(0).begin(), alpha.taps(0).end()) == std::vector<std::size_t>{0, 1});
    CHECK(std::vector<std::size_t>(alpha.taps(1).begin(), alpha.taps(1).end()) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("alphabet size is the largest power of two within C(m, n_s)", "[beamforming][property]")
{
    for (std::size_t m = 1; m <= 6; ++m)
        for (std::size_t ns = 1; ns <= m; ++ns)
        {
            const auto c = pascal(m, ns);
            REQUIRE(binomial(m, ns) == c);
            const auto k = alphabet_size(m, ns);
            REQUIRE(k == floor_pow2(c));
            REQUIRE((k & (k - 1)) == 0);
            REQUIRE(k <= c);

            const auto alpha = pattern_alphabet(m, ns);
            REQUIRE(alpha.size() == k);
            std::set<std::vector<std::size_t>> seen;
            for (std::size_t i = 0; i < alpha.size(); ++i)
            {
                const auto b = alpha.selection_matrix(i);
                REQUIRE(b.rows() == m);
                REQUIRE(b.cols() == ns);
                // B^T B = I: columns are distinct standard basis vectors
                const auto btb = b.adjoint() * b;
                for (std::size_t r = 0; r < ns; ++r)
                    for (std::size_t c2 = 0; c2 < ns; ++c2)
                        REQUIRE(btb(r, c2) == cplx(r == c2 ? 1.0 : 0.0));
                REQUIRE(seen.insert({alpha.taps(i).begin(), alpha.taps(i).end()}).second);
            }
        }
}

TEST_CASE("pattern alphabet validation", "[beamforming][errors]")
{
    CHECK_THROWS_AS(pattern_alphabet(2, 3), ParameterError);
    CHECK_THROWS_AS(pattern_alphabet(2, 0), ParameterError);
    CHECK_THROWS_AS(PatternAlphabet(3, 2, {{0, 0}}), ParameterError);
    CHECK_THROWS_AS(PatternAlphabet(3, 1, {{0}, {0}}), ParameterError);
    CHECK_THROWS_AS(PatternAlphabet(3, 1, {{3}}), ParameterError);
    CHECK_THROWS_AS(binomial(200, 100), ParameterError);
}

TEST_CASE("build_abf steers unit-modulus columns along the strongest paths", "[beamforming]")
{
    const auto ch = two_path_channel();
    const auto cfg = build_abf(ch, 2);
    REQUIRE(cfg.abf.rows() == 64);
    REQUIRE(cfg.abf.cols() == 2);
    for (auto v : cfg.abf.entries())
        REQUIRE_THAT(std::abs(v), WithinAbs(1.0, 1e-12));
    const auto expected = oracle::steering(ch.aod()[0], 64);
    for (std::size_t k = 0; k < 64; ++k)
        REQUIRE(std::abs(cfg.abf(k, 0) - 8.0 * expected[k]) < 1e-12);
    CHECK(cfg.array_gains == std::vector<double>{64.0, 64.0});
    REQUIRE(cfg.dbf.rows() == 1);
    CHECK(cfg.dbf(0, 0) == cplx(1.0));

    const auto single = build_abf(ch, 1);
    CHECK(single.abf.cols() == 1);
    CHECK_THROWS_AS(build_abf(ch, 3), ParameterError);
    CHECK_THROWS_AS(build_abf(ch, 0), ParameterError);
}

TEST_CASE("digital beamformer spends the full power budget", "[beamforming]")
{
    const ChannelRealization ch(16, 4, {-0.3, 0.0, 0.3}, {-0.2, 0.0, 0.2}, {1.0, 0.5, 0.25});
    for (std::size_t ns = 1; ns <= 3; ++ns)
    {
        const auto cfg = build_abf(ch, 3, ns);
        double trace = 0.0;
        const auto ddh = cfg.dbf * cfg.dbf.adjoint();
        for (std::size_t i = 0; i < ns; ++i)
            trace += ddh(i, i).real();
        CHECK(trace <= 1.0 + 1e-12);
        CHECK_THAT(trace, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("asymptotic effective channel has column norms sqrt(w g)", "[beamforming]")
{
    const auto ch = two_path_channel();
    const auto cfg = build_abf(ch, 2);
    const auto ha = effective_channel(ch, cfg, EffectiveChannelMode::asymptotic);
    CHECK_THAT(std::sqrt(squared_norm(ha.column(0))), WithinRel(std::sqrt(57.6), 1e-12));
    CHECK_THAT(std::sqrt(squared_norm(ha.column(1))), WithinRel(std::sqrt(6.4), 1e-12));
}

TEST_CASE("exact effective channel approaches the asymptotic one", "[beamforming]")
{
    // Sidelobe leakage between the two steered beams is up to 1 / (N_t sin(pi d)),
    // so single draws at N_t = 64 can deviate by ~0.1; the average sits well below
    // 0.05 and the worst case falls under it once N_t is large.
    auto deviation = [](std::size_t nt, double a, double b, double t1, double t2)
    {
        const ChannelRealization ch(nt, 8, {a, b}, {t1, t2}, {0.6, 0.4});
        const auto cfg = build_abf(ch, 2);
        const auto exact = effective_channel(ch, cfg, EffectiveChannelMode::exact);
        auto diff = effective_channel(ch, cfg, EffectiveChannelMode::asymptotic);
        diff *= -1.0;
        diff += exact;
        return diff.frobenius_norm() / exact.frobenius_norm();
    };

    oracle::Random rnd(31);
    const int draws = 2000;
    double mean64 = 0.0, mean256 = 0.0, worst256 = 0.0;
    for (int trial = 0; trial < draws; ++trial)
    {
        double a = 0.0, b = 0.0;
        do
        {
            a = rnd.uniform(-0.35, 0.35);
            b = rnd.uniform(-0.35, 0.35);
        } while (std::abs(a - b) < 0.05);
        const double t1 = rnd.uniform(-0.25, 0.25), t2 = rnd.uniform(-0.25, 0.25);
        const double d64 = deviation(64, a, b, t1, t2);
        const double d256 = deviation(256, a, b, t1, t2);
        mean64 += d64 / draws;
        mean256 += d256 / draws;
        worst256 = std::max(worst256, d256);
    }
    CHECK(mean64 < 0.05);
    CHECK(worst256 < 0.05);
    CHECK(mean256 < mean64);
}

TEST_CASE("single path exact and asymptotic effective channels coincide", "[beamforming]")
{
    const ChannelRealization ch(64, 8, {0.21}, {-0.11}, {0.8});
    const auto cfg = build_abf(ch, 1);
    const auto exact = effective_channel(ch, cfg, EffectiveChannelMode::exact);
    const auto asym = effective_channel(ch, cfg, EffectiveChannelMode::asymptotic);
    for (std::size_t r = 0; r < 8; ++r)
        REQUIRE(std::abs(exact(r, 0) - asym(r, 0)) < 1e-12);
}

TEST_CASE("transmit applies selection semantics", "[beamforming]")
{
    const auto ch = two_path_channel();
    const auto cfg = build_abf(ch, 2);
    const auto alpha = pattern_alphabet(2, 1);

    const ComplexVector zero{cplx(0.0)};
    for (auto v : transmit(cfg, alpha.selection_matrix(1), zero))
        CHECK(v == cplx(0.0));

    const ComplexVector x{cplx(0.3, -0.7)};
    const auto s = transmit(cfg, alpha.selection_matrix(1), x);
    for (std::size_t k = 0; k < 64; ++k)
        REQUIRE(std::abs(s[k] - x[0] * cfg.abf(k, 1)) < 1e-12);

    const ComplexVector x2{cplx(1.0), cplx(2.0)};
    CHECK_THROWS_AS(transmit(cfg, alpha.selection_matrix(0), x2), DimensionError);
}

TEST_CASE("transmit is linear in the symbol", "[beamforming][property]")
{
    const ChannelRealization ch(16, 4, {-0.3, 0.0, 0.3}, {-0.2, 0.0, 0.2}, {1.0, 0.5, 0.25});
    const auto cfg = build_abf(ch, 3, 2);
    const auto alpha = pattern_alphabet(3, 2);
    oracle::Random rnd(32);
    for (int trial = 0; trial < 20; ++trial)
    {
        const ComplexVector x{rnd.complex_normal(), rnd.complex_normal()};
        const ComplexVector y{rnd.complex_normal(), rnd.complex_normal()};
        const cplx a = rnd.complex_normal();
        const ComplexVector comb{a * x[0] + y[0], a * x[1] + y[1]};
        const auto b = alpha.selection_matrix(trial % alpha.size());
        const auto sx = transmit(cfg, b, x), sy = transmit(cfg, b, y), sc = transmit(cfg, b, comb);
        for (std::size_t k = 0; k < sx.size(); ++k)
            REQUIRE(std::abs(sc[k] - (a * sx[k] + sy[k])) < 1e-12);
    }
}

TEST_CASE("mean transmit power equals N_t", "[beamforming]")
{
    const auto ch = two_path_channel();
    const auto cfg = build_abf(ch, 2);
    const auto alpha = pattern_alphabet(2, 1);
    Rng rng(33);
    double power = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
    {
        const auto x = sample_complex_gaussian(rng, 1, 1.0);
        // ||A e_k x||^2 = N_t |x|^2 for unit-modulus columns
        power += static_cast<double>(ch.n_tx()) * std::norm(x[0]);
    }
    CHECK_THAT(power / draws, WithinRel(64.0, 0.02));
    // and the explicit chain for a few draws
    for (int i = 0; i < 50; ++i)
    {
        const auto x = sample_complex_gaussian(rng, 1, 1.0);
        const auto s = transmit(cfg, alpha.selection_matrix(i % 2), x);
        REQUIRE_THAT(squared_norm(s), WithinRel(64.0 * std::norm(x[0]), 1e-12));
    }
}
