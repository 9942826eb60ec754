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
#include "spimwave/channel.hpp"
#include "spimwave/montecarlo.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spimwave
{
    enum class ExperimentKind
    {
        snr_sweep,   // axis: SNR in dB, N_0 = 10^(-SNR/10)
        w1_sweep,    // axis: w_1 with w_2 = 1 - w_1
        gamma_sweep, // axis: decay exponent, one series per M
        margin_map,  // axis: decay exponent, one series per N_0
        q_function,  // axis: receive angle difference, one series per N_r
    };

    std::string_view experiment_name(ExperimentKind kind);
    std::optional<ExperimentKind> parse_experiment_name(std::string_view name);

    enum class GainModelKind
    {
        explicit_list,
        decay,
    };

    // Declarative sweep description. Field names match the spec-file keys.
    struct ExperimentSpec
    {
        ExperimentKind experiment = ExperimentKind::snr_sweep;
        std::vector<double> grid;

        std::size_t n_tx = defaults::kNumTx;
        std::size_t n_rx = defaults::kNumRx;
        GainModelKind gain_model = GainModelKind::explicit_list;
        std::vector<double> gains{0.9, 0.1};
        bool normalize_gains = false;
        double gamma = 0.5;
        std::size_t n_paths = 2;
        std::size_t m = 0; // steered paths for snr/w1 sweeps; 0 means all paths
        std::vector<std::size_t> m_values{1, 2, 4, 8};
        AngleRange aod_range = defaults::kAodRange;
        AngleRange aoa_range = defaults::kAoaRange;
        EffectiveChannelMode effective = EffectiveChannelMode::exact;

        double n0 = 0.1;
        std::vector<double> n0_values{0.05, 0.1, 0.5, 1.0};
        std::vector<std::size_t> nr_values{2, 4, 8};

        std::size_t trials = 100;
        std::uint64_t seed = 1;
        MonteCarloSpec mc;
        std::vector<Method> methods{Method::closed_form_lb, Method::monte_carlo};

        double g1 = 64.0;
        int b_max = 6;
        bool relax_integer = false;

        std::string csv_path;
        std::string plot_path;

        // Throws ValidationError naming the offending field
        void validate() const;
    };

    // Every method tag that can appear in a result row
    inline constexpr std::string_view kMethodShannon = "shannon";
    inline constexpr std::string_view kMethodMargin = "margin";
    inline constexpr std::string_view kMethodDirichlet = "dirichlet";
    std::vector<std::string_view> known_method_tags();

    struct ResultRow
    {
        double axis;
        std::string series;
        std::string method;
        double value;   // mean over trials
        double std_dev; // spread over trials
        std::optional<double> std_error; // Monte-Carlo only
        std::uint64_t seed;
        std::size_t trials;
    };

    struct ResultTable
    {
        ExperimentKind experiment;
        std::vector<ResultRow> rows;
    };

    inline constexpr std::string_view kCsvHeader = "axis,series,method,value,std,stderr,seed,trials";

    // Rows ordered by (axis, series, method) independent of scheduling
    ResultTable run_experiment(const ExperimentSpec &spec);

    void write_csv(const ResultTable &table, std::ostream &out);
    void write_csv_file(const ResultTable &table, const std::filesystem::path &path);
    std::string plot_script(ExperimentKind kind, const std::string &csv_file, const std::string &title);

    // ---- spec files ----

    // key = value lines, '#' comments, lists separated by commas, grids as
    // comma lists or start:step:stop. Unknown or repeated keys are rejected.
    ExperimentSpec parse_spec(std::string_view text);
    ExperimentSpec load_spec_file(const std::filesystem::path &path);

    // ---- canned figures ----

    inline constexpr std::string_view kFigureIds[] = {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};

    struct ReproduceOptions
    {
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> trials;
        std::optional<std::size_t> mc_samples;
        std::optional<EffectiveChannelMode> effective;
    };

    ExperimentSpec figure_spec(std::string_view id, const ReproduceOptions &options = {});

    struct FigureOutput
    {
        std::filesystem::path csv;
        std::filesystem::path plot;
        std::size_t rows;
    };

    FigureOutput reproduce_figure(std::string_view id, const std::filesystem::path &out_dir,
                                  const ReproduceOptions &options = {});
}
