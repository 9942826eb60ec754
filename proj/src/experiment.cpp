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

#include "spimwave/experiment.hpp"
#include "spimwave/beamforming.hpp"
#include "spimwave/conditions.hpp"
#include "spimwave/errors.hpp"
#include "spimwave/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace spimwave
{
    std::string_view experiment_name(ExperimentKind kind)
    {
        switch (kind)
        {
        case ExperimentKind::snr_sweep:
            return "snr-sweep";
        case ExperimentKind::w1_sweep:
            return "w1-sweep";
        case ExperimentKind::gamma_sweep:
            return "gamma-sweep";
        case ExperimentKind::margin_map:
            return "margin-map";
        case ExperimentKind::q_function:
            return "q-function";
        }
        return "unknown";
    }

    std::optional<ExperimentKind> parse_experiment_name(std::string_view name)
    {
        for (auto k : {ExperimentKind::snr_sweep, ExperimentKind::w1_sweep, ExperimentKind::gamma_sweep,
                       ExperimentKind::margin_map, ExperimentKind::q_function})
            if (experiment_name(k) == name)
                return k;
        return std::nullopt;
    }

    std::vector<std::string_view> known_method_tags()
    {
        return {kMethodShannon,
                method_tag(Method::closed_form_lb),
                method_tag(Method::closed_form_eq12),
                method_tag(Method::general_m),
                method_tag(Method::monte_carlo),
                kMethodMargin,
                kMethodDirichlet};
    }

    namespace
    {
        bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

        std::size_t steered_count(const ExperimentSpec &s)
        {
            return s.m == 0 ? s.n_paths : s.m;
        }
    }

    void ExperimentSpec::validate() const
    {
        if (grid.empty())
            throw ValidationError("grid", "must not be empty");
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            if (!std::isfinite(grid[i]))
                throw ValidationError("grid", "values must be finite");
            if (i > 0 && !(grid[i] > grid[i - 1]))
                throw ValidationError("grid", "values must be strictly increasing");
        }
        if (trials < 1)
            throw ValidationError("trials", "must be >= 1");
        if (n_tx < 1 || n_rx < 1)
            throw ValidationError(n_tx < 1 ? "n_tx" : "n_rx", "must be >= 1");
        if (n_rx > kMaxDeterminantDim)
            throw ValidationError("n_rx", "must be <= 64");

        auto check_range = [](AngleRange r, const char *field)
        {
            if (!(r.lo >= -0.5 && r.hi <= 0.5 && r.lo < r.hi))
                throw ValidationError(field, "must satisfy -0.5 <= lo < hi <= 0.5");
        };
        check_range(aod_range, "aod_range");
        check_range(aoa_range, "aoa_range");

        const bool stochastic = experiment == ExperimentKind::snr_sweep || experiment == ExperimentKind::w1_sweep ||
                                experiment == ExperimentKind::gamma_sweep;
        if (stochastic)
        {
            if (methods.empty())
                throw ValidationError("methods", "must name at least one method");
            try
            {
                mc.validate();
            }
            catch (const ParameterError &e)
            {
                throw ValidationError("mc_samples", e.what());
            }
        }

        switch (experiment)
        {
        case ExperimentKind::snr_sweep:
            if (gain_model == GainModelKind::explicit_list)
            {
                if (gains.size() != n_paths)
                    throw ValidationError("gains", "length must equal n_paths");
                for (double g : gains)
                    if (!(g > 0.0))
                        throw ValidationError("gains", "values must be > 0");
            }
            else if (!(gamma > 0.0 && gamma < 1.0))
                throw ValidationError("gamma", "must lie in (0, 1)");
            if (n_paths < 1)
                throw ValidationError("n_paths", "must be >= 1");
            if (steered_count(*this) > n_paths)
                throw ValidationError("m", "must not exceed n_paths");
            break;
        case ExperimentKind::w1_sweep:
            if (n_paths != 2)
                throw ValidationError("n_paths", "w1-sweep uses exactly two paths");
            if (steered_count(*this) > 2)
                throw ValidationError("m", "must not exceed n_paths");
            for (double w : grid)
                if (!(w > 0.0 && w < 1.0))
                    throw ValidationError("grid", "w1 values must lie in (0, 1)");
            if (!(n0 > 0.0))
                throw ValidationError("n0", "must be > 0");
            break;
        case ExperimentKind::gamma_sweep:
            if (m_values.empty())
                throw ValidationError("m_values", "must not be empty");
            for (auto m : m_values)
                if (!is_power_of_two(m) || m > 64)
                    throw ValidationError("m_values", "entries must be powers of two <= 64");
            for (double g : grid)
                if (!(g > 0.0 && g < 1.0))
                    throw ValidationError("grid", "gamma values must lie in (0, 1)");
            if (!(n0 > 0.0))
                throw ValidationError("n0", "must be > 0");
            break;
        case ExperimentKind::margin_map:
            if (n0_values.empty())
                throw ValidationError("n0_values", "must not be empty");
            for (double v : n0_values)
                if (!(v >= 0.0))
                    throw ValidationError("n0_values", "entries must be >= 0");
            for (double g : grid)
                if (!(g > 0.0 && g < 1.0))
                    throw ValidationError("grid", "gamma values must lie in (0, 1)");
            if (!(g1 > 0.0))
                throw ValidationError("g1", "must be > 0");
            if (b_max < 0 || b_max > 20)
                throw ValidationError("b_max", "must lie in [0, 20]");
            break;
        case ExperimentKind::q_function:
            if (nr_values.empty())
                throw ValidationError("nr_values", "must not be empty");
            for (auto n : nr_values)
                if (n < 1)
                    throw ValidationError("nr_values", "entries must be >= 1");
            break;
        }
    }

    namespace
    {
        // One output row before aggregation
        struct Cell
        {
            std::size_t grid_index;
            std::string series;
            std::string method;
        };

        struct TrialValues
        {
            std::vector<double> value;
            std::vector<double> std_error; // NaN when not Monte-Carlo
        };

        std::string format_number(double v)
        {
            char buf[64];
            auto res = std::to_chars(buf, buf + sizeof(buf), v);
            return std::string(buf, res.ptr);
        }

        std::vector<Method> spim_methods(const ExperimentSpec &spec, std::size_t m)
        {
            std::vector<Method> out;
            for (auto meth : {Method::closed_form_lb, Method::closed_form_eq12, Method::general_m, Method::monte_carlo})
            {
                if (std::find(spec.methods.begin(), spec.methods.end(), meth) == spec.methods.end())
                    continue;
                if (meth == Method::closed_form_eq12 && m != 2)
                    continue;
                out.push_back(meth);
            }
            return out;
        }

        // SPIM spectral efficiency of one channel at one noise level
        struct SpimEvaluator
        {
            const ExperimentSpec &spec;

            void operator()(const ChannelRealization &ch, std::size_t m, double n0, std::span<const Method> methods,
                            std::uint64_t mc_seed, std::vector<double> &values, std::vector<double> &errors) const
            {
                const auto cfg = build_abf(ch, m);
                const auto ha = effective_channel(ch, cfg, spec.effective);
                const auto alphabet = pattern_alphabet(m, 1);
                const auto source = spec.effective == EffectiveChannelMode::exact ? CovarianceSource::exact
                                                                                  : CovarianceSource::asymptotic;
                const auto covs = covariances(ha, alphabet, n0, source);
                const auto paths = steered_paths(ch, cfg);

                for (auto meth : methods)
                {
                    double err = std::nan("");
                    double v = 0.0;
                    switch (meth)
                    {
                    case Method::closed_form_lb:
                        v = i_app(covs);
                        break;
                    case Method::closed_form_eq12:
                        v = i_spim_m2(paths[0], paths[1], ch.n_rx(), n0, SpatialNumerator::partner);
                        break;
                    case Method::general_m:
                        v = i_spim_general(paths, ch.n_rx(), n0);
                        break;
                    case Method::monte_carlo:
                    {
                        MonteCarloSpec mc = spec.mc;
                        mc.seed = mc_seed;
                        const auto est = mc_mutual_information(covs, mc);
                        v = est.estimate;
                        err = est.std_error;
                        break;
                    }
                    }
                    values.push_back(v);
                    errors.push_back(err);
                }
            }
        };

        // Conventional single-beam baseline on the same effective channel
        double conventional_se(const ExperimentSpec &spec, const ChannelRealization &ch, double n0)
        {
            const auto cfg = build_abf(ch, 1);
            if (spec.effective == EffectiveChannelMode::asymptotic)
                return i_mmwave(ch.gains()[0], cfg.array_gains[0], n0);
            const auto ha = effective_channel(ch, cfg, EffectiveChannelMode::exact);
            const double power = squared_norm(ha.column(0));
            return i_mmwave(1.0, power, n0);
        }

        ChannelRealization draw_trial_channel(const ExperimentSpec &spec, std::size_t trial, std::size_t n_paths,
                                              const GainModel &model)
        {
            Rng rng(spec.seed, derive_stream({0x6368616eull, trial}));
            return sample_channel(rng, spec.n_tx, spec.n_rx, n_paths, model, spec.aod_range, spec.aoa_range);
        }

        ChannelRealization with_gains(const ChannelRealization &ch, std::vector<double> gains)
        {
            return ChannelRealization(ch.n_tx(), ch.n_rx(), {ch.aod().begin(), ch.aod().end()},
                                      {ch.aoa().begin(), ch.aoa().end()}, std::move(gains));
        }

        std::uint64_t mc_seed_for(const ExperimentSpec &spec, std::size_t trial, std::size_t grid_index,
                                  std::size_t series)
        {
            return derive_stream({spec.seed, trial, grid_index, series});
        }

        struct Layout
        {
            std::vector<Cell> cells;
            bool stochastic;
        };

        Layout make_layout(const ExperimentSpec &spec)
        {
            Layout l;
            l.stochastic = true;
            for (std::size_t gi = 0; gi < spec.grid.size(); ++gi)
            {
                switch (spec.experiment)
                {
                case ExperimentKind::snr_sweep:
                case ExperimentKind::w1_sweep:
                    l.cells.push_back({gi, "mmwave", std::string(kMethodShannon)});
                    for (auto meth : spim_methods(spec, steered_count(spec)))
                        l.cells.push_back({gi, "spim", std::string(method_tag(meth))});
                    break;
                case ExperimentKind::gamma_sweep:
                    for (auto m : spec.m_values)
                        for (auto meth : spim_methods(spec, m))
                            l.cells.push_back({gi, "M=" + std::to_string(m), std::string(method_tag(meth))});
                    break;
                case ExperimentKind::margin_map:
                    l.stochastic = false;
                    for (double n0 : spec.n0_values)
                        l.cells.push_back({gi, "N0=" + format_number(n0), std::string(kMethodMargin)});
                    break;
                case ExperimentKind::q_function:
                    l.stochastic = false;
                    for (auto n : spec.nr_values)
                        l.cells.push_back({gi, "N_r=" + std::to_string(n), std::string(kMethodDirichlet)});
                    break;
                }
            }
            return l;
        }

        TrialValues run_trial(const ExperimentSpec &spec, std::size_t trial)
        {
            TrialValues tv;
            auto &values = tv.value;
            auto &errors = tv.std_error;
            const SpimEvaluator spim{spec};
            const double nan = std::nan("");

            switch (spec.experiment)
            {
            case ExperimentKind::snr_sweep:
            {
                const GainModel model = spec.gain_model == GainModelKind::explicit_list
                                            ? GainModel{ExplicitGains{spec.gains, spec.normalize_gains}}
                                            : GainModel{ExponentialDecay{spec.gamma}};
                const auto ch = draw_trial_channel(spec, trial, spec.n_paths, model);
                const std::size_t m = steered_count(spec);
                const auto methods = spim_methods(spec, m);
                for (std::size_t gi = 0; gi < spec.grid.size(); ++gi)
                {
                    const double n0 = std::pow(10.0, -spec.grid[gi] / 10.0);
                    values.push_back(conventional_se(spec, ch, n0));
                    errors.push_back(nan);
                    spim(ch, m, n0, methods, mc_seed_for(spec, trial, gi, 0), values, errors);
                }
                break;
            }
            case ExperimentKind::w1_sweep:
            {
                const auto angles = draw_trial_channel(spec, trial, 2, ExplicitGains{{1.0, 1.0}});
                const std::size_t m = steered_count(spec);
                const auto methods = spim_methods(spec, m);
                for (std::size_t gi = 0; gi < spec.grid.size(); ++gi)
                {
                    const double w1 = spec.grid[gi];
                    const auto ch = with_gains(angles, {w1, 1.0 - w1});
                    values.push_back(conventional_se(spec, ch, spec.n0));
                    errors.push_back(nan);
                    spim(ch, m, spec.n0, methods, mc_seed_for(spec, trial, gi, 0), values, errors);
                }
                break;
            }
            case ExperimentKind::gamma_sweep:
            {
                const std::size_t n_paths = *std::max_element(spec.m_values.begin(), spec.m_values.end());
                const auto angles =
                    draw_trial_channel(spec, trial, n_paths, ExplicitGains{std::vector<double>(n_paths, 1.0)});
                for (std::size_t gi = 0; gi < spec.grid.size(); ++gi)
                {
                    const auto ch = with_gains(angles, decaying_gains(spec.grid[gi], n_paths));
                    for (std::size_t si = 0; si < spec.m_values.size(); ++si)
                    {
                        const auto m = spec.m_values[si];
                        spim(ch, m, spec.n0, spim_methods(spec, m), mc_seed_for(spec, trial, gi, si), values, errors);
                    }
                }
                break;
            }
            case ExperimentKind::margin_map:
                for (double gamma : spec.grid)
                    for (double n0 : spec.n0_values)
                    {
                        values.push_back(spim_margin({gamma, n0, spec.g1, spec.b_max, spec.relax_integer}));
                        errors.push_back(nan);
                    }
                break;
            case ExperimentKind::q_function:
                for (double d : spec.grid)
                    for (auto n : spec.nr_values)
                    {
                        values.push_back(dirichlet_gain(d, n));
                        errors.push_back(nan);
                    }
                break;
            }
            return tv;
        }
    }

    ResultTable run_experiment(const ExperimentSpec &spec)
    {
        spec.validate();
        const Layout layout = make_layout(spec);
        const std::size_t trials = layout.stochastic ? spec.trials : 1;

        std::vector<TrialValues> per_trial(trials);
        parallel_for(trials, [&](std::size_t t) { per_trial[t] = run_trial(spec, t); });

        ResultTable table{spec.experiment, {}};
        table.rows.reserve(layout.cells.size());
        for (std::size_t c = 0; c < layout.cells.size(); ++c)
        {
            double sum = 0.0;
            for (const auto &tv : per_trial)
                sum += tv.value.at(c);
            const double mean = sum / static_cast<double>(trials);

            double sq = 0.0;
            double err_sq = 0.0;
            bool has_err = false;
            for (const auto &tv : per_trial)
            {
                sq += (tv.value[c] - mean) * (tv.value[c] - mean);
                if (!std::isnan(tv.std_error[c]))
                {
                    has_err = true;
                    err_sq += tv.std_error[c] * tv.std_error[c];
                }
            }
            ResultRow row;
            row.axis = spec.grid[layout.cells[c].grid_index];
            row.series = layout.cells[c].series;
            row.method = layout.cells[c].method;
            row.value = mean;
            row.std_dev = trials > 1 ? std::sqrt(sq / static_cast<double>(trials - 1)) : 0.0;
            if (has_err)
                row.std_error = std::sqrt(err_sq) / static_cast<double>(trials);
            row.seed = spec.seed;
            row.trials = trials;
            table.rows.push_back(std::move(row));
        }
        return table;
    }

    void write_csv(const ResultTable &table, std::ostream &out)
    {
        out << kCsvHeader << '\n';
        for (const auto &r : table.rows)
        {
            out << format_number(r.axis) << ',' << r.series << ',' << r.method << ',' << format_number(r.value) << ','
                << format_number(r.std_dev) << ',';
            if (r.std_error)
                out << format_number(*r.std_error);
            out << ',' << r.seed << ',' << r.trials << '\n';
        }
    }

    void write_csv_file(const ResultTable &table, const std::filesystem::path &path)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw IoError("cannot open '" + path.string() + "' for writing");
        write_csv(table, f);
        f.flush();
        if (!f)
            throw IoError("failed writing '" + path.string() + "'");
    }

    std::string plot_script(ExperimentKind kind, const std::string &csv_file, const std::string &title)
    {
        std::string xlabel, ylabel, transform = "v";
        switch (kind)
        {
        case ExperimentKind::snr_sweep:
            xlabel = "SNR = 1/N0 [dB]";
            ylabel = "spectral efficiency [bits/s/Hz]";
            break;
        case ExperimentKind::w1_sweep:
            xlabel = "w1 (w2 = 1 - w1)";
            ylabel = "spectral efficiency [bits/s/Hz]";
            break;
        case ExperimentKind::gamma_sweep:
            xlabel = "decay exponent gamma";
            ylabel = "spectral efficiency [bits/s/Hz]";
            break;
        case ExperimentKind::margin_map:
            xlabel = "decay exponent gamma";
            ylabel = "log2 M_margin";
            transform = "math.log2(v)";
            break;
        case ExperimentKind::q_function:
            xlabel = "delta theta";
            ylabel = "Q(delta theta)";
            break;
        }

        std::ostringstream s;
        s << "#!/usr/bin/env python3\n"
          << "# Generated by spimwave. Usage: python3 <this script> [output.png]\n"
          << "import csv, math, os, sys\n"
          << "from collections import OrderedDict\n"
          << "import matplotlib\n"
          << "matplotlib.use('Agg')\n"
          << "import matplotlib.pyplot as plt\n\n"
          << "here = os.path.dirname(os.path.abspath(__file__))\n"
          << "curves = OrderedDict()\n"
          << "with open(os.path.join(here, '" << csv_file << "'), newline='') as f:\n"
          << "    for row in csv.DictReader(f):\n"
          << "        key = (row['series'], row['method'])\n"
          << "        v = float(row['value'])\n"
          << "        curves.setdefault(key, ([], []))\n"
          << "        curves[key][0].append(float(row['axis']))\n"
          << "        curves[key][1].append(" << transform << ")\n\n"
          << "fig, ax = plt.subplots(figsize=(6, 4.5))\n"
          << "for (series, method), (xs, ys) in curves.items():\n"
          << "    style = '--o' if method == 'monte-carlo' else '-'\n"
          << "    ax.plot(xs, ys, style, markersize=3, label=f'{series} ({method})')\n"
          << "ax.set_xlabel('" << xlabel << "')\n"
          << "ax.set_ylabel('" << ylabel << "')\n"
          << "ax.set_title('" << title << "')\n"
          << "ax.grid(True, alpha=0.3)\n"
          << "ax.legend(fontsize=7)\n"
          << "fig.tight_layout()\n"
          << "fig.savefig(sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, '"
          << std::filesystem::path(csv_file).stem().string() << ".png'), dpi=150)\n";
        return s.str();
    }

    // ---- canned figures ----

    namespace
    {
        std::vector<double> stepped_grid(double start, double step, double stop)
        {
            std::vector<double> g;
            const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
            for (long i = 0; i <= n; ++i)
                g.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
            return g;
        }
    }

    ExperimentSpec figure_spec(std::string_view id, const ReproduceOptions &options)
    {
        ExperimentSpec s;
        if (id == "fig2")
        {
            s.experiment = ExperimentKind::margin_map;
            s.grid = stepped_grid(0.01, 0.01, 0.99);
            s.n0_values = {0.01, 0.05, 0.1, 0.5, 1.0};
            s.b_max = 6;
            s.relax_integer = true;
        }
        else if (id == "fig3" || id == "fig4")
        {
            s.experiment = ExperimentKind::snr_sweep;
            s.grid = stepped_grid(-10.0, 2.0, 20.0);
            s.gains = id == "fig3" ? std::vector<double>{0.9, 0.1} : std::vector<double>{0.6, 0.4};
            s.methods = {Method::closed_form_lb, Method::closed_form_eq12, Method::monte_carlo};
        }
        else if (id == "fig5" || id == "fig6")
        {
            s.experiment = ExperimentKind::w1_sweep;
            s.grid = stepped_grid(0.02, 0.02, 0.98);
            s.n0 = id == "fig5" ? 0.1 : 1.0;
            s.methods = {Method::closed_form_lb, Method::monte_carlo};
        }
        else if (id == "fig7")
        {
            s.experiment = ExperimentKind::gamma_sweep;
            s.grid = stepped_grid(0.05, 0.05, 0.95);
            s.m_values = {1, 2, 4, 8};
            s.n0 = 0.1;
            s.methods = {Method::general_m, Method::monte_carlo};
            s.trials = 20;
        }
        else if (id == "fig8")
        {
            s.experiment = ExperimentKind::q_function;
            s.grid = stepped_grid(-1.0, 0.002, 1.0);
            s.nr_values = {2, 4, 8};
        }
        else
        {
            std::string valid;
            for (auto f : kFigureIds)
                valid += (valid.empty() ? "" : ", ") + std::string(f);
            throw ValidationError("figure", "unknown id '" + std::string(id) + "'; valid ids: " + valid);
        }

        if (options.seed)
            s.seed = *options.seed;
        if (options.trials)
            s.trials = *options.trials;
        if (options.mc_samples)
            s.mc.n_samples = *options.mc_samples;
        if (options.effective)
            s.effective = *options.effective;
        s.csv_path = std::string(id) + ".csv";
        s.plot_path = std::string(id) + ".py";
        return s;
    }

    FigureOutput reproduce_figure(std::string_view id, const std::filesystem::path &out_dir,
                                  const ReproduceOptions &options)
    {
        const ExperimentSpec spec = figure_spec(id, options);
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec)
            throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());

        const ResultTable table = run_experiment(spec);
        FigureOutput out{out_dir / spec.csv_path, out_dir / spec.plot_path, table.rows.size()};
        write_csv_file(table, out.csv);

        std::ofstream f(out.plot, std::ios::binary);
        if (!f)
            throw IoError("cannot open '" + out.plot.string() + "' for writing");
        f << plot_script(spec.experiment, spec.csv_path, std::string(id));
        if (!f)
            throw IoError("failed writing '" + out.plot.string() + "'");
        return out;
    }
}
