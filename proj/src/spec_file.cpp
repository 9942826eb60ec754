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

#include "spimwave/errors.hpp"
#include "spimwave/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace spimwave
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        std::vector<std::string_view> split(std::string_view s, char sep)
        {
            std::vector<std::string_view> out;
            std::size_t start = 0;
            while (true)
            {
                const auto pos = s.find(sep, start);
                out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
                if (pos == std::string_view::npos)
                    break;
                start = pos + 1;
            }
            return out;
        }

        double to_double(std::string_view field, std::string_view text)
        {
            double v = 0.0;
            const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
            if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v))
                throw ValidationError(std::string(field), "not a number: '" + std::string(text) + "'");
            return v;
        }

        std::uint64_t to_uint(std::string_view field, std::string_view text)
        {
            std::uint64_t v = 0;
            const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
            if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
                throw ValidationError(std::string(field), "not a non-negative integer: '" + std::string(text) + "'");
            return v;
        }

        bool to_bool(std::string_view field, std::string_view text)
        {
            if (text == "true" || text == "1" || text == "yes")
                return true;
            if (text == "false" || text == "0" || text == "no")
                return false;
            throw ValidationError(std::string(field), "expected true or false, got '" + std::string(text) + "'");
        }

        std::vector<double> to_doubles(std::string_view field, std::string_view text)
        {
            std::vector<double> out;
            for (auto part : split(text, ','))
                out.push_back(to_double(field, part));
            return out;
        }

        std::vector<std::size_t> to_sizes(std::string_view field, std::string_view text)
        {
            std::vector<std::size_t> out;
            for (auto part : split(text, ','))
                out.push_back(static_cast<std::size_t>(to_uint(field, part)));
            return out;
        }

        // "start:step:stop" (inclusive, rounded to 1e-12) or a comma list
        std::vector<double> to_grid(std::string_view field, std::string_view text)
        {
            const auto parts = split(text, ':');
            if (parts.size() == 1)
                return to_doubles(field, text);
            if (parts.size() != 3)
                throw ValidationError(std::string(field), "range must be start:step:stop");
            const double start = to_double(field, parts[0]);
            const double step = to_double(field, parts[1]);
            const double stop = to_double(field, parts[2]);
            if (!(step > 0.0) || stop < start)
                throw ValidationError(std::string(field), "range needs step > 0 and stop >= start");
            const double count = std::floor((stop - start) / step + 1e-9);
            if (count > 1e6)
                throw ValidationError(std::string(field), "range has too many points");
            std::vector<double> out;
            for (long i = 0; i <= static_cast<long>(count); ++i)
                out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
            return out;
        }

        AngleRange to_range(std::string_view field, std::string_view text)
        {
            const auto v = to_doubles(field, text);
            if (v.size() != 2)
                throw ValidationError(std::string(field), "expected two values lo, hi");
            return {v[0], v[1]};
        }

        Method to_method(std::string_view field, std::string_view text)
        {
            for (auto m : {Method::closed_form_lb, Method::closed_form_eq12, Method::general_m, Method::monte_carlo})
                if (method_tag(m) == text)
                    return m;
            throw ValidationError(std::string(field), "unknown method '" + std::string(text) +
                                                          "' (expected closed-form-lb, closed-form-eq12, "
                                                          "general-M or monte-carlo)");
        }

        using Setter = std::function<void(ExperimentSpec &, std::string_view key, std::string_view value)>;

        const std::map<std::string, Setter, std::less<>> &setters()
        {
            static const std::map<std::string, Setter, std::less<>> table = {
                {"experiment",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v)
                 {
                     const auto kind = parse_experiment_name(v);
                     if (!kind)
                         throw ValidationError(std::string(k), "unknown experiment '" + std::string(v) +
                                                                   "' (expected snr-sweep, w1-sweep, gamma-sweep, "
                                                                   "margin-map or q-function)");
                     s.experiment = *kind;
                 }},
                {"grid", [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.grid = to_grid(k, v); }},
                {"n_tx", [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.n_tx = to_uint(k, v); }},
                {"n_rx", [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.n_rx = to_uint(k, v); }},
                {"gain_model",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v)
                 {
                     if (v == "explicit")
                         s.gain_model = GainModelKind::explicit_list;
                     else if (v == "decay")
                         s.gain_model = GainModelKind::decay;
                     else
                         throw ValidationError(std::string(k), "expected explicit or decay");
                 }},
                {"gains", [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.gains = to_doubles(k, v); }},
                {"normalize_gains",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.normalize_gains = to_bool(k, v); }},
                {"gamma", [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.gamma = to_double(k, v); }},
                {"n_paths", [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.n_paths = to_uint(k, v); }},
                {"m", [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.m = to_uint(k, v); }},
                {"m_values",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.m_values = to_sizes(k, v); }},
                {"aod_range",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.aod_range = to_range(k, v); }},
                {"aoa_range",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.aoa_range = to_range(k, v); }},
                {"effective_channel",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v)
                 {
                     if (v == "exact")
                         s.effective = EffectiveChannelMode::exact;
                     else if (v == "asymptotic")
                         s.effective = EffectiveChannelMode::asymptotic;
                     else
                         throw ValidationError(std::string(k), "expected exact or asymptotic");
                 }},
                {"n0", [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.n0 = to_double(k, v); }},
                {"n0_values",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.n0_values = to_doubles(k, v); }},
                {"nr_values",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.nr_values = to_sizes(k, v); }},
                {"trials", [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.trials = to_uint(k, v); }},
                {"seed", [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.seed = to_uint(k, v); }},
                {"mc_samples",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.mc.n_samples = to_uint(k, v); }},
                {"mc_batch", [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.mc.batch = to_uint(k, v); }},
                {"methods",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v)
                 {
                     s.methods.clear();
                     for (auto part : split(v, ','))
                         s.methods.push_back(to_method(k, part));
                 }},
                {"g1", [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.g1 = to_double(k, v); }},
                {"b_max",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v)
                 { s.b_max = static_cast<int>(std::min<std::uint64_t>(to_uint(k, v), 1000)); }},
                {"relax_integer",
                 [](ExperimentSpec &s, std::string_view k, std::string_view v) { s.relax_integer = to_bool(k, v); }},
                {"csv", [](ExperimentSpec &s, std::string_view, std::string_view v) { s.csv_path = std::string(v); }},
                {"plot", [](ExperimentSpec &s, std::string_view, std::string_view v) { s.plot_path = std::string(v); }},
            };
            return table;
        }
    }

    ExperimentSpec parse_spec(std::string_view text)
    {
        ExperimentSpec spec;
        std::set<std::string, std::less<>> seen;
        bool has_experiment = false;

        std::size_t line_no = 0;
        std::size_t start = 0;
        while (start <= text.size())
        {
            const auto end = text.find('\n', start);
            std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
            start = end == std::string_view::npos ? text.size() + 1 : end + 1;
            ++line_no;

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;

            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ValidationError("line " + std::to_string(line_no), "expected key = value");
            const auto key = trim(line.substr(0, eq));
            const auto value = trim(line.substr(eq + 1));

            const auto &table = setters();
            const auto it = table.find(key);
            if (it == table.end())
                throw ValidationError(std::string(key), "unknown key on line " + std::to_string(line_no));
            if (!seen.insert(std::string(key)).second)
                throw ValidationError(std::string(key), "duplicate key on line " + std::to_string(line_no));
            if (value.empty())
                throw ValidationError(std::string(key), "empty value on line " + std::to_string(line_no));
            it->second(spec, key, value);
            if (key == "experiment")
                has_experiment = true;
        }

        if (!has_experiment)
            throw ValidationError("experiment", "missing required key");
        if (!seen.contains("grid"))
            throw ValidationError("grid", "missing required key");
        spec.validate();
        return spec;
    }

    ExperimentSpec load_spec_file(const std::filesystem::path &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw IoError("cannot open spec file '" + path.string() + "'");
        std::ostringstream buf;
        buf << f.rdbuf();
        return parse_spec(buf.str());
    }
}
