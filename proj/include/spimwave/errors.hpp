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

#include <stdexcept>
#include <string>

namespace spimwave
{
    // Invalid scalar parameter or precondition violation
    class ParameterError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Non-conforming matrix or vector dimensions
    class DimensionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A factorization hit a non-positive pivot
    class NotPositiveDefiniteError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Scalar root finder found no sign change on its bracket
    class NoRootError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Experiment spec failed validation; field() names the offending key
    class ValidationError : public std::invalid_argument
    {
    public:
        ValidationError(std::string field, const std::string &what)
            : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

        const std::string &field() const noexcept { return field_; }

    private:
        std::string field_;
    };

    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}
