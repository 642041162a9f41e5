// SPDX-License-Identifier: Apache-2.0
//
// rasec - secure multicast with two-level rotatable antenna arrays
// Copyright (C) 2026 The rasec authors
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

#include <iosfwd>
#include <string>
#include <vector>

#include "rasec/experiment.hpp"

namespace rasec
{
    /// Fixed 12-significant-digit rendering used by every writer, so identical
    /// inputs give byte-identical files.
    std::string format_double(double x);

    enum class OutputFormat
    {
        csv,
        json, // one JSON object per line
    };

    OutputFormat parse_output_format(const std::string &tag);

    /// Per-trial records. Timing is deliberately excluded; see write_timing.
    void write_records(std::ostream &out, const std::vector<ResultRecord> &records, OutputFormat format);
    void write_summary(std::ostream &out, const std::vector<SummaryRow> &rows, OutputFormat format);
    /// Wall-clock solve times; nondeterministic by nature.
    void write_timing(std::ostream &out, const std::vector<ResultRecord> &records);
    void write_ao_trace(std::ostream &out, const std::vector<AoIteration> &trace);

    /// Angle in degrees, one gain column per scheme, then marker columns.
    void write_beam_pattern(std::ostream &out, const BeamPattern &pattern);
}
