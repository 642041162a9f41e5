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
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rasec
{
    /// Malformed configuration, unknown key or unknown scheme tag.
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Flat `section.key = value` settings. Every key has a built-in default, so an
    /// empty file reproduces the reference setup. Lines starting with '#' are comments.
    class ConfigMap
    {
    public:
        ConfigMap(); // all defaults

        static ConfigMap from_stream(std::istream &in, const std::string &origin = "<stream>");
        static ConfigMap from_file(const std::string &path);
        /// "defaults" (or an empty path) yields the built-in defaults.
        static ConfigMap load(const std::string &path_or_defaults);

        void set(const std::string &key, const std::string &value); // throws on unknown key
        const std::string &get(const std::string &key) const;
        bool contains(const std::string &key) const { return values_.count(key) != 0; }

        double get_double(const std::string &key) const;
        long long get_int(const std::string &key) const;
        bool get_bool(const std::string &key) const;
        std::vector<std::string> get_list(const std::string &key) const;
        std::vector<double> get_double_list(const std::string &key) const;

        /// Fully resolved settings, one `key = value` per line, sorted by key.
        void write(std::ostream &out) const;

        const std::map<std::string, std::string> &values() const { return values_; }

    private:
        std::map<std::string, std::string> values_;
    };

    std::string trim(const std::string &s);
}
