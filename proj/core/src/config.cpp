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

#include "rasec/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rasec
{
    namespace
    {
        // key, default value
        const std::vector<std::pair<std::string, std::string>> &defaults()
        {
            static const std::vector<std::pair<std::string, std::string>> table = {
                {"array.carrier_ghz", "28"},
                {"array.n_tx", "8"},
                {"array.n_rx", "16"},
                {"array.directivity_p", "1"},
                {"array.phi_arr_max_deg", "15"},
                {"array.varphi_max_deg", "15"},
                {"link.pt_dbm", "10"},
                {"link.noise_dbm", "-107"},
                {"sensing.n_beams", "128"},
                {"sensing.ps_dbm", "10"},
                {"sensing.noise_dbm", "-107"},
                {"sensing.rcs_dbsm", "7"},
                {"sensing.grid_points", "2048"},
                {"sensing.refine", "true"},
                {"sensing.n_samples", "21"},
                {"sensing.crb_override", "0"},
                {"scene.n_users", "3"},
                {"scene.user_range_min", "30"},
                {"scene.user_range_max", "50"},
                {"scene.user_azimuth_min_deg", "-80"},
                {"scene.user_azimuth_max_deg", "80"},
                {"scene.eav_range", "30"},
                {"scene.eav_azimuth_deg", "50"},
                {"solver.tol", "1e-6"},
                {"solver.max_iter_inner", "200"},
                {"solver.max_iter_ao", "64"},
                {"solver.armijo_c", "1e-4"},
                {"solver.armijo_shrink", "0.5"},
                {"solver.max_backtracks", "30"},
                {"solver.beta_sm_init", "5"},
                {"solver.beta_sm_growth", "1.5"},
                {"solver.beta_sm_max", "1e4"},
                {"solver.grid_points_init", "15"},
                {"solver.step_init", "1"},
                {"solver.rotation_step_deg", "5"},
                {"solver.es_points", "61"},
                {"experiment.n_trials", "200"},
                {"experiment.master_seed", "2026"},
                {"experiment.schemes", "TRA-ABF,ERA-ABF,GRA-ABF,FPA-ABF,TRA-ABF-PE,TRA-ABF-ES"},
                {"experiment.sweep_key", ""},
                {"experiment.sweep_values", ""},
                {"experiment.rotation_error_bounds_deg", "0,1,2,4"},
                {"experiment.beam_resolution_deg", "1"},
            };
            return table;
        }
    }

    std::string trim(const std::string &s)
    {
        const auto first = s.find_first_not_of(" \t\r\n");
        if (first == std::string::npos)
            return "";
        const auto last = s.find_last_not_of(" \t\r\n");
        return s.substr(first, last - first + 1);
    }

    ConfigMap::ConfigMap()
    {
        for (const auto &[k, v] : defaults())
            values_[k] = v;
    }

    ConfigMap ConfigMap::from_stream(std::istream &in, const std::string &origin)
    {
        ConfigMap cfg;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            try
            {
                cfg.set(key, value);
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + e.what());
            }
        }
        return cfg;
    }

    ConfigMap ConfigMap::from_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file '" + path + "'");
        return from_stream(in, path);
    }

    ConfigMap ConfigMap::load(const std::string &path_or_defaults)
    {
        if (path_or_defaults.empty() || path_or_defaults == "defaults")
            return ConfigMap();
        return from_file(path_or_defaults);
    }

    void ConfigMap::set(const std::string &key, const std::string &value)
    {
        auto it = values_.find(key);
        if (it == values_.end())
            throw ConfigError("unknown config key '" + key + "'");
        it->second = value;
    }

    const std::string &ConfigMap::get(const std::string &key) const
    {
        auto it = values_.find(key);
        if (it == values_.end())
            throw ConfigError("unknown config key '" + key + "'");
        return it->second;
    }

    double ConfigMap::get_double(const std::string &key) const
    {
        const std::string &s = get(key);
        char *end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end == s.c_str() || *end != '\0')
            throw ConfigError("config key '" + key + "': expected a number, got '" + s + "'");
        return v;
    }

    long long ConfigMap::get_int(const std::string &key) const
    {
        const std::string &s = get(key);
        char *end = nullptr;
        const long long v = std::strtoll(s.c_str(), &end, 10);
        if (s.empty() || end == s.c_str() || *end != '\0')
            throw ConfigError("config key '" + key + "': expected an integer, got '" + s + "'");
        return v;
    }

    bool ConfigMap::get_bool(const std::string &key) const
    {
        const std::string &s = get(key);
        if (s == "true" || s == "1" || s == "yes" || s == "on")
            return true;
        if (s == "false" || s == "0" || s == "no" || s == "off")
            return false;
        throw ConfigError("config key '" + key + "': expected a boolean, got '" + s + "'");
    }

    std::vector<std::string> ConfigMap::get_list(const std::string &key) const
    {
        std::vector<std::string> out;
        std::stringstream ss(get(key));
        std::string item;
        while (std::getline(ss, item, ','))
        {
            item = trim(item);
            if (!item.empty())
                out.push_back(item);
        }
        return out;
    }

    std::vector<double> ConfigMap::get_double_list(const std::string &key) const
    {
        std::vector<double> out;
        for (const auto &item : get_list(key))
        {
            char *end = nullptr;
            const double v = std::strtod(item.c_str(), &end);
            if (end == item.c_str() || *end != '\0')
                throw ConfigError("config key '" + key + "': expected numbers, got '" + item + "'");
            out.push_back(v);
        }
        return out;
    }

    void ConfigMap::write(std::ostream &out) const
    {
        for (const auto &[k, v] : values_)
            out << k << " = " << v << '\n';
    }
}
