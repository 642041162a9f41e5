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

#include "rasec/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace rasec
{
    namespace
    {
        double rounded(double x) { return std::stod(format_double(x)); }

        std::string join_angles(const std::vector<double> &v)
        {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                if (i)
                    s += ';';
                s += format_double(v[i]);
            }
            return s;
        }

        // records never contain commas except in free-form status text
        std::string csv_field(const std::string &s)
        {
            if (s.find_first_of(",\"\n") == std::string::npos)
                return s;
            std::string q = "\"";
            for (char c : s)
            {
                if (c == '"')
                    q += '"';
                q += c;
            }
            return q + '"';
        }
    }

    std::string format_double(double x)
    {
        if (x == 0.0)
            return "0"; // folds -0
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        return buf;
    }

    OutputFormat parse_output_format(const std::string &tag)
    {
        if (tag == "csv")
            return OutputFormat::csv;
        if (tag == "json" || tag == "jsonl")
            return OutputFormat::json;
        throw ConfigError("unknown output format '" + tag + "' (expected csv or json)");
    }

    void write_records(std::ostream &out, const std::vector<ResultRecord> &records, OutputFormat format)
    {
        if (format == OutputFormat::csv)
        {
            out << "trial,scheme,sweep_key,sweep_value,theta_true_rad,theta_hat_rad,crb_rad2,min_secrecy_bps_hz,"
                   "surrogate_objective,ao_iterations,phi_arr_rad,varphi_rad,status\n";
            for (const auto &r : records)
                out << r.trial << ',' << scheme_name(r.scheme) << ',' << csv_field(r.sweep_key) << ','
                    << format_double(r.sweep_value) << ',' << format_double(r.theta_true) << ','
                    << format_double(r.theta_hat) << ',' << format_double(r.crb) << ','
                    << format_double(r.min_secrecy) << ',' << format_double(r.surrogate_objective) << ','
                    << r.ao_iterations << ',' << format_double(r.phi_arr) << ',' << join_angles(r.varphi) << ','
                    << csv_field(r.status) << '\n';
            return;
        }
        for (const auto &r : records)
        {
            nlohmann::ordered_json j;
            j["trial"] = r.trial;
            j["scheme"] = std::string(scheme_name(r.scheme));
            j["sweep_key"] = r.sweep_key;
            j["sweep_value"] = rounded(r.sweep_value);
            j["theta_true_rad"] = rounded(r.theta_true);
            j["theta_hat_rad"] = rounded(r.theta_hat);
            j["crb_rad2"] = rounded(r.crb);
            j["min_secrecy_bps_hz"] = rounded(r.min_secrecy);
            j["surrogate_objective"] = rounded(r.surrogate_objective);
            j["ao_iterations"] = r.ao_iterations;
            j["phi_arr_rad"] = rounded(r.phi_arr);
            auto arr = nlohmann::ordered_json::array();
            for (double v : r.varphi)
                arr.push_back(rounded(v));
            j["varphi_rad"] = arr;
            j["status"] = r.status;
            out << j.dump() << '\n';
        }
    }

    void write_summary(std::ostream &out, const std::vector<SummaryRow> &rows, OutputFormat format)
    {
        if (format == OutputFormat::csv)
        {
            out << "sweep_key,sweep_value,scheme,count,mean_min_secrecy_bps_hz,std_error\n";
            for (const auto &r : rows)
                out << csv_field(r.sweep_key) << ',' << format_double(r.sweep_value) << ',' << scheme_name(r.scheme)
                    << ',' << r.count << ',' << format_double(r.mean) << ',' << format_double(r.std_error) << '\n';
            return;
        }
        for (const auto &r : rows)
        {
            nlohmann::ordered_json j;
            j["sweep_key"] = r.sweep_key;
            j["sweep_value"] = rounded(r.sweep_value);
            j["scheme"] = std::string(scheme_name(r.scheme));
            j["count"] = r.count;
            j["mean_min_secrecy_bps_hz"] = rounded(r.mean);
            j["std_error"] = rounded(r.std_error);
            out << j.dump() << '\n';
        }
    }

    void write_timing(std::ostream &out, const std::vector<ResultRecord> &records)
    {
        out << "trial,scheme,sweep_value,ao_iterations,wall_ms\n";
        for (const auto &r : records)
        {
            char ms[32];
            std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
            out << r.trial << ',' << scheme_name(r.scheme) << ',' << format_double(r.sweep_value) << ','
                << r.ao_iterations << ',' << ms << '\n';
        }
    }

    void write_ao_trace(std::ostream &out, const std::vector<AoIteration> &trace)
    {
        out << "iteration,beta_sm,objective_start,after_w,after_phi_arr,after_varphi,surrogate_min_secrecy,"
               "evaluated_min_secrecy\n";
        for (const auto &it : trace)
            out << it.iteration << ',' << format_double(it.beta_sm) << ',' << format_double(it.before) << ','
                << format_double(it.after_w) << ',' << format_double(it.after_phi) << ','
                << format_double(it.objective) << ',' << format_double(it.surrogate_min) << ','
                << format_double(it.evaluated_secrecy) << '\n';
    }

    void write_beam_pattern(std::ostream &out, const BeamPattern &p)
    {
        const double half_bin = 0.5 * (p.angles.size() > 1 ? p.angles[1] - p.angles[0] : 0.0);
        out << "angle_deg";
        for (Scheme s : p.schemes)
            out << ',' << scheme_name(s) << "_gain_db";
        out << ",near_user,near_theta_hat,in_uncertainty_region\n";
        for (std::size_t i = 0; i < p.angles.size(); ++i)
        {
            const double a = p.angles[i];
            out << format_double(rad2deg(a));
            for (const auto &row : p.gain_db)
                out << ',' << format_double(row[i]);
            bool near_user = false;
            for (double u : p.user_angles)
                near_user = near_user || std::abs(u - a) <= half_bin;
            const bool near_hat = std::abs(p.theta_hat - a) <= half_bin;
            const bool inside = a >= p.xi_lo && a <= p.xi_hi;
            out << ',' << int(near_user) << ',' << int(near_hat) << ',' << int(inside) << '\n';
        }
    }
}
