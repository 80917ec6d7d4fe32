// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------

#include <risvlc/io.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace risvlc
{
    std::string format_double(double v)
    {
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
        if (ec != std::errc())
            throw std::runtime_error("format_double: conversion failed");
        return std::string(buf, end);
    }

    std::string trials_csv(const std::vector<TrialResult> &trials)
    {
        std::string out = kTrialCsvHeader;
        out += '\n';
        for (std::size_t t = 0; t < trials.size(); ++t)
            for (std::size_t u = 0; u < trials[t].users.size(); ++u)
            {
                const auto &o = trials[t].users[u];
                out += std::to_string(t) + ',' + std::to_string(u) + ',' + format_double(o.h_los) + ',' +
                       format_double(o.h_wall) + ',' + format_double(o.h_ris) + ',' + format_double(o.rate_bps) + ',' +
                       (o.los_visible ? "1" : "0") + ',' + (o.fov_ok ? "1" : "0") + '\n';
            }
        return out;
    }

    nlohmann::json to_json(const StudyStatistics &s)
    {
        return {
            {"blocker_count", s.blocker_count},
            {"trials", s.trials},
            {"mean_sum_rate_bps", s.mean_sum_rate},
            {"std_sum_rate_bps", s.std_sum_rate},
            {"user_samples", s.user_samples},
            {"fraction_los_visible", s.fraction_los_visible},
            {"fraction_visible_fov_excluded", s.fraction_visible_fov_excluded},
            {"los_population", s.los_population},
            {"nlos_population", s.nlos_population},
            {"los_mean_rate_bps", s.los_mean_rate},
            {"nlos_mean_rate_bps", s.nlos_mean_rate},
        };
    }

    nlohmann::json to_json(const OrientationStudy &s)
    {
        return {
            {"samples", s.samples},
            {"los_visible", s.visible},
            {"fov_excluded", s.excluded},
            {"fraction_excluded", s.fraction_excluded},
        };
    }

    void write_atomic(const std::string &path, const std::string &content)
    {
        namespace fs = std::filesystem;
        const fs::path target(path);
        fs::path tmp = target;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
            out << content;
            out.flush();
            if (!out)
                throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
        std::error_code ec;
        fs::rename(tmp, target, ec);
        if (ec)
        {
            fs::remove(tmp);
            throw std::runtime_error("cannot rename onto '" + path + "': " + ec.message());
        }
    }

} // namespace risvlc
