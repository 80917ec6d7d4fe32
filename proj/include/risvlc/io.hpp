// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------

#pragma once

#include <risvlc/scenario.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace risvlc
{
    inline constexpr const char *kTrialCsvHeader = "trial,user,h_los,h_wall,h_ris,rate_bps,los_visible,fov_ok";

    // Shortest round-trip decimal representation
    std::string format_double(double v);

    // One row per (trial, user); trial index is the position in `trials`
    std::string trials_csv(const std::vector<TrialResult> &trials);

    nlohmann::json to_json(const StudyStatistics &s);
    nlohmann::json to_json(const OrientationStudy &s);

    // Writes to a sibling temporary file, then renames over `path`
    void write_atomic(const std::string &path, const std::string &content);

} // namespace risvlc
