// SPDX-License-Identifier: Apache-2.0

#include <risvlc/io.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace risvlc;

TEST_SUITE("io")
{
    TEST_CASE("doubles round-trip through their text form")
    {
        for (double v : {0.0, 1.0, -2.5, 1e-21, 7.9577471545947668e-06, 123456789.125})
            CHECK(std::stod(format_double(v)) == v);
        CHECK(format_double(0.5) == "0.5");
    }

    TEST_CASE("trial csv layout")
    {
        TrialResult t;
        t.users.push_back({1e-6, 2e-7, 0.0, 3e7, true, false, 0});
        t.users.push_back({0.0, 1e-7, 5e-7, 1e7, false, true, 0});
        const std::string csv = trials_csv({t, t});
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        CHECK(line == "trial,user,h_los,h_wall,h_ris,rate_bps,los_visible,fov_ok");
        std::getline(in, line);
        CHECK(line == "0,0,1e-06,2e-07,0,3e+07,1,0");
        int rows = 1;
        while (std::getline(in, line))
            ++rows;
        CHECK(rows == 4);
    }

    TEST_CASE("study summaries serialize")
    {
        StudyStatistics s;
        s.blocker_count = 5;
        s.trials = 10;
        s.mean_sum_rate = 1.5e7;
        const auto j = to_json(s);
        CHECK(j.at("blocker_count") == 5);
        CHECK(j.at("mean_sum_rate_bps").get<double>() == 1.5e7);
        OrientationStudy o{100, 80, 20, 0.25};
        CHECK(to_json(o).at("fraction_excluded").get<double>() == 0.25);
    }

    TEST_CASE("atomic writes replace the target")
    {
        const auto dir = std::filesystem::temp_directory_path() / "risvlc_io_test";
        std::filesystem::create_directories(dir);
        const auto path = (dir / "out.txt").string();
        write_atomic(path, "first\n");
        write_atomic(path, "second\n");
        std::ifstream in(path);
        std::string text((std::istreambuf_iterator<char>(in)), {});
        CHECK(text == "second\n");
        CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
        CHECK_THROWS(write_atomic((dir / "no_such_dir" / "x.txt").string(), "x"));
        std::filesystem::remove_all(dir);
    }
}
