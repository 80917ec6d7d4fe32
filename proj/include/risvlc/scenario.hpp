// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------
//
// Scenario description, per-trial realization, link budget and the two
// Monte-Carlo studies (blockage and device orientation).

#pragma once

#include <risvlc/channel.hpp>
#include <risvlc/geometry.hpp>
#include <risvlc/metrics.hpp>
#include <risvlc/orientation.hpp>
#include <risvlc/ris.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace risvlc
{
    using Vec3d = Vec3<double>;

    // One user; unset position/orientation are sampled per trial
    struct UserSpec
    {
        std::optional<Vec3d> position;
        std::optional<DeviceOrientation<double>> orientation;
        double height = 0.75; // device height when the position is sampled [m]
        PdRx<double> receiver;  // position/normal are overwritten per trial
        bool self_blockage = true;
        std::optional<LcReceiverConfig<double>> lc;
    };

    struct BlockerSpec
    {
        int count = 0; // randomly placed non-user blockers
        double radius = 0.15;
        double height = 1.65;
        double body_offset = 0.36; // device-to-body-axis distance [m]
        std::vector<Vec3d> fixed;  // base centers of always-present blockers
    };

    struct WallSpec
    {
        bool enabled = true;
        double reflectance = 0.8;
        double patch_size = 0.05;
    };

    struct Scenario
    {
        Room<double> room;
        std::vector<LedTx<double>> aps;
        std::vector<UserSpec> users;
        BlockerSpec blockers;
        std::vector<MirrorArray<double>> ris;
        WallSpec walls;
        NoiseModel<double> noise;
        IntensityConstraints<double> constraints;
        OrientationModel orientation;

        void validate() const;
    };

    // Parses the JSON scenario document; throws ParseError or ValidationError
    Scenario load_scenario(std::string_view config_text);
    Scenario load_scenario_file(const std::string &path);

    // Built-in scenarios used by the reproduction drivers and the acceptance suite
    Scenario benchmark_scenario();         // 5x5x3 room, ceiling-center AP, 4 random users
    Scenario blocked_los_benchmark();      // one user with a blocked LoS and a 4x4 mirror panel
    Scenario single_mirror_benchmark();    // as above with a 1x1 panel

    // Concrete draw of every random quantity in a scenario
    struct Realization
    {
        std::vector<PdRx<double>> receivers;
        std::vector<DeviceOrientation<double>> orientations;
        std::vector<std::optional<LcReceiverConfig<double>>> lc;
        std::vector<CylinderBlocker<double>> blockers; // bodies first, then non-user blockers
    };

    Realization realize(const Scenario &s, std::uint64_t trial_seed);

    struct UserOutcome
    {
        double h_los = 0.0;
        double h_wall = 0.0;
        double h_ris = 0.0;
        double rate_bps = 0.0;
        bool los_visible = false;
        bool fov_ok = false;
        int serving_ap = 0;

        double h_total() const { return h_los + h_wall + h_ris; }
    };

    struct TrialResult
    {
        std::vector<UserOutcome> users;
        double sum_rate = 0.0;
    };

    // Gains that do not depend on RIS configuration, computed once per realization.
    // Users are served by the AP with the largest total gain and share it in equal
    // TDMA slots.
    class LinkBudget
    {
    public:
        LinkBudget(const Scenario &s, Realization r);

        TrialResult evaluate(std::span<const MirrorArray<double>> ris) const;
        double sum_rate(std::span<const MirrorArray<double>> ris) const;

        const Realization &realization() const { return r_; }

    private:
        struct Link
        {
            double los = 0.0;
            double wall = 0.0;
            double incidence = 0.0;
            bool visible = false;
            bool fov_ok = false;
        };

        PdRx<double> effective_receiver(std::size_t u) const;
        double lc_scale(std::size_t u, double incidence) const;

        const Scenario *s_;
        Realization r_;
        std::vector<std::vector<Link>> links_; // [user][ap]
    };

    double sum_rate(const Scenario &s, const Realization &r, std::span<const MirrorArray<double>> ris);

    TrialResult run_trial(const Scenario &s, std::uint64_t trial_seed);

    std::uint64_t trial_seed(std::uint64_t master_seed, long trial);

    struct StudyStatistics
    {
        int blocker_count = 0;
        long trials = 0;
        double mean_sum_rate = 0.0;
        double std_sum_rate = 0.0;
        long user_samples = 0;
        double fraction_los_visible = 0.0;
        double fraction_visible_fov_excluded = 0.0; // among LoS-visible users
        long los_population = 0;                    // users with nonzero LoS gain
        long nlos_population = 0;                   // users served only by reflections
        double los_mean_rate = 0.0;
        double nlos_mean_rate = 0.0;
    };

    struct BlockageStudy
    {
        std::vector<StudyStatistics> per_count;
        std::vector<std::vector<TrialResult>> trials; // [count][trial]
    };

    // Same trial seeds for every blocker count, and the first n random blockers are
    // shared, so larger counts only add obstacles.
    BlockageStudy blockage_study(const Scenario &s, long trials, std::span<const int> blocker_counts,
                                 std::uint64_t master_seed, unsigned threads);

    StudyStatistics summarize(const std::vector<TrialResult> &trials, int blocker_count);

    struct OrientationStudy
    {
        long samples = 0;  // (user, AP) links examined
        long visible = 0;  // links with an unobstructed LoS segment
        long excluded = 0; // visible links with incidence beyond the FoV
        double fraction_excluded = 0.0;
    };

    OrientationStudy orientation_study(const Scenario &s, long samples, std::uint64_t master_seed, unsigned threads);

} // namespace risvlc
