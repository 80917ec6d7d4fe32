// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------
//
// Mirror orientation design: maximize network sum rate over the yaw/roll
// matrices of every RIS panel, either with one shared (yaw, roll) pair per
// panel or with independent angles per element.

#pragma once

#include <risvlc/optimize.hpp>
#include <risvlc/scenario.hpp>

#include <cstdint>
#include <string_view>
#include <vector>

namespace risvlc
{
    enum class Algorithm
    {
        Sca,
        Pso,
        Grid
    };

    enum class AngleMode
    {
        Identical,
        PerElement
    };

    Algorithm parse_algorithm(std::string_view name);
    AngleMode parse_angle_mode(std::string_view name);

    struct MirrorDesignOptions
    {
        std::uint64_t seed = 42;
        ScaParams sca;
        PsoParams pso;
        long grid_resolution = 181;
        unsigned threads = 1;
    };

    struct MirrorDesign
    {
        std::vector<MirrorArray<double>> panels; // panels with the chosen angles applied
        double sum_rate = 0.0;                   // recomputed at the returned angles
        OptResult search;
    };

    // Number of optimization variables for a panel set under a mode
    Eigen::Index design_dimension(std::span<const MirrorArray<double>> panels, AngleMode mode);

    // Writes the coordinate vector (radians, yaw block then roll block per panel) into panels
    void apply_design(std::vector<MirrorArray<double>> &panels, const Eigen::VectorXd &x, AngleMode mode);

    MirrorDesign optimize_mirror_angles(const Scenario &s, const Realization &r, Algorithm algorithm, AngleMode mode,
                                        const MirrorDesignOptions &opts = {});

    // Baseline with every element of every panel at independent random feasible angles
    double random_angle_baseline(const Scenario &s, const Realization &r, std::uint64_t seed);

    // Same realization with the RIS removed
    double wall_only_rate(const Scenario &s, const Realization &r);

} // namespace risvlc
