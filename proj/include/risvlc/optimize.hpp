// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------
//
// Bounded continuous maximizers: sine-cosine algorithm, global-best particle
// swarm, and an exhaustive lattice oracle for low-dimensional checks.
// All random draws happen on one coordinator stream; objective evaluations
// inside a generation may run on worker threads without changing results.

#pragma once

#include <risvlc/types.hpp>

#include <cstdint>
#include <functional>
#include <vector>

namespace risvlc
{
    using Objective = std::function<double(const Eigen::VectorXd &)>;

    struct BoundedProblem
    {
        Eigen::VectorXd lower;
        Eigen::VectorXd upper;
        Objective objective; // maximized; must be safe to call concurrently
        long budget = 0;     // max objective evaluations, 0 = derived from algorithm parameters
        std::uint64_t seed = 42;

        Eigen::Index dimension() const { return lower.size(); }
        void validate() const;
        Eigen::VectorXd clamp(const Eigen::VectorXd &x) const;
    };

    struct OptResult
    {
        Eigen::VectorXd best_point;
        double best_value = 0.0;
        long evaluations_used = 0;
        std::vector<double> trace; // best value after each generation, nondecreasing
    };

    struct ScaParams
    {
        int population = 30;
        int iterations = 500; // generations, counting the initial population
        double a_initial = 2.0;
    };

    struct PsoParams
    {
        int population = 30;
        int iterations = 500;
        double inertia = 0.729;
        double c1 = 1.494;
        double c2 = 1.494;
        double velocity_fraction = 0.2; // |v_d| <= fraction * (upper_d - lower_d)
    };

    OptResult sca_optimize(const BoundedProblem &p, const ScaParams &params = {}, unsigned threads = 1);

    OptResult pso_optimize(const BoundedProblem &p, const PsoParams &params = {}, unsigned threads = 1);

    // Lattice with `resolution` points per dimension including both bounds. Ties go
    // to the lowest lattice index, with the last coordinate varying fastest.
    OptResult grid_search_oracle(const BoundedProblem &p, long resolution, unsigned threads = 1);

    inline constexpr long kGridEvaluationCap = 10'000'000;

} // namespace risvlc
