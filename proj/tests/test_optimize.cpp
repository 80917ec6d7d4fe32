// SPDX-License-Identifier: Apache-2.0

#include <risvlc/optimize.hpp>

#include <doctest.h>

#include <cmath>

using namespace risvlc;
using Eigen::VectorXd;

namespace
{
    BoundedProblem sphere(int dim, std::uint64_t seed = 42)
    {
        BoundedProblem p;
        p.lower = VectorXd::Constant(dim, -5.0);
        p.upper = VectorXd::Constant(dim, 5.0);
        p.objective = [](const VectorXd &x) { return -x.squaredNorm(); };
        p.seed = seed;
        return p;
    }

    bool feasible(const BoundedProblem &p, const VectorXd &x)
    {
        return x.size() == p.dimension() && (x.array() >= p.lower.array()).all() &&
               (x.array() <= p.upper.array()).all();
    }

    bool nondecreasing(const std::vector<double> &t)
    {
        for (std::size_t i = 1; i < t.size(); ++i)
            if (t[i] < t[i - 1])
                return false;
        return true;
    }

    // Smooth, multimodal 2-D test surface with its peak off the lattice
    double bumps(const VectorXd &x)
    {
        const double a = x[0] - 0.3137, b = x[1] + 0.4242;
        return std::exp(-(a * a + b * b) / 0.2) + 0.6 * std::exp(-((x[0] + 1) * (x[0] + 1) + (x[1] - 1) * (x[1] - 1)) / 0.1);
    }
} // namespace

TEST_SUITE("optimize")
{
    TEST_CASE("sphere function")
    {
        for (std::uint64_t seed : {1u, 2u, 3u})
        {
            const auto p = sphere(4, seed);
            const auto s = sca_optimize(p);
            CHECK(s.best_point.norm() < 0.1);
            CHECK(s.evaluations_used == 30 * 500);
            CHECK(nondecreasing(s.trace));
            CHECK(feasible(p, s.best_point));

            const auto q = pso_optimize(p);
            CHECK(q.best_point.norm() < 0.1);
            CHECK(q.evaluations_used <= 30 * 500);
            CHECK(nondecreasing(q.trace));
            CHECK(feasible(p, q.best_point));
        }
    }

    TEST_CASE("constant objective")
    {
        BoundedProblem p = sphere(3);
        p.objective = [](const VectorXd &) { return 7.25; };
        for (const auto &r : {sca_optimize(p), pso_optimize(p)})
        {
            CHECK(r.best_value == 7.25);
            CHECK(feasible(p, r.best_point));
        }
        const auto g = grid_search_oracle(p, 5);
        CHECK(g.best_value == 7.25);
        CHECK(g.best_point.isApprox(p.lower)); // first lattice point
    }

    TEST_CASE("grid oracle")
    {
        BoundedProblem p;
        p.lower = VectorXd::Constant(1, -1.0);
        p.upper = VectorXd::Constant(1, 1.0);
        p.objective = [](const VectorXd &x) { return -std::abs(x[0]); };
        const auto g = grid_search_oracle(p, 201);
        CHECK(g.best_value == 0.0);
        CHECK(g.best_point[0] == 0.0);
        CHECK(g.evaluations_used == 201);

        // upper endpoint is on the lattice exactly
        p.objective = [](const VectorXd &x) { return x[0]; };
        CHECK(grid_search_oracle(p, 7).best_point[0] == 1.0);

        // last coordinate varies fastest: index order breaks ties
        BoundedProblem q;
        q.lower = VectorXd::Zero(2);
        q.upper = VectorXd::Ones(2);
        q.objective = [](const VectorXd &x) { return x[0] == 1.0 || x[1] == 1.0 ? 1.0 : 0.0; };
        const auto t = grid_search_oracle(q, 3);
        CHECK(t.best_point[0] == 0.0);
        CHECK(t.best_point[1] == 1.0);

        CHECK_THROWS_AS(grid_search_oracle(sphere(3), 216), ValidationError);
        CHECK_NOTHROW(grid_search_oracle(sphere(2), 30));
        CHECK_THROWS_AS(grid_search_oracle(sphere(2), 1), ValidationError);
    }

    TEST_CASE("grid oracle dominates every lattice point")
    {
        BoundedProblem p;
        p.lower = VectorXd::Constant(2, -1.5);
        p.upper = VectorXd::Constant(2, 1.5);
        p.objective = bumps;
        const auto g = grid_search_oracle(p, 61);
        const double step = 3.0 / 60;
        for (int i = 0; i < 61; i += 3)
            for (int j = 0; j < 61; j += 7)
                CHECK(g.best_value >= bumps((VectorXd(2) << -1.5 + i * step, -1.5 + j * step).finished()));
    }

    TEST_CASE("metaheuristics reach the oracle on a 2-D surface")
    {
        BoundedProblem p;
        p.lower = VectorXd::Constant(2, -1.5);
        p.upper = VectorXd::Constant(2, 1.5);
        p.objective = bumps;
        const double oracle_best = grid_search_oracle(p, 181).best_value;
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
        {
            p.seed = seed;
            CHECK(sca_optimize(p).best_value >= 0.98 * oracle_best);
            CHECK(pso_optimize(p).best_value >= 0.98 * oracle_best);
        }
    }

    TEST_CASE("determinism and thread independence")
    {
        BoundedProblem p = sphere(5, 9);
        const auto a = sca_optimize(p, {}, 1), b = sca_optimize(p, {}, 4);
        CHECK(a.best_value == b.best_value);
        CHECK(a.best_point == b.best_point);
        CHECK(a.trace == b.trace);
        const auto c = pso_optimize(p, {}, 1), d = pso_optimize(p, {}, 3);
        CHECK(c.best_point == d.best_point);
        CHECK(c.trace == d.trace);
        p.seed = 10;
        CHECK(sca_optimize(p).best_point != a.best_point);
    }

    TEST_CASE("budget caps evaluations")
    {
        BoundedProblem p = sphere(2);
        p.budget = 95;
        CHECK(sca_optimize(p).evaluations_used <= 95);
        CHECK(pso_optimize(p).evaluations_used <= 95);
        p.budget = 10; // below one population
        const auto r = sca_optimize(p);
        CHECK(r.evaluations_used == 10);
        CHECK(feasible(p, r.best_point));
    }

    TEST_CASE("problem validation")
    {
        BoundedProblem p = sphere(2);
        p.upper[1] = p.lower[1];
        CHECK_THROWS_AS(sca_optimize(p), ValidationError);
        p = sphere(2);
        p.objective = nullptr;
        CHECK_THROWS_AS(pso_optimize(p), ValidationError);
        p = sphere(2);
        p.budget = -1;
        CHECK_THROWS_AS(grid_search_oracle(p, 3), ValidationError);
        p = sphere(2);
        p.lower[0] = -std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(sca_optimize(p), ValidationError);
    }

    TEST_CASE("non-finite objective values keep a feasible best point")
    {
        BoundedProblem p = sphere(2);
        p.objective = [](const VectorXd &) { return -std::numeric_limits<double>::infinity(); };
        p.budget = 60;
        CHECK(feasible(p, sca_optimize(p).best_point));
        CHECK(feasible(p, pso_optimize(p).best_point));
        CHECK(feasible(p, grid_search_oracle(p, 4).best_point));
    }
}
