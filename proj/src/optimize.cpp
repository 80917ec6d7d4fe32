// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------

#include <risvlc/optimize.hpp>
#include <risvlc/parallel.hpp>
#include <risvlc/random.hpp>

#include <cmath>
#include <limits>

namespace risvlc
{
    void BoundedProblem::validate() const
    {
        if (lower.size() == 0 || lower.size() != upper.size())
            throw ValidationError("BoundedProblem: bounds must be nonempty and of equal length");
        if (!lower.allFinite() || !upper.allFinite())
            throw ValidationError("BoundedProblem: bounds must be finite");
        if (!(lower.array() < upper.array()).all())
            throw ValidationError("BoundedProblem: lower bound must be below upper bound in every coordinate");
        if (!objective)
            throw ValidationError("BoundedProblem: objective is empty");
        if (budget < 0)
            throw ValidationError("BoundedProblem: budget must be positive");
    }

    Eigen::VectorXd BoundedProblem::clamp(const Eigen::VectorXd &x) const
    {
        return x.cwiseMax(lower).cwiseMin(upper);
    }

    namespace
    {
        Eigen::VectorXd random_point(const BoundedProblem &p, Rng &rng)
        {
            Eigen::VectorXd x(p.dimension());
            for (Eigen::Index d = 0; d < x.size(); ++d)
                x[d] = rng.uniform(p.lower[d], p.upper[d]);
            return x;
        }

        // Evaluate one generation; slot i belongs to candidate i
        std::vector<double> evaluate(const BoundedProblem &p, const std::vector<Eigen::VectorXd> &xs, unsigned threads)
        {
            std::vector<double> f(xs.size());
            parallel_for(xs.size(), [&](std::size_t i) { f[i] = p.objective(xs[i]); }, threads);
            return f;
        }

        // Updates (best_x, best_f) from a generation; strict improvement keeps the earliest index
        void absorb(const std::vector<Eigen::VectorXd> &xs, const std::vector<double> &f, Eigen::VectorXd &best_x,
                    double &best_f)
        {
            for (std::size_t i = 0; i < xs.size(); ++i)
                if (f[i] > best_f)
                {
                    best_f = f[i];
                    best_x = xs[i];
                }
        }

        long effective_budget(const BoundedProblem &p, int population, int iterations)
        {
            return p.budget > 0 ? p.budget : long(population) * long(iterations);
        }
    } // namespace

    OptResult sca_optimize(const BoundedProblem &p, const ScaParams &params, unsigned threads)
    {
        p.validate();
        if (params.population < 1 || params.iterations < 1)
            throw ValidationError("sca_optimize: population and iterations must be >= 1");
        const long budget = effective_budget(p, params.population, params.iterations);
        const auto n = std::size_t(params.population);
        Rng rng(p.seed);

        OptResult res;
        res.best_value = -std::numeric_limits<double>::infinity();

        const auto first = std::min<long>(long(n), budget);
        std::vector<Eigen::VectorXd> xs;
        for (long i = 0; i < first; ++i)
            xs.push_back(random_point(p, rng));
        auto f = evaluate(p, xs, threads);
        res.evaluations_used += long(xs.size());
        res.best_point = xs.front();
        absorb(xs, f, res.best_point, res.best_value);
        res.trace.push_back(res.best_value);

        const int T = params.iterations;
        for (int t = 1; t < T && res.evaluations_used + long(n) <= budget; ++t)
        {
            // amplitude decays linearly from a_initial toward 0 over the run
            const double r1 = params.a_initial * (1.0 - double(t) / double(T));
            const Eigen::VectorXd dest = res.best_point;
            for (auto &x : xs)
            {
                for (Eigen::Index d = 0; d < x.size(); ++d)
                {
                    const double r2 = 2.0 * pi_v<double> * rng.uniform01();
                    const double r3 = 2.0 * rng.uniform01();
                    const double r4 = rng.uniform01();
                    const double wave = r4 < 0.5 ? std::sin(r2) : std::cos(r2);
                    x[d] += r1 * wave * std::abs(r3 * dest[d] - x[d]);
                }
                x = p.clamp(x);
            }
            f = evaluate(p, xs, threads);
            res.evaluations_used += long(xs.size());
            absorb(xs, f, res.best_point, res.best_value);
            res.trace.push_back(res.best_value);
        }
        return res;
    }

    OptResult pso_optimize(const BoundedProblem &p, const PsoParams &params, unsigned threads)
    {
        p.validate();
        if (params.population < 1 || params.iterations < 1)
            throw ValidationError("pso_optimize: population and iterations must be >= 1");
        if (!(params.velocity_fraction > 0.0))
            throw ValidationError("pso_optimize: velocity fraction must be positive");
        const long budget = effective_budget(p, params.population, params.iterations);
        const auto n = std::size_t(params.population);
        const Eigen::VectorXd vmax = params.velocity_fraction * (p.upper - p.lower);
        Rng rng(p.seed);

        OptResult res;
        res.best_value = -std::numeric_limits<double>::infinity();

        const auto first = std::min<long>(long(n), budget);
        std::vector<Eigen::VectorXd> xs, vs;
        for (long i = 0; i < first; ++i)
        {
            xs.push_back(random_point(p, rng));
            Eigen::VectorXd v(p.dimension());
            for (Eigen::Index d = 0; d < v.size(); ++d)
                v[d] = rng.uniform(-vmax[d], vmax[d]);
            vs.push_back(v);
        }
        auto f = evaluate(p, xs, threads);
        res.evaluations_used += long(xs.size());
        std::vector<Eigen::VectorXd> pbest = xs;
        std::vector<double> pbest_f = f;
        res.best_point = xs.front();
        absorb(xs, f, res.best_point, res.best_value);
        res.trace.push_back(res.best_value);

        for (int t = 1; t < params.iterations && res.evaluations_used + long(n) <= budget; ++t)
        {
            const Eigen::VectorXd gbest = res.best_point;
            for (std::size_t i = 0; i < xs.size(); ++i)
            {
                auto &x = xs[i];
                auto &v = vs[i];
                for (Eigen::Index d = 0; d < x.size(); ++d)
                {
                    const double u1 = rng.uniform01();
                    const double u2 = rng.uniform01();
                    v[d] = params.inertia * v[d] + params.c1 * u1 * (pbest[i][d] - x[d]) +
                           params.c2 * u2 * (gbest[d] - x[d]);
                    v[d] = std::clamp(v[d], -vmax[d], vmax[d]);
                    x[d] += v[d];
                    if (x[d] < p.lower[d] || x[d] > p.upper[d])
                    {
                        x[d] = std::clamp(x[d], p.lower[d], p.upper[d]);
                        v[d] = 0.0;
                    }
                }
            }
            f = evaluate(p, xs, threads);
            res.evaluations_used += long(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i)
                if (f[i] > pbest_f[i])
                {
                    pbest_f[i] = f[i];
                    pbest[i] = xs[i];
                }
            absorb(xs, f, res.best_point, res.best_value);
            res.trace.push_back(res.best_value);
        }
        return res;
    }

    OptResult grid_search_oracle(const BoundedProblem &p, long resolution, unsigned threads)
    {
        p.validate();
        if (resolution < 2)
            throw ValidationError("grid_search_oracle: resolution must be >= 2 to include both bounds");
        const Eigen::Index D = p.dimension();
        long total = 1;
        for (Eigen::Index d = 0; d < D; ++d)
        {
            if (total > kGridEvaluationCap / resolution)
                throw ValidationError("grid_search_oracle: lattice exceeds the evaluation cap of 1e7 points");
            total *= resolution;
        }
        if (p.budget > 0 && total > p.budget)
            throw ValidationError("grid_search_oracle: lattice exceeds the problem budget");

        const Eigen::VectorXd step = (p.upper - p.lower) / double(resolution - 1);
        auto point = [&](long index) {
            Eigen::VectorXd x(D);
            for (Eigen::Index d = D - 1; d >= 0; --d)
            {
                const long k = index % resolution;
                index /= resolution;
                // hit the upper bound exactly rather than through accumulated rounding
                x[d] = k == resolution - 1 ? p.upper[d] : p.lower[d] + double(k) * step[d];
            }
            return x;
        };

        OptResult res;
        res.best_value = -std::numeric_limits<double>::infinity();
        res.best_point = point(0);
        constexpr long chunk = 1L << 16;
        std::vector<double> f;
        for (long start = 0; start < total; start += chunk)
        {
            const long count = std::min(chunk, total - start);
            f.assign(std::size_t(count), 0.0);
            parallel_for(std::size_t(count), [&](std::size_t i) { f[i] = p.objective(point(start + long(i))); },
                         threads);
            for (long i = 0; i < count; ++i)
                if (f[std::size_t(i)] > res.best_value)
                {
                    res.best_value = f[std::size_t(i)];
                    res.best_point = point(start + i);
                }
        }
        res.evaluations_used = total;
        res.trace.push_back(res.best_value);
        return res;
    }

} // namespace risvlc
