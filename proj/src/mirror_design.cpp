// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------

#include <risvlc/mirror_design.hpp>
#include <risvlc/random.hpp>

namespace risvlc
{
    Algorithm parse_algorithm(std::string_view name)
    {
        if (name == "sca")
            return Algorithm::Sca;
        if (name == "pso")
            return Algorithm::Pso;
        if (name == "grid")
            return Algorithm::Grid;
        throw ValidationError("unknown algorithm '" + std::string(name) + "' (expected sca, pso or grid)");
    }

    AngleMode parse_angle_mode(std::string_view name)
    {
        if (name == "identical")
            return AngleMode::Identical;
        if (name == "per-element")
            return AngleMode::PerElement;
        throw ValidationError("unknown mode '" + std::string(name) + "' (expected identical or per-element)");
    }

    Eigen::Index design_dimension(std::span<const MirrorArray<double>> panels, AngleMode mode)
    {
        Eigen::Index d = 0;
        for (const auto &p : panels)
            d += mode == AngleMode::Identical ? 2 : 2 * Eigen::Index(p.size());
        return d;
    }

    void apply_design(std::vector<MirrorArray<double>> &panels, const Eigen::VectorXd &x, AngleMode mode)
    {
        if (x.size() != design_dimension(panels, mode))
            throw DimensionError("apply_design: coordinate vector has the wrong length");
        Eigen::Index k = 0;
        for (auto &p : panels)
        {
            if (mode == AngleMode::Identical)
            {
                p.set_uniform(x[k], x[k + 1]);
                k += 2;
                continue;
            }
            const Eigen::Index n = p.size();
            // column-major blocks: yaw then roll
            const Eigen::Map<const MatX<double>> yaw(x.data() + k, p.rows(), p.cols());
            const Eigen::Map<const MatX<double>> roll(x.data() + k + n, p.rows(), p.cols());
            p.set_angles(yaw, roll);
            k += 2 * n;
        }
    }

    MirrorDesign optimize_mirror_angles(const Scenario &s, const Realization &r, Algorithm algorithm, AngleMode mode,
                                        const MirrorDesignOptions &opts)
    {
        if (s.ris.empty())
            throw ValidationError("optimize_mirror_angles: scenario has no RIS panel");
        const LinkBudget budget(s, r);
        const Eigen::Index D = design_dimension(s.ris, mode);
        const double lim = MirrorArray<double>::angle_limit;

        BoundedProblem p;
        p.lower = Eigen::VectorXd::Constant(D, -lim);
        p.upper = Eigen::VectorXd::Constant(D, lim);
        p.seed = opts.seed;
        p.objective = [&](const Eigen::VectorXd &x) {
            auto panels = s.ris;
            apply_design(panels, x, mode);
            return budget.sum_rate(panels);
        };

        MirrorDesign out;
        switch (algorithm)
        {
        case Algorithm::Sca:
            out.search = sca_optimize(p, opts.sca, opts.threads);
            break;
        case Algorithm::Pso:
            out.search = pso_optimize(p, opts.pso, opts.threads);
            break;
        case Algorithm::Grid:
            out.search = grid_search_oracle(p, opts.grid_resolution, opts.threads);
            break;
        }
        out.panels = s.ris;
        apply_design(out.panels, out.search.best_point, mode);
        out.sum_rate = budget.sum_rate(out.panels);
        return out;
    }

    double random_angle_baseline(const Scenario &s, const Realization &r, std::uint64_t seed)
    {
        Rng rng(derive_seed(seed, {0x6261736cULL}));
        const double lim = MirrorArray<double>::angle_limit;
        auto panels = s.ris;
        for (auto &p : panels)
        {
            MatX<double> yaw(p.rows(), p.cols()), roll(p.rows(), p.cols());
            for (Eigen::Index j = 0; j < yaw.cols(); ++j)
                for (Eigen::Index i = 0; i < yaw.rows(); ++i)
                {
                    yaw(i, j) = rng.uniform(-lim, lim);
                    roll(i, j) = rng.uniform(-lim, lim);
                }
            p.set_angles(yaw, roll);
        }
        return LinkBudget(s, r).sum_rate(panels);
    }

    double wall_only_rate(const Scenario &s, const Realization &r)
    {
        return LinkBudget(s, r).sum_rate({});
    }

} // namespace risvlc
