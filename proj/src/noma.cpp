// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------

#include <risvlc/noma.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace risvlc
{
    namespace
    {
        constexpr double kPowerTolerance = 1e-9;

        bool ascending(std::span<const double> g)
        {
            return std::is_sorted(g.begin(), g.end());
        }
    } // namespace

    std::vector<std::size_t> order_users(std::span<const double> gains)
    {
        std::vector<std::size_t> idx(gains.size());
        std::iota(idx.begin(), idx.end(), std::size_t(0));
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return gains[a] < gains[b]; });
        return idx;
    }

    std::optional<Violation> validate_allocation(std::span<const double> a, std::span<const double> gains)
    {
        if (a.empty())
            return Violation{"empty allocation", -1};
        for (std::size_t k = 0; k < a.size(); ++k)
        {
            const bool single = a.size() == 1 && a[k] == 1.0;
            if (!(a[k] > 0.0 && a[k] < 1.0) && !single)
                return Violation{"coefficient a_" + std::to_string(k) + " outside (0, 1)", long(k)};
        }
        double sq = 0.0;
        for (double x : a)
            sq += x * x;
        if (std::abs(sq - 1.0) > kPowerTolerance)
            return Violation{"sum of squared coefficients is " + std::to_string(sq) + ", expected 1", -1};
        if (!gains.empty())
        {
            if (gains.size() != a.size())
                return Violation{"gain and coefficient counts differ", -1};
            if (ascending(gains))
                for (std::size_t k = 1; k < a.size(); ++k)
                    if (a[k] > a[k - 1])
                        return Violation{"ordering violated: stronger user " + std::to_string(k) +
                                             " receives more power than user " + std::to_string(k - 1),
                                         long(k)};
        }
        return std::nullopt;
    }

    std::vector<double> noma_rates(const NomaAllocation &alloc, double noise_variance, double sic_residual)
    {
        const auto &a = alloc.coefficients;
        const auto &h = alloc.gains;
        if (a.size() != h.size())
            throw DimensionError("noma_rates: gain and coefficient counts differ");
        if (!ascending(h))
            throw ValidationError("noma_rates: users must be ordered by ascending gain");
        if (!(noise_variance > 0.0))
            throw ValidationError("noma_rates: noise variance must be positive");
        if (!(sic_residual >= 0.0 && sic_residual <= 1.0))
            throw ValidationError("noma_rates: SIC residual must lie in [0, 1]");
        if (auto v = validate_allocation(a, h))
            throw ValidationError("noma_rates: " + v->what);

        const std::size_t K = a.size();
        std::vector<double> rates(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            const double hk2 = h[k] * h[k];
            double stronger = 0.0, weaker = 0.0;
            for (std::size_t i = k + 1; i < K; ++i)
                stronger += a[i] * a[i];
            for (std::size_t j = 0; j < k; ++j)
                weaker += a[j] * a[j];
            const double interference = hk2 * alloc.total_power * (stronger + sic_residual * weaker);
            const double sinr = a[k] * a[k] * alloc.total_power * hk2 / (interference + noise_variance);
            rates[k] = 0.5 * std::log2(1.0 + sinr);
        }
        return rates;
    }

    double tdma_sum_rate(std::span<const double> gains, double total_power, double noise_variance)
    {
        if (gains.empty())
            return 0.0;
        double total = 0.0;
        for (double h : gains)
            total += 0.5 * std::log2(1.0 + total_power * h * h / noise_variance);
        return total / double(gains.size());
    }

    TwoUserSweep best_two_user_allocation(double h1, double h2, double total_power, double noise_variance, int steps)
    {
        if (h1 > h2)
            throw ValidationError("best_two_user_allocation: gains must be ascending");
        if (steps < 1)
            throw ValidationError("best_two_user_allocation: steps must be >= 1");
        TwoUserSweep best;
        best.sum_rate = -1.0;
        const double lo = std::sqrt(0.5);
        // open at the upper end so a_2 stays positive
        for (int s = 0; s < steps; ++s)
        {
            const double a1 = lo + (1.0 - lo) * double(s) / double(steps);
            const double a2 = std::min(a1, std::sqrt(1.0 - a1 * a1));
            NomaAllocation alloc{{a1, a2}, total_power, {h1, h2}};
            auto r = noma_rates(alloc, noise_variance);
            const double sum = r[0] + r[1];
            if (sum > best.sum_rate)
                best = {a1, a2, sum, std::move(r)};
        }
        return best;
    }

} // namespace risvlc
