// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------
//
// Power-domain NOMA on one VLC cell. Users are indexed in ascending order of
// channel gain; user k cancels the signals of users 1..k-1 (weaker, more power)
// and treats users k+1..K as interference.

#pragma once

#include <risvlc/types.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace risvlc
{
    struct NomaAllocation
    {
        std::vector<double> coefficients; // a_k, amplitude coefficients
        double total_power = 1.0;         // P, electrical [W]
        std::vector<double> gains;        // h_k
    };

    // Stable ascending order of gains
    std::vector<std::size_t> order_users(std::span<const double> gains);

    // Checks 0 < a_k < 1 (a single user may take a = 1), sum a_k^2 = 1 within 1e-9
    // and, when gains are supplied in ascending order, a_1 >= ... >= a_K.
    std::optional<Violation> validate_allocation(std::span<const double> coefficients,
                                                 std::span<const double> gains = {});

    // Per-user rates [bits/channel use]. `sic_residual` scales the interference
    // left over from imperfectly cancelled weaker users (0 = perfect SIC).
    // Throws ValidationError if gains are not ascending.
    std::vector<double> noma_rates(const NomaAllocation &alloc, double noise_variance, double sic_residual = 0.0);

    // Equal-time TDMA reference: sum_k (1/K) * 1/2 log2(1 + P h_k^2 / sigma^2)
    double tdma_sum_rate(std::span<const double> gains, double total_power, double noise_variance);

    struct TwoUserSweep
    {
        double a1 = 0.0;
        double a2 = 0.0;
        double sum_rate = 0.0;
        std::vector<double> rates;
    };

    // Exhaustive sweep of a_1 over [1/sqrt(2), 1) with a_2 = sqrt(1 - a_1^2); keeps the
    // NOMA ordering a_1 >= a_2. Gains must be ascending (h_1 <= h_2).
    TwoUserSweep best_two_user_allocation(double h1, double h2, double total_power, double noise_variance,
                                          int steps = 1000);

} // namespace risvlc
