// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------
//
// Rates under intensity constraints. Every rate in the toolkit reduces to the
// per-channel bound 1/2 log2(1 + 2 h^2 X^2 / (2 pi e sigma^2)).

#pragma once

#include <risvlc/channel.hpp>
#include <risvlc/types.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace risvlc
{
    template <typename Scalar>
    struct NoiseModel
    {
        Scalar psd = Scalar(1e-21);      // N0 [A^2/Hz]
        Scalar bandwidth = Scalar(20e6); // B [Hz]

        Scalar variance() const { return psd * bandwidth; }

        void validate() const
        {
            if (!(psd > Scalar(0)) || !(bandwidth > Scalar(0)))
                throw ValidationError("noise: psd and bandwidth must be positive");
        }
    };

    template <typename Scalar>
    struct IntensityConstraints
    {
        Scalar peak = Scalar(2);          // X [W]
        Scalar average_total = Scalar(2); // p_o [W]

        void validate() const
        {
            if (!(peak > Scalar(0)) || !(average_total > Scalar(0)))
                throw ValidationError("constraints: peak and average optical power must be positive");
        }
    };

    template <typename Scalar>
    struct SecrecyScenario
    {
        Scalar bob_los = Scalar(0);
        Scalar eve_los = Scalar(0);
        Scalar bob_ris = Scalar(0);
        Scalar eve_ris = Scalar(0);

        Scalar bob_total() const { return bob_los + bob_ris; }
        Scalar eve_total() const { return eve_los + eve_ris; }
    };

    // Argument 2 h^2 X^2 / (2 pi e sigma^2) of the intensity-channel bound
    template <typename Scalar>
    Scalar intensity_snr(Scalar h, Scalar peak, Scalar noise_variance)
    {
        return Scalar(2) * h * h * peak * peak / (Scalar(2) * pi_v<Scalar> * std::numbers::e_v<Scalar> * noise_variance);
    }

    // bits per channel use
    template <typename Scalar>
    Scalar siso_capacity(Scalar h, Scalar peak, Scalar noise_variance)
    {
        return Scalar(0.5) * std::log2(Scalar(1) + intensity_snr(h, peak, noise_variance));
    }

    // bits/s
    template <typename Scalar>
    Scalar link_rate(Scalar h, const IntensityConstraints<Scalar> &c, const NoiseModel<Scalar> &n)
    {
        if (h <= Scalar(0))
            return Scalar(0);
        return n.bandwidth * siso_capacity(h, c.peak, n.variance());
    }

    template <typename Scalar>
    Scalar link_rate(const ChannelGain<Scalar> &g, const IntensityConstraints<Scalar> &c, const NoiseModel<Scalar> &n)
    {
        return link_rate(g.h, c, n);
    }

    template <typename Scalar>
    Scalar secrecy_rate(const SecrecyScenario<Scalar> &s, const IntensityConstraints<Scalar> &c,
                        const NoiseModel<Scalar> &n)
    {
        return std::max(Scalar(0), link_rate(s.bob_total(), c, n) - link_rate(s.eve_total(), c, n));
    }

    // (hP)^2 / sigma^2
    template <typename Scalar>
    Scalar electrical_snr(Scalar h, Scalar transmit_power, const NoiseModel<Scalar> &n)
    {
        const Scalar s = h * transmit_power;
        return s * s / n.variance();
    }

} // namespace risvlc
