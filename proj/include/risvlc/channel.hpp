// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------
//
// Lambertian optical channel: LoS gain, first-order wall reflections,
// optical concentrator gain and orientation-dependent incidence.

#pragma once

#include <risvlc/geometry.hpp>
#include <risvlc/orientation.hpp>
#include <risvlc/types.hpp>

#include <cmath>
#include <span>
#include <vector>

namespace risvlc
{
    enum class PathKind
    {
        LoS,
        WallNLoS,
        RisNLoS
    };

    template <typename Scalar>
    struct ChannelGain
    {
        Scalar h = Scalar(0); // dimensionless optical power gain, >= 0
        PathKind kind = PathKind::LoS;
    };

    template <typename Scalar>
    struct LedTx
    {
        Vec3<Scalar> position = Vec3<Scalar>(2.5, 2.5, 3.0);
        Vec3<Scalar> normal = Vec3<Scalar>(0, 0, -1);     // unit
        Scalar half_intensity_angle = deg2rad(Scalar(60)); // [rad]
        Scalar optical_power = Scalar(2);                  // [W]
    };

    template <typename Scalar>
    struct PdRx
    {
        Vec3<Scalar> position = Vec3<Scalar>(2.5, 2.5, 0.75);
        Vec3<Scalar> normal = Vec3<Scalar>(0, 0, 1); // unit
        Scalar area = Scalar(1e-4);                  // A_PD [m^2]
        Scalar fov = deg2rad(Scalar(85));            // [rad]
        Scalar filter_gain = Scalar(1);              // T, constant over angle
        Scalar refractive_index = Scalar(1.5);       // concentrator f

        static PdRx oriented(const Vec3<Scalar> &position, const DeviceOrientation<Scalar> &o)
        {
            PdRx rx;
            rx.position = position;
            rx.normal = device_normal(o);
            return rx;
        }
    };

    template <typename Scalar>
    struct WallPatch
    {
        Vec3<Scalar> center;
        Vec3<Scalar> normal; // unit, into the room
        Scalar area;         // dA_k [m^2]
        Scalar reflectance;  // rho_wall
    };

    template <typename Scalar>
    Scalar lambertian_index(Scalar half_intensity_angle)
    {
        if (!(half_intensity_angle > Scalar(0) && half_intensity_angle < pi_v<Scalar> / 2))
            throw DomainError("lambertian_index: half-intensity angle must lie in (0, pi/2)");
        return Scalar(-1) / std::log2(std::cos(half_intensity_angle));
    }

    template <typename Scalar>
    Scalar concentrator_gain(Scalar incidence, Scalar refractive_index, Scalar fov)
    {
        if (incidence < Scalar(0) || incidence > fov)
            return Scalar(0);
        const Scalar s = std::sin(fov);
        return refractive_index * refractive_index / (s * s);
    }

    // cos of the incidence angle for a device at user_pos tilted by `o`
    template <typename Scalar>
    Scalar incidence_cosine(const Vec3<Scalar> &ap_pos, const Vec3<Scalar> &user_pos,
                            const DeviceOrientation<Scalar> &o)
    {
        const Vec3<Scalar> v = ap_pos - user_pos;
        const Scalar d = v.norm();
        if (d == Scalar(0))
            throw DomainError("incidence_cosine: coincident AP and user positions");
        const Scalar sa = std::sin(o.polar), ca = std::cos(o.polar);
        const Scalar c = (v.x() / d) * sa * std::cos(o.azimuth) + (v.y() / d) * sa * std::sin(o.azimuth) + (v.z() / d) * ca;
        return std::clamp(c, Scalar(-1), Scalar(1));
    }

    namespace detail
    {
        // Receiver-side factor A_PD * T * G(theta) * cos(theta) for light arriving along
        // `toward_source` (unit); 0 outside the FoV or from behind the detector plane.
        template <typename Scalar>
        Scalar receiver_factor(const PdRx<Scalar> &rx, const Vec3<Scalar> &toward_source, Scalar cos_fov)
        {
            const Scalar c = std::min(rx.normal.dot(toward_source), Scalar(1));
            if (c < Scalar(0) || c < cos_fov)
                return Scalar(0);
            // inside the FoV, so the concentrator gain is its constant in-cone value
            const Scalar s = std::sin(rx.fov);
            const Scalar g = rx.refractive_index * rx.refractive_index / (s * s);
            return rx.area * rx.filter_gain * g * c;
        }
    } // namespace detail

    template <typename Scalar>
    ChannelGain<Scalar> los_gain(const LedTx<Scalar> &tx, const PdRx<Scalar> &rx,
                                 std::span<const CylinderBlocker<Scalar>> blockers = {})
    {
        ChannelGain<Scalar> out{Scalar(0), PathKind::LoS};
        const Vec3<Scalar> v = rx.position - tx.position;
        const Scalar d2 = v.squaredNorm();
        const Scalar d = std::sqrt(d2);
        const Scalar cos_irr = tx.normal.dot(v) / d;
        if (cos_irr <= Scalar(0))
            return out;
        const Scalar rxf = detail::receiver_factor<Scalar>(rx, -v / d, std::cos(rx.fov));
        if (rxf == Scalar(0) || !los_visible<Scalar>(tx.position, rx.position, blockers))
            return out;
        const Scalar m = lambertian_index(tx.half_intensity_angle);
        out.h = (m + 1) / (2 * pi_v<Scalar> * d2) * std::pow(cos_irr, m) * rxf;
        return out;
    }

    // Split each patch term into its source-dependent and receiver-dependent halves.
    // `weight[k]` = rho (m+1) dA cos^m(Phi) cos(theta_k) / (2 pi^2 d_k^2), zero when the
    // tx -> patch leg is blocked or back-facing.
    template <typename Scalar>
    struct WallIllumination
    {
        std::vector<Scalar> weight;
    };

    template <typename Scalar>
    WallIllumination<Scalar> illuminate_walls(const LedTx<Scalar> &tx, std::span<const WallPatch<Scalar>> patches,
                                              std::span<const CylinderBlocker<Scalar>> blockers = {})
    {
        const Scalar m = lambertian_index(tx.half_intensity_angle);
        WallIllumination<Scalar> ill;
        ill.weight.assign(patches.size(), Scalar(0));
        for (std::size_t k = 0; k < patches.size(); ++k)
        {
            const auto &p = patches[k];
            if (p.reflectance == Scalar(0))
                continue;
            const Vec3<Scalar> v = p.center - tx.position;
            const Scalar d2 = v.squaredNorm();
            const Scalar d = std::sqrt(d2);
            const Scalar cos_irr = tx.normal.dot(v) / d;
            const Scalar cos_inc = -p.normal.dot(v) / d;
            if (cos_irr <= Scalar(0) || cos_inc <= Scalar(0))
                continue;
            if (!los_visible<Scalar>(tx.position, p.center, blockers))
                continue;
            ill.weight[k] = p.reflectance * (m + 1) * p.area * std::pow(cos_irr, m) * cos_inc /
                            (2 * pi_v<Scalar> * pi_v<Scalar> * d2);
        }
        return ill;
    }

    template <typename Scalar>
    ChannelGain<Scalar> collect_wall_gain(const WallIllumination<Scalar> &ill, std::span<const WallPatch<Scalar>> patches,
                                          const PdRx<Scalar> &rx, std::span<const CylinderBlocker<Scalar>> blockers = {})
    {
        if (ill.weight.size() != patches.size())
            throw DimensionError("collect_wall_gain: illumination does not match patch set");
        const Scalar cos_fov = std::cos(rx.fov);
        Scalar h = Scalar(0);
        // Fixed index order keeps the sum bit-stable
        for (std::size_t k = 0; k < patches.size(); ++k)
        {
            if (ill.weight[k] == Scalar(0))
                continue;
            const auto &p = patches[k];
            const Vec3<Scalar> v = rx.position - p.center;
            const Scalar d2 = v.squaredNorm();
            const Scalar d = std::sqrt(d2);
            const Scalar cos_out = p.normal.dot(v) / d;
            if (cos_out <= Scalar(0))
                continue;
            const Scalar rxf = detail::receiver_factor<Scalar>(rx, -v / d, cos_fov);
            if (rxf == Scalar(0) || !los_visible<Scalar>(p.center, rx.position, blockers))
                continue;
            h += ill.weight[k] * cos_out * rxf / d2;
        }
        return {h, PathKind::WallNLoS};
    }

    template <typename Scalar>
    ChannelGain<Scalar> wall_first_reflection_gain(const LedTx<Scalar> &tx, const PdRx<Scalar> &rx,
                                                   std::span<const WallPatch<Scalar>> patches,
                                                   std::span<const CylinderBlocker<Scalar>> blockers = {})
    {
        if (patches.empty())
            throw ValidationError("wall_first_reflection_gain: empty patch list");
        return collect_wall_gain<Scalar>(illuminate_walls<Scalar>(tx, patches, blockers), patches, rx, blockers);
    }

    // Square-ish patches of edge <= patch_size tiling the four vertical walls
    template <typename Scalar>
    std::vector<WallPatch<Scalar>> discretize_walls(const Room<Scalar> &room, Scalar patch_size, Scalar reflectance)
    {
        if (!(patch_size > Scalar(0)))
            throw ValidationError("discretize_walls: patch size must be positive");
        std::vector<WallPatch<Scalar>> out;
        for (const auto &w : walls_of(room))
        {
            const auto nu = static_cast<long>(std::ceil(w.span / patch_size - Scalar(1e-9)));
            const auto nv = static_cast<long>(std::ceil(w.height / patch_size - Scalar(1e-9)));
            const Scalar du = w.span / Scalar(nu), dv = w.height / Scalar(nv);
            for (long i = 0; i < nu; ++i)
                for (long j = 0; j < nv; ++j)
                {
                    Vec3<Scalar> c = w.origin + w.horizontal * ((Scalar(i) + Scalar(0.5)) * du);
                    c.z() += (Scalar(j) + Scalar(0.5)) * dv;
                    out.push_back({c, w.normal, du * dv, reflectance});
                }
        }
        return out;
    }

} // namespace risvlc
