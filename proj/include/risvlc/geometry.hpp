// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------
//
// 3-D primitives, room layout and LoS visibility against vertical cylinders.

#pragma once

#include <risvlc/types.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

namespace risvlc
{
    template <typename Scalar>
    struct Room
    {
        Scalar length = Scalar(5); // extent along x [m]
        Scalar width = Scalar(5);  // extent along y [m]
        Scalar height = Scalar(3); // extent along z [m]

        bool contains(const Vec3<Scalar> &p) const
        {
            return p.x() >= 0 && p.x() <= length && p.y() >= 0 && p.y() <= width && p.z() >= 0 && p.z() <= height;
        }
    };

    // One vertical wall: a rectangle with an inward-facing normal
    template <typename Scalar>
    struct Wall
    {
        Vec3<Scalar> origin;     // lower corner
        Vec3<Scalar> horizontal; // unit vector along the wall at floor level
        Scalar span;             // horizontal extent [m]
        Scalar height;           // vertical extent [m]
        Vec3<Scalar> normal;     // unit, pointing into the room
    };

    // The four vertical walls, ordered y=0, x=L, y=W, x=0
    template <typename Scalar>
    std::array<Wall<Scalar>, 4> walls_of(const Room<Scalar> &room)
    {
        const Scalar L = room.length, W = room.width, H = room.height;
        return {{
            {Vec3<Scalar>(0, 0, 0), Vec3<Scalar>(1, 0, 0), L, H, Vec3<Scalar>(0, 1, 0)},
            {Vec3<Scalar>(L, 0, 0), Vec3<Scalar>(0, 1, 0), W, H, Vec3<Scalar>(-1, 0, 0)},
            {Vec3<Scalar>(0, W, 0), Vec3<Scalar>(1, 0, 0), L, H, Vec3<Scalar>(0, -1, 0)},
            {Vec3<Scalar>(0, 0, 0), Vec3<Scalar>(0, 1, 0), W, H, Vec3<Scalar>(1, 0, 0)},
        }};
    }

    // Vertical cylinder standing on the floor plane z = base_center.z()
    template <typename Scalar>
    struct CylinderBlocker
    {
        Vec3<Scalar> base_center = Vec3<Scalar>::Zero();
        Scalar radius = Scalar(0.15);
        Scalar height = Scalar(1.65);
    };

    template <typename Scalar>
    struct LinkGeometry
    {
        Scalar distance;         // [m]
        Scalar irradiance_angle; // angle at the transmitter normal [rad]
        Scalar incidence_angle;  // angle at the receiver normal [rad]
    };

    // Angle between two nonzero vectors, accurate near 0 and pi
    template <typename Scalar>
    Scalar angle_between(const Vec3<Scalar> &a, const Vec3<Scalar> &b)
    {
        return std::atan2(a.cross(b).norm(), a.dot(b));
    }

    // True iff the segment [origin, end] touches the closed cylinder (surface or interior).
    //
    // The segment is first clipped to the cylinder's slab base.z <= z <= base.z + height,
    // then the clipped part is tested against the disc in the horizontal plane.
    template <typename Scalar>
    bool ray_cylinder_intersect(const Vec3<Scalar> &origin, const Vec3<Scalar> &end,
                                const CylinderBlocker<Scalar> &blocker)
    {
        const Vec3<Scalar> d = end - origin;
        const Scalar z_lo = blocker.base_center.z();
        const Scalar z_hi = z_lo + blocker.height;

        Scalar t0 = Scalar(0), t1 = Scalar(1);
        if (d.z() == Scalar(0))
        {
            if (origin.z() < z_lo || origin.z() > z_hi)
                return false;
        }
        else
        {
            Scalar ta = (z_lo - origin.z()) / d.z();
            Scalar tb = (z_hi - origin.z()) / d.z();
            if (ta > tb)
                std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1)
                return false;
        }

        // Horizontal distance from the axis is convex in t: minimize over [t0, t1]
        const Scalar px = origin.x() - blocker.base_center.x();
        const Scalar py = origin.y() - blocker.base_center.y();
        const Scalar a = d.x() * d.x() + d.y() * d.y();
        Scalar t = t0;
        if (a > Scalar(0))
            t = std::clamp(-(px * d.x() + py * d.y()) / a, t0, t1);
        const Scalar qx = px + t * d.x();
        const Scalar qy = py + t * d.y();
        return qx * qx + qy * qy <= blocker.radius * blocker.radius;
    }

    template <typename Scalar>
    bool los_visible(const Vec3<Scalar> &tx_pos, const Vec3<Scalar> &rx_pos,
                     std::span<const CylinderBlocker<Scalar>> blockers)
    {
        return std::none_of(blockers.begin(), blockers.end(),
                            [&](const auto &b) { return ray_cylinder_intersect(tx_pos, rx_pos, b); });
    }

    template <typename Scalar>
    LinkGeometry<Scalar> link_geometry(const Vec3<Scalar> &tx_pos, const Vec3<Scalar> &tx_normal,
                                       const Vec3<Scalar> &rx_pos, const Vec3<Scalar> &rx_normal)
    {
        if (tx_normal.norm() == Scalar(0) || rx_normal.norm() == Scalar(0))
            throw DomainError("link_geometry: zero-norm normal");
        const Vec3<Scalar> v = rx_pos - tx_pos;
        const Scalar d = v.norm();
        if (d == Scalar(0))
            throw DomainError("link_geometry: coincident endpoints");
        return {d, angle_between<Scalar>(tx_normal, v), angle_between<Scalar>(rx_normal, -v)};
    }

} // namespace risvlc
