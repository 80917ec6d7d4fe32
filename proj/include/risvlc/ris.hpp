// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------
//
// Mirror-array RIS. Each element is a flat square pivoting about its center;
// its normal is the panel normal yawed about the panel vertical axis and then
// rolled about the yawed horizontal axis. The reflected leg uses a normalized
// Gaussian lobe of angular spread sigma_b around the specular direction:
//
//   h_e = rho * [(m+1) A_m cos^m(Phi_1) cos(theta_1) / (2 pi d_1^2)]
//             * [exp(-psi^2 / (2 sigma_b^2)) / (2 pi sigma_b^2 d_2^2)]
//             * A_PD cos(theta_2) T G(theta_2)
//
// An ideal mirror is recovered as sigma_b -> 0.

#pragma once

#include <risvlc/channel.hpp>
#include <risvlc/geometry.hpp>
#include <risvlc/types.hpp>

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace risvlc
{
    template <typename Scalar>
    Vec3<Scalar> mirror_normal(Scalar yaw, Scalar roll, const Vec3<Scalar> &base_normal,
                               const Vec3<Scalar> &up = Vec3<Scalar>::UnitZ())
    {
        const Vec3<Scalar> axis_v = up.normalized();
        const Vec3<Scalar> n1 = Eigen::AngleAxis<Scalar>(yaw, axis_v) * base_normal.normalized();
        const Vec3<Scalar> axis_h = n1.cross(axis_v);
        const Scalar hn = axis_h.norm();
        if (hn == Scalar(0))
            throw DomainError("mirror_normal: base normal is parallel to the panel vertical axis");
        // positive roll tilts the normal toward `up`
        return (Eigen::AngleAxis<Scalar>(roll, axis_h / hn) * n1).normalized();
    }

    template <typename Scalar>
    Vec3<Scalar> specular_reflect(const Vec3<Scalar> &incident_dir, const Vec3<Scalar> &normal)
    {
        return incident_dir - Scalar(2) * incident_dir.dot(normal) * normal;
    }

    template <typename Scalar>
    struct MirrorElement
    {
        Vec3<Scalar> center;
        Vec3<Scalar> normal; // unit
    };

    // Per-element optical parameters shared by every mirror in an array
    template <typename Scalar>
    struct MirrorOptics
    {
        Scalar area = Scalar(0.01);                // A_m [m^2]
        Scalar reflectivity = Scalar(0.95);        // rho_m
        Scalar beam_spread = deg2rad(Scalar(2.0)); // sigma_b [rad]
    };

    template <typename Scalar>
    class MirrorArray
    {
    public:
        static constexpr Scalar angle_limit = pi_v<Scalar> / 2;

        MirrorArray() : MirrorArray(Vec3<Scalar>(0, 2.5, 1.5), Vec3<Scalar>::UnitX(), 4, 4, Scalar(0.1)) {}

        MirrorArray(const Vec3<Scalar> &panel_center, const Vec3<Scalar> &base_normal, int rows, int cols,
                    Scalar element_size, const Vec3<Scalar> &up = Vec3<Scalar>::UnitZ())
            : center_(panel_center), normal_(base_normal.normalized()), up_(up.normalized()), rows_(rows), cols_(cols),
              element_size_(element_size), yaw_(MatX<Scalar>::Zero(rows, cols)), roll_(MatX<Scalar>::Zero(rows, cols))
        {
            if (rows < 1 || cols < 1)
                throw ValidationError("MirrorArray: rows and cols must be >= 1");
            if (!(element_size > Scalar(0)))
                throw ValidationError("MirrorArray: element size must be positive");
            if (std::abs(normal_.dot(up_)) > Scalar(1e-9))
                throw ValidationError("MirrorArray: panel vertical axis must be orthogonal to the base normal");
            optics_.area = element_size * element_size;
        }

        const Vec3<Scalar> &panel_center() const { return center_; }
        const Vec3<Scalar> &base_normal() const { return normal_; }
        const Vec3<Scalar> &up() const { return up_; }
        int rows() const { return rows_; }
        int cols() const { return cols_; }
        int size() const { return rows_ * cols_; }
        Scalar element_size() const { return element_size_; }
        const MatX<Scalar> &yaw() const { return yaw_; }
        const MatX<Scalar> &roll() const { return roll_; }
        const MirrorOptics<Scalar> &optics() const { return optics_; }

        void set_optics(const MirrorOptics<Scalar> &o)
        {
            if (!(o.reflectivity >= Scalar(0) && o.reflectivity <= Scalar(1)))
                throw ValidationError("MirrorArray: reflectivity must lie in [0, 1]");
            if (!(o.beam_spread > Scalar(0)))
                throw ValidationError("MirrorArray: beam spread must be positive");
            if (!(o.area > Scalar(0)))
                throw ValidationError("MirrorArray: element area must be positive");
            optics_ = o;
        }

        // Angles are clamped into [-pi/2, pi/2] on the way in
        template <typename DerivedY, typename DerivedR>
        void set_angles(const Eigen::MatrixBase<DerivedY> &yaw, const Eigen::MatrixBase<DerivedR> &roll)
        {
            if (yaw.rows() != rows_ || yaw.cols() != cols_ || roll.rows() != rows_ || roll.cols() != cols_)
                throw DimensionError("MirrorArray: angle matrix shape mismatch");
            yaw_ = yaw.cwiseMax(-angle_limit).cwiseMin(angle_limit);
            roll_ = roll.cwiseMax(-angle_limit).cwiseMin(angle_limit);
        }

        // Broadcast one (yaw, roll) pair to every element
        void set_uniform(Scalar yaw, Scalar roll)
        {
            yaw_.setConstant(std::clamp(yaw, -angle_limit, angle_limit));
            roll_.setConstant(std::clamp(roll, -angle_limit, angle_limit));
        }

        // Row 0 is the top row; column 0 lies toward -(up x normal)
        Vec3<Scalar> element_center(int i, int j) const
        {
            const Vec3<Scalar> horizontal = up_.cross(normal_);
            return center_ + horizontal * ((Scalar(j) - Scalar(cols_ - 1) / 2) * element_size_) +
                   up_ * ((Scalar(rows_ - 1) / 2 - Scalar(i)) * element_size_);
        }

        MirrorElement<Scalar> element(int i, int j) const
        {
            return {element_center(i, j), mirror_normal<Scalar>(yaw_(i, j), roll_(i, j), normal_, up_)};
        }

    private:
        Vec3<Scalar> center_;
        Vec3<Scalar> normal_;
        Vec3<Scalar> up_;
        int rows_, cols_;
        Scalar element_size_;
        MatX<Scalar> yaw_, roll_;
        MirrorOptics<Scalar> optics_;
    };

    template <typename Scalar>
    struct LcReceiverConfig
    {
        Scalar transmittance = Scalar(1);                 // tau in (0, 1]
        Scalar amplification = Scalar(1);                 // A_lc >= 1
        Scalar effective_fov = pi_v<Scalar> / Scalar(2); // [rad], <= pi/2

        void validate() const
        {
            if (!(transmittance > Scalar(0) && transmittance <= Scalar(1)))
                throw ValidationError("lc: transmittance must lie in (0, 1]");
            if (!(amplification >= Scalar(1)))
                throw ValidationError("lc: amplification must be >= 1");
            if (!(effective_fov > Scalar(0) && effective_fov <= pi_v<Scalar> / 2))
                throw ValidationError("lc: effective FoV must lie in (0, 90 deg]");
        }
    };

    // Incident-leg capture of one element: (m+1) A_m cos^m(Phi_1) cos(theta_1) / (2 pi d_1^2)
    template <typename Scalar>
    Scalar mirror_incident_capture(const LedTx<Scalar> &tx, const MirrorElement<Scalar> &e, Scalar element_area)
    {
        const Vec3<Scalar> v = e.center - tx.position;
        const Scalar d2 = v.squaredNorm();
        const Scalar d = std::sqrt(d2);
        const Scalar cos_irr = tx.normal.dot(v) / d;
        const Scalar cos_inc = -e.normal.dot(v) / d;
        if (cos_irr <= Scalar(0) || cos_inc <= Scalar(0))
            return Scalar(0);
        const Scalar m = lambertian_index(tx.half_intensity_angle);
        return (m + 1) * element_area / (2 * pi_v<Scalar> * d2) * std::pow(cos_irr, m) * cos_inc;
    }

    // Gaussian directivity lobe [1/sr] at angular offset psi from the specular direction
    template <typename Scalar>
    Scalar specular_lobe(Scalar psi, Scalar beam_spread)
    {
        const Scalar s2 = beam_spread * beam_spread;
        return std::exp(-psi * psi / (2 * s2)) / (2 * pi_v<Scalar> * s2);
    }

    template <typename Scalar>
    ChannelGain<Scalar> mirror_element_gain(const LedTx<Scalar> &tx, const MirrorElement<Scalar> &e,
                                            const MirrorOptics<Scalar> &optics, const PdRx<Scalar> &rx,
                                            std::span<const CylinderBlocker<Scalar>> blockers = {})
    {
        ChannelGain<Scalar> out{Scalar(0), PathKind::RisNLoS};
        if (optics.reflectivity == Scalar(0))
            return out;
        const Scalar capture = mirror_incident_capture(tx, e, optics.area);
        if (capture == Scalar(0))
            return out;

        const Vec3<Scalar> v2 = rx.position - e.center;
        const Scalar d2sq = v2.squaredNorm();
        const Vec3<Scalar> u2 = v2 / std::sqrt(d2sq);
        if (e.normal.dot(u2) <= Scalar(0))
            return out;
        const Scalar rxf = detail::receiver_factor<Scalar>(rx, -u2, std::cos(rx.fov));
        if (rxf == Scalar(0))
            return out;

        const Vec3<Scalar> reflected = specular_reflect<Scalar>((e.center - tx.position).normalized(), e.normal);
        const Scalar psi = angle_between<Scalar>(reflected, u2);
        const Scalar lobe = specular_lobe(psi, optics.beam_spread);
        if (lobe == Scalar(0))
            return out;
        if (!los_visible<Scalar>(tx.position, e.center, blockers) || !los_visible<Scalar>(e.center, rx.position, blockers))
            return out;

        out.h = optics.reflectivity * capture * lobe / d2sq * rxf;
        return out;
    }

    template <typename Scalar>
    ChannelGain<Scalar> array_gain(const LedTx<Scalar> &tx, const MirrorArray<Scalar> &array, const PdRx<Scalar> &rx,
                                   std::span<const CylinderBlocker<Scalar>> blockers = {})
    {
        Scalar h = Scalar(0);
        for (int i = 0; i < array.rows(); ++i)
            for (int j = 0; j < array.cols(); ++j)
                h += mirror_element_gain<Scalar>(tx, array.element(i, j), array.optics(), rx, blockers).h;
        return {h, PathKind::RisNLoS};
    }

    template <typename Scalar>
    ChannelGain<Scalar> apply_lc_receiver_gain(const ChannelGain<Scalar> &g, const LcReceiverConfig<Scalar> &cfg,
                                               Scalar incidence)
    {
        if (incidence > cfg.effective_fov)
            return {Scalar(0), g.kind};
        return {g.h * cfg.transmittance * cfg.amplification, g.kind};
    }

} // namespace risvlc
