// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------
//
// Random orientation of a handheld receiver. The polar angle follows a Laplace
// law truncated to [0, pi/2]; the azimuth is uniform on [-pi, pi].

#pragma once

#include <risvlc/random.hpp>
#include <risvlc/types.hpp>

#include <cmath>

namespace risvlc
{
    template <typename Scalar>
    struct DeviceOrientation
    {
        Scalar polar = Scalar(0);   // tilt of the detector normal from +z [rad], in [0, pi/2]
        Scalar azimuth = Scalar(0); // azimuth of the detector normal [rad], in [-pi, pi]
    };

    // Unit detector normal (sin a cos b, sin a sin b, cos a)
    template <typename Scalar>
    Vec3<Scalar> device_normal(const DeviceOrientation<Scalar> &o)
    {
        const Scalar sa = std::sin(o.polar);
        return {sa * std::cos(o.azimuth), sa * std::sin(o.azimuth), std::cos(o.polar)};
    }

    struct OrientationModel
    {
        double mean_polar = deg2rad(41.0);
        double std_polar = deg2rad(9.0); // std of the untruncated Laplace; 0 gives a point mass
        double lower = 0.0;
        double upper = pi_v<double> / 2;

        // Laplace scale matching std_polar (std = b * sqrt(2))
        double scale() const { return std_polar / std::numbers::sqrt2; }

        void validate() const;
    };

    double laplace_inverse_cdf(double u, double mu, double b);

    DeviceOrientation<double> sample_orientation(const OrientationModel &model, Rng &rng);

} // namespace risvlc
