// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------

#include <risvlc/orientation.hpp>

namespace risvlc
{
    void OrientationModel::validate() const
    {
        if (!(std_polar >= 0.0) || !std::isfinite(std_polar))
            throw ValidationError("orientation: std_polar must be >= 0");
        if (!(lower < upper) || lower < 0.0 || upper > pi_v<double> / 2)
            throw ValidationError("orientation: truncation window must lie inside [0, pi/2]");
        if (!(mean_polar >= lower && mean_polar <= upper))
            throw ValidationError("orientation: mean_polar outside truncation window");
    }

    double laplace_inverse_cdf(double u, double mu, double b)
    {
        if (!(u > 0.0 && u < 1.0))
            throw DomainError("laplace_inverse_cdf: u must lie in (0, 1)");
        if (!(b > 0.0))
            throw DomainError("laplace_inverse_cdf: scale must be positive");
        const double c = u - 0.5;
        const double sign = (c > 0.0) - (c < 0.0);
        return mu - b * sign * std::log1p(-2.0 * std::abs(c));
    }

    DeviceOrientation<double> sample_orientation(const OrientationModel &model, Rng &rng)
    {
        DeviceOrientation<double> o;
        if (model.std_polar == 0.0)
            o.polar = model.mean_polar;
        else
        {
            // Rejection against the truncation window; acceptance is ~0.99 for the defaults
            const double b = model.scale();
            do
                o.polar = laplace_inverse_cdf(rng.uniform_open01(), model.mean_polar, b);
            while (o.polar < model.lower || o.polar > model.upper);
        }
        o.azimuth = rng.uniform(-pi_v<double>, pi_v<double>);
        return o;
    }

} // namespace risvlc
