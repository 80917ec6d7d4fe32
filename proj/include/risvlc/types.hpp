// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <numbers>
#include <stdexcept>
#include <string>

namespace risvlc
{
    template <typename Scalar>
    using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

    template <typename Scalar>
    using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

    template <typename Scalar>
    using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    template <typename Scalar>
    using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    template <typename Scalar>
    constexpr Scalar pi_v = std::numbers::pi_v<Scalar>;

    template <typename Scalar>
    constexpr Scalar deg2rad(Scalar deg) { return deg * pi_v<Scalar> / Scalar(180); }

    template <typename Scalar>
    constexpr Scalar rad2deg(Scalar rad) { return rad * Scalar(180) / pi_v<Scalar>; }

    // Input outside the mathematical domain of a closed-form expression
    struct DomainError : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    // A value record violates one of its invariants
    struct ValidationError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Malformed configuration document; message carries line/column or key path
    struct ParseError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // Matrix arguments that cannot be multiplied or factored together
    struct DimensionError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Capacity requested in an operating regime that has no implemented bound
    struct RegimeError : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    // Report produced by validators that return ok/violation instead of throwing
    struct Violation
    {
        std::string what;
        long index = -1; // offending element, -1 when not element-specific
    };

} // namespace risvlc
