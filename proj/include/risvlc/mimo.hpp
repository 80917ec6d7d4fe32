// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------
//
// RIS-assisted MIMO optical wireless channel with L sources, QN RIS elements
// and P detectors. Shapes used throughout:
//   H   : QN x L  (source -> RIS, so that y_ris = H x)
//   Phi : QN      (diagonal reflection coefficients in [0, 1])
//   G   : QN x P  (RIS -> detector)
//   HH  = G^T diag(Phi) H : P x L

#pragma once

#include <risvlc/metrics.hpp>
#include <risvlc/types.hpp>

#include <Eigen/QR>

#include <optional>
#include <string>

namespace risvlc
{
    template <typename Scalar>
    struct MimoChannel
    {
        MatX<Scalar> source_to_ris;   // H
        VecX<Scalar> ris_coefficients; // diagonal of Phi
        MatX<Scalar> ris_to_detector; // G

        Eigen::Index sources() const { return source_to_ris.cols(); }
        Eigen::Index ris_elements() const { return source_to_ris.rows(); }
        Eigen::Index detectors() const { return ris_to_detector.cols(); }
    };

    template <typename Scalar>
    MatX<Scalar> assemble_channel(const MatX<Scalar> &G, const VecX<Scalar> &phi, const MatX<Scalar> &H)
    {
        if (G.rows() != phi.size() || H.rows() != phi.size())
            throw DimensionError("assemble_channel: G, Phi and H disagree on the number of RIS elements");
        if ((G.array() < Scalar(0)).any() || (H.array() < Scalar(0)).any())
            throw ValidationError("assemble_channel: intensity channel gains must be nonnegative");
        if ((phi.array() < Scalar(0)).any() || (phi.array() > Scalar(1)).any())
            throw ValidationError("assemble_channel: RIS coefficients must lie in [0, 1]");
        return G.transpose() * phi.asDiagonal() * H;
    }

    // Full Phi matrix form; off-diagonal entries must be zero
    template <typename Scalar>
    MatX<Scalar> assemble_channel(const MatX<Scalar> &G, const MatX<Scalar> &Phi, const MatX<Scalar> &H)
    {
        if (Phi.rows() != Phi.cols())
            throw DimensionError("assemble_channel: Phi must be square");
        MatX<Scalar> off = Phi;
        off.diagonal().setZero();
        if (!off.isZero(Scalar(0)))
            throw ValidationError("assemble_channel: Phi must be diagonal");
        return assemble_channel<Scalar>(G, VecX<Scalar>(Phi.diagonal()), H);
    }

    template <typename Scalar>
    MatX<Scalar> assemble_channel(const MimoChannel<Scalar> &ch)
    {
        return assemble_channel<Scalar>(ch.ris_to_detector, ch.ris_coefficients, ch.source_to_ris);
    }

    // x: L x T intensity samples (one row per source). Checks 0 <= x <= X entrywise
    // and that the per-source time averages sum to at most p_o.
    template <typename Scalar>
    std::optional<Violation> check_intensity_constraints(const MatX<Scalar> &x, const IntensityConstraints<Scalar> &c)
    {
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            for (Eigen::Index t = 0; t < x.cols(); ++t)
            {
                if (x(i, t) < Scalar(0))
                    return Violation{"non-negativity violated at source " + std::to_string(i), long(i)};
                if (x(i, t) > c.peak)
                    return Violation{"peak intensity exceeded at source " + std::to_string(i), long(i)};
            }
        if (x.cols() > 0 && x.rowwise().mean().sum() > c.average_total)
            return Violation{"total average optical power exceeds p_o", -1};
        return std::nullopt;
    }

    template <typename Scalar>
    std::optional<Violation> check_intensity_constraints(const VecX<Scalar> &x, const IntensityConstraints<Scalar> &c)
    {
        return check_intensity_constraints<Scalar>(MatX<Scalar>(x), c);
    }

    // Non-overlapping beams: sum of independent SISO bounds [bits/channel use]
    template <typename Scalar>
    Scalar parallel_capacity(const VecX<Scalar> &gains, const IntensityConstraints<Scalar> &c, Scalar noise_variance)
    {
        if ((gains.array() < Scalar(0)).any())
            throw ValidationError("parallel_capacity: gains must be nonnegative");
        Scalar total = Scalar(0);
        for (Eigen::Index i = 0; i < gains.size(); ++i)
            total += siso_capacity(gains[i], c.peak, noise_variance);
        return total;
    }

    // Householder QR with the triangular factor's diagonal made nonnegative
    template <typename Scalar>
    struct TriangularFactor
    {
        MatX<Scalar> Q;
        MatX<Scalar> R;
    };

    template <typename Scalar>
    TriangularFactor<Scalar> nonnegative_qr(const MatX<Scalar> &A)
    {
        Eigen::HouseholderQR<MatX<Scalar>> qr(A);
        MatX<Scalar> Q = qr.householderQ() * MatX<Scalar>::Identity(A.rows(), A.rows());
        MatX<Scalar> R = qr.matrixQR().template triangularView<Eigen::Upper>();
        const Eigen::Index k = std::min(A.rows(), A.cols());
        for (Eigen::Index i = 0; i < k; ++i)
            if (R(i, i) < Scalar(0))
            {
                R.row(i) *= Scalar(-1);
                Q.col(i) *= Scalar(-1);
            }
        return {Q, R};
    }

    // Overlapping beams, regime p_o / X >= L/2 [bits/channel use]
    template <typename Scalar>
    Scalar qr_capacity(const MatX<Scalar> &HH, const IntensityConstraints<Scalar> &c, Scalar noise_variance)
    {
        if ((HH.array() < Scalar(0)).any())
            throw ValidationError("qr_capacity: channel matrix must be nonnegative");
        const auto L = Scalar(HH.cols());
        if (c.average_total / c.peak < L / Scalar(2))
            throw RegimeError("qr_capacity: only the regime p_o / X >= L/2 is supported");
        if (HH.size() == 0)
            return Scalar(0);
        const auto f = nonnegative_qr<Scalar>(HH);
        return parallel_capacity<Scalar>(VecX<Scalar>(f.R.diagonal()), c, noise_variance);
    }

    // Overlap flag selects between the two bounds
    template <typename Scalar>
    Scalar mimo_capacity(const MatX<Scalar> &HH, bool beams_overlap, const IntensityConstraints<Scalar> &c,
                         Scalar noise_variance)
    {
        if (beams_overlap)
            return qr_capacity<Scalar>(HH, c, noise_variance);
        return parallel_capacity<Scalar>(VecX<Scalar>(HH.diagonal()), c, noise_variance);
    }

} // namespace risvlc
