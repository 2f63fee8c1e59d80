// SPDX-License-Identifier: Apache-2.0
//
// mimosec: secrecy rate regions for the two-user MIMO Gaussian broadcast channel
// Copyright (C) 2026 The mimosec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

///
/// \file miso.hpp
///
/// Single-antenna receivers, y1 = h^H x + z1 and y2 = g^H x + z2. Here the
/// secrecy capacity region under Tr(Q) <= Pt has a closed form: for a split
/// alpha the optimal constraint is S_Q = alpha Pt e1 e1^H + (1 - alpha) Pt e2 e2^H
/// with
///
///   e1  principal generalized eigenvector of (I + Pt h h^H, I + Pt g g^H),
///   C1  = log (1 + alpha Pt |e1^H h|^2) / (1 + alpha Pt |e1^H g|^2),
///   C2  = log of the largest generalized eigenvalue of
///         (I + k_g g g^H, I + k_h h h^H),  k_x = (1 - alpha) Pt / (1 + alpha Pt |e1^H x|^2),
///   e2  the matching unit eigenvector.
///
/// Linear precoding on S_Q loses log(1 + |n|^2) per user, where n is the
/// scalar loss term built from the two pencil eigenvectors c1, c2 of S_Q.
///

#ifndef MIMOSEC_MISO_HPP
#define MIMOSEC_MISO_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include <mimosec/avgpower.hpp>
#include <mimosec/matrixkit.hpp>
#include <mimosec/sdpc.hpp>

namespace mimosec
{

struct MisoChannel
{
    CVector h; ///< y1 = h^H x + z1
    CVector g; ///< y2 = g^H x + z2

    MisoChannel() = default;
    MisoChannel(CVector h_, CVector g_) : h(std::move(h_)), g(std::move(g_))
    {
        if (h.size() != g.size())
            throw Error(Errc::DimensionMismatch, "MisoChannel");
        if (h.size() == 0)
            throw Error(Errc::InvalidArgument, "MisoChannel", "no transmit antennas");
        if (h.norm() == 0.0 && g.norm() == 0.0)
            throw Error(Errc::ZeroChannel, "MisoChannel");
    }

    /// Requires single-row H and G.
    static MisoChannel from_channel(const Channel &ch)
    {
        if (ch.H.rows() != 1 || ch.G.rows() != 1)
            throw Error(Errc::InvalidArgument, "MisoChannel", "receivers must have one antenna");
        return MisoChannel(ch.H.row(0).adjoint(), ch.G.row(0).adjoint());
    }

    Index nt() const { return h.size(); }
    Channel channel() const { return Channel(h.adjoint(), g.adjoint()); }
};

/// One alpha of the MISO region. Rates in nats.
struct MisoRegionPoint
{
    double alpha = 0.0;
    double cap1 = 0.0;   ///< C1, S-DPC capacity of user 1
    double cap2 = 0.0;   ///< C2
    double rate1 = 0.0;  ///< R1, linear precoding
    double rate2 = 0.0;  ///< R2
    double loss = 0.0;   ///< log(1 + |n|^2), charged to each user
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    CVector e1;          ///< nt, unit norm
    CVector e2;          ///< nt, unit norm
    CMatrix s_q;         ///< nt x nt, trace Pt
    bool linear_done = false;
};

namespace detail
{
/// Scales v so that its largest-magnitude entry is real and positive.
inline CVector canonical_phase(const CVector &v)
{
    if (v.size() == 0)
        return v;
    Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    if (std::abs(v(k)) == 0.0)
        return v;
    return v * (std::conj(v(k)) / std::abs(v(k)));
}

inline CVector principal_direction(const CMatrix &a, const CMatrix &b)
{
    const GevdResult ge = gevd_definite(a, b);
    const CVector c = ge.vectors.col(0);
    return canonical_phase(c / c.norm());
}

/// The channel restricted to span{h, g}, at most two dimensional.
struct MisoReduction
{
    CMatrix basis; ///< nt x d orthonormal
    CVector h;     ///< d
    CVector g;     ///< d
    double pt = 0.0;
    CVector e1;    ///< d
    CVector f1;    ///< d, principal direction with the roles swapped
};

inline MisoReduction reduce(const MisoChannel &ch, double pt)
{
    if (!(pt > 0.0) || !std::isfinite(pt))
        throw Error(Errc::InvalidArgument, "miso", "power must be positive");
    MisoReduction r;
    const CMatrix k = ch.h * ch.h.adjoint() + ch.g * ch.g.adjoint();
    r.basis = psd_range(hermitian_part(k)).basis;
    r.h = r.basis.adjoint() * ch.h;
    r.g = r.basis.adjoint() * ch.g;
    r.pt = pt;
    const Index d = r.basis.cols();
    const CMatrix id = CMatrix::Identity(d, d);
    const CMatrix ah = id + pt * r.h * r.h.adjoint();
    const CMatrix ag = id + pt * r.g * r.g.adjoint();
    r.e1 = principal_direction(ah, ag);
    r.f1 = principal_direction(ag, ah);
    return r;
}

inline MisoRegionPoint capacity_point(const MisoReduction &r, double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw Error(Errc::InvalidArgument, "miso_capacity_point", "alpha outside [0, 1]");
    const Index d = r.basis.cols();
    const CMatrix id = CMatrix::Identity(d, d);
    const double eh = std::norm(r.e1.dot(r.h));
    const double eg = std::norm(r.e1.dot(r.g));
    const double p1 = alpha * r.pt;
    const double p2 = (1.0 - alpha) * r.pt;

    MisoRegionPoint out;
    out.alpha = alpha;
    out.gamma1 = (1.0 + p1 * eh) / (1.0 + p1 * eg);
    const double kg = p2 / (1.0 + p1 * eg);
    const double kh = p2 / (1.0 + p1 * eh);
    const GevdResult ge = gevd_definite(id + kg * r.g * r.g.adjoint(), id + kh * r.h * r.h.adjoint());
    out.gamma2 = ge.values(0);
    const CVector e2 = canonical_phase(ge.vectors.col(0) / ge.vectors.col(0).norm());

    out.cap1 = std::max(0.0, std::log(out.gamma1));
    out.cap2 = std::max(0.0, std::log(out.gamma2));
    out.e1 = r.basis * r.e1;
    out.e2 = r.basis * e2;
    const CMatrix sq = p1 * r.e1 * r.e1.adjoint() + p2 * e2 * e2.adjoint();
    out.s_q = hermitian_part(r.basis * sq * r.basis.adjoint());
    return out;
}

/// Fills rate1, rate2 and loss of a capacity point.
inline void linear_point(const MisoReduction &r, MisoRegionPoint &pt)
{
    pt.linear_done = true;
    pt.loss = 0.0;
    const Index d = r.basis.cols();
    const CMatrix sq = hermitian_part(r.basis.adjoint() * pt.s_q * r.basis);
    const RangeBasis range = psd_range(sq);

    // A rank-one S_Q carries a single message, and when one capacity is zero
    // only the other user transmits; neither case has interference to pay for.
    const double tie = unit_tie_tolerance(std::max(pt.gamma1, pt.gamma2));
    const bool one_message = pt.gamma1 <= 1.0 + tie || pt.gamma2 <= 1.0 + tie;
    if (range.basis.cols() < d || d < 2 || one_message)
    {
        pt.rate1 = pt.cap1;
        pt.rate2 = pt.cap2;
        return;
    }

    const CMatrix inv = psd_pinv(sq);
    const CMatrix inv_sqrt = psd_inv_sqrt(sq);
    const CMatrix gg = r.g * r.g.adjoint();
    const auto scaled = [&](const CVector &v) -> CVector {
        const double norm2 = (v.adjoint() * (inv + gg) * v)(0, 0).real();
        return inv_sqrt * v / std::sqrt(norm2);
    };
    const CVector c1 = scaled(r.e1);
    const CVector c2 = scaled(r.f1);

    const CMatrix p1_perp = projector_complement(c1);
    const CMatrix p2_perp = projector_complement(c2);
    const double denom = (c2.adjoint() * p1_perp * c2)(0, 0).real();
    const Complex numer = (c1.adjoint() * p2_perp * p1_perp * c2)(0, 0);
    pt.loss = std::log1p(std::norm(numer) / (denom * denom));
    pt.rate1 = std::max(0.0, pt.cap1 - pt.loss);
    pt.rate2 = std::max(0.0, pt.cap2 - pt.loss);
}
} // namespace detail

/// Capacity corner (C1, C2) for the split alpha, with e1, e2 and S_Q.
inline MisoRegionPoint miso_capacity_point(const MisoChannel &ch, double pt, double alpha)
{
    return detail::capacity_point(detail::reduce(ch, pt), alpha);
}

/// Linear precoding rates (R1, R2) for a capacity point of the same channel and power.
inline MisoRegionPoint miso_linear_point(const MisoChannel &ch, double pt, MisoRegionPoint point)
{
    detail::linear_point(detail::reduce(ch, pt), point);
    return point;
}

inline std::vector<MisoRegionPoint> miso_region(const MisoChannel &ch, double pt, Index grid_points = default_alpha_grid)
{
    const detail::MisoReduction r = detail::reduce(ch, pt);
    std::vector<MisoRegionPoint> out;
    for (double alpha : alpha_grid(grid_points))
    {
        out.push_back(detail::capacity_point(r, alpha));
        detail::linear_point(r, out.back());
    }
    return out;
}

} // namespace mimosec

#endif
