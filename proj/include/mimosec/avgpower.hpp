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
/// \file avgpower.hpp
///
/// Closed-form linear precoding under a total power constraint Tr(Q) <= Pt.
///
/// With W = (H^H H + G^H G)^{-1/2} the matrices W H^H H W and W G^H G W
/// commute and sum to the identity, so one unitary Phi diagonalizes both:
/// Sigma1 + Sigma2 = I. The transmit basis W Phi splits the channel into
/// parallel subchannels; those with sigma1 > sigma2 carry user 1's message
/// and the rest carry user 2's. Each user's power is then a secrecy
/// waterfilling problem
///
///     max sum_i log(1 + s_i p_i) - log(1 + w_i p_i)   s.t.  sum_i a_i p_i = budget,
///
/// solved by bisection on the Lagrange multiplier with a closed form per
/// subchannel. Sweeping the split alpha of Pt between the users traces the
/// achievable region.
///

#ifndef MIMOSEC_AVGPOWER_HPP
#define MIMOSEC_AVGPOWER_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include <mimosec/matrixkit.hpp>
#include <mimosec/region.hpp>
#include <mimosec/sdpc.hpp>

namespace mimosec
{

/// Difference below which two subchannel gains are treated as equal.
inline constexpr double subchannel_tie_tolerance = 1e-10;
/// sigma1 values closer than this are treated as one eigenspace.
inline constexpr double sigma_cluster_tolerance = 1e-8;

struct NullspaceReduction
{
    Channel channel; ///< (H U_p, G U_p)
    CMatrix basis;   ///< U_p, nt x r orthonormal basis of range(H^H H + G^H G)
};

/// Restricts the channel to range(H^H H + G^H G); a Pareto-optimal input
/// puts no power outside it.
inline NullspaceReduction reduce_nullspace(const Channel &ch)
{
    const CMatrix k = ch.gram_h() + ch.gram_g();
    if (max_abs(k) == 0.0)
        throw Error(Errc::ZeroChannel, "reduce_nullspace");
    RangeBasis range = psd_range(k);
    return {Channel(ch.H * range.basis, ch.G * range.basis), std::move(range.basis)};
}

struct DiagonalizedChannel
{
    CMatrix reduction; ///< U_p, nt x r
    CMatrix whitener;  ///< W in reduced coordinates, r x r
    CMatrix eigvecs;   ///< Phi_w, r x r unitary
    RVector sigma1;    ///< diag of Phi^H W H^H H W Phi, subchannels ordered by decreasing sigma1
    RVector sigma2;    ///< diag of Phi^H W G^H G W Phi
    RVector a;         ///< diag of Phi^H (H^H H + G^H G)^{-1} Phi
    Index rho = 0;     ///< number of subchannels with sigma1 > sigma2

    Index dim() const { return sigma1.size(); }

    /// W Phi lifted to the antenna domain, nt x r.
    CMatrix transmit_basis() const { return reduction * whitener * eigvecs; }

    RVector sigma1_user1() const { return sigma1.head(rho); }
    RVector sigma2_user1() const { return sigma2.head(rho); }
    RVector a_user1() const { return a.head(rho); }
    RVector sigma1_user2() const { return sigma1.tail(dim() - rho); }
    RVector sigma2_user2() const { return sigma2.tail(dim() - rho); }
    RVector a_user2() const { return a.tail(dim() - rho); }
};

inline DiagonalizedChannel diagonalize(const Channel &ch)
{
    const NullspaceReduction red = reduce_nullspace(ch);
    const Channel &eq = red.channel;
    const CMatrix gh = eq.gram_h();
    const CMatrix gg = eq.gram_g();

    DiagonalizedChannel dc;
    dc.reduction = red.basis;
    dc.whitener = psd_inv_sqrt(gh + gg);
    const CMatrix k1 = hermitian_part(dc.whitener * gh * dc.whitener);
    const CMatrix w2 = hermitian_part(dc.whitener * dc.whitener);
    const HermEig e1 = herm_eig(k1);
    CMatrix phi = e1.vectors;

    // Inside a cluster of equal sigma1 any basis diagonalizes both Gram
    // matrices. Pick the one that also diagonalizes the power weights.
    const Index r = phi.cols();
    for (Index lo = 0; lo < r;)
    {
        Index hi = lo + 1;
        while (hi < r && e1.values(hi - 1) - e1.values(hi) <= sigma_cluster_tolerance)
            ++hi;
        if (hi - lo > 1)
        {
            const CMatrix block = phi.middleCols(lo, hi - lo);
            const HermEig we = herm_eig(hermitian_part(block.adjoint() * w2 * block));
            phi.middleCols(lo, hi - lo) = block * we.vectors.rowwise().reverse();
        }
        lo = hi;
    }

    dc.eigvecs = phi;
    dc.sigma1 = (dc.eigvecs.adjoint() * k1 * dc.eigvecs).diagonal().real().cwiseMax(0.0);
    const CMatrix m2 = dc.eigvecs.adjoint() * dc.whitener * gg * dc.whitener * dc.eigvecs;
    dc.sigma2 = m2.diagonal().real().cwiseMax(0.0);
    dc.a = (dc.eigvecs.adjoint() * w2 * dc.eigvecs).diagonal().real();

    // Clusters come in descending sigma1, which puts every sigma1 > sigma2
    // subchannel ahead of the others.
    dc.rho = 0;
    while (dc.rho < dc.dim() && dc.sigma1(dc.rho) - dc.sigma2(dc.rho) > subchannel_tie_tolerance)
        ++dc.rho;
    return dc;
}

/// S_w = W Phi diag(p) Phi^H W in the antenna domain.
inline MatrixConstraint make_matrix_constraint(const DiagonalizedChannel &dc, const RVector &p)
{
    if (p.size() != dc.dim())
        throw Error(Errc::DimensionMismatch, "make_matrix_constraint");
    if (p.size() > 0 && p.minCoeff() < 0.0)
        throw Error(Errc::InvalidArgument, "make_matrix_constraint", "negative loading");
    const CMatrix t = dc.transmit_basis();
    return MatrixConstraint(hermitian_part(t * p.cast<Complex>().asDiagonal() * t.adjoint()));
}

/// T_w = W Phi diag(p)^{1/2}, so that S_w = T_w T_w^H.
inline CMatrix transmit_factor(const DiagonalizedChannel &dc, const RVector &p)
{
    return dc.transmit_basis() * p.cwiseSqrt().cast<Complex>().asDiagonal();
}

struct WaterfillResult
{
    RVector p;
    double mu = 0.0;
};

namespace detail
{
/// Positive root of s/(1+sp) - w/(1+wp) = mu a, written without the 1/(s w)
/// factor so that w -> 0 reduces smoothly to p = 1/(mu a) - 1/s.
inline double secrecy_level(double s, double w, double a, double mu)
{
    const double excess = (s - w) / (mu * a);
    if (!(excess > 1.0))
        return 0.0;
    const double disc = (s - w) * (s - w) + 4.0 * (s - w) * s * w / (mu * a);
    return 2.0 * (excess - 1.0) / (std::sqrt(disc) + s + w);
}

inline bool is_active(double s, double w)
{
    return s - w > subchannel_tie_tolerance * std::max(1.0, s);
}

inline void check_waterfill_inputs(const RVector &strong, const RVector &weak, const RVector &a, double budget,
                                   const char *op)
{
    if (strong.size() != weak.size() || strong.size() != a.size())
        throw Error(Errc::DimensionMismatch, op);
    if (!(budget >= 0.0) || !std::isfinite(budget))
        throw Error(Errc::InvalidArgument, op, "budget");
    for (Index i = 0; i < a.size(); ++i)
    {
        if (!(a(i) > 0.0))
            throw Error(Errc::InvalidArgument, op, "weights must be positive");
        if (weak(i) < 0.0 || strong(i) < weak(i) - subchannel_tie_tolerance * std::max(1.0, strong(i)))
            throw Error(Errc::InvalidArgument, op, "requires strong >= weak >= 0");
    }
}

/// Bisection in log(mu) on a nonincreasing power function, then an exact
/// rescale onto the budget to absorb the last ulp of mu.
template <class LevelFn>
WaterfillResult bisect_multiplier(const RVector &a, double budget, double mu_max, LevelFn level, const char *op)
{
    const Index n = a.size();
    auto evaluate = [&](double mu) {
        RVector p(n);
        for (Index i = 0; i < n; ++i)
            p(i) = level(i, mu);
        return p;
    };
    auto spent = [&](const RVector &p) { return a.dot(p); };

    double lo = 1e-18 * mu_max;
    for (int widen = 0; spent(evaluate(lo)) < budget; ++widen)
    {
        if (widen > 60 || lo == 0.0)
            throw Error(Errc::NoConvergence, op, "could not bracket the multiplier");
        lo *= 1e-6;
    }
    double hi = mu_max;
    for (int it = 0; it < 200; ++it)
    {
        const double mid = std::sqrt(lo * hi);
        if (!(mid > lo && mid < hi))
            break;
        if (spent(evaluate(mid)) >= budget)
            lo = mid;
        else
            hi = mid;
    }

    WaterfillResult out{evaluate(lo), lo};
    const double used = spent(out.p);
    if (used > 0.0)
        out.p *= budget / used;
    return out;
}
} // namespace detail

/// Secrecy waterfilling on subchannels with gains strong_i > weak_i >= 0 and
/// power weights a_i. Subchannels with strong_i == weak_i carry no secrecy
/// and receive no power. Throws NoStrongChannels when budget > 0 but no
/// subchannel can use it.
inline WaterfillResult waterfill(const RVector &strong, const RVector &weak, const RVector &a, double budget)
{
    detail::check_waterfill_inputs(strong, weak, a, budget, "waterfill");
    const Index n = strong.size();

    double mu_max = 0.0;
    for (Index i = 0; i < n; ++i)
        if (detail::is_active(strong(i), weak(i)))
            mu_max = std::max(mu_max, (strong(i) - weak(i)) / a(i));

    if (budget == 0.0)
        return {RVector::Zero(n), mu_max};
    if (mu_max == 0.0)
        throw Error(Errc::NoStrongChannels, "waterfill");

    return detail::bisect_multiplier(
        a, budget, mu_max,
        [&](Index i, double mu) {
            return detail::is_active(strong(i), weak(i)) ? detail::secrecy_level(strong(i), weak(i), a(i), mu) : 0.0;
        },
        "waterfill");
}

/// Large-budget form of the waterfilling levels,
/// p_i = sqrt((1/weak_i - 1/strong_i) / (mu a_i)).
/// Subchannels with weak_i = 0 have no square-root regime and keep the
/// exact level 1/(mu a_i) - 1/strong_i.
inline WaterfillResult waterfill_high_snr(const RVector &strong, const RVector &weak, const RVector &a, double budget)
{
    detail::check_waterfill_inputs(strong, weak, a, budget, "waterfill_high_snr");
    const Index n = strong.size();

    bool any_active = false;
    bool any_unguarded = false;
    double mu_max = 0.0;
    for (Index i = 0; i < n; ++i)
    {
        if (!detail::is_active(strong(i), weak(i)))
            continue;
        any_active = true;
        any_unguarded = any_unguarded || weak(i) == 0.0;
        mu_max = std::max(mu_max, (strong(i) - weak(i)) / a(i));
    }
    if (budget == 0.0)
        return {RVector::Zero(n), mu_max};
    if (!any_active)
        throw Error(Errc::NoStrongChannels, "waterfill_high_snr");

    auto gap = [&](Index i) { return 1.0 / weak(i) - 1.0 / strong(i); };

    if (!any_unguarded)
    {
        // sum_i a_i sqrt(c_i / (mu a_i)) = budget  =>  mu = (sum_i sqrt(a_i c_i) / budget)^2
        double root_sum = 0.0;
        for (Index i = 0; i < n; ++i)
            if (detail::is_active(strong(i), weak(i)))
                root_sum += std::sqrt(a(i) * gap(i));
        const double mu = (root_sum / budget) * (root_sum / budget);
        RVector p = RVector::Zero(n);
        for (Index i = 0; i < n; ++i)
            if (detail::is_active(strong(i), weak(i)))
                p(i) = std::sqrt(gap(i) / (mu * a(i)));
        return {p, mu};
    }

    // Mixed case: the square-root levels grow without bound as mu -> 0, so the
    // search starts from the largest multiplier any subchannel responds to.
    double mu_hi = mu_max;
    for (Index i = 0; i < n; ++i)
        if (detail::is_active(strong(i), weak(i)) && weak(i) > 0.0)
            mu_hi = std::max(mu_hi, gap(i) / a(i) * 1e6);
    return detail::bisect_multiplier(
        a, budget, mu_hi,
        [&](Index i, double mu) {
            if (!detail::is_active(strong(i), weak(i)))
                return 0.0;
            if (weak(i) == 0.0)
                return std::max(0.0, 1.0 / (mu * a(i)) - 1.0 / strong(i));
            return std::sqrt(gap(i) / (mu * a(i)));
        },
        "waterfill_high_snr");
}

struct PowerAllocation
{
    double alpha = 0.0;
    RVector p1;      ///< loadings of user 1's subchannels (length rho)
    RVector p2;      ///< loadings of user 2's subchannels (length r - rho)
    double mu1 = 0.0; ///< zero when user 1 has no usable subchannel
    double mu2 = 0.0;

    RVector stacked() const
    {
        RVector p(p1.size() + p2.size());
        p << p1, p2;
        return p;
    }
};

/// Splits Pt as (alpha Pt, (1 - alpha) Pt) and waterfills each user's block.
/// A user without a usable subchannel gets zero loadings and a zero rate.
inline PowerAllocation allocate(const DiagonalizedChannel &dc, double pt, double alpha)
{
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw Error(Errc::InvalidArgument, "allocate", "alpha outside [0, 1]");
    if (!(pt >= 0.0))
        throw Error(Errc::InvalidArgument, "allocate", "negative power");

    PowerAllocation out;
    out.alpha = alpha;
    const auto block = [](const RVector &strong, const RVector &weak, const RVector &a, double budget, RVector &p,
                          double &mu) {
        bool usable = false;
        for (Index i = 0; i < strong.size(); ++i)
            usable = usable || detail::is_active(strong(i), weak(i));
        if (!usable || budget == 0.0)
        {
            p = RVector::Zero(strong.size());
            mu = 0.0;
            return;
        }
        WaterfillResult wf = waterfill(strong, weak, a, budget);
        p = std::move(wf.p);
        mu = wf.mu;
    };
    block(dc.sigma1_user1(), dc.sigma2_user1(), dc.a_user1(), alpha * pt, out.p1, out.mu1);
    block(dc.sigma2_user2(), dc.sigma1_user2(), dc.a_user2(), (1.0 - alpha) * pt, out.p2, out.mu2);
    return out;
}

/// Corner of the rectangular region for S_w: each user's sum of per-subchannel
/// secrecy rates over its own block.
inline CornerPoint corner_rates(const DiagonalizedChannel &dc, const PowerAllocation &alloc)
{
    if (alloc.p1.size() != dc.rho || alloc.p2.size() != dc.dim() - dc.rho)
        throw Error(Errc::DimensionMismatch, "corner_rates");
    CornerPoint out;
    for (Index i = 0; i < dc.rho; ++i)
        out.r1 += std::log1p(dc.sigma1(i) * alloc.p1(i)) - std::log1p(dc.sigma2(i) * alloc.p1(i));
    for (Index j = 0; j < alloc.p2.size(); ++j)
    {
        const Index i = dc.rho + j;
        out.r2 += std::log1p(dc.sigma2(i) * alloc.p2(j)) - std::log1p(dc.sigma1(i) * alloc.p2(j));
    }
    out.r1 = std::max(0.0, out.r1);
    out.r2 = std::max(0.0, out.r2);
    out.alpha = alloc.alpha;
    out.provenance = "avgpower";
    return out;
}

inline constexpr Index default_alpha_grid = 101;

inline std::vector<double> alpha_grid(Index points)
{
    if (points < 2)
        throw Error(Errc::InvalidArgument, "alpha_grid", "need at least two points");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (Index k = 0; k < points; ++k)
        grid[static_cast<std::size_t>(k)] = static_cast<double>(k) / static_cast<double>(points - 1);
    grid.back() = 1.0;
    return grid;
}

struct RegionSweep
{
    std::vector<CornerPoint> points; ///< one per alpha, ascending
    std::vector<PowerAllocation> allocations;
    ParetoHull hull;
};

inline RegionSweep region_sweep(const DiagonalizedChannel &dc, double pt, Index grid_points = default_alpha_grid)
{
    if (!(pt > 0.0))
        throw Error(Errc::InvalidArgument, "region_sweep", "power must be positive");
    RegionSweep out;
    for (double alpha : alpha_grid(grid_points))
    {
        out.allocations.push_back(allocate(dc, pt, alpha));
        out.points.push_back(corner_rates(dc, out.allocations.back()));
    }
    out.hull = ParetoHull::of(out.points);
    return out;
}

inline RegionSweep region_sweep(const Channel &ch, double pt, Index grid_points = default_alpha_grid)
{
    return region_sweep(diagonalize(ch), pt, grid_points);
}

/// Point-to-point MIMO capacity of H under total power pt (classical waterfilling
/// over the eigenvalues of H^H H), in nats.
inline double waterfilling_capacity(const CMatrix &h, double pt)
{
    if (h.size() == 0 || max_abs(h) == 0.0 || pt <= 0.0)
        return 0.0;
    const HermEig e = herm_eig(hermitian_part(h.adjoint() * h));
    std::vector<double> gains;
    for (Index i = 0; i < e.values.size(); ++i)
        if (e.values(i) > tol::rank * e.values(0))
            gains.push_back(e.values(i));

    // Largest k whose water level clears the k-th inverse gain.
    double level = 0.0;
    std::size_t active = 0;
    double inv_sum = 0.0;
    for (std::size_t k = 0; k < gains.size(); ++k)
    {
        inv_sum += 1.0 / gains[k];
        const double candidate = (pt + inv_sum) / static_cast<double>(k + 1);
        if (candidate > 1.0 / gains[k])
        {
            level = candidate;
            active = k + 1;
        }
        else
            break;
    }
    double c = 0.0;
    for (std::size_t k = 0; k < active; ++k)
        c += std::log(gains[k] * level);
    return c;
}

struct P2pLimit
{
    double secrecy_rate = 0.0; ///< user-1 rate at alpha = 1 on (H, eps G), nats
    double capacity = 0.0;     ///< waterfilling capacity of H alone, nats
};

/// As the second receiver's channel fades the user-1 rate at alpha = 1
/// approaches the ordinary point-to-point capacity of H.
inline P2pLimit p2p_limit_check(const Channel &ch, double pt, double eps)
{
    P2pLimit out;
    out.capacity = waterfilling_capacity(ch.H, pt);
    const Channel scaled(ch.H, ch.G * Complex(eps, 0.0));
    if (max_abs(scaled.gram_h() + scaled.gram_g()) == 0.0)
        return out;
    const DiagonalizedChannel dc = diagonalize(scaled);
    out.secrecy_rate = corner_rates(dc, allocate(dc, pt, 1.0)).r1;
    return out;
}

} // namespace mimosec

#endif
