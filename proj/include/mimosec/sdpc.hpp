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
/// \file sdpc.hpp
///
/// Secrecy capacity of the two-user broadcast channel y1 = H x + z1,
/// y2 = G x + z2 under a matrix power constraint E{xx^H} <= S.
///
/// The region is a rectangle whose corner is read off the generalized
/// eigenvalues of the pencil (S^{1/2} H^H H S^{1/2} + I, S^{1/2} G^H G S^{1/2} + I):
/// R1* is the sum of log-eigenvalues above one, R2* minus the sum of the
/// rest. The covariance achieving R1* is K_t* = S^{1/2} P_{C1} S^{1/2}, where
/// P_{C1} projects onto the eigenvectors of the eigenvalues above one.
///
/// All rates are in nats.
///

#ifndef MIMOSEC_SDPC_HPP
#define MIMOSEC_SDPC_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <mimosec/matrixkit.hpp>

namespace mimosec
{

inline constexpr double nats_per_bit = std::numbers::ln2;

inline double to_bits(double nats) { return nats / nats_per_bit; }

/// Two-receiver broadcast channel sharing one transmitter.
struct Channel
{
    CMatrix H; ///< m1 x nt, legitimate link of user 1
    CMatrix G; ///< m2 x nt, legitimate link of user 2

    Channel() = default;
    Channel(CMatrix h, CMatrix g) : H(std::move(h)), G(std::move(g))
    {
        if (H.cols() != G.cols())
            throw Error(Errc::DimensionMismatch, "Channel", "H and G column counts differ");
        if (H.cols() == 0)
            throw Error(Errc::InvalidArgument, "Channel", "no transmit antennas");
    }

    Index nt() const { return H.cols(); }
    CMatrix gram_h() const { return hermitian_part(H.adjoint() * H); }
    CMatrix gram_g() const { return hermitian_part(G.adjoint() * G); }
    Channel swapped() const { return Channel(G, H); }
};

/// Hermitian PSD bound on the transmit covariance.
class MatrixConstraint
{
  public:
    MatrixConstraint() = default;

    /// Validates symmetry and semidefiniteness; rounding noise below the PSD
    /// floor is removed.
    explicit MatrixConstraint(const CMatrix &s)
    {
        if (s.rows() != s.cols())
            throw Error(Errc::DimensionMismatch, "MatrixConstraint", "not square");
        if (!is_hermitian(s))
            throw Error(Errc::NonHermitian, "MatrixConstraint");
        const HermEig e = psd_eig(s, "MatrixConstraint");
        s_ = from_spectrum(e.vectors, e.values);
    }

    static MatrixConstraint scaled_identity(Index n, double power)
    {
        return MatrixConstraint(CMatrix::Identity(n, n) * Complex(power, 0.0));
    }

    const CMatrix &matrix() const { return s_; }
    Index dim() const { return s_.rows(); }
    double trace() const { return s_.trace().real(); }

  private:
    CMatrix s_;
};

/// Secrecy rate pair in nats, tagged with how it was produced.
struct CornerPoint
{
    double r1 = 0.0;
    double r2 = 0.0;
    std::optional<double> alpha;
    std::string provenance;
};

struct SdpcSolution
{
    GevdResult gevd;      ///< of the pencil, in the coordinates of `basis`
    CMatrix basis;        ///< nt x r orthonormal basis of range(S)
    CMatrix sqrt_s;       ///< r x r Hermitian square root of the constraint in that basis
    CMatrix kt_star;      ///< nt x nt optimal covariance of user 1's signal
    CornerPoint corner;
    bool reduced = false; ///< true when S was rank deficient and the problem was restricted to range(S)

    Index split() const { return gevd.split; }
    CMatrix lift(const CMatrix &x) const { return basis * x * basis.adjoint(); }
};

/// The pencil (S^{1/2} H^H H S^{1/2} + I, S^{1/2} G^H G S^{1/2} + I).
inline std::pair<CMatrix, CMatrix> build_pencil(const Channel &ch, const MatrixConstraint &s)
{
    if (s.dim() != ch.nt())
        throw Error(Errc::DimensionMismatch, "build_pencil");
    const CMatrix root = psd_sqrt(s.matrix());
    const Index n = ch.nt();
    const CMatrix hs = ch.H * root;
    const CMatrix gs = ch.G * root;
    return {hermitian_part(hs.adjoint() * hs) + CMatrix::Identity(n, n),
            hermitian_part(gs.adjoint() * gs) + CMatrix::Identity(n, n)};
}

/// log|I + H K H^H| - log|I + G K G^H|, the quantity K_t* maximizes.
inline double secrecy_objective(const Channel &ch, const CMatrix &k)
{
    return logdet_identity_plus(ch.H, k) - logdet_identity_plus(ch.G, k);
}

namespace detail
{
inline double sum_log(const RVector &v)
{
    double s = 0.0;
    for (Index i = 0; i < v.size(); ++i)
        s += std::log(v(i));
    return s;
}
} // namespace detail

/// S-DPC corner point and optimal covariance for a matrix power constraint.
/// A rank-deficient S is handled by restricting the channel to range(S).
inline SdpcSolution solve_matrix_constraint(const Channel &ch, const MatrixConstraint &s)
{
    const Index n = ch.nt();
    if (s.dim() != n)
        throw Error(Errc::DimensionMismatch, "solve_matrix_constraint");

    const HermEig es = psd_eig(s.matrix(), "solve_matrix_constraint");
    Index r = 0;
    if (es.values(0) > 0.0)
    {
        const double cutoff = tol::rank * es.values(0);
        while (r < n && es.values(r) > cutoff)
            ++r;
    }

    SdpcSolution sol;
    sol.reduced = r < n;
    sol.corner.provenance = "sdpc";
    if (r == n)
    {
        sol.basis = CMatrix::Identity(n, n);
        sol.sqrt_s = from_spectrum(es.vectors, es.values.cwiseSqrt());
    }
    else
    {
        sol.basis = es.vectors.leftCols(r);
        sol.sqrt_s = es.values.head(r).cwiseSqrt().cast<Complex>().asDiagonal();
    }

    if (r == 0)
    {
        sol.gevd = GevdResult{CMatrix(0, 0), RVector(0), 0};
        sol.kt_star = CMatrix::Zero(n, n);
        return sol;
    }

    const CMatrix hs = ch.H * sol.basis * sol.sqrt_s;
    const CMatrix gs = ch.G * sol.basis * sol.sqrt_s;
    const CMatrix a = hermitian_part(hs.adjoint() * hs) + CMatrix::Identity(r, r);
    const CMatrix b = hermitian_part(gs.adjoint() * gs) + CMatrix::Identity(r, r);
    sol.gevd = gevd_definite(a, b);

    const Index split = sol.gevd.split;
    if (split == 0)
        sol.kt_star = CMatrix::Zero(n, n);
    else if (split == r)
        sol.kt_star = s.matrix();
    else
        sol.kt_star = hermitian_part(sol.lift(sol.sqrt_s * projector(sol.gevd.upper_vectors()) * sol.sqrt_s));

    sol.corner.r1 = std::max(0.0, detail::sum_log(sol.gevd.upper_values()));
    sol.corner.r2 = std::max(0.0, -detail::sum_log(sol.gevd.lower_values()));
    return sol;
}

/// R2* written through the constraint and R1*:
/// log|G S G^H + I| - log|H S H^H + I| + R1*.
inline double second_corner_from_first(const Channel &ch, const MatrixConstraint &s, double r1)
{
    return logdet_identity_plus(ch.G, s.matrix()) - logdet_identity_plus(ch.H, s.matrix()) + r1;
}

/// ||C1^H C2||_F / (||C1||_F ||C2||_F); zero means linear precoding attains the corner.
inline double orthogonality_defect(const SdpcSolution &sol)
{
    const Index n = sol.gevd.dim();
    const Index b = sol.gevd.split;
    if (b == 0 || b == n)
        return 0.0;
    const CMatrix c1 = sol.gevd.upper_vectors();
    const CMatrix c2 = sol.gevd.lower_vectors();
    return (c1.adjoint() * c2).norm() / (c1.norm() * c2.norm());
}

struct RankBound
{
    Index upper_count = 0;     ///< b, eigenvalues above one
    Index positive_count = 0;  ///< m, positive eigenvalues of H^H H - G^H G
    Index lower_count = 0;     ///< eigenvalues strictly below one
    Index negative_count = 0;  ///< negative eigenvalues of H^H H - G^H G
    bool holds = false;        ///< b <= m and lower_count <= negative_count
};

/// The number of pencil eigenvalues above (below) one never exceeds the number
/// of positive (negative) eigenvalues of H^H H - G^H G.
inline RankBound rank_bound_check(const Channel &ch, const SdpcSolution &sol)
{
    const HermEig diff = herm_eig(ch.gram_h() - ch.gram_g());
    const double scale = diff.values.size() ? diff.values.cwiseAbs().maxCoeff() : 0.0;
    const double cutoff = tol::rank * scale;

    RankBound out;
    out.upper_count = sol.gevd.split;
    for (Index i = 0; i < diff.values.size(); ++i)
    {
        if (scale > 0.0 && diff.values(i) > cutoff)
            ++out.positive_count;
        if (scale > 0.0 && diff.values(i) < -cutoff)
            ++out.negative_count;
    }
    if (sol.gevd.dim() > 0)
    {
        const double eps = unit_tie_tolerance(sol.gevd.values(0));
        for (Index i = 0; i < sol.gevd.dim(); ++i)
            if (sol.gevd.values(i) < 1.0 - eps)
                ++out.lower_count;
    }
    out.holds = out.upper_count <= out.positive_count && out.lower_count <= out.negative_count;
    return out;
}

struct BlockDiagTest
{
    bool block_diagonal = false; ///< T^H H^H H T and T^H G^H G T share a nontrivial block structure, or need none
    Index split = 0;             ///< dimension of the user-1 block (blocks where T^H H^H H T dominates)
    bool ordering_ok = false;    ///< every block is ordered one way or the other
    std::vector<Index> permutation; ///< column order of T putting the user-1 block first

    bool satisfied() const { return block_diagonal && ordering_ok; }
};

/// Tests whether T simultaneously block diagonalizes H^H H and G^H G with the
/// user-1 block satisfying K_H1 >= K_G1 and the user-2 block K_H2 <= K_G2.
/// Blocks may appear in any column order of T; `permutation` reports the order
/// that makes them contiguous.
inline BlockDiagTest block_diag_test(const Channel &ch, const CMatrix &t, double tolerance = 1e-8)
{
    const Index n = ch.nt();
    if (t.rows() != n || t.cols() != n)
        throw Error(Errc::DimensionMismatch, "block_diag_test");

    const CMatrix kh = hermitian_part(t.adjoint() * ch.gram_h() * t);
    const CMatrix kg = hermitian_part(t.adjoint() * ch.gram_g() * t);
    const double scale_h = kh.norm();
    const double scale_g = kg.norm();

    // Connected components of the joint sparsity pattern.
    std::vector<Index> component(static_cast<std::size_t>(n), -1);
    Index n_components = 0;
    for (Index seed = 0; seed < n; ++seed)
    {
        if (component[static_cast<std::size_t>(seed)] >= 0)
            continue;
        std::vector<Index> stack{seed};
        component[static_cast<std::size_t>(seed)] = n_components;
        while (!stack.empty())
        {
            const Index i = stack.back();
            stack.pop_back();
            for (Index j = 0; j < n; ++j)
            {
                if (component[static_cast<std::size_t>(j)] >= 0)
                    continue;
                const bool coupled = std::abs(kh(i, j)) > tolerance * scale_h ||
                                     std::abs(kg(i, j)) > tolerance * scale_g;
                if (coupled)
                {
                    component[static_cast<std::size_t>(j)] = n_components;
                    stack.push_back(j);
                }
            }
        }
        ++n_components;
    }

    BlockDiagTest out;
    out.ordering_ok = true;
    std::vector<Index> first_block, second_block;
    const double scale = std::max(scale_h, scale_g);
    for (Index c = 0; c < n_components; ++c)
    {
        std::vector<Index> members;
        for (Index i = 0; i < n; ++i)
            if (component[static_cast<std::size_t>(i)] == c)
                members.push_back(i);
        const Index k = static_cast<Index>(members.size());
        CMatrix d(k, k);
        for (Index a = 0; a < k; ++a)
            for (Index b = 0; b < k; ++b)
            {
                const Index i = members[static_cast<std::size_t>(a)];
                const Index j = members[static_cast<std::size_t>(b)];
                d(a, b) = kh(i, j) - kg(i, j);
            }
        const HermEig ed = herm_eig(hermitian_part(d));
        const double slack = tolerance * (scale > 0.0 ? scale : 1.0);
        const bool favors_h = ed.values(k - 1) >= -slack && ed.values(0) > slack;
        const bool favors_g = ed.values(0) <= slack;
        if (favors_h)
            first_block.insert(first_block.end(), members.begin(), members.end());
        else if (favors_g)
            second_block.insert(second_block.end(), members.begin(), members.end());
        else
        {
            out.ordering_ok = false;
            second_block.insert(second_block.end(), members.begin(), members.end());
        }
    }

    out.split = static_cast<Index>(first_block.size());
    out.permutation = first_block;
    out.permutation.insert(out.permutation.end(), second_block.begin(), second_block.end());
    out.block_diagonal = n_components >= 2 || out.ordering_ok;
    return out;
}

} // namespace mimosec

#endif
