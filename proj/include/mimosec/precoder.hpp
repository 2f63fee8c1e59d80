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
/// \file precoder.hpp
///
/// Linear precoding x = v1 + v2 with independent Gaussian signals. When the
/// eigenvector blocks C1, C2 of the constraint pencil are orthogonal the pair
/// (S^{1/2} P_{C1} S^{1/2}, S^{1/2} P_{C2} S^{1/2}) reaches the S-DPC corner.
/// Otherwise (S^{1/2} P_{C2}^perp S^{1/2}, S^{1/2} P_{C2} S^{1/2}) loses exactly
/// log|I + N^H N| for each user, with
/// N = (C2^H P_{C1}^perp C2)^{-1} C2^H P_{C1}^perp P_{C2}^perp C1.
///

#ifndef MIMOSEC_PRECODER_HPP
#define MIMOSEC_PRECODER_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <mimosec/matrixkit.hpp>
#include <mimosec/sdpc.hpp>

namespace mimosec
{

/// Defect up to which optimal_precoders accepts a constraint as orthogonal.
inline constexpr double orthogonal_defect_threshold = 1e-6;

struct LinearPrecoderPair
{
    CMatrix cov_v1; ///< covariance of the signal carrying user 1's message
    CMatrix cov_v2; ///< covariance of the signal carrying user 2's message

    CMatrix total() const { return cov_v1 + cov_v2; }
};

struct LossReport
{
    CMatrix n_matrix;          ///< (nt-b) x b, in the coordinates of the solution basis
    double loss = 0.0;         ///< log|I + N^H N| in nats, charged to each user
    CornerPoint guaranteed;    ///< max(0, R_i* - loss)
    CornerPoint exact;         ///< rate_evaluate of the same precoders
    LinearPrecoderPair precoders;
};

/// Achieved secrecy rates of independent Gaussian signals with the given covariances:
///   R1 = log|I + H S H^H| - log|I + H V2 H^H| - log|I + G V1 G^H|,
///   R2 = log|I + G S G^H| - log|I + G V1 G^H| - log|I + H V2 H^H|,
/// with S = V1 + V2, each clamped at zero.
inline CornerPoint rate_evaluate(const Channel &ch, const LinearPrecoderPair &pair)
{
    const Index n = ch.nt();
    if (pair.cov_v1.rows() != n || pair.cov_v1.cols() != n || pair.cov_v2.rows() != n || pair.cov_v2.cols() != n)
        throw Error(Errc::DimensionMismatch, "rate_evaluate");
    const CMatrix total = pair.total();
    const double h_total = logdet_identity_plus(ch.H, total);
    const double g_total = logdet_identity_plus(ch.G, total);
    const double h_v2 = logdet_identity_plus(ch.H, pair.cov_v2);
    const double g_v1 = logdet_identity_plus(ch.G, pair.cov_v1);

    CornerPoint out;
    out.r1 = std::max(0.0, h_total - h_v2 - g_v1);
    out.r2 = std::max(0.0, g_total - g_v1 - h_v2);
    out.provenance = "linear";
    return out;
}

/// Precoders that attain the corner when C1^H C2 = 0. Throws NotOrthogonal otherwise.
inline LinearPrecoderPair optimal_precoders(const SdpcSolution &sol, const MatrixConstraint &s)
{
    const double defect = orthogonality_defect(sol);
    if (defect > orthogonal_defect_threshold)
        throw Error(Errc::NotOrthogonal, "optimal_precoders");

    const Index n = s.dim();
    const Index r = sol.gevd.dim();
    const Index b = sol.gevd.split;
    LinearPrecoderPair out;
    if (r == 0)
    {
        out.cov_v1 = CMatrix::Zero(n, n);
        out.cov_v2 = CMatrix::Zero(n, n);
        return out;
    }
    if (b == 0)
    {
        out.cov_v1 = CMatrix::Zero(n, n);
        out.cov_v2 = s.matrix();
        return out;
    }
    if (b == r)
    {
        out.cov_v1 = s.matrix();
        out.cov_v2 = CMatrix::Zero(n, n);
        return out;
    }
    out.cov_v1 = sol.kt_star;
    out.cov_v2 = hermitian_part(sol.lift(sol.sqrt_s * projector(sol.gevd.lower_vectors()) * sol.sqrt_s));
    return out;
}

/// N = (C2^H P_{C1}^perp C2)^{-1} C2^H P_{C1}^perp P_{C2}^perp C1.
inline CMatrix loss_matrix(const CMatrix &c1, const CMatrix &c2)
{
    const CMatrix p1_perp = projector_complement(c1);
    const CMatrix p2_perp = projector_complement(c2);
    const CMatrix lhs = hermitian_part(c2.adjoint() * p1_perp * c2);
    return lhs.ldlt().solve(c2.adjoint() * p1_perp * p2_perp * c1);
}

/// Bounded-loss precoders for an arbitrary constraint and their guaranteed and
/// exact rates. Throws DegeneratePartition when one block is empty.
inline LossReport loss_bounded_precoders(const Channel &ch, const SdpcSolution &sol, const MatrixConstraint &s)
{
    const Index r = sol.gevd.dim();
    const Index b = sol.gevd.split;
    if (b == 0 || b == r)
        throw Error(Errc::DegeneratePartition, "loss_bounded_precoders");
    if (s.dim() != sol.basis.rows() || s.dim() != ch.nt())
        throw Error(Errc::DimensionMismatch, "loss_bounded_precoders");

    const CMatrix c1 = sol.gevd.upper_vectors();
    const CMatrix c2 = sol.gevd.lower_vectors();
    const CMatrix p2 = projector(c2);
    const CMatrix p2_perp = CMatrix::Identity(r, r) - p2;

    LossReport out;
    out.precoders.cov_v1 = hermitian_part(sol.lift(sol.sqrt_s * p2_perp * sol.sqrt_s));
    out.precoders.cov_v2 = hermitian_part(sol.lift(sol.sqrt_s * p2 * sol.sqrt_s));
    out.n_matrix = loss_matrix(c1, c2);
    out.loss = logdet(CMatrix::Identity(b, b) + hermitian_part(out.n_matrix.adjoint() * out.n_matrix));

    out.guaranteed.r1 = std::max(0.0, sol.corner.r1 - out.loss);
    out.guaranteed.r2 = std::max(0.0, sol.corner.r2 - out.loss);
    out.guaranteed.provenance = "linear-guaranteed";
    out.exact = rate_evaluate(ch, out.precoders);
    out.exact.provenance = "linear-exact";
    return out;
}

/// Both sides of a log-determinant identity, in nats.
struct DeterminantIdentity
{
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;

    /// |det_lhs / det_rhs - 1|
    double relative_residual() const { return std::abs(std::expm1(lhs - rhs)); }
};

/// Determinant identities linking the precoder covariances to the pencil
/// eigenvectors. The `general_*` and `schur_*` entries hold for any constraint
/// with both blocks nonempty; the `orthogonal_*` entries only when C1^H C2 = 0.
inline std::vector<DeterminantIdentity> determinant_identities(const Channel &ch, const SdpcSolution &sol,
                                                               bool orthogonal)
{
    const Index r = sol.gevd.dim();
    const Index b = sol.gevd.split;
    if (b == 0 || b == r)
        throw Error(Errc::DegeneratePartition, "determinant_identities");

    const CMatrix hr = ch.H * sol.basis;
    const CMatrix gr = ch.G * sol.basis;
    const CMatrix c1 = sol.gevd.upper_vectors();
    const CMatrix c2 = sol.gevd.lower_vectors();
    const CMatrix p2 = projector(c2);
    const CMatrix p2_perp = CMatrix::Identity(r, r) - p2;
    const CMatrix p1_perp = projector_complement(c1);
    const auto gram = [](const CMatrix &x, const CMatrix &m) { return logdet(hermitian_part(x.adjoint() * m * x)); };
    const double log_l1 = detail::sum_log(sol.gevd.upper_values());
    const double log_l2 = detail::sum_log(sol.gevd.lower_values());
    const CMatrix id = CMatrix::Identity(r, r);
    const CMatrix n = loss_matrix(c1, c2);
    const double loss = logdet(CMatrix::Identity(b, b) + hermitian_part(n.adjoint() * n));
    const CMatrix cov2 = sol.sqrt_s * p2 * sol.sqrt_s;
    const CMatrix cov1 = sol.sqrt_s * p2_perp * sol.sqrt_s;
    const CMatrix c = sol.gevd.vectors;

    std::vector<DeterminantIdentity> out;
    out.push_back({"general_user2_signal_at_receiver1", logdet_identity_plus(hr, cov2), -gram(c2, id) + log_l2});
    out.push_back({"general_user1_signal_at_receiver2", logdet_identity_plus(gr, cov1), -gram(c1, p2_perp) + loss});
    out.push_back({"schur_split_first", gram(c, id), gram(c1, p2_perp) + gram(c2, id)});
    out.push_back({"schur_split_second", gram(c, id), gram(c2, p1_perp) + gram(c1, id)});
    if (orthogonal)
    {
        const CMatrix p1 = projector(c1);
        const CMatrix s = sol.sqrt_s * sol.sqrt_s;
        out.push_back({"orthogonal_complement_at_receiver1",
                       logdet_identity_plus(hr, sol.sqrt_s * (id - p1) * sol.sqrt_s), -gram(c2, id) + log_l2});
        out.push_back({"orthogonal_optimal_at_receiver2", logdet_identity_plus(gr, sol.sqrt_s * p1 * sol.sqrt_s),
                       -gram(c1, id)});
        out.push_back({"orthogonal_total_at_receiver1", logdet_identity_plus(hr, s),
                       -gram(c1, id) - gram(c2, id) + log_l1 + log_l2});
    }
    return out;
}

} // namespace mimosec

#endif
