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
/// \file matrixkit.hpp
///
/// Dense complex linear algebra used by every rate formula: Hermitian
/// eigendecomposition, PSD square roots and pseudo-inverse square roots,
/// the reduction of a Hermitian-definite pencil to a standard eigenproblem,
/// orthogonal projectors and log-determinants.
///
/// The Hermitian eigensolver itself is Eigen's SelfAdjointEigenSolver; the
/// functions here add the ordering, tolerance and error conventions that the
/// rest of the library relies on.
///

#ifndef MIMOSEC_MATRIXKIT_HPP
#define MIMOSEC_MATRIXKIT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <mimosec/error.hpp>

namespace mimosec
{

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tol
{
/// Relative symmetry tolerance for matrices declared Hermitian.
inline constexpr double hermitian = 1e-12;
/// Relative eigenvalue threshold below which a direction is treated as null.
inline constexpr double rank = 1e-10;
/// Relative negative-eigenvalue slack accepted for PSD inputs before flooring.
inline constexpr double psd_floor = 1e-10;
/// Condition number above which a Gram matrix is treated as singular.
inline constexpr double gram_condition = 1e12;
} // namespace tol

inline double max_abs(const CMatrix &a)
{
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const CMatrix &a, double tolerance = tol::hermitian)
{
    if (a.rows() != a.cols())
        return false;
    if (a.size() == 0)
        return true;
    return max_abs(a - a.adjoint()) <= tolerance * (1.0 + max_abs(a));
}

inline CMatrix hermitian_part(const CMatrix &a)
{
    return 0.5 * (a + a.adjoint());
}

/// ||a - b||_F / ||b||_F, falling back to the absolute norm when b vanishes.
inline double relative_residual(const CMatrix &a, const CMatrix &b)
{
    const double denom = b.norm();
    const double diff = (a - b).norm();
    return denom > 0.0 ? diff / denom : diff;
}

struct HermEig
{
    RVector values;  ///< descending
    CMatrix vectors; ///< unitary, column i pairs with values(i)
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
/// Ties keep the solver's order, so the result is reproducible.
inline HermEig herm_eig(const CMatrix &a)
{
    if (!is_hermitian(a))
        throw Error(Errc::NonHermitian, "herm_eig");
    const Index n = a.rows();
    if (n == 0)
        return {RVector(0), CMatrix(0, 0)};

    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a));
    if (solver.info() != Eigen::Success)
        throw Error(Errc::NoConvergence, "herm_eig");

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    const RVector &ev = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return ev(i) > ev(j); });

    HermEig out{RVector(n), CMatrix(n, n)};
    for (Index k = 0; k < n; ++k)
    {
        out.values(k) = ev(order[static_cast<std::size_t>(k)]);
        out.vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

/// Checks that the spectrum is PSD within slack and floors small negatives at zero.
inline HermEig psd_eig(const CMatrix &a, const char *operation)
{
    HermEig e = herm_eig(a);
    if (e.values.size() == 0)
        return e;
    const double scale = e.values.cwiseAbs().maxCoeff();
    if (e.values.minCoeff() < -tol::psd_floor * scale)
        throw Error(Errc::NotPositiveSemidefinite, operation);
    e.values = e.values.cwiseMax(0.0);
    return e;
}

inline CMatrix from_spectrum(const CMatrix &vectors, const RVector &values)
{
    return hermitian_part(vectors * values.asDiagonal() * vectors.adjoint());
}

/// Hermitian PSD square root; negative rounding noise is floored at zero first.
inline CMatrix psd_sqrt(const CMatrix &a)
{
    const HermEig e = psd_eig(a, "psd_sqrt");
    return from_spectrum(e.vectors, e.values.cwiseSqrt());
}

/// Pseudo-inverse square root: eigenvalues at or below rank_tol * lambda_max are
/// excluded, so W A W is the orthogonal projector onto range(A).
inline CMatrix psd_inv_sqrt(const CMatrix &a, double rank_tol = tol::rank)
{
    const HermEig e = psd_eig(a, "psd_inv_sqrt");
    const Index n = e.values.size();
    if (n == 0 || e.values(0) <= 0.0)
        throw Error(Errc::ZeroMatrix, "psd_inv_sqrt");
    const double cutoff = rank_tol * e.values(0);
    RVector inv(n);
    for (Index i = 0; i < n; ++i)
        inv(i) = e.values(i) > cutoff ? 1.0 / std::sqrt(e.values(i)) : 0.0;
    return from_spectrum(e.vectors, inv);
}

/// Moore-Penrose inverse of a Hermitian PSD matrix with the same cutoff rule.
inline CMatrix psd_pinv(const CMatrix &a, double rank_tol = tol::rank)
{
    const HermEig e = psd_eig(a, "psd_pinv");
    const Index n = e.values.size();
    if (n == 0 || e.values(0) <= 0.0)
        throw Error(Errc::ZeroMatrix, "psd_pinv");
    const double cutoff = rank_tol * e.values(0);
    RVector inv(n);
    for (Index i = 0; i < n; ++i)
        inv(i) = e.values(i) > cutoff ? 1.0 / e.values(i) : 0.0;
    return from_spectrum(e.vectors, inv);
}

/// Orthonormal basis of range(A) for Hermitian PSD A, ordered by decreasing eigenvalue.
struct RangeBasis
{
    CMatrix basis;  ///< n x r, orthonormal columns
    RVector values; ///< the r retained eigenvalues
};

inline RangeBasis psd_range(const CMatrix &a, double rank_tol = tol::rank)
{
    const HermEig e = psd_eig(a, "psd_range");
    const Index n = e.values.size();
    Index r = 0;
    if (n > 0 && e.values(0) > 0.0)
    {
        const double cutoff = rank_tol * e.values(0);
        while (r < n && e.values(r) > cutoff)
            ++r;
    }
    return {e.vectors.leftCols(r), e.values.head(r)};
}

/// Tie tolerance for deciding whether a generalized eigenvalue exceeds one.
inline double unit_tie_tolerance(double lambda_max)
{
    return 1e-9 * (1.0 + lambda_max);
}

/// Generalized eigendecomposition of a Hermitian-definite pencil (A, B):
/// C^H A C = diag(values), C^H B C = I, values descending, and
/// split = number of values strictly above 1 + unit_tie_tolerance.
struct GevdResult
{
    CMatrix vectors;
    RVector values;
    Index split = 0;

    Index dim() const { return values.size(); }
    CMatrix upper_vectors() const { return vectors.leftCols(split); }
    CMatrix lower_vectors() const { return vectors.rightCols(dim() - split); }
    RVector upper_values() const { return values.head(split); }
    RVector lower_values() const { return values.tail(dim() - split); }
};

inline Index count_above_one(const RVector &descending)
{
    if (descending.size() == 0)
        return 0;
    const double eps = unit_tie_tolerance(descending(0));
    Index b = 0;
    while (b < descending.size() && descending(b) > 1.0 + eps)
        ++b;
    return b;
}

/// Reduces through B^{-1/2}: with B^{-1/2} A B^{-1/2} = Phi Sigma Phi^H, the
/// eigenvectors are C = B^{-1/2} Phi and the eigenvalues are Sigma.
inline GevdResult gevd_definite(const CMatrix &a, const CMatrix &b, double rank_tol = tol::rank)
{
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw Error(Errc::DimensionMismatch, "gevd_definite");
    const Index n = a.rows();
    if (n == 0)
        return {CMatrix(0, 0), RVector(0), 0};

    const HermEig eb = herm_eig(b);
    const HermEig ea = herm_eig(a);
    const double scale_b = std::max(std::abs(eb.values(0)), std::abs(eb.values(n - 1)));
    const double scale_a = std::max(std::abs(ea.values(0)), std::abs(ea.values(n - 1)));
    if (eb.values(n - 1) <= rank_tol * scale_b || eb.values(n - 1) <= 0.0)
        throw Error(Errc::NotPositiveDefinite, "gevd_definite", "second pencil component");
    if (ea.values(n - 1) <= rank_tol * scale_a || ea.values(n - 1) <= 0.0)
        throw Error(Errc::NotPositiveDefinite, "gevd_definite", "first pencil component");

    const CMatrix b_inv_sqrt = from_spectrum(eb.vectors, eb.values.cwiseSqrt().cwiseInverse());
    const HermEig reduced = herm_eig(hermitian_part(b_inv_sqrt * a * b_inv_sqrt));

    GevdResult out;
    out.vectors = b_inv_sqrt * reduced.vectors;
    out.values = reduced.values;
    out.split = count_above_one(out.values);
    return out;
}

/// log|A| in nats for Hermitian positive definite A.
inline double logdet(const CMatrix &a)
{
    if (a.rows() != a.cols())
        throw Error(Errc::DimensionMismatch, "logdet");
    if (a.size() == 0)
        return 0.0;
    Eigen::LLT<CMatrix> llt(hermitian_part(a));
    if (llt.info() != Eigen::Success)
        throw Error(Errc::NotPositiveDefinite, "logdet");
    const auto diag = llt.matrixLLT().diagonal();
    double sum = 0.0;
    for (Index i = 0; i < diag.size(); ++i)
    {
        const double d = diag(i).real();
        if (!(d > 0.0))
            throw Error(Errc::NotPositiveDefinite, "logdet");
        sum += std::log(d);
    }
    return 2.0 * sum;
}

/// log|I + M X M^H| for PSD X; the Hermitian form of log|I + X M^H M|.
inline double logdet_identity_plus(const CMatrix &m, const CMatrix &x)
{
    const CMatrix inner = m * x * m.adjoint();
    return logdet(CMatrix::Identity(inner.rows(), inner.cols()) + hermitian_part(inner));
}

/// Orthogonal projector onto span(C) for full column rank C.
inline CMatrix projector(const CMatrix &c)
{
    const Index n = c.rows();
    if (c.cols() == 0)
        return CMatrix::Zero(n, n);
    const CMatrix gram = hermitian_part(c.adjoint() * c);
    const HermEig eg = herm_eig(gram);
    const double lmax = eg.values(0);
    const double lmin = eg.values(eg.values.size() - 1);
    if (!(lmax > 0.0) || !(lmin > 0.0) || lmax / lmin > tol::gram_condition)
        throw Error(Errc::RankDeficient, "projector");
    const CMatrix p = c * gram.ldlt().solve(c.adjoint());
    return hermitian_part(p);
}

inline CMatrix projector_complement(const CMatrix &c)
{
    return CMatrix::Identity(c.rows(), c.rows()) - projector(c);
}

} // namespace mimosec

#endif
