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

#include <catch_amalgamated.hpp>

#include <mimosec/matrixkit.hpp>

#include "support.hpp"

using namespace mimosec;
using Catch::Matchers::WithinAbs;
using testing::throws_code;

namespace
{
CMatrix diag(std::initializer_list<double> v)
{
    RVector d(static_cast<Index>(v.size()));
    Index i = 0;
    for (double x : v)
        d(i++) = x;
    return d.cast<Complex>().asDiagonal();
}
} // namespace

TEST_CASE("herm_eig of the identity is all ones with a unitary basis")
{
    const HermEig e = herm_eig(CMatrix::Identity(3, 3));
    CHECK(max_abs(e.values.cast<Complex>() - CVector::Ones(3)) < 1e-14);
    CHECK(max_abs(e.vectors.adjoint() * e.vectors - CMatrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("herm_eig sorts a diagonal spectrum descending")
{
    const HermEig e = herm_eig(diag({-1.0, 2.0}));
    CHECK_THAT(e.values(0), WithinAbs(2.0, 1e-14));
    CHECK_THAT(e.values(1), WithinAbs(-1.0, 1e-14));
}

TEST_CASE("herm_eig reconstructs random Gram matrices")
{
    Rng rng = substream(11, 0);
    for (int t = 0; t < 20; ++t)
    {
        const CMatrix b = complex_gaussian(6, 6, rng);
        const CMatrix a = b * b.adjoint();
        const HermEig e = herm_eig(a);
        CHECK(e.values.minCoeff() >= -1e-12 * e.values(0));
        const CMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
        CHECK(relative_residual(back, a) <= 1e-10);
        CHECK(max_abs(e.vectors.adjoint() * e.vectors - CMatrix::Identity(6, 6)) <= 1e-10);
    }
}

TEST_CASE("herm_eig rejects non-Hermitian input")
{
    CMatrix a(2, 2);
    a << 1.0, 2.0, 0.0, 1.0;
    CHECK(throws_code(Errc::NonHermitian, [&] { herm_eig(a); }));
}

TEST_CASE("psd_sqrt on simple and random inputs")
{
    CHECK(max_abs(psd_sqrt(CMatrix::Identity(3, 3)) - CMatrix::Identity(3, 3)) < 1e-14);
    CHECK(max_abs(psd_sqrt(diag({4.0, 9.0})) - diag({2.0, 3.0})) < 1e-14);
    Rng rng = substream(11, 1);
    for (int t = 0; t < 20; ++t)
    {
        const CMatrix b = complex_gaussian(5, 3, rng);
        const CMatrix a = b * b.adjoint(); // rank 3
        const CMatrix r = psd_sqrt(a);
        CHECK(relative_residual(r * r, a) <= 1e-9);
        CHECK(is_hermitian(r, 1e-12));
    }
}

TEST_CASE("psd_sqrt rejects clearly indefinite input")
{
    CHECK(throws_code(Errc::NotPositiveSemidefinite, [] { psd_sqrt(diag({1.0, -0.5})); }));
}

TEST_CASE("psd_inv_sqrt inverts on the range only")
{
    CHECK(max_abs(psd_inv_sqrt(diag({4.0, 1.0})) - diag({0.5, 1.0})) < 1e-14);

    const CMatrix singular = diag({4.0, 0.0});
    const CMatrix w = psd_inv_sqrt(singular);
    CHECK(max_abs(w - diag({0.5, 0.0})) < 1e-14);
    CHECK(max_abs(w * singular * w - diag({1.0, 0.0})) < 1e-14);

    Rng rng = substream(11, 2);
    for (int t = 0; t < 20; ++t)
    {
        const CMatrix a = testing::random_pd(4, rng);
        const CMatrix wi = psd_inv_sqrt(a);
        CHECK(max_abs(wi * a * wi - CMatrix::Identity(4, 4)) <= 1e-8);
    }
    CHECK(throws_code(Errc::ZeroMatrix, [] { psd_inv_sqrt(CMatrix::Zero(3, 3)); }));
}

TEST_CASE("gevd_definite on equal and diagonal pencils")
{
    const GevdResult eq = gevd_definite(CMatrix::Identity(3, 3), CMatrix::Identity(3, 3));
    CHECK(max_abs(eq.values.cast<Complex>() - CVector::Ones(3)) < 1e-14);
    CHECK(eq.split == 0);

    const GevdResult d = gevd_definite(diag({2.0, 1.0}), CMatrix::Identity(2, 2));
    CHECK_THAT(d.values(0), WithinAbs(2.0, 1e-14));
    CHECK_THAT(d.values(1), WithinAbs(1.0, 1e-14));
    CHECK(d.split == 1);
}

TEST_CASE("gevd_definite matches the brute-force eigenvalues of B^-1 A")
{
    Rng rng = substream(11, 3);
    for (int t = 0; t < 30; ++t)
    {
        const Index n = 1 + t % 8;
        const CMatrix a = testing::random_pd(n, rng);
        const CMatrix b = testing::random_pd(n, rng);
        const GevdResult g = gevd_definite(a, b);
        const std::vector<double> ref = testing::brute_force_pencil_eigenvalues(a, b);
        for (Index i = 0; i < n; ++i)
            CHECK(std::abs(g.values(i) - ref[static_cast<std::size_t>(i)]) <= 1e-8 * std::max(1.0, ref[0]));

        const CMatrix lam = g.values.cast<Complex>().asDiagonal();
        CHECK((g.vectors.adjoint() * a * g.vectors - lam).norm() / lam.norm() <= 1e-8);
        CHECK((g.vectors.adjoint() * b * g.vectors - CMatrix::Identity(n, n)).norm() <= 1e-8);

        Index above = 0;
        for (Index i = 0; i < n; ++i)
            above += g.values(i) > 1.0 + unit_tie_tolerance(g.values(0)) ? 1 : 0;
        CHECK(g.split == above);
    }
}

TEST_CASE("gevd_definite puts an eigenvalue of exactly one in the lower block")
{
    const GevdResult g = gevd_definite(diag({3.0, 1.0, 0.5}), CMatrix::Identity(3, 3));
    CHECK(g.split == 1);
    CHECK(g.lower_values().size() == 2);
}

TEST_CASE("gevd_definite requires definite components")
{
    CHECK(throws_code(Errc::NotPositiveDefinite,
                      [] { gevd_definite(diag({1.0, 0.0}), CMatrix::Identity(2, 2)); }));
    CHECK(throws_code(Errc::DimensionMismatch,
                      [] { gevd_definite(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)); }));
}

TEST_CASE("projector onto a basis column, the full space, and random subspaces")
{
    CMatrix e1 = CMatrix::Zero(3, 1);
    e1(0, 0) = 1.0;
    CHECK(max_abs(projector(e1) - diag({1.0, 0.0, 0.0})) < 1e-15);
    CHECK(max_abs(projector(CMatrix::Identity(3, 3)) - CMatrix::Identity(3, 3)) < 1e-14);
    CHECK(max_abs(projector_complement(CMatrix::Identity(3, 3))) < 1e-14);

    Rng rng = substream(11, 4);
    for (int t = 0; t < 20; ++t)
    {
        const Index n = 5;
        const Index k = 1 + t % 4;
        const CMatrix c = complex_gaussian(n, k, rng);
        const CMatrix p = projector(c);
        const CMatrix q = projector_complement(c);
        CHECK(max_abs(p * p - p) <= 1e-9);
        CHECK(max_abs(p * c - c) <= 1e-9 * std::max(1.0, max_abs(c)));
        CHECK(std::abs(p.trace().real() - static_cast<double>(k)) <= 1e-9);
        CHECK(max_abs(p + q - CMatrix::Identity(n, n)) <= 1e-15);
        CHECK(max_abs(p * q) <= 1e-9);
    }
}

TEST_CASE("projector rejects dependent columns")
{
    CMatrix c(3, 2);
    c << 1.0, 2.0, 1.0, 2.0, 0.0, 0.0;
    CHECK(throws_code(Errc::RankDeficient, [&] { projector(c); }));
}

TEST_CASE("logdet of simple and random matrices")
{
    CHECK_THAT(logdet(CMatrix::Identity(4, 4)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(logdet(diag({std::exp(1.0), std::exp(1.0)})), WithinAbs(2.0, 1e-14));
    Rng rng = substream(11, 5);
    for (int t = 0; t < 20; ++t)
    {
        const CMatrix a = testing::random_pd(6, rng);
        CHECK_THAT(logdet(a), WithinAbs(testing::lu_logdet(a), 1e-9));
    }
    CHECK(throws_code(Errc::NotPositiveDefinite, [] { logdet(diag({1.0, -1.0})); }));
}

TEST_CASE("logdet_identity_plus agrees with the determinant on the other side")
{
    Rng rng = substream(11, 6);
    const CMatrix m = complex_gaussian(2, 4, rng);
    const CMatrix x = testing::random_pd(4, rng);
    const CMatrix other = CMatrix::Identity(4, 4) + x * m.adjoint() * m;
    CHECK_THAT(logdet_identity_plus(m, x), WithinAbs(testing::lu_logdet(other), 1e-10));
}
