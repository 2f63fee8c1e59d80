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

#include <mimosec/avgpower.hpp>
#include <mimosec/precoder.hpp>

#include "support.hpp"

using namespace mimosec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using testing::throws_code;

namespace
{
MatrixConstraint random_sw(const Channel &ch, Rng &rng)
{
    const DiagonalizedChannel dc = diagonalize(ch);
    RVector p(dc.dim());
    for (Index i = 0; i < p.size(); ++i)
        p(i) = uniform(rng, 0.0, 4.0);
    return make_matrix_constraint(dc, p);
}

CMatrix reference_random_constraint()
{
    CMatrix s(2, 2);
    s << Complex(5.2, 0), Complex(1.7, -2.1), Complex(1.7, 2.1), Complex(6.8, 0);
    return s;
}
} // namespace

TEST_CASE("rate_evaluate of silent precoders is zero")
{
    const LinearPrecoderPair pair{CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
    const CornerPoint c = rate_evaluate(testing::reference_channel(), pair);
    CHECK(c.r1 == 0.0);
    CHECK(c.r2 == 0.0);
}

TEST_CASE("optimal precoders with a zero constraint are silent")
{
    const SdpcSolution sol = solve_matrix_constraint(testing::reference_channel(), MatrixConstraint(CMatrix::Zero(2, 2)));
    const LinearPrecoderPair pair = optimal_precoders(sol, MatrixConstraint(CMatrix::Zero(2, 2)));
    CHECK(max_abs(pair.cov_v1) == 0.0);
    CHECK(max_abs(pair.cov_v2) == 0.0);
}

TEST_CASE("optimal precoders give everything to user 1 when every eigenvalue exceeds one")
{
    Rng rng = substream(31, 0);
    const CMatrix h = complex_gaussian(3, 3, rng);
    const Channel ch(h, CMatrix::Zero(1, 3));
    const MatrixConstraint s(testing::random_constraint(3, rng, 4.0));
    const SdpcSolution sol = solve_matrix_constraint(ch, s);
    REQUIRE(sol.split() == 3);
    const LinearPrecoderPair pair = optimal_precoders(sol, s);
    CHECK(max_abs(pair.cov_v1 - s.matrix()) < 1e-12);
    CHECK(max_abs(pair.cov_v2) == 0.0);
}

TEST_CASE("linear precoding attains the corner on average-power constraints")
{
    Rng rng = substream(31, 1);
    for (int t = 0; t < 40; ++t)
    {
        const Index n = 2 + t % 3;
        const Channel ch = testing::random_channel(1 + t % 3, 1 + (t + 1) % 3, n, rng);
        const MatrixConstraint s = random_sw(ch, rng);
        const SdpcSolution sol = solve_matrix_constraint(ch, s);
        CHECK(orthogonality_defect(sol) <= 1e-8);
        const LinearPrecoderPair pair = optimal_precoders(sol, s);
        CHECK(relative_residual(pair.total(), s.matrix()) <= 1e-9);
        const CornerPoint lin = rate_evaluate(ch, pair);
        CHECK_THAT(lin.r1, WithinAbs(sol.corner.r1, 1e-8));
        CHECK_THAT(lin.r2, WithinAbs(sol.corner.r2, 1e-8));
    }
}

TEST_CASE("optimal precoders refuse a non-orthogonal constraint")
{
    const MatrixConstraint s(reference_random_constraint());
    const SdpcSolution sol = solve_matrix_constraint(testing::reference_channel(), s);
    CHECK(throws_code(Errc::NotOrthogonal, [&] { optimal_precoders(sol, s); }));
}

TEST_CASE("bounded-loss precoders have no loss on orthogonal constraints")
{
    Rng rng = substream(31, 2);
    int tested = 0;
    for (int t = 0; t < 40; ++t)
    {
        const Channel ch = testing::random_channel(2, 2, 3, rng);
        const MatrixConstraint s = random_sw(ch, rng);
        const SdpcSolution sol = solve_matrix_constraint(ch, s);
        if (sol.split() == 0 || sol.split() == sol.gevd.dim())
            continue;
        ++tested;
        const LossReport lr = loss_bounded_precoders(ch, sol, s);
        CHECK(max_abs(lr.n_matrix) <= 1e-7);
        CHECK_THAT(lr.loss, WithinAbs(0.0, 1e-12));
        CHECK_THAT(lr.guaranteed.r1, WithinAbs(sol.corner.r1, 1e-12));
        CHECK_THAT(lr.exact.r1, WithinAbs(sol.corner.r1, 1e-8));
        CHECK_THAT(lr.exact.r2, WithinAbs(sol.corner.r2, 1e-8));
    }
    CHECK(tested > 10);
}

TEST_CASE("bounded-loss precoders on a generic constraint lose exactly the stated amount")
{
    const Channel ch = testing::reference_channel();
    const MatrixConstraint s(reference_random_constraint());
    const SdpcSolution sol = solve_matrix_constraint(ch, s);
    const LossReport lr = loss_bounded_precoders(ch, sol, s);
    CHECK(lr.loss > 0.0);
    CHECK(relative_residual(lr.precoders.total(), s.matrix()) <= 1e-9);
    if (lr.guaranteed.r1 > 0.0)
        CHECK_THAT(lr.exact.r1, WithinAbs(lr.guaranteed.r1, 1e-8));
    if (lr.guaranteed.r2 > 0.0)
        CHECK_THAT(lr.exact.r2, WithinAbs(lr.guaranteed.r2, 1e-8));
}

TEST_CASE("bounded-loss exact rates match the guarantee on random constraints")
{
    Rng rng = substream(31, 3);
    for (int t = 0; t < 60; ++t)
    {
        const Index n = 2 + t % 4;
        const Channel ch = testing::random_channel(1 + t % 4, 1 + (t / 4) % 4, n, rng);
        const MatrixConstraint s(testing::random_constraint(n, rng, 10.0));
        const SdpcSolution sol = solve_matrix_constraint(ch, s);
        if (sol.split() == 0 || sol.split() == sol.gevd.dim())
        {
            CHECK(throws_code(Errc::DegeneratePartition, [&] { loss_bounded_precoders(ch, sol, s); }));
            continue;
        }
        const LossReport lr = loss_bounded_precoders(ch, sol, s);
        CHECK(lr.loss >= 0.0);
        CHECK(lr.exact.r1 >= lr.guaranteed.r1 - 1e-8);
        CHECK(lr.exact.r2 >= lr.guaranteed.r2 - 1e-8);
        if (lr.guaranteed.r1 > 0.0)
            CHECK_THAT(lr.exact.r1, WithinAbs(lr.guaranteed.r1, 1e-8));
        if (lr.guaranteed.r2 > 0.0)
            CHECK_THAT(lr.exact.r2, WithinAbs(lr.guaranteed.r2, 1e-8));
    }
}

TEST_CASE("two-antenna loss reduces to the scalar formula")
{
    Rng rng = substream(31, 4);
    int tested = 0;
    for (int t = 0; t < 30; ++t)
    {
        const Channel ch = testing::random_channel(2, 2, 2, rng);
        const MatrixConstraint s(testing::random_constraint(2, rng, 8.0));
        const SdpcSolution sol = solve_matrix_constraint(ch, s);
        if (sol.split() != 1)
            continue;
        ++tested;
        const CVector c1 = sol.gevd.vectors.col(0);
        const CVector c2 = sol.gevd.vectors.col(1);
        // scalar projections written out by hand
        const auto perp = [](const CVector &c, const CVector &x) -> CVector { return x - c * (c.dot(x) / c.squaredNorm()); };
        const Complex n_scalar = c2.dot(perp(c1, perp(c2, c1))) / c2.dot(perp(c1, c2));
        const LossReport lr = loss_bounded_precoders(ch, sol, s);
        CHECK_THAT(lr.loss, WithinAbs(std::log1p(std::norm(n_scalar)), 1e-10));
    }
    CHECK(tested > 5);
}

TEST_CASE("determinant identities of the precoder covariances")
{
    Rng rng = substream(31, 5);
    for (int t = 0; t < 40; ++t)
    {
        const Index n = 2 + t % 4;
        const Channel ch = testing::random_channel(n, n, n, rng);
        const MatrixConstraint s(testing::random_constraint(n, rng, 10.0));
        const SdpcSolution sol = solve_matrix_constraint(ch, s);
        if (sol.split() > 0 && sol.split() < sol.gevd.dim())
            for (const DeterminantIdentity &id : determinant_identities(ch, sol, false))
            {
                INFO(id.name);
                CHECK(id.relative_residual() <= 1e-7);
            }

        const MatrixConstraint sw = random_sw(ch, rng);
        const SdpcSolution osol = solve_matrix_constraint(ch, sw);
        if (osol.split() > 0 && osol.split() < osol.gevd.dim())
            for (const DeterminantIdentity &id : determinant_identities(ch, osol, true))
            {
                INFO(id.name);
                CHECK(id.relative_residual() <= 1e-7);
            }
    }
}

TEST_CASE("loss shrinks along a path toward an orthogonal constraint")
{
    Rng rng = substream(31, 6);
    const Channel ch = testing::reference_channel();
    const MatrixConstraint sw = random_sw(ch, rng);
    const CMatrix sr = reference_random_constraint();
    std::vector<double> losses, defects;
    for (double mix : {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6})
    {
        const MatrixConstraint s(hermitian_part((1.0 - mix) * sw.matrix() + mix * sr));
        const SdpcSolution sol = solve_matrix_constraint(ch, s);
        REQUIRE(sol.split() == 1);
        losses.push_back(loss_bounded_precoders(ch, sol, s).loss);
        defects.push_back(orthogonality_defect(sol));
    }
    for (std::size_t i = 1; i < losses.size(); ++i)
    {
        CHECK(losses[i] < losses[i - 1]);
        CHECK(defects[i] < defects[i - 1]);
    }
    // second order in the defect once the path is close to S_w
    for (std::size_t i = 4; i < losses.size(); ++i)
        CHECK_THAT(losses[i] / losses[i - 1], WithinRel(1e-2, 0.05));
    CHECK(losses.back() < 1e-9);
}
