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
/// \file invariants.hpp
///
/// Randomized self-check of every module: draws channels and constraints,
/// evaluates each structural property and records the largest residual.
///

#ifndef MIMOSEC_INVARIANTS_HPP
#define MIMOSEC_INVARIANTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <mimosec/avgpower.hpp>
#include <mimosec/baseline.hpp>
#include <mimosec/precoder.hpp>
#include <mimosec/random.hpp>
#include <mimosec/sdpc.hpp>

namespace mimosec
{

struct InvariantResult
{
    std::string name;
    double tolerance = 0.0;
    double max_residual = 0.0;
    Index evaluations = 0;
    Index violations = 0;

    bool ok() const { return violations == 0; }

    void record(double residual)
    {
        ++evaluations;
        if (!(residual <= tolerance)) // NaN counts as a violation
            ++violations;
        if (std::isnan(residual) || residual > max_residual)
            max_residual = residual;
    }
};

enum class FaultInjection
{
    none,
    corrupt_gevd ///< perturbs one generalized eigenvector before it is checked
};

struct CheckConfig
{
    Index trials = 100;
    Index dim = 3;
    std::uint64_t seed = 1;
    FaultInjection fault = FaultInjection::none;
};

struct InvariantReport
{
    CheckConfig config;
    std::vector<InvariantResult> results;

    bool ok() const
    {
        return std::all_of(results.begin(), results.end(), [](const InvariantResult &r) { return r.ok(); });
    }

    Index violations() const
    {
        Index v = 0;
        for (const InvariantResult &r : results)
            v += r.violations;
        return v;
    }

    const InvariantResult &operator[](const std::string &name) const
    {
        for (const InvariantResult &r : results)
            if (r.name == name)
                return r;
        throw Error(Errc::InvalidArgument, "InvariantReport", "unknown invariant " + name);
    }
};

namespace detail
{
class Battery
{
  public:
    InvariantResult &operator()(const std::string &name, double tolerance)
    {
        for (InvariantResult &r : results_)
            if (r.name == name)
                return r;
        results_.push_back({name, tolerance});
        return results_.back();
    }

    std::vector<InvariantResult> take() { return std::move(results_); }

  private:
    std::vector<InvariantResult> results_;
};

inline double gevd_residual(const CMatrix &a, const CMatrix &b, const GevdResult &g)
{
    const Index n = g.dim();
    const CMatrix lam = g.values.cast<Complex>().asDiagonal();
    const double r_a = (g.vectors.adjoint() * a * g.vectors - lam).norm() / lam.norm();
    const double r_b = (g.vectors.adjoint() * b * g.vectors - CMatrix::Identity(n, n)).norm();
    return std::max(r_a, r_b);
}

/// Worst relative KKT residual of a waterfilling solution.
inline double kkt_residual(const RVector &strong, const RVector &weak, const RVector &a, const RVector &p, double mu)
{
    double worst = 0.0;
    for (Index i = 0; i < p.size(); ++i)
    {
        const double slope0 = strong(i) - weak(i);
        if (p(i) > 0.0)
        {
            const double grad = strong(i) / (1.0 + strong(i) * p(i)) - weak(i) / (1.0 + weak(i) * p(i));
            worst = std::max(worst, std::abs(grad - mu * a(i)) / (mu * a(i)));
        }
        else if (slope0 > subchannel_tie_tolerance * std::max(1.0, strong(i)))
            worst = std::max(worst, std::max(0.0, slope0 - mu * a(i)) / (mu * a(i)));
    }
    return worst;
}

inline void check_trial(Battery &bat, const CheckConfig &cfg, Index trial)
{
    Rng rng = substream(cfg.seed, static_cast<std::uint64_t>(trial));
    const Index n = cfg.dim;
    std::uniform_int_distribution<Index> rows(1, n);
    const Channel ch(complex_gaussian(rows(rng), n, rng), complex_gaussian(rows(rng), n, rng));
    const double pt = uniform(rng, 1.0, 20.0);

    // Matrix-constraint core on a random constraint.
    const MatrixConstraint s = sample_constraint(n, pt, rng);
    const SdpcSolution sol = solve_matrix_constraint(ch, s);
    if (sol.gevd.dim() > 0)
    {
        const CMatrix hs = ch.H * sol.basis * sol.sqrt_s;
        const CMatrix gs = ch.G * sol.basis * sol.sqrt_s;
        const Index r = sol.gevd.dim();
        const CMatrix a = hermitian_part(hs.adjoint() * hs) + CMatrix::Identity(r, r);
        const CMatrix b = hermitian_part(gs.adjoint() * gs) + CMatrix::Identity(r, r);
        GevdResult g = sol.gevd;
        if (cfg.fault == FaultInjection::corrupt_gevd)
            g.vectors.col(0) *= Complex(1.01, 0.0);
        bat("gevd_reconstruction", 1e-8).record(gevd_residual(a, b, g));
    }
    bat("corner_rate_user1", 1e-8).record(std::abs(sol.corner.r1 - secrecy_objective(ch, sol.kt_star)));
    bat("corner_rate_user2", 1e-8).record(std::abs(sol.corner.r2 - second_corner_from_first(ch, s, sol.corner.r1)));
    bat("rank_bound", 0.0).record(rank_bound_check(ch, sol).holds ? 0.0 : 1.0);

    const Index b = sol.gevd.split;
    if (b > 0 && b < sol.gevd.dim())
    {
        const LossReport lr = loss_bounded_precoders(ch, sol, s);
        double gap = 0.0;
        if (lr.guaranteed.r1 > 0.0)
            gap = std::max(gap, std::abs(lr.exact.r1 - lr.guaranteed.r1));
        if (lr.guaranteed.r2 > 0.0)
            gap = std::max(gap, std::abs(lr.exact.r2 - lr.guaranteed.r2));
        bat("loss_bounded_exact_rates", 1e-8).record(gap);
        double worst = 0.0;
        for (const DeterminantIdentity &id : determinant_identities(ch, sol, false))
            worst = std::max(worst, id.relative_residual());
        bat("determinant_identities", 1e-7).record(worst);
    }

    // Average-power construction.
    const DiagonalizedChannel dc = diagonalize(ch);
    const Channel red(ch.H * dc.reduction, ch.G * dc.reduction);
    const CMatrix k1 = hermitian_part(dc.whitener * red.gram_h() * dc.whitener);
    const CMatrix k2 = hermitian_part(dc.whitener * red.gram_g() * dc.whitener);
    const Index r = dc.dim();
    const CMatrix sigma_sum = dc.eigvecs.adjoint() * (k1 + k2) * dc.eigvecs;
    bat("sigma_sum_identity", 1e-9).record(max_abs(sigma_sum - CMatrix::Identity(r, r)));
    bat("sigma_sum_diagonal", 1e-9).record((dc.sigma1 + dc.sigma2 - RVector::Ones(r)).cwiseAbs().maxCoeff());
    bat("whitened_commutator", 1e-8).record((k1 * k2 - k2 * k1).norm());
    const GevdResult wg = gevd_definite(k1 + CMatrix::Identity(r, r), k2 + CMatrix::Identity(r, r));
    bat("whitened_eigenvalue_range", 1e-9)
        .record(std::max({0.0, 0.5 - wg.values.minCoeff(), wg.values.maxCoeff() - 2.0}));
    double order = 0.0;
    for (Index i = 0; i < r; ++i)
    {
        const double d = dc.sigma1(i) - dc.sigma2(i);
        order = std::max(order, i < dc.rho ? std::max(0.0, -d) : std::max(0.0, d - subchannel_tie_tolerance));
    }
    bat("subchannel_partition_order", 1e-9).record(order);

    const double alpha = uniform(rng, 0.0, 1.0);
    const PowerAllocation alloc = allocate(dc, pt, alpha);
    const auto budget_gap = [](const RVector &a, const RVector &p, double budget) {
        return budget > 0.0 ? std::abs(a.dot(p) - budget) / budget : a.dot(p);
    };
    if (alloc.mu1 > 0.0)
    {
        bat("kkt_stationarity", 1e-8)
            .record(kkt_residual(dc.sigma1_user1(), dc.sigma2_user1(), dc.a_user1(), alloc.p1, alloc.mu1));
        bat("kkt_budget", 1e-10).record(budget_gap(dc.a_user1(), alloc.p1, alpha * pt));
    }
    if (alloc.mu2 > 0.0)
    {
        bat("kkt_stationarity", 1e-8)
            .record(kkt_residual(dc.sigma2_user2(), dc.sigma1_user2(), dc.a_user2(), alloc.p2, alloc.mu2));
        bat("kkt_budget", 1e-10).record(budget_gap(dc.a_user2(), alloc.p2, (1.0 - alpha) * pt));
    }

    const MatrixConstraint sw = make_matrix_constraint(dc, alloc.stacked());
    const SdpcSolution wsol = solve_matrix_constraint(ch, sw);
    const CornerPoint cr = corner_rates(dc, alloc);
    bat("sw_orthogonality_defect", 1e-8).record(orthogonality_defect(wsol));
    bat("sw_corner_consistency", 1e-8)
        .record(std::max(std::abs(cr.r1 - wsol.corner.r1), std::abs(cr.r2 - wsol.corner.r2)));
    const CornerPoint lin = rate_evaluate(ch, optimal_precoders(wsol, sw));
    bat("sw_linear_attains_corner", 1e-8)
        .record(std::max(std::abs(lin.r1 - wsol.corner.r1), std::abs(lin.r2 - wsol.corner.r2)));
}
} // namespace detail

/// Runs the battery on `trials` random instances of dimension `dim`.
inline InvariantReport run_invariant_battery(const CheckConfig &cfg)
{
    if (cfg.trials < 0 || cfg.dim < 1)
        throw Error(Errc::InvalidArgument, "run_invariant_battery");
    detail::Battery bat;
    for (Index t = 0; t < cfg.trials; ++t)
        detail::check_trial(bat, cfg, t);
    return {cfg, bat.take()};
}

} // namespace mimosec

#endif
