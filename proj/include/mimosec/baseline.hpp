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
/// \file baseline.hpp
///
/// Inner bound on the secrecy capacity region under Tr(S) <= Pt by seeded
/// random search over matrix constraints: every sampled S contributes its
/// S-DPC corner and the region estimate is the convex hull of the corners.
///

#ifndef MIMOSEC_BASELINE_HPP
#define MIMOSEC_BASELINE_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include <mimosec/avgpower.hpp>
#include <mimosec/random.hpp>
#include <mimosec/region.hpp>
#include <mimosec/sdpc.hpp>

namespace mimosec
{

struct SearchConfig
{
    Index samples = 1000;
    std::uint64_t seed = 1;
    double pt = 1.0;
    bool include_sw_family = false; ///< also evaluate the average-power constraints S_w(alpha)
    Index alpha_grid = default_alpha_grid;
    unsigned threads = 0;           ///< 0: SECRECY_NUM_THREADS, else hardware concurrency

    void validate() const
    {
        if (samples < 1)
            throw Error(Errc::InvalidArgument, "SearchConfig", "samples must be at least 1");
        if (!(pt > 0.0) || !std::isfinite(pt))
            throw Error(Errc::InvalidArgument, "SearchConfig", "power must be positive");
        if (include_sw_family && alpha_grid < 2)
            throw Error(Errc::InvalidArgument, "SearchConfig", "alpha grid needs two points");
    }
};

struct RegionEstimate
{
    std::vector<CornerPoint> points; ///< sampled corners in sample order, then the S_w family
    ParetoHull hull;

    double area() const { return hull.area(); }
};

/// S = Pt A A^H / Tr(A A^H) with A an n x k complex Gaussian matrix and
/// k uniform on 1..n, so boundary (rank-deficient) constraints are drawn too.
inline MatrixConstraint sample_constraint(Index n, double pt, Rng &rng)
{
    if (n < 1)
        throw Error(Errc::InvalidArgument, "sample_constraint", "dimension must be positive");
    std::uniform_int_distribution<Index> rank_dist(1, n);
    const Index k = rank_dist(rng);
    const CMatrix a = complex_gaussian(n, k, rng);
    CMatrix s = hermitian_part(a * a.adjoint());
    s *= Complex(pt / s.trace().real(), 0.0);
    return MatrixConstraint(s);
}

namespace detail
{
inline unsigned worker_count(unsigned requested)
{
    if (requested > 0)
        return requested;
    if (const char *env = std::getenv("SECRECY_NUM_THREADS"))
    {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on up to `workers` threads. Each index
/// writes its own slot, so the result does not depend on scheduling.
template <class Body>
void parallel_for(Index count, unsigned workers, Body body)
{
    workers = static_cast<unsigned>(std::min<Index>(workers, std::max<Index>(count, 1)));
    if (workers <= 1)
    {
        for (Index i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try
            {
                for (Index i = w; i < count; i += workers)
                    body(i);
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        });
    for (std::thread &t : pool)
        t.join();
    for (const std::exception_ptr &e : errors)
        if (e)
            std::rethrow_exception(e);
}
} // namespace detail

inline RegionEstimate search_region(const Channel &ch, const SearchConfig &cfg)
{
    cfg.validate();
    const Index n = ch.nt();

    RegionEstimate out;
    out.points.resize(static_cast<std::size_t>(cfg.samples));
    detail::parallel_for(cfg.samples, detail::worker_count(cfg.threads), [&](Index i) {
        Rng rng = substream(cfg.seed, static_cast<std::uint64_t>(i));
        const MatrixConstraint s = sample_constraint(n, cfg.pt, rng);
        CornerPoint c = solve_matrix_constraint(ch, s).corner;
        c.provenance = "search";
        out.points[static_cast<std::size_t>(i)] = std::move(c);
    });

    if (cfg.include_sw_family && max_abs(ch.gram_h() + ch.gram_g()) > 0.0)
    {
        const DiagonalizedChannel dc = diagonalize(ch);
        for (double alpha : alpha_grid(cfg.alpha_grid))
        {
            const MatrixConstraint s = make_matrix_constraint(dc, allocate(dc, cfg.pt, alpha).stacked());
            CornerPoint c = solve_matrix_constraint(ch, s).corner;
            c.alpha = alpha;
            c.provenance = "search-sw";
            out.points.push_back(std::move(c));
        }
    }
    out.hull = ParetoHull::of(out.points);
    return out;
}

} // namespace mimosec

#endif
