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

#ifndef MIMOSEC_REGION_HPP
#define MIMOSEC_REGION_HPP

#include <algorithm>
#include <span>
#include <vector>

#include <mimosec/sdpc.hpp>

namespace mimosec
{

struct RatePoint
{
    double r1 = 0.0;
    double r2 = 0.0;

    friend bool operator==(const RatePoint &, const RatePoint &) = default;
};

/// Upper-right convex hull of a union of rate rectangles [0, R1] x [0, R2].
/// Time sharing between corner points is allowed, so the region is the
/// convex hull of the corners together with the origin and the two axis
/// intercepts. Vertices run from (0, max R2) to (max R1, 0) with R1 increasing.
class ParetoHull
{
  public:
    ParetoHull() : vertices_{{0.0, 0.0}} {}

    explicit ParetoHull(std::span<const RatePoint> points)
    {
        double max_r1 = 0.0;
        double max_r2 = 0.0;
        for (const RatePoint &p : points)
        {
            max_r1 = std::max(max_r1, p.r1);
            max_r2 = std::max(max_r2, p.r2);
        }

        std::vector<RatePoint> pts(points.begin(), points.end());
        pts.push_back({0.0, max_r2});
        pts.push_back({max_r1, 0.0});
        std::sort(pts.begin(), pts.end(), [](const RatePoint &a, const RatePoint &b) {
            return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 > b.r2);
        });

        // Monotone chain, upper part only; drops left turns and collinear points.
        std::vector<RatePoint> hull;
        for (const RatePoint &p : pts)
        {
            if (!hull.empty() && hull.back().r1 == p.r1)
                continue; // same abscissa, lower ordinate
            while (hull.size() >= 2)
            {
                const RatePoint &o = hull[hull.size() - 2];
                const RatePoint &a = hull.back();
                const double cross = (a.r1 - o.r1) * (p.r2 - o.r2) - (a.r2 - o.r2) * (p.r1 - o.r1);
                if (cross >= 0.0)
                    hull.pop_back();
                else
                    break;
            }
            hull.push_back(p);
        }
        if (hull.back().r2 != 0.0)
            hull.push_back({hull.back().r1, 0.0});
        vertices_ = std::move(hull);
    }

    static ParetoHull of(std::span<const CornerPoint> corners)
    {
        std::vector<RatePoint> pts;
        pts.reserve(corners.size());
        for (const CornerPoint &c : corners)
            pts.push_back({c.r1, c.r2});
        return ParetoHull(pts);
    }

    const std::vector<RatePoint> &vertices() const { return vertices_; }

    double max_r1() const { return vertices_.back().r1; }
    double max_r2() const { return vertices_.front().r2; }

    /// Area enclosed with the two axes.
    double area() const
    {
        double a = 0.0;
        for (std::size_t i = 1; i < vertices_.size(); ++i)
        {
            const RatePoint &p = vertices_[i - 1];
            const RatePoint &q = vertices_[i];
            a += 0.5 * (q.r1 - p.r1) * (p.r2 + q.r2);
        }
        return a;
    }

    /// Boundary height at abscissa r1 (zero beyond max_r1).
    double height_at(double r1) const
    {
        if (r1 <= vertices_.front().r1)
            return vertices_.front().r2;
        for (std::size_t i = 1; i < vertices_.size(); ++i)
        {
            const RatePoint &p = vertices_[i - 1];
            const RatePoint &q = vertices_[i];
            if (r1 <= q.r1)
            {
                if (q.r1 == p.r1)
                    return std::max(p.r2, q.r2);
                const double t = (r1 - p.r1) / (q.r1 - p.r1);
                return p.r2 + t * (q.r2 - p.r2);
            }
        }
        return 0.0;
    }

    /// True when p lies in the hull enlarged by `slack` in each coordinate.
    bool contains(const RatePoint &p, double slack = 0.0) const
    {
        if (p.r1 > max_r1() + slack || p.r2 > max_r2() + slack)
            return false;
        return p.r2 <= height_at(std::max(0.0, p.r1 - slack)) + slack;
    }

  private:
    std::vector<RatePoint> vertices_;
};

} // namespace mimosec

#endif
