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

// Random instance generators and independent reference computations shared
// by the unit tests and the acceptance run. Nothing here calls the library's
// own decompositions, so the library is never checked against itself.

#ifndef MIMOSEC_TESTS_SUPPORT_HPP
#define MIMOSEC_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include <mimosec/matrixkit.hpp>
#include <mimosec/random.hpp>
#include <mimosec/sdpc.hpp>

namespace testing
{

using namespace mimosec;

inline CMatrix reference_h()
{
    CMatrix h(2, 2);
    h << 0.3, 2.5, 2.2, 1.8;
    return h;
}

inline CMatrix reference_g()
{
    CMatrix g(2, 2);
    g << 1.3, 1.2, 1.5, 3.9;
    return g;
}

inline Channel reference_channel() { return Channel(reference_h(), reference_g()); }

inline constexpr double reference_power = 12.0;

/// B B^H + shift I with B square complex Gaussian.
inline CMatrix random_pd(Index n, Rng &rng, double shift = 0.1)
{
    const CMatrix b = complex_gaussian(n, n, rng);
    return b * b.adjoint() + shift * CMatrix::Identity(n, n);
}

/// Full-rank constraint with trace `power`.
inline CMatrix random_constraint(Index n, Rng &rng, double power)
{
    CMatrix s = random_pd(n, rng, 0.05);
    s = 0.5 * (s + s.adjoint());
    return s * Complex(power / s.trace().real(), 0.0);
}

inline Channel random_channel(Index m1, Index m2, Index n, Rng &rng)
{
    return Channel(complex_gaussian(m1, n, rng), complex_gaussian(m2, n, rng));
}

/// Eigenvalues of B^{-1} A by the general (non-Hermitian) eigensolver, real
/// parts sorted descending.
inline std::vector<double> brute_force_pencil_eigenvalues(const CMatrix &a, const CMatrix &b)
{
    const CMatrix m = b.fullPivLu().solve(a);
    Eigen::ComplexEigenSolver<CMatrix> es(m);
    std::vector<double> out;
    for (Index i = 0; i < es.eigenvalues().size(); ++i)
        out.push_back(es.eigenvalues()(i).real());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// log|M| through the LU determinant of a general square matrix.
inline double lu_logdet(const CMatrix &m) { return std::log(std::abs(m.fullPivLu().determinant())); }

/// Random PSD contraction U diag(u) U^H, u uniform on [0, 1].
inline CMatrix random_contraction(Index n, Rng &rng)
{
    const CMatrix q = complex_gaussian(n, n, rng).householderQr().householderQ();
    RVector u(n);
    for (Index i = 0; i < n; ++i)
        u(i) = uniform(rng);
    return q * u.cast<Complex>().asDiagonal() * q.adjoint();
}

/// Root of s/(1+sp) - w/(1+wp) = mu a in the textbook quadratic form,
/// (-(s+w) + sqrt((s-w)^2 + 4 s w (s-w)/(mu a))) / (2 s w), clipped at zero.
inline double textbook_level(double s, double w, double a, double mu)
{
    if (w == 0.0)
        return std::max(0.0, 1.0 / (mu * a) - 1.0 / s);
    const double disc = (s - w) * (s - w) + 4.0 * s * w * (s - w) / (mu * a);
    return std::max(0.0, (-(s + w) + std::sqrt(disc)) / (2.0 * s * w));
}

inline double secrecy_sum(const RVector &s, const RVector &w, const RVector &p)
{
    double v = 0.0;
    for (Index i = 0; i < p.size(); ++i)
        v += std::log1p(s(i) * p(i)) - std::log1p(w(i) * p(i));
    return v;
}

/// Random point of {p >= 0, a . p = budget}.
inline RVector random_feasible(const RVector &a, double budget, Rng &rng)
{
    RVector e(a.size());
    for (Index i = 0; i < a.size(); ++i)
        e(i) = -std::log(uniform(rng, 1e-12, 1.0));
    e /= e.sum();
    return (e.array() * budget / a.array()).matrix();
}

/// Classical waterfilling capacity by bisection on the water level.
inline double classical_capacity(const std::vector<double> &gains, double pt)
{
    double lo = 0.0, hi = pt + 1e6;
    for (int it = 0; it < 500; ++it)
    {
        const double level = 0.5 * (lo + hi);
        double used = 0.0;
        for (double g : gains)
            used += std::max(0.0, level - 1.0 / g);
        (used > pt ? hi : lo) = level;
    }
    double c = 0.0;
    for (double g : gains)
        c += std::log(std::max(1.0, g * lo));
    return c;
}

/// True when f throws mimosec::Error with the given code.
inline bool throws_code(Errc code, const std::function<void()> &f)
{
    try
    {
        f();
    }
    catch (const Error &e)
    {
        return e.code() == code;
    }
    return false;
}

} // namespace testing

#endif
