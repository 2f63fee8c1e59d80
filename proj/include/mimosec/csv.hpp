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
/// \file csv.hpp
///
/// Rate-region CSV: header `alpha,R1_bits,R2_bits,provenance` (or `_nats`),
/// LF line endings, shortest round-trip decimal formatting, rows sorted by
/// alpha. Rows without a power split (hull vertices) leave alpha empty and
/// keep their given order.
///

#ifndef MIMOSEC_CSV_HPP
#define MIMOSEC_CSV_HPP

#include <algorithm>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <mimosec/error.hpp>
#include <mimosec/sdpc.hpp>

namespace mimosec
{

enum class RateUnit
{
    bits,
    nats
};

inline double to_unit(double nats, RateUnit unit) { return unit == RateUnit::bits ? to_bits(nats) : nats; }

/// Shortest decimal text that parses back to the same double; locale independent.
inline std::string format_double(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw Error(Errc::InvalidArgument, "parse_double", "bad number '" + std::string(s) + "'");
    return v;
}

struct RegionRow
{
    std::optional<double> alpha;
    double r1 = 0.0; ///< in the file's unit
    double r2 = 0.0;
    std::string provenance;

    friend bool operator==(const RegionRow &, const RegionRow &) = default;
};

struct RegionTable
{
    RateUnit unit = RateUnit::bits;
    std::vector<RegionRow> rows;

    friend bool operator==(const RegionTable &, const RegionTable &) = default;
};

inline RegionTable region_table(std::span<const CornerPoint> points, RateUnit unit)
{
    RegionTable t;
    t.unit = unit;
    for (const CornerPoint &p : points)
        t.rows.push_back({p.alpha, to_unit(p.r1, unit), to_unit(p.r2, unit), p.provenance});
    std::stable_sort(t.rows.begin(), t.rows.end(), [](const RegionRow &a, const RegionRow &b) {
        if (a.alpha && b.alpha)
            return *a.alpha < *b.alpha;
        return a.alpha.has_value() && !b.alpha.has_value();
    });
    return t;
}

inline std::string region_header(RateUnit unit)
{
    return unit == RateUnit::bits ? "alpha,R1_bits,R2_bits,provenance" : "alpha,R1_nats,R2_nats,provenance";
}

inline void write_region_csv(std::ostream &os, const RegionTable &t)
{
    os << region_header(t.unit) << '\n';
    for (const RegionRow &r : t.rows)
    {
        if (r.provenance.find_first_of(",\n\r\"") != std::string::npos)
            throw Error(Errc::InvalidArgument, "write_region_csv", "provenance must not contain separators");
        os << (r.alpha ? format_double(*r.alpha) : std::string()) << ',' << format_double(r.r1) << ','
           << format_double(r.r2) << ',' << r.provenance << '\n';
    }
}

namespace detail
{
inline std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;)
    {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos)
            return out;
        start = comma + 1;
    }
}
} // namespace detail

inline RegionTable read_region_csv(std::istream &is)
{
    std::string line;
    if (!std::getline(is, line))
        throw Error(Errc::InvalidArgument, "read_region_csv", "empty input");
    RegionTable t;
    if (line == region_header(RateUnit::bits))
        t.unit = RateUnit::bits;
    else if (line == region_header(RateUnit::nats))
        t.unit = RateUnit::nats;
    else
        throw Error(Errc::InvalidArgument, "read_region_csv", "unexpected header");

    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        const auto f = detail::split_fields(line);
        if (f.size() != 4)
            throw Error(Errc::InvalidArgument, "read_region_csv", "expected four fields");
        RegionRow r;
        if (!f[0].empty())
            r.alpha = parse_double(f[0]);
        r.r1 = parse_double(f[1]);
        r.r2 = parse_double(f[2]);
        r.provenance = std::string(f[3]);
        t.rows.push_back(std::move(r));
    }
    return t;
}

} // namespace mimosec

#endif
