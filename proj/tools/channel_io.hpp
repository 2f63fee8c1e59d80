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

// JSON channel and constraint files. A complex matrix is a row-major array of
// rows, each entry an [re, im] pair; a bare number is accepted as a real entry.
//
//   { "H": [[[0.3, 0], [2.5, 0]], ...], "G": ..., "Pt": 12 }

#ifndef MIMOSEC_TOOLS_CHANNEL_IO_HPP
#define MIMOSEC_TOOLS_CHANNEL_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include <mimosec/sdpc.hpp>

namespace mimosec::io
{

using nlohmann::json;

inline json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::InvalidArgument, "read_json_file", "cannot open " + path);
    try
    {
        return json::parse(in);
    }
    catch (const json::exception &e)
    {
        throw Error(Errc::InvalidArgument, "read_json_file", path + ": " + e.what());
    }
}

inline Complex parse_entry(const json &v)
{
    if (v.is_number())
        return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw Error(Errc::InvalidArgument, "parse_matrix", "entry must be a number or an [re, im] pair");
}

inline CMatrix parse_matrix(const json &m, const std::string &what)
{
    if (!m.is_array() || m.empty() || !m[0].is_array())
        throw Error(Errc::InvalidArgument, "parse_matrix", what + " must be a nonempty array of rows");
    const std::size_t cols = m[0].size();
    if (cols == 0)
        throw Error(Errc::InvalidArgument, "parse_matrix", what + " has an empty row");
    CMatrix out(static_cast<Index>(m.size()), static_cast<Index>(cols));
    for (std::size_t i = 0; i < m.size(); ++i)
    {
        if (!m[i].is_array() || m[i].size() != cols)
            throw Error(Errc::InvalidArgument, "parse_matrix", what + " rows are not rectangular");
        for (std::size_t j = 0; j < cols; ++j)
            out(static_cast<Index>(i), static_cast<Index>(j)) = parse_entry(m[i][j]);
    }
    return out;
}

inline json matrix_to_json(const CMatrix &m)
{
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i)
    {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

struct ChannelFile
{
    Channel channel;
    std::optional<double> pt;
};

inline ChannelFile read_channel_file(const std::string &path)
{
    const json doc = read_json_file(path);
    if (!doc.is_object() || !doc.contains("H") || !doc.contains("G"))
        throw Error(Errc::InvalidArgument, "read_channel_file", "expected an object with \"H\" and \"G\"");
    ChannelFile out{Channel(parse_matrix(doc["H"], "H"), parse_matrix(doc["G"], "G")), std::nullopt};
    if (doc.contains("Pt"))
    {
        if (!doc["Pt"].is_number())
            throw Error(Errc::InvalidArgument, "read_channel_file", "\"Pt\" must be a number");
        out.pt = doc["Pt"].get<double>();
    }
    return out;
}

/// Either {"S": matrix} or a bare matrix.
inline CMatrix read_constraint_file(const std::string &path)
{
    const json doc = read_json_file(path);
    if (doc.is_object())
    {
        if (!doc.contains("S"))
            throw Error(Errc::InvalidArgument, "read_constraint_file", "expected \"S\"");
        return parse_matrix(doc["S"], "S");
    }
    return parse_matrix(doc, "S");
}

inline void write_text_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::InvalidArgument, "write_text_file", "cannot open " + path);
    out << text;
    if (!out)
        throw Error(Errc::InvalidArgument, "write_text_file", "write failed for " + path);
}

} // namespace mimosec::io

#endif
