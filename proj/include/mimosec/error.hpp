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

#ifndef MIMOSEC_ERROR_HPP
#define MIMOSEC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mimosec
{

enum class Errc
{
    NonHermitian,
    NotPositiveSemidefinite,
    NotPositiveDefinite,
    NoConvergence,
    ZeroMatrix,
    RankDeficient,
    DimensionMismatch,
    NotOrthogonal,
    DegeneratePartition,
    ZeroChannel,
    NoStrongChannels,
    InvalidArgument,
};

constexpr std::string_view to_string(Errc code) noexcept
{
    switch (code)
    {
    case Errc::NonHermitian: return "NonHermitian";
    case Errc::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ZeroMatrix: return "ZeroMatrix";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotOrthogonal: return "NotOrthogonal";
    case Errc::DegeneratePartition: return "DegeneratePartition";
    case Errc::ZeroChannel: return "ZeroChannel";
    case Errc::NoStrongChannels: return "NoStrongChannels";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable code and the name of the failing operation.
class Error : public std::runtime_error
{
  public:
    Error(Errc code, std::string_view operation, std::string_view detail = {})
        : std::runtime_error(compose(code, operation, detail)), code_(code), operation_(operation)
    {
    }

    Errc code() const noexcept { return code_; }
    const std::string &operation() const noexcept { return operation_; }

    /// True for failures caused by caller-supplied data rather than numerics.
    bool is_input_error() const noexcept
    {
        return code_ == Errc::NonHermitian || code_ == Errc::NotPositiveSemidefinite ||
               code_ == Errc::DimensionMismatch || code_ == Errc::InvalidArgument ||
               code_ == Errc::ZeroChannel;
    }

  private:
    static std::string compose(Errc code, std::string_view operation, std::string_view detail)
    {
        std::string msg(operation);
        msg += ": ";
        msg += to_string(code);
        if (!detail.empty())
        {
            msg += " (";
            msg += detail;
            msg += ')';
        }
        return msg;
    }

    Errc code_;
    std::string operation_;
};

} // namespace mimosec

#endif
