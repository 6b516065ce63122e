// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quorel
{

enum class ErrorKind
{
    Domain,
    Profile,
    Identity,
    ModelMismatch,
    Capacity,
    Constraint,
    Configuration,
    Schema,
    UnsupportedProtocol,
    Io,
};

std::string_view toString(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto exit codes and structured messages. `path`
// names the offending input location when there is one, e.g.
// "quorums.q_per" or "nodes[2]".
class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, std::string const& message, std::string path = {});

    ErrorKind
    kind() const noexcept
    {
        return mKind;
    }

    std::string const&
    path() const noexcept
    {
        return mPath;
    }

  private:
    ErrorKind mKind;
    std::string mPath;
};

} // namespace quorel
