// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "quorel/error.hpp"

namespace quorel
{

std::string_view
toString(ErrorKind kind) noexcept
{
    switch (kind)
    {
    case ErrorKind::Domain:
        return "domain";
    case ErrorKind::Profile:
        return "profile";
    case ErrorKind::Identity:
        return "identity";
    case ErrorKind::ModelMismatch:
        return "model-mismatch";
    case ErrorKind::Capacity:
        return "capacity";
    case ErrorKind::Constraint:
        return "constraint";
    case ErrorKind::Configuration:
        return "configuration";
    case ErrorKind::Schema:
        return "schema";
    case ErrorKind::UnsupportedProtocol:
        return "unsupported-protocol";
    case ErrorKind::Io:
        return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, std::string const& message, std::string path)
    : std::runtime_error(message), mKind(kind), mPath(std::move(path))
{
}

} // namespace quorel
