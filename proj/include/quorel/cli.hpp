// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "quorel/render.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace quorel
{

enum class Subcommand
{
    Analyze,
    Sweep,
    Optimize,
    Witness,
    Simulate,
};

enum class WitnessRequest
{
    Any,
    Safety,
    Liveness,
};

struct Command
{
    Subcommand subcommand{Subcommand::Analyze};
    std::string input;
    Format format{Format::Json};
    std::uint64_t seed{1};
    std::uint64_t samples{1'000'000};
    // Analyze by full enumeration, refusing deployments above this size.
    std::optional<int> enumCap;
    bool literalTheorem{false};
    // sweep: "raft-majority" or "pbft-classic".
    std::string table;
    // witness: one letter per node (C correct, X crashed, B Byzantine).
    std::optional<std::string> statuses;
    WitnessRequest witnessKind{WitnessRequest::Any};
    // analyze: node indices of a quorum whose durability to report.
    std::vector<std::size_t> quorum;
    std::optional<std::string> requireClass;
    unsigned threads{0};
};

struct CliResult
{
    // 0 ok, 1 unattainable target or missing witness for a violating
    // configuration, 2 input error.
    int exit{0};
    std::string out;
    std::string err;
};

CliResult run(Command const& command);

// Parses argv (without the program name). Returns a finished result for
// --help and usage errors.
std::variant<Command, CliResult>
parseCommandLine(std::vector<std::string> const& args, bool stdoutIsTerminal);

} // namespace quorel
