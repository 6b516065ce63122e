// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "quorel/exact_analysis.hpp"
#include "quorel/optimizer.hpp"
#include "quorel/witness.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace quorel
{

enum class Format
{
    Json,
    Csv,
    Markdown,
};

std::string_view toString(Format format) noexcept;
std::optional<Format> parseFormat(std::string_view name) noexcept;

struct QuorumDurability
{
    std::vector<std::size_t> members;
    std::optional<std::string> requiredClass;
    // At least one member is not failed.
    double pSurvives{0.0};
};

// Durability figures printed next to a reliability report.
struct AnalysisExtras
{
    // P(at least q_per nodes fail).
    double pAtLeastQPerFailures{0.0};
    // A uniformly random q_per-subset holds at least one correct node.
    double pRandomQuorumHasCorrect{0.0};
    std::optional<QuorumDurability> durability;
};

// JSON output keeps full double precision; the other formats round.
std::string renderReport(ReliabilityReport const& report,
                         AnalysisExtras const* extras, Format format);

std::string renderSweep(ProtocolKind protocol,
                        std::span<SweepRow const> rows, Format format);

std::string renderOptimize(OptimizeResult const& result,
                           std::span<NodeClass const> classes,
                           ReliabilityTarget const& target, Format format);

std::string renderWitness(ViolationWitness const& witness, Format format);
ViolationWitness parseWitnessJson(std::string_view text);

// Single-line JSON error object.
std::string renderErrorJson(Error const& error);

} // namespace quorel
