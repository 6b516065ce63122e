// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "quorel/exact_analysis.hpp"
#include "quorel/fault_model.hpp"
#include "quorel/predicates.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace quorel
{

// Maps a cluster size to quorum sizes.
class QuorumRule
{
  public:
    enum class Kind
    {
        // floor(n/2) + 1 for every Raft quorum.
        Majority,
        // f = floor((n - 1) / 3); q_eq = q_per = q_vc = n - f, q_vc_t = f + 1.
        ByzantineThreshold,
        // Sizes listed per n; other n are not covered.
        Explicit,
    };

    static QuorumRule majority();
    static QuorumRule byzantineThreshold();
    static QuorumRule explicitSizes(std::map<int, QuorumSpec> sizes);

    // Fixed rows for n = 4, 5, 7, 8: (3,3,3,2), (4,4,4,2), (5,5,5,3), (6,6,6,3).
    static QuorumRule pbftClassic();

    Kind
    kind() const noexcept
    {
        return mKind;
    }

    bool covers(ProtocolKind protocol, int n) const noexcept;

    // Throws Error(Configuration) when the rule has no valid sizes for n.
    QuorumSpec forSize(ProtocolKind protocol, int n) const;

    std::string describe() const;

  private:
    explicit QuorumRule(Kind kind) : mKind(kind)
    {
    }

    Kind mKind;
    std::map<int, QuorumSpec> mSizes;
};

// Uniform per-node profile used by sweeps: Raft nodes crash with p,
// PBFT nodes turn Byzantine with p.
FaultProfile sweepProfile(ProtocolKind protocol, double p);

struct SweepCell
{
    double p{0.0};
    ReliabilityReport report;
};

struct SweepRow
{
    int n{0};
    QuorumSpec quorums;
    std::vector<SweepCell> cells;
};

// One row per n, one cell per p, each from analyzeDp. Throws
// Error(Configuration) with path "rows[i]" when the rule fails for a row.
std::vector<SweepRow> sweepTable(ProtocolKind protocol,
                                 std::span<int const> nValues,
                                 QuorumRule const& rule,
                                 std::span<double const> pValues,
                                 LivenessRule liveness = LivenessRule::Corrected);

struct FrontierPoint
{
    QuorumSpec quorums;
    double pSafe{0.0};
    double pLive{0.0};
};

// For candidates a < b: unsafe(a) / unsafe(b) and unlive(b) / unlive(a),
// empty when the denominator is zero.
struct FrontierRatio
{
    std::size_t a{0};
    std::size_t b{0};
    std::optional<double> unsafetyRatio;
    std::optional<double> unlivenessRatio;
};

struct Frontier
{
    double p{0.0};
    std::vector<FrontierPoint> points;
    std::vector<FrontierRatio> ratios;
};

Frontier tradeoffFrontier(ProtocolKind protocol,
                          std::span<QuorumSpec const> candidates, double p,
                          LivenessRule liveness = LivenessRule::Corrected);

struct NodeClass
{
    std::string label;
    FaultProfile profile;
    double unitCost{0.0};
};

// Probability target on safe-and-live. With percentDecimals set, achieved
// values are compared after rounding both sides to that many decimals of a
// percentage, matching figures quoted at printed precision.
struct ReliabilityTarget
{
    double value{0.0};
    std::optional<int> percentDecimals;

    bool met(double achieved) const noexcept;
};

struct Candidate
{
    // Aligned with the class list.
    std::vector<int> counts;
    int n{0};
    double cost{0.0};
    QuorumSpec quorums;
    ReliabilityReport report;
};

struct OptimizeResult
{
    bool attained{false};
    // Cheapest candidate meeting the target when attained, otherwise the
    // candidate with the highest safe-and-live probability.
    std::optional<Candidate> best;
    std::size_t evaluated{0};
};

Deployment buildDeployment(std::span<NodeClass const> classes,
                           std::span<int const> counts);

// Exhaustive search over class-count compositions with 1 <= n <= maxN.
// Ties on cost prefer smaller n, then lexicographically smaller counts.
OptimizeResult optimizeDeployment(std::span<NodeClass const> classes,
                                  ReliabilityTarget const& target,
                                  ProtocolKind protocol, int maxN,
                                  QuorumRule const& rule,
                                  LivenessRule liveness =
                                      LivenessRule::Corrected);

} // namespace quorel
