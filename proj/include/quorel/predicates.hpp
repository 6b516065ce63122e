// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "quorel/fault_model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace quorel
{

// Quorum sizes for one protocol instance of n nodes. qEq (non-equivocation)
// and qVcT (view-change trigger) exist only for PBFT.
struct QuorumSpec
{
    ProtocolKind protocol{ProtocolKind::Raft};
    int n{0};
    int qPer{0};
    int qVc{0};
    std::optional<int> qEq;
    std::optional<int> qVcT;

    static QuorumSpec raft(int n, int qPer, int qVc);
    static QuorumSpec pbft(int n, int qEq, int qPer, int qVc, int qVcT);

    // Simple-majority Raft quorums: floor(n/2) + 1 for both phases.
    static QuorumSpec raftMajority(int n);

    // Throws Error(Configuration) unless every size lies in [1, n] and the
    // optional sizes are present exactly for PBFT.
    void validate() const;

    // Largest quorum the protocol must assemble to make progress.
    int largestQuorum() const;

    friend bool operator==(QuorumSpec const&, QuorumSpec const&) = default;
};

enum class NodeStatus : std::uint8_t
{
    Correct,
    Crashed,
    Byzantine,
};

char statusLetter(NodeStatus status) noexcept;

struct CountVector
{
    int correct{0};
    int crashed{0};
    int byz{0};

    int
    total() const noexcept
    {
        return correct + crashed + byz;
    }

    friend bool operator==(CountVector const&, CountVector const&) = default;
};

// Status of every node, aligned with Deployment order.
struct FailureConfiguration
{
    std::vector<NodeStatus> statuses;

    static FailureConfiguration allCorrect(std::size_t n);

    std::size_t
    size() const noexcept
    {
        return statuses.size();
    }

    CountVector summarize() const noexcept;
};

// Which form of the first PBFT liveness condition to apply. Corrected uses
// byz <= qVc - qVcT, the orientation under which classic threshold deployments
// are live; LiteralTheorem keeps byz <= qVcT - qVc as printed,
// which is unsatisfiable whenever qVcT < qVc.
enum class LivenessRule
{
    Corrected,
    LiteralTheorem,
};

bool pbftSafe(CountVector const& counts, QuorumSpec const& q);
bool pbftLive(CountVector const& counts, QuorumSpec const& q,
              LivenessRule rule = LivenessRule::Corrected);

// Raft safety depends only on the quorum sizes: n < qPer + qVc and
// n < 2 qVc.
bool raftSafeStructural(QuorumSpec const& q);
bool raftLive(CountVector const& counts, QuorumSpec const& q);

struct Verdict
{
    bool safe{false};
    bool live{false};

    friend bool operator==(Verdict const&, Verdict const&) = default;
};

Verdict classifyCounts(CountVector const& counts, QuorumSpec const& q,
                       LivenessRule rule = LivenessRule::Corrected);

// Throws Error(ModelMismatch) for a Raft configuration containing a
// Byzantine node and Error(Domain) when the length differs from q.n.
Verdict classify(FailureConfiguration const& config, QuorumSpec const& q,
                 LivenessRule rule = LivenessRule::Corrected);

} // namespace quorel
