// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "quorel/predicates.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace quorel
{

namespace
{

void
requireProtocol(QuorumSpec const& q, ProtocolKind expected)
{
    if (q.protocol != expected)
    {
        throw Error(ErrorKind::ModelMismatch,
                    fmt::format("predicate for {} applied to a {} quorum spec",
                                toString(expected), toString(q.protocol)));
    }
}

void
checkSize(std::string_view name, int value, int n)
{
    if (value < 1 || value > n)
    {
        throw Error(ErrorKind::Configuration,
                    fmt::format("quorum size {}={} outside [1, {}]", name,
                                value, n),
                    fmt::format("quorums.{}", name));
    }
}

} // namespace

QuorumSpec
QuorumSpec::raft(int n, int qPer, int qVc)
{
    return QuorumSpec{ProtocolKind::Raft, n, qPer, qVc, std::nullopt,
                      std::nullopt};
}

QuorumSpec
QuorumSpec::pbft(int n, int qEq, int qPer, int qVc, int qVcT)
{
    return QuorumSpec{ProtocolKind::Pbft, n, qPer, qVc, qEq, qVcT};
}

QuorumSpec
QuorumSpec::raftMajority(int n)
{
    return raft(n, n / 2 + 1, n / 2 + 1);
}

void
QuorumSpec::validate() const
{
    if (n < 1)
    {
        throw Error(ErrorKind::Configuration,
                    fmt::format("node count {} must be at least 1", n));
    }
    checkSize("q_per", qPer, n);
    checkSize("q_vc", qVc, n);
    if (protocol == ProtocolKind::Pbft)
    {
        if (!qEq)
        {
            throw Error(ErrorKind::Configuration, "pbft requires q_eq",
                        "quorums.q_eq");
        }
        if (!qVcT)
        {
            throw Error(ErrorKind::Configuration, "pbft requires q_vc_t",
                        "quorums.q_vc_t");
        }
        checkSize("q_eq", *qEq, n);
        checkSize("q_vc_t", *qVcT, n);
    }
    else if (qEq || qVcT)
    {
        throw Error(ErrorKind::Configuration,
                    "raft quorums carry no q_eq or q_vc_t");
    }
}

int
QuorumSpec::largestQuorum() const
{
    int largest = std::max(qPer, qVc);
    if (protocol == ProtocolKind::Pbft)
    {
        largest = std::max(largest, qEq.value());
    }
    return largest;
}

char
statusLetter(NodeStatus status) noexcept
{
    switch (status)
    {
    case NodeStatus::Correct:
        return 'C';
    case NodeStatus::Crashed:
        return 'X';
    case NodeStatus::Byzantine:
        return 'B';
    }
    return '?';
}

FailureConfiguration
FailureConfiguration::allCorrect(std::size_t n)
{
    return FailureConfiguration{std::vector<NodeStatus>(n, NodeStatus::Correct)};
}

CountVector
FailureConfiguration::summarize() const noexcept
{
    CountVector c;
    for (auto s : statuses)
    {
        switch (s)
        {
        case NodeStatus::Correct:
            ++c.correct;
            break;
        case NodeStatus::Crashed:
            ++c.crashed;
            break;
        case NodeStatus::Byzantine:
            ++c.byz;
            break;
        }
    }
    return c;
}

bool
pbftSafe(CountVector const& counts, QuorumSpec const& q)
{
    requireProtocol(q, ProtocolKind::Pbft);
    int const n = q.n;
    return counts.byz < 2 * q.qEq.value() - n &&
           counts.byz < q.qPer + q.qVc - n;
}

bool
pbftLive(CountVector const& counts, QuorumSpec const& q, LivenessRule rule)
{
    requireProtocol(q, ProtocolKind::Pbft);
    int const vcT = q.qVcT.value();
    int const slack = rule == LivenessRule::Corrected ? q.qVc - vcT
                                                      : vcT - q.qVc;
    return counts.byz <= slack && counts.correct >= q.largestQuorum() &&
           counts.byz < vcT;
}

bool
raftSafeStructural(QuorumSpec const& q)
{
    requireProtocol(q, ProtocolKind::Raft);
    return q.n < q.qPer + q.qVc && q.n < 2 * q.qVc;
}

bool
raftLive(CountVector const& counts, QuorumSpec const& q)
{
    requireProtocol(q, ProtocolKind::Raft);
    if (counts.byz != 0)
    {
        throw Error(ErrorKind::ModelMismatch,
                    "raft liveness is undefined with Byzantine nodes");
    }
    return counts.correct >= std::max(q.qPer, q.qVc);
}

Verdict
classifyCounts(CountVector const& counts, QuorumSpec const& q,
               LivenessRule rule)
{
    if (q.protocol == ProtocolKind::Raft)
    {
        return {raftSafeStructural(q), raftLive(counts, q)};
    }
    return {pbftSafe(counts, q), pbftLive(counts, q, rule)};
}

Verdict
classify(FailureConfiguration const& config, QuorumSpec const& q,
         LivenessRule rule)
{
    if (config.size() != static_cast<std::size_t>(q.n))
    {
        throw Error(ErrorKind::Domain,
                    fmt::format("configuration has {} nodes, quorum spec {}",
                                config.size(), q.n));
    }
    return classifyCounts(config.summarize(), q, rule);
}

} // namespace quorel
