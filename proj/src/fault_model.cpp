// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "quorel/fault_model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace quorel
{

std::string_view
toString(ProtocolKind protocol) noexcept
{
    return protocol == ProtocolKind::Raft ? "raft" : "pbft";
}

std::optional<ProtocolKind>
parseProtocol(std::string_view name) noexcept
{
    if (name == "raft")
    {
        return ProtocolKind::Raft;
    }
    if (name == "pbft")
    {
        return ProtocolKind::Pbft;
    }
    return std::nullopt;
}

bool
FaultProfile::valid() const noexcept
{
    return std::isfinite(pCrash) && std::isfinite(pByz) && pCrash >= 0.0 &&
           pByz >= 0.0 && pCrash + pByz <= 1.0;
}

FaultCurve::FaultCurve(std::vector<Segment> segments)
    : mSegments(std::move(segments))
{
    if (mSegments.empty())
    {
        throw Error(ErrorKind::Domain, "fault curve has no segments");
    }
    if (mSegments.front().startHours != 0.0)
    {
        throw Error(ErrorKind::Domain,
                    "fault curve must start at time 0");
    }
    for (std::size_t i = 0; i < mSegments.size(); ++i)
    {
        if (!mSegments[i].profile.valid())
        {
            throw Error(ErrorKind::Profile,
                        fmt::format("fault curve segment {} has an invalid "
                                    "profile",
                                    i));
        }
        if (i > 0 && !(mSegments[i].startHours > mSegments[i - 1].startHours))
        {
            throw Error(ErrorKind::Domain,
                        fmt::format("fault curve segment {} does not start "
                                    "after segment {}",
                                    i, i - 1));
        }
    }
}

FaultProfile
FaultCurve::at(double hours) const
{
    if (!std::isfinite(hours) || hours < 0.0)
    {
        throw Error(ErrorKind::Domain,
                    fmt::format("fault curve evaluated at t={}", hours));
    }
    // First segment starting strictly after t; the active one precedes it.
    auto next = std::upper_bound(
        mSegments.begin(), mSegments.end(), hours,
        [](double t, Segment const& s) { return t < s.startHours; });
    return std::prev(next)->profile;
}

FaultProfile
epochProbability(FaultCurve const& curve, double hours)
{
    return curve.at(hours);
}

Deployment
Deployment::homogeneous(std::size_t count, FaultProfile profile, double cost)
{
    Deployment d;
    d.nodes.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        d.nodes.push_back(
            Node{fmt::format("n{}", i), profile, std::nullopt, cost});
    }
    return d;
}

Deployment
Deployment::fromProfiles(std::span<FaultProfile const> profiles)
{
    Deployment d;
    d.nodes.reserve(profiles.size());
    for (std::size_t i = 0; i < profiles.size(); ++i)
    {
        d.nodes.push_back(
            Node{fmt::format("n{}", i), profiles[i], std::nullopt, 0.0});
    }
    return d;
}

std::vector<FaultProfile>
Deployment::profiles() const
{
    std::vector<FaultProfile> out;
    out.reserve(nodes.size());
    for (auto const& node : nodes)
    {
        out.push_back(node.profile);
    }
    return out;
}

double
Deployment::totalCost() const noexcept
{
    return std::accumulate(
        nodes.begin(), nodes.end(), 0.0,
        [](double acc, Node const& n) { return acc + n.cost; });
}

std::vector<ValidationIssue>
validateDeployment(Deployment const& deployment, ProtocolKind protocol)
{
    std::vector<ValidationIssue> issues;
    if (deployment.nodes.empty())
    {
        issues.push_back({ErrorKind::Domain, "",
                          "deployment must contain at least one node"});
        return issues;
    }

    std::unordered_set<std::string> seen;
    for (auto const& node : deployment.nodes)
    {
        auto const& p = node.profile;
        if (!p.valid())
        {
            issues.push_back(
                {ErrorKind::Profile, node.id,
                 fmt::format("node '{}': probabilities p_crash={} p_byz={} "
                             "must be nonnegative with sum at most 1",
                             node.id, p.pCrash, p.pByz)});
        }
        if (!seen.insert(node.id).second)
        {
            issues.push_back({ErrorKind::Identity, node.id,
                              fmt::format("duplicate node id '{}'", node.id)});
        }
        if (!std::isfinite(node.cost) || node.cost < 0.0)
        {
            issues.push_back(
                {ErrorKind::Domain, node.id,
                 fmt::format("node '{}': cost must be nonnegative", node.id)});
        }
        if (protocol == ProtocolKind::Raft && p.pByz > 0.0)
        {
            issues.push_back(
                {ErrorKind::ModelMismatch, node.id,
                 fmt::format("node '{}': raft tolerates crash faults only but "
                             "p_byz={}",
                             node.id, p.pByz)});
        }
    }
    return issues;
}

void
requireValid(Deployment const& deployment, ProtocolKind protocol)
{
    auto issues = validateDeployment(deployment, protocol);
    if (!issues.empty())
    {
        auto const& first = issues.front();
        std::string path;
        if (!first.nodeId.empty())
        {
            for (std::size_t i = 0; i < deployment.nodes.size(); ++i)
            {
                if (deployment.nodes[i].id == first.nodeId)
                {
                    path = fmt::format("nodes[{}]", i);
                    break;
                }
            }
        }
        throw Error(first.kind, first.message, path);
    }
}

} // namespace quorel
