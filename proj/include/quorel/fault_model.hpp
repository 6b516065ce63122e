// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "quorel/error.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quorel
{

enum class ProtocolKind
{
    Raft,
    Pbft,
};

std::string_view toString(ProtocolKind protocol) noexcept;
std::optional<ProtocolKind> parseProtocol(std::string_view name) noexcept;

// Per-epoch failure probabilities of one node. A node is Correct with
// probability 1 - pCrash - pByz; that value is always derived, never stored.
struct FaultProfile
{
    double pCrash{0.0};
    double pByz{0.0};

    static FaultProfile
    crashOnly(double p)
    {
        return {p, 0.0};
    }

    static FaultProfile
    byzantineOnly(double p)
    {
        return {0.0, p};
    }

    double
    pFail() const noexcept
    {
        return pCrash + pByz;
    }

    double
    pCorrect() const noexcept
    {
        return 1.0 - pCrash - pByz;
    }

    bool valid() const noexcept;

    friend bool operator==(FaultProfile const&, FaultProfile const&) = default;
};

// Piecewise-constant, right-continuous fault curve over time in hours.
class FaultCurve
{
  public:
    struct Segment
    {
        double startHours;
        FaultProfile profile;
    };

    // Throws Error(Domain) unless segments are non-empty, start at 0, have
    // strictly increasing start times and valid profiles.
    explicit FaultCurve(std::vector<Segment> segments);

    std::span<Segment const>
    segments() const noexcept
    {
        return mSegments;
    }

    FaultProfile at(double hours) const;

  private:
    std::vector<Segment> mSegments;
};

// Profile of the segment active at time t (the last segment starting at or
// before t). Negative or non-finite t is a domain error.
FaultProfile epochProbability(FaultCurve const& curve, double hours);

struct Node
{
    std::string id;
    FaultProfile profile;
    std::optional<std::string> classLabel;
    double cost{0.0};
};

// Nodes in canonical order; every report refers to nodes by index into it.
struct Deployment
{
    std::vector<Node> nodes;

    static Deployment homogeneous(std::size_t count, FaultProfile profile,
                                  double cost = 0.0);
    static Deployment fromProfiles(std::span<FaultProfile const> profiles);

    std::size_t
    size() const noexcept
    {
        return nodes.size();
    }

    std::vector<FaultProfile> profiles() const;
    double totalCost() const noexcept;
};

struct ValidationIssue
{
    ErrorKind kind;
    std::string nodeId;
    std::string message;
};

// All problems found, in node order; empty means the deployment is usable
// for `protocol`. Raft rejects any nonzero pByz since it has no Byzantine
// fault model.
std::vector<ValidationIssue> validateDeployment(Deployment const& deployment,
                                                ProtocolKind protocol);

// Throws the first issue reported by validateDeployment, if any.
void requireValid(Deployment const& deployment, ProtocolKind protocol);

} // namespace quorel
