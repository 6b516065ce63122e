// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "quorel/fault_model.hpp"
#include "quorel/predicates.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace quorel
{

// Exact joint distribution of (#crashed, #byzantine) over a deployment with
// independent node failures.
class CountDistribution
{
  public:
    explicit CountDistribution(int nodes);

    int
    nodes() const noexcept
    {
        return mNodes;
    }

    // Zero outside the support crashed + byz <= nodes.
    double at(int crashed, int byz) const noexcept;
    double totalMass() const noexcept;

    // Convolves one more independent node into the distribution.
    void addNode(FaultProfile const& profile);

  private:
    int mNodes;
    int mAdded{0};
    std::vector<double> mPmf;

    double& cell(int crashed, int byz) noexcept;
};

CountDistribution countDistribution(Deployment const& deployment);

enum class Method
{
    Enumeration,
    CountDP,
    MonteCarlo,
};

std::string_view toString(Method method) noexcept;

struct StandardErrors
{
    double safe{0.0};
    double live{0.0};
    double safeAndLive{0.0};
};

struct MonteCarloInfo
{
    std::uint64_t samples{0};
    std::uint64_t seed{0};
    StandardErrors stdError;
};

struct ReliabilityReport
{
    double pSafe{0.0};
    double pLive{0.0};
    double pSafeAndLive{0.0};
    Method method{Method::CountDP};
    QuorumSpec quorums;
    std::optional<MonteCarloInfo> monteCarlo;

    int
    n() const noexcept
    {
        return quorums.n;
    }
};

// Node limits for exhaustive enumeration: 2^16 Raft and 3^9 PBFT
// configurations by default.
struct EnumerationCap
{
    int raftMaxNodes{16};
    int pbftMaxNodes{9};
};

// Ground-truth oracle: sums the probability of every failure configuration
// classified safe / live. Throws Error(Capacity) above the cap.
ReliabilityReport enumerateExact(Deployment const& deployment,
                                 QuorumSpec const& q,
                                 LivenessRule rule = LivenessRule::Corrected,
                                 EnumerationCap cap = {});

// Same quantities from the count distribution; valid because the predicates
// only look at counts. Handles hundreds of nodes.
ReliabilityReport analyzeDp(Deployment const& deployment, QuorumSpec const& q,
                            LivenessRule rule = LivenessRule::Corrected);

// P(#failed nodes >= k), counting crashed and Byzantine nodes alike.
double atLeastKFailures(Deployment const& deployment, int k);

// Probability that every listed member fails.
double specificQuorumLoss(std::span<FaultProfile const> members);

// Probability that a uniformly chosen quorum of `size` nodes contains at
// least one correct node.
double randomQuorumContainsCorrect(Deployment const& deployment, int size);

namespace detail
{
double randomQuorumLossExhaustive(std::span<FaultProfile const> profiles,
                                  int size);
double randomQuorumLossByClass(std::span<FaultProfile const> profiles,
                               int size);
} // namespace detail

// Durability of an explicit quorum, defined as the probability that at least
// one member survives. With `requiredClass`, the deployment must contain a
// node of that class and the quorum must include one, otherwise
// Error(Constraint).
double constrainedQuorumDurability(
    Deployment const& deployment, std::span<std::size_t const> members,
    std::optional<std::string> const& requiredClass = std::nullopt);

} // namespace quorel
