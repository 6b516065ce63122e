// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "quorel/exact_analysis.hpp"

#include "quorel/summation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <unordered_set>

namespace quorel
{

namespace
{

void
prepare(Deployment const& deployment, QuorumSpec const& q)
{
    requireValid(deployment, q.protocol);
    q.validate();
    if (static_cast<std::size_t>(q.n) != deployment.size())
    {
        throw Error(ErrorKind::Configuration,
                    fmt::format("quorum spec is for {} nodes but the "
                                "deployment has {}",
                                q.n, deployment.size()));
    }
}

// Masses of holding and failing configurations are kept apart; the
// smaller one is the accurate side, so high-reliability results come from
// 1 - (failing mass) and are exactly 1 when nothing fails.
struct Accumulator
{
    std::array<CompensatedSum, 3> hold;
    std::array<CompensatedSum, 3> fail;

    void
    add(Verdict v, double p)
    {
        std::array<bool, 3> const holds = {v.safe, v.live, v.safe && v.live};
        for (std::size_t i = 0; i < 3; ++i)
        {
            (holds[i] ? hold[i] : fail[i]).add(p);
        }
    }

    double
    probability(std::size_t i) const
    {
        double const h = hold[i].value();
        double const x = h <= 0.5 ? h : 1.0 - fail[i].value();
        return std::clamp(x, 0.0, 1.0);
    }

    ReliabilityReport
    report(Method method, QuorumSpec const& q) const
    {
        return ReliabilityReport{probability(0), probability(1),
                                 probability(2), method,
                                 q,              std::nullopt};
    }
};

double
statusProbability(FaultProfile const& p, NodeStatus s)
{
    switch (s)
    {
    case NodeStatus::Correct:
        return p.pCorrect();
    case NodeStatus::Crashed:
        return p.pCrash;
    case NodeStatus::Byzantine:
        return p.pByz;
    }
    return 0.0;
}

// Failure probabilities only, since quorum loss cares about "not correct".
std::vector<double>
failureProbabilities(std::span<FaultProfile const> profiles)
{
    std::vector<double> out;
    out.reserve(profiles.size());
    for (auto const& p : profiles)
    {
        out.push_back(p.pFail());
    }
    return out;
}

double
logChoose(int n, int k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
           std::lgamma(n - k + 1.0);
}

} // namespace

CountDistribution::CountDistribution(int nodes)
    : mNodes(nodes)
    , mPmf(static_cast<std::size_t>(nodes + 1) * (nodes + 1), 0.0)
{
    if (nodes < 0)
    {
        throw Error(ErrorKind::Domain, "negative node count");
    }
    mPmf[0] = 1.0;
}

double&
CountDistribution::cell(int crashed, int byz) noexcept
{
    return mPmf[static_cast<std::size_t>(crashed) * (mNodes + 1) + byz];
}

double
CountDistribution::at(int crashed, int byz) const noexcept
{
    if (crashed < 0 || byz < 0 || crashed + byz > mNodes)
    {
        return 0.0;
    }
    return mPmf[static_cast<std::size_t>(crashed) * (mNodes + 1) + byz];
}

double
CountDistribution::totalMass() const noexcept
{
    CompensatedSum sum;
    for (double p : mPmf)
    {
        sum.add(p);
    }
    return sum.value();
}

void
CountDistribution::addNode(FaultProfile const& profile)
{
    if (mAdded == mNodes)
    {
        throw Error(ErrorKind::Domain, "count distribution is full");
    }
    ++mAdded;
    double const pc = profile.pCorrect();
    // In-place update from high totals to low so every read sees the
    // previous generation.
    for (int total = mAdded; total >= 0; --total)
    {
        for (int crashed = total; crashed >= 0; --crashed)
        {
            int const byz = total - crashed;
            double v = at(crashed, byz) * pc;
            if (crashed > 0)
            {
                v += at(crashed - 1, byz) * profile.pCrash;
            }
            if (byz > 0)
            {
                v += at(crashed, byz - 1) * profile.pByz;
            }
            cell(crashed, byz) = v;
        }
    }
}

CountDistribution
countDistribution(Deployment const& deployment)
{
    CountDistribution dist(static_cast<int>(deployment.size()));
    for (auto const& node : deployment.nodes)
    {
        if (!node.profile.valid())
        {
            throw Error(ErrorKind::Profile,
                        fmt::format("node '{}' has an invalid profile",
                                    node.id));
        }
        dist.addNode(node.profile);
    }
    return dist;
}

std::string_view
toString(Method method) noexcept
{
    switch (method)
    {
    case Method::Enumeration:
        return "enumeration";
    case Method::CountDP:
        return "count-dp";
    case Method::MonteCarlo:
        return "monte-carlo";
    }
    return "unknown";
}

ReliabilityReport
enumerateExact(Deployment const& deployment, QuorumSpec const& q,
               LivenessRule rule, EnumerationCap cap)
{
    prepare(deployment, q);
    int const n = q.n;
    bool const raft = q.protocol == ProtocolKind::Raft;
    int const limit = raft ? cap.raftMaxNodes : cap.pbftMaxNodes;
    if (n > limit)
    {
        throw Error(ErrorKind::Capacity,
                    fmt::format("{} nodes exceed the enumeration cap of {} for "
                                "{}; use the count DP instead",
                                n, limit, toString(q.protocol)));
    }

    int const states = raft ? 2 : 3;
    FailureConfiguration config = FailureConfiguration::allCorrect(n);
    std::vector<int> digits(n, 0);
    Accumulator acc;
    while (true)
    {
        double p = 1.0;
        for (int i = 0; i < n; ++i)
        {
            p *= statusProbability(deployment.nodes[i].profile,
                                   config.statuses[i]);
        }
        acc.add(classify(config, q, rule), p);

        // Mixed-radix increment over {Correct, Crashed[, Byzantine]}^n.
        int i = 0;
        while (i < n && ++digits[i] == states)
        {
            digits[i] = 0;
            config.statuses[i] = NodeStatus::Correct;
            ++i;
        }
        if (i == n)
        {
            break;
        }
        config.statuses[i] = static_cast<NodeStatus>(digits[i]);
    }
    return acc.report(Method::Enumeration, q);
}

ReliabilityReport
analyzeDp(Deployment const& deployment, QuorumSpec const& q, LivenessRule rule)
{
    prepare(deployment, q);
    auto const dist = countDistribution(deployment);
    int const n = q.n;
    Accumulator acc;
    for (int crashed = 0; crashed <= n; ++crashed)
    {
        for (int byz = 0; crashed + byz <= n; ++byz)
        {
            double const p = dist.at(crashed, byz);
            if (p == 0.0)
            {
                continue;
            }
            CountVector const counts{n - crashed - byz, crashed, byz};
            acc.add(classifyCounts(counts, q, rule), p);
        }
    }
    return acc.report(Method::CountDP, q);
}

double
atLeastKFailures(Deployment const& deployment, int k)
{
    int const n = static_cast<int>(deployment.size());
    if (k < 0 || k > n)
    {
        throw Error(ErrorKind::Domain,
                    fmt::format("k={} outside [0, {}]", k, n));
    }
    if (k == 0)
    {
        return 1.0;
    }
    std::vector<double> pmf(n + 1, 0.0);
    pmf[0] = 1.0;
    int added = 0;
    for (auto const& node : deployment.nodes)
    {
        double const f = node.profile.pFail();
        ++added;
        for (int j = added; j >= 0; --j)
        {
            pmf[j] = pmf[j] * (1.0 - f) + (j > 0 ? pmf[j - 1] * f : 0.0);
        }
    }
    CompensatedSum tail;
    for (int j = n; j >= k; --j)
    {
        tail.add(pmf[j]);
    }
    return std::clamp(tail.value(), 0.0, 1.0);
}

double
specificQuorumLoss(std::span<FaultProfile const> members)
{
    if (members.empty())
    {
        throw Error(ErrorKind::Domain, "quorum has no members");
    }
    double p = 1.0;
    for (auto const& m : members)
    {
        p *= m.pFail();
    }
    return p;
}

namespace detail
{

double
randomQuorumLossExhaustive(std::span<FaultProfile const> profiles, int size)
{
    int const n = static_cast<int>(profiles.size());
    auto const fail = failureProbabilities(profiles);
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i)
    {
        idx[i] = i;
    }
    CompensatedSum sum;
    double subsets = 0.0;
    while (true)
    {
        double p = 1.0;
        for (int i : idx)
        {
            p *= fail[i];
        }
        sum.add(p);
        subsets += 1.0;

        int i = size - 1;
        while (i >= 0 && idx[i] == n - size + i)
        {
            --i;
        }
        if (i < 0)
        {
            break;
        }
        ++idx[i];
        for (int j = i + 1; j < size; ++j)
        {
            idx[j] = idx[j - 1] + 1;
        }
    }
    return sum.value() / subsets;
}

double
randomQuorumLossByClass(std::span<FaultProfile const> profiles, int size)
{
    std::map<double, int> classes;
    for (double f : failureProbabilities(profiles))
    {
        ++classes[f];
    }

    // mean[j]: average, over all j-subsets of the classes merged so far, of
    // the product of member failure probabilities. Merging a class of m
    // nodes splits each draw of j nodes hypergeometrically between the
    // previous pool and the new class.
    std::vector<double> mean(size + 1, 0.0);
    mean[0] = 1.0;
    int pool = 0;
    for (auto const& [f, m] : classes)
    {
        int const merged = pool + m;
        std::vector<double> next(size + 1, 0.0);
        for (int j = 0; j <= std::min(size, merged); ++j)
        {
            CompensatedSum acc;
            for (int k = std::max(0, j - pool); k <= std::min(j, m); ++k)
            {
                double const weight =
                    std::exp(logChoose(pool, j - k) + logChoose(m, k) -
                             logChoose(merged, j));
                acc.add(weight * mean[j - k] * std::pow(f, k));
            }
            next[j] = acc.value();
        }
        mean = std::move(next);
        pool = merged;
    }
    return mean[size];
}

} // namespace detail

double
randomQuorumContainsCorrect(Deployment const& deployment, int size)
{
    int const n = static_cast<int>(deployment.size());
    if (size < 1 || size > n)
    {
        throw Error(ErrorKind::Domain,
                    fmt::format("quorum size {} outside [1, {}]", size, n));
    }
    auto const profiles = deployment.profiles();
    double const loss = n <= 20
                            ? detail::randomQuorumLossExhaustive(profiles, size)
                            : detail::randomQuorumLossByClass(profiles, size);
    return 1.0 - loss;
}

double
constrainedQuorumDurability(Deployment const& deployment,
                            std::span<std::size_t const> members,
                            std::optional<std::string> const& requiredClass)
{
    if (members.empty())
    {
        throw Error(ErrorKind::Domain, "quorum has no members");
    }
    std::unordered_set<std::size_t> seen;
    std::vector<FaultProfile> profiles;
    bool quorumHasClass = false;
    for (auto m : members)
    {
        if (m >= deployment.size())
        {
            throw Error(ErrorKind::Domain,
                        fmt::format("quorum member {} is not a node index", m));
        }
        if (!seen.insert(m).second)
        {
            throw Error(ErrorKind::Domain,
                        fmt::format("quorum member {} listed twice", m));
        }
        auto const& node = deployment.nodes[m];
        profiles.push_back(node.profile);
        if (requiredClass && node.classLabel == requiredClass)
        {
            quorumHasClass = true;
        }
    }
    if (requiredClass)
    {
        bool const available = std::any_of(
            deployment.nodes.begin(), deployment.nodes.end(),
            [&](Node const& n) { return n.classLabel == requiredClass; });
        if (!available)
        {
            throw Error(ErrorKind::Constraint,
                        fmt::format("no node of class '{}' in the deployment",
                                    *requiredClass));
        }
        if (!quorumHasClass)
        {
            throw Error(ErrorKind::Constraint,
                        fmt::format("quorum has no node of class '{}'",
                                    *requiredClass));
        }
    }
    return 1.0 - specificQuorumLoss(profiles);
}

} // namespace quorel
