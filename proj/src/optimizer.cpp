// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "quorel/optimizer.hpp"

#include "quorel/percent.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <thread>

namespace quorel
{

QuorumRule
QuorumRule::majority()
{
    return QuorumRule(Kind::Majority);
}

QuorumRule
QuorumRule::byzantineThreshold()
{
    return QuorumRule(Kind::ByzantineThreshold);
}

QuorumRule
QuorumRule::explicitSizes(std::map<int, QuorumSpec> sizes)
{
    QuorumRule rule(Kind::Explicit);
    for (auto const& [n, q] : sizes)
    {
        if (q.n != n)
        {
            throw Error(ErrorKind::Configuration,
                        fmt::format("quorum row for n={} declares n={}", n,
                                    q.n));
        }
    }
    rule.mSizes = std::move(sizes);
    return rule;
}

QuorumRule
QuorumRule::pbftClassic()
{
    return explicitSizes({{4, QuorumSpec::pbft(4, 3, 3, 3, 2)},
                          {5, QuorumSpec::pbft(5, 4, 4, 4, 2)},
                          {7, QuorumSpec::pbft(7, 5, 5, 5, 3)},
                          {8, QuorumSpec::pbft(8, 6, 6, 6, 3)}});
}

bool
QuorumRule::covers(ProtocolKind protocol, int n) const noexcept
{
    try
    {
        forSize(protocol, n);
        return true;
    }
    catch (Error const&)
    {
        return false;
    }
}

QuorumSpec
QuorumRule::forSize(ProtocolKind protocol, int n) const
{
    if (n < 1)
    {
        throw Error(ErrorKind::Configuration,
                    fmt::format("no quorums for n={}", n));
    }
    QuorumSpec q;
    switch (mKind)
    {
    case Kind::Majority:
        if (protocol != ProtocolKind::Raft)
        {
            throw Error(ErrorKind::Configuration,
                        "majority rule defines raft quorums only");
        }
        q = QuorumSpec::raftMajority(n);
        break;
    case Kind::ByzantineThreshold:
    {
        int const f = (n - 1) / 3;
        q = protocol == ProtocolKind::Pbft
                ? QuorumSpec::pbft(n, n - f, n - f, n - f, f + 1)
                : QuorumSpec::raft(n, n - f, n - f);
        break;
    }
    case Kind::Explicit:
    {
        auto it = mSizes.find(n);
        if (it == mSizes.end())
        {
            throw Error(ErrorKind::Configuration,
                        fmt::format("quorum rule has no row for n={}", n));
        }
        q = it->second;
        if (q.protocol != protocol)
        {
            throw Error(ErrorKind::Configuration,
                        fmt::format("quorum row for n={} is {}, not {}", n,
                                    toString(q.protocol), toString(protocol)));
        }
        break;
    }
    }
    q.validate();
    return q;
}

std::string
QuorumRule::describe() const
{
    switch (mKind)
    {
    case Kind::Majority:
        return "majority";
    case Kind::ByzantineThreshold:
        return "byzantine-threshold";
    case Kind::Explicit:
        break;
    }
    return "explicit";
}

FaultProfile
sweepProfile(ProtocolKind protocol, double p)
{
    return protocol == ProtocolKind::Raft ? FaultProfile::crashOnly(p)
                                          : FaultProfile::byzantineOnly(p);
}

std::vector<SweepRow>
sweepTable(ProtocolKind protocol, std::span<int const> nValues,
           QuorumRule const& rule, std::span<double const> pValues,
           LivenessRule liveness)
{
    std::vector<SweepRow> rows;
    rows.reserve(nValues.size());
    for (std::size_t i = 0; i < nValues.size(); ++i)
    {
        SweepRow row;
        row.n = nValues[i];
        try
        {
            row.quorums = rule.forSize(protocol, row.n);
        }
        catch (Error const& e)
        {
            throw Error(ErrorKind::Configuration,
                        fmt::format("row {} (n={}): {}", i, row.n, e.what()),
                        fmt::format("rows[{}]", i));
        }
        for (double p : pValues)
        {
            auto const d = Deployment::homogeneous(
                static_cast<std::size_t>(row.n), sweepProfile(protocol, p));
            row.cells.push_back({p, analyzeDp(d, row.quorums, liveness)});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Frontier
tradeoffFrontier(ProtocolKind protocol, std::span<QuorumSpec const> candidates,
                 double p, LivenessRule liveness)
{
    Frontier f;
    f.p = p;
    for (auto const& q : candidates)
    {
        if (q.protocol != protocol)
        {
            throw Error(ErrorKind::Configuration,
                        "frontier candidate has a different protocol");
        }
        auto const d = Deployment::homogeneous(static_cast<std::size_t>(q.n),
                                               sweepProfile(protocol, p));
        auto const r = analyzeDp(d, q, liveness);
        f.points.push_back({q, r.pSafe, r.pLive});
    }
    auto ratio = [](double num, double den) -> std::optional<double> {
        if (den <= 0.0)
        {
            return std::nullopt;
        }
        return num / den;
    };
    for (std::size_t a = 0; a < f.points.size(); ++a)
    {
        for (std::size_t b = a + 1; b < f.points.size(); ++b)
        {
            auto const& pa = f.points[a];
            auto const& pb = f.points[b];
            f.ratios.push_back({a, b, ratio(1.0 - pa.pSafe, 1.0 - pb.pSafe),
                                ratio(1.0 - pb.pLive, 1.0 - pa.pLive)});
        }
    }
    return f;
}

bool
ReliabilityTarget::met(double achieved) const noexcept
{
    if (percentDecimals)
    {
        return percentUnits(achieved, *percentDecimals) >=
               percentUnits(value, *percentDecimals);
    }
    return achieved >= value;
}

Deployment
buildDeployment(std::span<NodeClass const> classes, std::span<int const> counts)
{
    if (classes.size() != counts.size())
    {
        throw Error(ErrorKind::Domain, "class counts do not match classes");
    }
    Deployment d;
    for (std::size_t c = 0; c < classes.size(); ++c)
    {
        for (int i = 0; i < counts[c]; ++i)
        {
            d.nodes.push_back(Node{fmt::format("{}{}", classes[c].label, i),
                                   classes[c].profile, classes[c].label,
                                   classes[c].unitCost});
        }
    }
    return d;
}

namespace
{

void
checkClasses(std::span<NodeClass const> classes, ProtocolKind protocol)
{
    if (classes.empty())
    {
        throw Error(ErrorKind::Domain, "no node classes", "classes");
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
    {
        auto const& k = classes[c];
        auto const path = fmt::format("classes[{}]", c);
        if (!k.profile.valid())
        {
            throw Error(ErrorKind::Profile,
                        fmt::format("class '{}' has an invalid profile",
                                    k.label),
                        path);
        }
        if (!std::isfinite(k.unitCost) || k.unitCost < 0.0)
        {
            throw Error(ErrorKind::Domain,
                        fmt::format("class '{}' has a negative cost", k.label),
                        path);
        }
        if (protocol == ProtocolKind::Raft && k.profile.pByz > 0.0)
        {
            throw Error(ErrorKind::ModelMismatch,
                        fmt::format("raft class '{}' has p_byz > 0", k.label),
                        path);
        }
    }
}

void
compositions(int classCount, int maxN, std::vector<int>& current,
             std::vector<std::vector<int>>& out, int used)
{
    if (static_cast<int>(current.size()) == classCount)
    {
        if (used > 0)
        {
            out.push_back(current);
        }
        return;
    }
    for (int k = 0; k + used <= maxN; ++k)
    {
        current.push_back(k);
        compositions(classCount, maxN, current, out, used + k);
        current.pop_back();
    }
}

bool
cheaper(Candidate const& a, Candidate const& b)
{
    if (a.cost != b.cost)
    {
        return a.cost < b.cost;
    }
    if (a.n != b.n)
    {
        return a.n < b.n;
    }
    return a.counts < b.counts;
}

bool
moreReliable(Candidate const& a, Candidate const& b)
{
    if (a.report.pSafeAndLive != b.report.pSafeAndLive)
    {
        return a.report.pSafeAndLive > b.report.pSafeAndLive;
    }
    return cheaper(a, b);
}

} // namespace

OptimizeResult
optimizeDeployment(std::span<NodeClass const> classes,
                   ReliabilityTarget const& target, ProtocolKind protocol,
                   int maxN, QuorumRule const& rule, LivenessRule liveness)
{
    if (maxN < 1)
    {
        throw Error(ErrorKind::Domain, "max_n must be at least 1", "max_n");
    }
    if (!(target.value > 0.0 && target.value <= 1.0))
    {
        throw Error(ErrorKind::Domain, "target must lie in (0, 1]", "target");
    }
    checkClasses(classes, protocol);

    std::vector<std::vector<int>> all;
    std::vector<int> scratch;
    compositions(static_cast<int>(classes.size()), maxN, scratch, all, 0);

    std::vector<std::optional<Candidate>> evaluated(all.size());
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < all.size(); i += stride)
        {
            int n = 0;
            for (int k : all[i])
            {
                n += k;
            }
            if (!rule.covers(protocol, n))
            {
                continue;
            }
            auto const d = buildDeployment(classes, all[i]);
            auto const q = rule.forSize(protocol, n);
            evaluated[i] = Candidate{all[i], n, d.totalCost(), q,
                                     analyzeDp(d, q, liveness)};
        }
    };
    std::size_t const threads = std::clamp<std::size_t>(
        std::thread::hardware_concurrency(), 1, 16);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t)
        {
            pool.emplace_back(work, t, threads);
        }
        work(0, threads);
    }

    OptimizeResult result;
    std::optional<Candidate> bestMet;
    std::optional<Candidate> bestAchieved;
    for (auto& c : evaluated)
    {
        if (!c)
        {
            continue;
        }
        ++result.evaluated;
        if (target.met(c->report.pSafeAndLive) &&
            (!bestMet || cheaper(*c, *bestMet)))
        {
            bestMet = *c;
        }
        if (!bestAchieved || moreReliable(*c, *bestAchieved))
        {
            bestAchieved = *c;
        }
    }
    result.attained = bestMet.has_value();
    result.best = result.attained ? bestMet : bestAchieved;
    return result;
}

} // namespace quorel
