// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "quorel/witness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>

namespace quorel
{

namespace
{

constexpr std::array<std::string_view, 9> kEventNames = {
    "Propose",           "Equivoke",           "Vote",
    "Persist",           "Commit",             "ViewChangeRequest",
    "ViewChangeComplete", "Crash",             "Stall"};

constexpr std::array<std::string_view, 4> kViolationNames = {
    "SplitBrain", "LostCommit", "Equivocation", "Stall"};

constexpr std::array<std::string_view, 3> kObstructionNames = {
    "MissingQuorum", "SpuriousViewChange", "ViewSyncSplit"};

template <typename Enum, std::size_t N>
std::optional<Enum>
parseByName(std::array<std::string_view, N> const& names,
            std::string_view name) noexcept
{
    for (std::size_t i = 0; i < N; ++i)
    {
        if (names[i] == name)
        {
            return static_cast<Enum>(i);
        }
    }
    return std::nullopt;
}

void
checkShape(FailureConfiguration const& config, QuorumSpec const& q)
{
    q.validate();
    if (config.size() != static_cast<std::size_t>(q.n))
    {
        throw Error(ErrorKind::Domain,
                    fmt::format("configuration has {} nodes, quorum spec {}",
                                config.size(), q.n));
    }
    if (q.protocol == ProtocolKind::Raft && config.summarize().byz > 0)
    {
        throw Error(ErrorKind::ModelMismatch,
                    "raft configuration contains a Byzantine node");
    }
}

bool
isByzantine(FailureConfiguration const& config, int node)
{
    return config.statuses[node] == NodeStatus::Byzantine;
}

class TraceBuilder
{
  public:
    explicit TraceBuilder(FailureConfiguration const& config) : mConfig(config)
    {
    }

    void
    add(int actor, EventKind kind, int view, int slot = 0,
        std::string value = {}, std::optional<int> target = std::nullopt)
    {
        mMaxView = std::max(mMaxView, view);
        mEvents.push_back(ProtocolEvent{mEvents.size(), actor, kind, view,
                                        slot, std::move(value), target});
    }

    void
    elect(int leader, int view, std::vector<int> const& voters)
    {
        for (int v : voters)
        {
            add(v, EventKind::ViewChangeRequest, view, 0, "", leader);
        }
        add(leader, EventKind::ViewChangeComplete, view);
    }

    // Crashed-status nodes stop at the very end of a safety trace.
    std::vector<ProtocolEvent>
    finishWithCrashes()
    {
        for (std::size_t i = 0; i < mConfig.size(); ++i)
        {
            if (mConfig.statuses[i] == NodeStatus::Crashed)
            {
                add(static_cast<int>(i), EventKind::Crash, mMaxView);
            }
        }
        return std::move(mEvents);
    }

  private:
    FailureConfiguration const& mConfig;
    std::vector<ProtocolEvent> mEvents;
    int mMaxView{0};
};

std::vector<int>
range(int begin, int end)
{
    std::vector<int> out;
    for (int i = begin; i < end; ++i)
    {
        out.push_back(i);
    }
    return out;
}

// Prefers a non-Byzantine node (other than `avoid`) so that conflicting
// commits land on nodes whose agreement the protocol promises.
int
pickCommitter(FailureConfiguration const& config,
              std::vector<int> const& candidates, int avoid = -1)
{
    for (int c : candidates)
    {
        if (c != avoid && !isByzantine(config, c))
        {
            return c;
        }
    }
    for (int c : candidates)
    {
        if (c != avoid && isByzantine(config, c))
        {
            return c;
        }
    }
    for (int c : candidates)
    {
        if (isByzantine(config, c))
        {
            return c;
        }
    }
    return candidates.front();
}

ViolationWitness
raftSplitBrain(FailureConfiguration const& config, QuorumSpec const& q)
{
    // Two disjoint vote quorums elect two leaders for view 1.
    TraceBuilder t(config);
    int const first = 0;
    int const second = q.qVc;
    t.elect(first, 1, range(0, q.qVc));
    t.elect(second, 1, range(q.qVc, 2 * q.qVc));

    auto const persisters = range(0, q.qPer);
    t.add(first, EventKind::Propose, 1, 0, "A");
    for (int u : persisters)
    {
        t.add(u, EventKind::Persist, 1, 0, "A");
    }
    t.add(first, EventKind::Commit, 1, 0, "A");

    t.add(second, EventKind::Propose, 1, 0, "B");
    for (int u : persisters)
    {
        t.add(u, EventKind::Persist, 1, 0, "B");
    }
    t.add(second, EventKind::Commit, 1, 0, "B");
    return {config, q, t.finishWithCrashes(), ViolationKind::SplitBrain,
            LivenessRule::Corrected, std::nullopt};
}

ViolationWitness
raftLostCommit(FailureConfiguration const& config, QuorumSpec const& q)
{
    // Persistence quorum [0, qPer) and view-change quorum
    // [qPer, qPer + qVc) are disjoint, so the new leader never hears of A.
    TraceBuilder t(config);
    auto const persisters = range(0, q.qPer);
    auto const voters = range(q.qPer, q.qPer + q.qVc);
    int const leader = voters.front();

    t.add(0, EventKind::Propose, 0, 0, "A");
    for (int u : persisters)
    {
        t.add(u, EventKind::Persist, 0, 0, "A");
    }
    t.add(persisters.front(), EventKind::Commit, 0, 0, "A");

    t.elect(leader, 1, voters);
    t.add(leader, EventKind::Propose, 1, 0, "B");
    std::vector<int> second = voters;
    for (int u = 0; u < q.n && static_cast<int>(second.size()) < q.qPer; ++u)
    {
        if (std::find(second.begin(), second.end(), u) == second.end())
        {
            second.push_back(u);
        }
    }
    second.resize(q.qPer);
    for (int u : second)
    {
        t.add(u, EventKind::Persist, 1, 0, "B");
    }
    t.add(leader, EventKind::Commit, 1, 0, "B");
    return {config, q, t.finishWithCrashes(), ViolationKind::LostCommit,
            LivenessRule::Corrected, std::nullopt};
}

ViolationWitness
pbftEquivocation(FailureConfiguration const& config, QuorumSpec const& q,
                 std::vector<int> const& byz, std::vector<int> const& honest)
{
    int const n = q.n;
    int const b = static_cast<int>(byz.size());
    int const leader = byz.front();
    int const view = leader; // leader == view mod n

    bool const commits = b >= 2 * q.qPer - n;
    int const quorum = commits ? std::max(*q.qEq, q.qPer) : *q.qEq;
    int const need = std::max(0, quorum - b);
    std::vector<int> sideA(honest.begin(), honest.begin() + need);
    std::vector<int> sideB(honest.begin() + need, honest.begin() + 2 * need);

    TraceBuilder t(config);
    if (view > 0)
    {
        t.elect(leader, view, range(0, q.qVc));
    }
    t.add(leader, EventKind::Propose, view, 0, "A");
    t.add(leader, EventKind::Equivoke, view, 0, "B");
    for (int u : byz)
    {
        t.add(u, EventKind::Vote, view, 0, "A");
        t.add(u, EventKind::Vote, view, 0, "B");
    }
    for (int u : sideA)
    {
        t.add(u, EventKind::Vote, view, 0, "A");
    }
    for (int u : sideB)
    {
        t.add(u, EventKind::Vote, view, 0, "B");
    }
    if (commits)
    {
        std::vector<int> withA = byz;
        withA.insert(withA.end(), sideA.begin(), sideA.end());
        std::vector<int> withB = byz;
        withB.insert(withB.end(), sideB.begin(), sideB.end());
        for (int u : withA)
        {
            t.add(u, EventKind::Persist, view, 0, "A");
        }
        for (int u : withB)
        {
            t.add(u, EventKind::Persist, view, 0, "B");
        }
        int const committerA = pickCommitter(config, withA);
        t.add(committerA, EventKind::Commit, view, 0, "A");
        t.add(pickCommitter(config, withB, committerA), EventKind::Commit,
              view, 0, "B");
    }
    return {config, q, t.finishWithCrashes(), ViolationKind::Equivocation,
            LivenessRule::Corrected, std::nullopt};
}

ViolationWitness
pbftLostCommit(FailureConfiguration const& config, QuorumSpec const& q,
               std::vector<int> const& byz)
{
    int const n = q.n;
    int const overlap = std::max(0, q.qPer + q.qVc - n);
    std::vector<int> shared(byz.begin(), byz.begin() + overlap);
    std::vector<int> rest;
    for (int u = 0; u < n; ++u)
    {
        if (std::find(shared.begin(), shared.end(), u) == shared.end())
        {
            rest.push_back(u);
        }
    }
    // Persistence quorum P and view-change quorum V meet only in Byzantine
    // nodes, which deny having persisted A.
    std::vector<int> persisters = shared;
    persisters.insert(persisters.end(), rest.begin(),
                      rest.begin() + (q.qPer - overlap));
    std::vector<int> voters = shared;
    voters.insert(voters.end(), rest.begin() + (q.qPer - overlap),
                  rest.begin() + (q.qPer - overlap) + (q.qVc - overlap));
    int const leader =
        q.qVc > overlap ? voters[overlap] : voters.front();
    int const newView = leader > 0 ? leader : n;

    TraceBuilder t(config);
    auto const everyone = range(0, n);
    t.add(0, EventKind::Propose, 0, 0, "A");
    for (int u : everyone)
    {
        t.add(u, EventKind::Vote, 0, 0, "A");
    }
    for (int u : persisters)
    {
        t.add(u, EventKind::Persist, 0, 0, "A");
    }
    int const committerA = pickCommitter(config, persisters);
    t.add(committerA, EventKind::Commit, 0, 0, "A");

    t.elect(leader, newView, voters);
    t.add(leader, EventKind::Propose, newView, 0, "B");
    for (int u : everyone)
    {
        t.add(u, EventKind::Vote, newView, 0, "B");
    }
    for (int u = 0; u < q.qPer; ++u)
    {
        t.add(u, EventKind::Persist, newView, 0, "B");
    }
    t.add(pickCommitter(config, everyone, committerA), EventKind::Commit,
          newView, 0, "B");
    return {config, q, t.finishWithCrashes(), ViolationKind::LostCommit,
            LivenessRule::Corrected, std::nullopt};
}

std::optional<StallProof>
findObstruction(CountVector const& c, QuorumSpec const& q, LivenessRule rule)
{
    std::vector<std::pair<std::string, int>> needed;
    if (q.protocol == ProtocolKind::Pbft)
    {
        needed.emplace_back("q_eq", *q.qEq);
    }
    needed.emplace_back("q_per", q.qPer);
    needed.emplace_back("q_vc", q.qVc);
    for (auto const& [name, size] : needed)
    {
        if (c.correct < size)
        {
            return StallProof{Obstruction::MissingQuorum, name, size,
                              c.correct};
        }
    }
    if (q.protocol == ProtocolKind::Raft)
    {
        return std::nullopt;
    }
    int const vcT = *q.qVcT;
    if (c.byz >= vcT)
    {
        return StallProof{Obstruction::SpuriousViewChange, "q_vc_t", vcT,
                          c.byz};
    }
    int const slack =
        rule == LivenessRule::Corrected ? q.qVc - vcT : vcT - q.qVc;
    if (c.byz > slack)
    {
        // Correct nodes left in a view-change quorum that also holds every
        // Byzantine node: too few to trigger the remaining correct nodes.
        return StallProof{Obstruction::ViewSyncSplit, "q_vc_t", vcT,
                          q.qVc - c.byz};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Checker. Shares no code with the constructions above.
// ---------------------------------------------------------------------------

using Key = std::tuple<int, int, std::string>; // view, slot, value

struct PersistRecord
{
    int view;
    std::size_t order;
    std::string value;
};

class Replay
{
  public:
    explicit Replay(ViolationWitness const& w)
        : mW(w)
        , mQ(w.quorums)
        , mN(w.quorums.n)
        , mCrashed(mN, false)
        , mView(mN, 0)
    {
        mLeaders[0].insert(0);
    }

    std::optional<std::string>
    run()
    {
        for (std::size_t i = 0; i < mW.trace.size(); ++i)
        {
            if (auto err = apply(i, mW.trace[i]))
            {
                return fmt::format("event {}: {}", i, *err);
            }
        }
        for (int u = 0; u < mN; ++u)
        {
            if (mW.configuration.statuses[u] == NodeStatus::Crashed &&
                !mCrashed[u])
            {
                return fmt::format("crashed node {} never crashes", u);
            }
        }
        return std::nullopt;
    }

    std::optional<std::string>
    exhibits() const
    {
        switch (mW.kind)
        {
        case ViolationKind::SplitBrain:
        {
            bool twoLeaders = std::any_of(
                mLeaders.begin(), mLeaders.end(), [](auto const& entry) {
                    return entry.first > 0 && entry.second.size() >= 2;
                });
            if (!twoLeaders)
            {
                return "no view has two elected leaders";
            }
            if (!conflictingCommits(false))
            {
                return "no conflicting commits";
            }
            return std::nullopt;
        }
        case ViolationKind::LostCommit:
            if (!conflictingCommits(true))
            {
                return "no commit overwritten in a later view";
            }
            return std::nullopt;
        case ViolationKind::Equivocation:
        {
            if (mQ.protocol != ProtocolKind::Pbft)
            {
                return "equivocation requires PBFT";
            }
            std::map<std::pair<int, int>, int> certified;
            for (auto const& [key, voters] : mVotes)
            {
                if (static_cast<int>(voters.size()) >= *mQ.qEq)
                {
                    ++certified[{std::get<0>(key), std::get<1>(key)}];
                }
            }
            for (auto const& entry : certified)
            {
                if (entry.second >= 2)
                {
                    return std::nullopt;
                }
            }
            return "no two conflicting non-equivocation certificates";
        }
        case ViolationKind::Stall:
            break;
        }
        return "stall witnesses are checked separately";
    }

  private:
    ViolationWitness const& mW;
    QuorumSpec const& mQ;
    int mN;
    std::vector<bool> mCrashed;
    std::vector<int> mView;

    std::map<int, std::set<int>> mLeaders;
    std::map<std::pair<int, int>, std::map<int, std::pair<int, std::string>>>
        mRequests; // (view, target) -> sender -> (slot, report)
    std::map<std::pair<int, int>, std::vector<std::pair<int, std::string>>>
        mElectedReports; // (view, leader) -> reports
    std::set<std::tuple<int, int, int>> mRequestedViews; // actor, view
    std::map<std::pair<int, int>, std::vector<std::pair<int, std::string>>>
        mProposals; // (view, slot) -> (actor, value)
    std::map<Key, std::set<int>> mVotes;
    std::map<std::tuple<int, int, int>, std::string> mHonestVote;
    std::map<Key, std::set<int>> mPersists;
    std::map<std::tuple<int, int, int>, int> mHonestPersistCount;
    std::map<std::pair<int, int>, PersistRecord> mLatestPersist; // actor,slot
    std::set<std::pair<int, int>> mHonestCommitted;              // actor,slot
    std::vector<std::tuple<int, int, std::string>> mCommits; // view,slot,val

    bool
    byzantine(int u) const
    {
        return mW.configuration.statuses[u] == NodeStatus::Byzantine;
    }

    bool
    proposed(int view, int slot, std::string const& value) const
    {
        auto it = mProposals.find({view, slot});
        if (it == mProposals.end())
        {
            return false;
        }
        return std::any_of(it->second.begin(), it->second.end(),
                           [&](auto const& p) { return p.second == value; });
    }

    bool
    conflictingCommits(bool acrossViews) const
    {
        for (auto const& [v1, s1, x1] : mCommits)
        {
            for (auto const& [v2, s2, x2] : mCommits)
            {
                if (s1 == s2 && x1 != x2 && (!acrossViews || v1 < v2))
                {
                    return true;
                }
            }
        }
        return false;
    }

    std::optional<std::string>
    apply(std::size_t index, ProtocolEvent const& e)
    {
        if (e.step != index)
        {
            return "steps must be 0, 1, 2, ... in trace order";
        }
        if (e.actor < 0 || e.actor >= mN)
        {
            return "actor out of range";
        }
        int const u = e.actor;
        if (mCrashed[u])
        {
            return "event after crash";
        }
        if (e.view < 0 || e.slot < 0)
        {
            return "negative view or slot";
        }
        bool const honest = !byzantine(u);
        if (honest)
        {
            if (e.view < mView[u])
            {
                return fmt::format("node {} moves back from view {} to {}", u,
                                   mView[u], e.view);
            }
            mView[u] = e.view;
        }

        switch (e.kind)
        {
        case EventKind::Crash:
            if (mW.configuration.statuses[u] != NodeStatus::Crashed)
            {
                return "crash by a node not crashed in the configuration";
            }
            mCrashed[u] = true;
            return std::nullopt;

        case EventKind::Stall:
            if (honest)
            {
                return "only Byzantine nodes withhold participation";
            }
            return std::nullopt;

        case EventKind::Propose:
        {
            if (!mLeaders[e.view].contains(u))
            {
                return fmt::format("node {} proposes without leading view {}",
                                   u, e.view);
            }
            if (e.value.empty())
            {
                return "empty proposal";
            }
            auto& list = mProposals[{e.view, e.slot}];
            bool const again = std::any_of(
                list.begin(), list.end(),
                [&](auto const& p) { return p.first == u; });
            if (again)
            {
                return "second proposal for a slot must be an Equivoke";
            }
            if (honest && e.view > 0)
            {
                auto const& reports = mElectedReports[{e.view, u}];
                bool anyReport = false;
                bool matches = false;
                for (auto const& [slot, value] : reports)
                {
                    if (slot == e.slot && !value.empty())
                    {
                        anyReport = true;
                        matches = matches || value == e.value;
                    }
                }
                if (anyReport && !matches)
                {
                    return "correct leader ignores a reported value";
                }
            }
            list.emplace_back(u, e.value);
            return std::nullopt;
        }

        case EventKind::Equivoke:
        {
            if (honest)
            {
                return "equivocation by a non-Byzantine node";
            }
            if (!mLeaders[e.view].contains(u))
            {
                return "equivocation by a non-leader";
            }
            auto& list = mProposals[{e.view, e.slot}];
            bool const conflicts = std::any_of(
                list.begin(), list.end(), [&](auto const& p) {
                    return p.first == u && p.second != e.value;
                });
            if (!conflicts || e.value.empty())
            {
                return "equivocation must follow a different proposal";
            }
            list.emplace_back(u, e.value);
            return std::nullopt;
        }

        case EventKind::Vote:
        {
            if (mQ.protocol != ProtocolKind::Pbft)
            {
                return "raft has no non-equivocation phase";
            }
            if (!proposed(e.view, e.slot, e.value))
            {
                return "vote for a value nobody proposed";
            }
            if (honest)
            {
                auto [it, fresh] =
                    mHonestVote.emplace(std::tuple{u, e.view, e.slot}, e.value);
                if (!fresh)
                {
                    return "correct node votes twice in one view";
                }
            }
            mVotes[{e.view, e.slot, e.value}].insert(u);
            return std::nullopt;
        }

        case EventKind::Persist:
        {
            if (!proposed(e.view, e.slot, e.value))
            {
                return "persist of a value nobody proposed";
            }
            if (mQ.protocol == ProtocolKind::Pbft)
            {
                auto it = mVotes.find({e.view, e.slot, e.value});
                int const votes =
                    it == mVotes.end() ? 0 : static_cast<int>(it->second.size());
                if (votes < *mQ.qEq)
                {
                    return fmt::format("persist with {} of {} votes", votes,
                                       *mQ.qEq);
                }
                if (honest)
                {
                    auto voted = mHonestVote.find({u, e.view, e.slot});
                    if (voted == mHonestVote.end() || voted->second != e.value)
                    {
                        return "correct node persists a value it did not "
                               "vote for";
                    }
                    if (++mHonestPersistCount[{u, e.view, e.slot}] > 1)
                    {
                        return "correct node persists twice in one view";
                    }
                }
            }
            mPersists[{e.view, e.slot, e.value}].insert(u);
            auto& latest = mLatestPersist[{u, e.slot}];
            // PBFT nodes report their highest-view value; Raft followers
            // keep whatever they accepted last.
            if (mQ.protocol == ProtocolKind::Raft || latest.value.empty() ||
                e.view >= latest.view)
            {
                latest = PersistRecord{e.view, index, e.value};
            }
            return std::nullopt;
        }

        case EventKind::Commit:
        {
            auto it = mPersists.find({e.view, e.slot, e.value});
            int const count =
                it == mPersists.end() ? 0 : static_cast<int>(it->second.size());
            if (count < mQ.qPer)
            {
                return fmt::format("commit with {} of {} persists", count,
                                   mQ.qPer);
            }
            if (honest && !mHonestCommitted.insert({u, e.slot}).second)
            {
                return "correct node commits a slot twice";
            }
            mCommits.emplace_back(e.view, e.slot, e.value);
            return std::nullopt;
        }

        case EventKind::ViewChangeRequest:
        {
            if (e.view < 1 || !e.target || *e.target < 0 || *e.target >= mN)
            {
                return "malformed view-change request";
            }
            if (mQ.protocol == ProtocolKind::Pbft && *e.target != e.view % mN)
            {
                return "pbft request addressed to the wrong leader";
            }
            if (honest)
            {
                if (!mRequestedViews.insert({u, e.view, 0}).second)
                {
                    return "correct node requests a view twice";
                }
                auto it = mLatestPersist.find({u, e.slot});
                std::string const truth =
                    it == mLatestPersist.end() ? "" : it->second.value;
                if (e.value != truth)
                {
                    return fmt::format("node {} misreports '{}' (persisted "
                                       "'{}')",
                                       u, e.value, truth);
                }
            }
            mRequests[{e.view, *e.target}][u] = {e.slot, e.value};
            return std::nullopt;
        }

        case EventKind::ViewChangeComplete:
        {
            if (e.view < 1)
            {
                return "view 0 needs no election";
            }
            if (mQ.protocol == ProtocolKind::Pbft && u != e.view % mN)
            {
                return "pbft view led by the wrong node";
            }
            auto const& senders = mRequests[{e.view, u}];
            if (static_cast<int>(senders.size()) < mQ.qVc)
            {
                return fmt::format("election with {} of {} requests",
                                   senders.size(), mQ.qVc);
            }
            if (!mLeaders[e.view].insert(u).second)
            {
                return "leader elected twice for one view";
            }
            auto& reports = mElectedReports[{e.view, u}];
            for (auto const& entry : senders)
            {
                reports.push_back(entry.second);
            }
            return std::nullopt;
        }
        }
        return "unknown event kind";
    }
};

std::optional<std::string>
diagnoseStall(ViolationWitness const& w)
{
    if (!w.stallProof)
    {
        return "stall witness without a proof";
    }
    auto const& q = w.quorums;
    std::vector<bool> crashed(q.n, false);
    std::vector<bool> withholding(q.n, false);
    for (std::size_t i = 0; i < w.trace.size(); ++i)
    {
        auto const& e = w.trace[i];
        if (e.step != i || e.actor < 0 || e.actor >= q.n)
        {
            return fmt::format("event {} malformed", i);
        }
        auto const status = w.configuration.statuses[e.actor];
        if (crashed[e.actor] || withholding[e.actor])
        {
            return fmt::format("event {}: node {} already failed", i, e.actor);
        }
        if (e.kind == EventKind::Crash && status == NodeStatus::Crashed)
        {
            crashed[e.actor] = true;
        }
        else if (e.kind == EventKind::Stall && status == NodeStatus::Byzantine)
        {
            withholding[e.actor] = true;
        }
        else
        {
            return fmt::format("event {}: {} by node {} not allowed in a "
                               "stalled state",
                               i, toString(e.kind), e.actor);
        }
    }
    int available = 0;
    int byz = 0;
    for (int u = 0; u < q.n; ++u)
    {
        auto const status = w.configuration.statuses[u];
        if ((status == NodeStatus::Crashed) != crashed[u] ||
            (status == NodeStatus::Byzantine) != withholding[u])
        {
            return fmt::format("trace does not fail node {} as configured", u);
        }
        available += !crashed[u] && !withholding[u];
        byz += withholding[u];
    }

    auto const& proof = *w.stallProof;
    switch (proof.obstruction)
    {
    case Obstruction::MissingQuorum:
    {
        std::optional<int> size;
        if (proof.quorum == "q_per")
        {
            size = q.qPer;
        }
        else if (proof.quorum == "q_vc")
        {
            size = q.qVc;
        }
        else if (proof.quorum == "q_eq" && q.protocol == ProtocolKind::Pbft)
        {
            size = *q.qEq;
        }
        if (!size || *size != proof.required)
        {
            return "proof names an unknown quorum";
        }
        if (proof.available != available || available >= *size)
        {
            return fmt::format("{} of {} nodes can still form {}", available,
                               *size, proof.quorum);
        }
        return std::nullopt;
    }
    case Obstruction::SpuriousViewChange:
        if (q.protocol != ProtocolKind::Pbft || proof.required != *q.qVcT ||
            proof.available != byz || byz < *q.qVcT)
        {
            return "Byzantine nodes cannot fill the trigger quorum";
        }
        return std::nullopt;
    case Obstruction::ViewSyncSplit:
    {
        if (q.protocol != ProtocolKind::Pbft || proof.required != *q.qVcT ||
            proof.available != q.qVc - byz)
        {
            return "view-sync proof does not match the trace";
        }
        int const slack = w.rule == LivenessRule::Corrected ? q.qVc - *q.qVcT
                                                            : *q.qVcT - q.qVc;
        if (byz <= slack)
        {
            return "view-change quorum keeps enough correct nodes";
        }
        return std::nullopt;
    }
    }
    return "unknown obstruction";
}

} // namespace

std::string_view
toString(EventKind kind) noexcept
{
    return kEventNames[static_cast<std::size_t>(kind)];
}

std::optional<EventKind>
parseEventKind(std::string_view name) noexcept
{
    return parseByName<EventKind>(kEventNames, name);
}

std::string_view
toString(ViolationKind kind) noexcept
{
    return kViolationNames[static_cast<std::size_t>(kind)];
}

std::optional<ViolationKind>
parseViolationKind(std::string_view name) noexcept
{
    return parseByName<ViolationKind>(kViolationNames, name);
}

std::string_view
toString(Obstruction o) noexcept
{
    return kObstructionNames[static_cast<std::size_t>(o)];
}

std::optional<Obstruction>
parseObstruction(std::string_view name) noexcept
{
    return parseByName<Obstruction>(kObstructionNames, name);
}

std::optional<ViolationWitness>
findSafetyWitness(FailureConfiguration const& config, QuorumSpec const& q)
{
    checkShape(config, q);
    int const n = q.n;
    if (q.protocol == ProtocolKind::Raft)
    {
        if (raftSafeStructural(q))
        {
            return std::nullopt;
        }
        return n >= 2 * q.qVc ? raftSplitBrain(config, q)
                              : raftLostCommit(config, q);
    }

    auto const counts = config.summarize();
    if (pbftSafe(counts, q))
    {
        return std::nullopt;
    }
    std::vector<int> byz;
    std::vector<int> honest;
    for (int u = 0; u < n; ++u)
    {
        (isByzantine(config, u) ? byz : honest).push_back(u);
    }
    int const b = counts.byz;
    if (b >= 1 && b >= 2 * *q.qEq - n)
    {
        return pbftEquivocation(config, q, byz, honest);
    }
    if (b >= q.qPer + q.qVc - n)
    {
        return pbftLostCommit(config, q, byz);
    }
    return std::nullopt;
}

std::optional<ViolationWitness>
findLivenessWitness(FailureConfiguration const& config, QuorumSpec const& q,
                    LivenessRule rule)
{
    checkShape(config, q);
    auto proof = findObstruction(config.summarize(), q, rule);
    if (!proof)
    {
        return std::nullopt;
    }
    std::vector<ProtocolEvent> trace;
    for (std::size_t u = 0; u < config.size(); ++u)
    {
        auto const status = config.statuses[u];
        if (status == NodeStatus::Crashed)
        {
            trace.push_back({trace.size(), static_cast<int>(u),
                             EventKind::Crash, 0, 0, "", std::nullopt});
        }
        else if (status == NodeStatus::Byzantine)
        {
            trace.push_back({trace.size(), static_cast<int>(u),
                             EventKind::Stall, 0, 0, "withhold",
                             std::nullopt});
        }
    }
    return ViolationWitness{config, q, std::move(trace), ViolationKind::Stall,
                            rule, std::move(proof)};
}

std::optional<std::string>
diagnoseWitness(ViolationWitness const& witness)
{
    auto const& q = witness.quorums;
    try
    {
        q.validate();
    }
    catch (Error const& e)
    {
        return std::string("invalid quorums: ") + e.what();
    }
    if (witness.configuration.size() != static_cast<std::size_t>(q.n))
    {
        return "configuration length differs from n";
    }
    if (q.protocol == ProtocolKind::Raft &&
        witness.configuration.summarize().byz > 0)
    {
        return "raft configuration with Byzantine nodes";
    }
    if (witness.kind == ViolationKind::Stall)
    {
        return diagnoseStall(witness);
    }
    if (witness.stallProof)
    {
        return "safety witness carries a stall proof";
    }
    if (witness.trace.empty())
    {
        return "empty trace";
    }
    Replay replay(witness);
    if (auto err = replay.run())
    {
        return err;
    }
    return replay.exhibits();
}

bool
checkWitness(ViolationWitness const& witness)
{
    return !diagnoseWitness(witness).has_value();
}

std::string
renderTrace(ViolationWitness const& w)
{
    std::string out;
    std::string statuses;
    for (auto s : w.configuration.statuses)
    {
        statuses.push_back(statusLetter(s));
    }
    out += fmt::format("witness {} protocol={} n={} statuses={}\n",
                       toString(w.kind), toString(w.quorums.protocol),
                       w.quorums.n, statuses);
    for (auto const& e : w.trace)
    {
        out += fmt::format("#{:<3} node {:<3} {:<18} view={} slot={}", e.step,
                           e.actor, toString(e.kind), e.view, e.slot);
        if (!e.value.empty())
        {
            out += fmt::format(" value={}", e.value);
        }
        if (e.target)
        {
            out += fmt::format(" to={}", *e.target);
        }
        out += '\n';
    }
    if (w.stallProof)
    {
        auto const& p = *w.stallProof;
        out += fmt::format("proof {} quorum={} required={} available={}\n",
                           toString(p.obstruction), p.quorum, p.required,
                           p.available);
    }
    return out;
}

} // namespace quorel
