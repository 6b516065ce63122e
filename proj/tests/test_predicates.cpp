// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "quorel/predicates.hpp"

using namespace quorel;
using namespace quorel::test;

namespace
{

CountVector
counts(int correct, int crashed, int byz)
{
    return {correct, crashed, byz};
}

FailureConfiguration
statuses(std::initializer_list<NodeStatus> list)
{
    return FailureConfiguration{std::vector<NodeStatus>(list)};
}

constexpr auto C = NodeStatus::Correct;
constexpr auto X = NodeStatus::Crashed;
constexpr auto B = NodeStatus::Byzantine;

} // namespace

TEST_CASE("pbft safety")
{
    auto const q4 = QuorumSpec::pbft(4, 3, 3, 3, 2);
    CHECK(pbftSafe(counts(3, 0, 1), q4));
    CHECK_FALSE(pbftSafe(counts(2, 0, 2), q4));
    CHECK(pbftSafe(counts(0, 4, 0), q4));

    auto const q5 = QuorumSpec::pbft(5, 4, 4, 4, 2);
    CHECK(pbftSafe(counts(3, 0, 2), q5));
    CHECK_FALSE(pbftSafe(counts(2, 0, 3), q5));

    // Each condition alone.
    auto const eqWeak = QuorumSpec::pbft(4, 2, 4, 4, 2);
    CHECK_FALSE(pbftSafe(counts(4, 0, 0), eqWeak));
    auto const perVcWeak = QuorumSpec::pbft(4, 4, 2, 2, 2);
    CHECK_FALSE(pbftSafe(counts(4, 0, 0), perVcWeak));
}

TEST_CASE("pbft liveness")
{
    auto const q4 = QuorumSpec::pbft(4, 3, 3, 3, 2);
    CHECK(pbftLive(counts(3, 0, 1), q4));
    CHECK_FALSE(pbftLive(counts(2, 0, 2), q4));
    CHECK_FALSE(pbftLive(counts(2, 1, 1), q4));

    auto const q5 = QuorumSpec::pbft(5, 4, 4, 4, 2);
    CHECK(pbftLive(counts(4, 1, 0), q5));
    // byz = 1 <= q_vc - q_vc_t = 2 but correct = 4 needed.
    CHECK(pbftLive(counts(4, 0, 1), q5));
    CHECK_FALSE(pbftLive(counts(3, 0, 2), q5));

    // Trigger quorum of Byzantine nodes alone.
    auto const lowTrigger = QuorumSpec::pbft(7, 4, 4, 4, 1);
    CHECK_FALSE(pbftLive(counts(6, 0, 1), lowTrigger));

    // Corrected orientation of the first condition: byz <= q_vc - q_vc_t.
    auto const tight = QuorumSpec::pbft(7, 4, 4, 4, 3);
    CHECK(pbftLive(counts(6, 0, 1), tight));
    CHECK_FALSE(pbftLive(counts(5, 0, 2), tight));
}

TEST_CASE("literal theorem liveness is unsatisfiable when q_vc_t < q_vc")
{
    for (auto q : {QuorumSpec::pbft(4, 3, 3, 3, 2), QuorumSpec::pbft(5, 4, 4, 4, 2),
                   QuorumSpec::pbft(7, 5, 5, 5, 3), QuorumSpec::pbft(8, 6, 6, 6, 3)})
    {
        CHECK(pbftLive(counts(q.n, 0, 0), q, LivenessRule::Corrected));
        CHECK_FALSE(
            pbftLive(counts(q.n, 0, 0), q, LivenessRule::LiteralTheorem));
    }
    // With q_vc_t == q_vc both readings agree on byz = 0.
    auto const equal = QuorumSpec::pbft(4, 3, 3, 3, 3);
    CHECK(pbftLive(counts(4, 0, 0), equal, LivenessRule::LiteralTheorem));
}

TEST_CASE("raft predicates")
{
    CHECK(raftSafeStructural(QuorumSpec::raft(3, 2, 2)));
    CHECK_FALSE(raftSafeStructural(QuorumSpec::raft(4, 2, 2)));
    CHECK(raftSafeStructural(QuorumSpec::raft(5, 3, 3)));
    CHECK_FALSE(raftSafeStructural(QuorumSpec::raft(5, 2, 3)));
    CHECK(raftSafeStructural(QuorumSpec::raft(5, 2, 4)));
    CHECK_FALSE(raftSafeStructural(QuorumSpec::raft(5, 4, 2)));
    CHECK(raftSafeStructural(QuorumSpec::raft(5, 3, 4)));

    auto const q3 = QuorumSpec::raft(3, 2, 2);
    CHECK(raftLive(counts(2, 1, 0), q3));
    CHECK_FALSE(raftLive(counts(1, 2, 0), q3));
    CHECK(raftLive(counts(5, 4, 0), QuorumSpec::raft(9, 5, 5)));
    CHECK_THROWS_AS(raftLive(counts(2, 0, 1), q3), Error);
}

TEST_CASE("classify")
{
    auto const raft3 = QuorumSpec::raft(3, 2, 2);
    CHECK(classify(statuses({C, X, C}), raft3) == Verdict{true, true});
    CHECK(classify(statuses({X, X, C}), raft3) == Verdict{true, false});
    auto const pbft4 = QuorumSpec::pbft(4, 3, 3, 3, 2);
    CHECK(classify(statuses({B, B, C, C}), pbft4) == Verdict{false, false});

    try
    {
        classify(statuses({C, B, C}), raft3);
        FAIL("expected model mismatch");
    }
    catch (Error const& e)
    {
        CHECK(name(e.kind()) == "model-mismatch");
    }
    try
    {
        classify(statuses({C, C}), raft3);
        FAIL("expected size mismatch");
    }
    catch (Error const& e)
    {
        CHECK(name(e.kind()) == "domain");
    }
    CHECK_THROWS_AS(pbftSafe(counts(3, 0, 0), raft3), Error);
}

TEST_CASE("summaries")
{
    auto const cfg = statuses({C, X, B, B, C});
    CHECK(cfg.summarize() == CountVector{2, 1, 2});
    CHECK(FailureConfiguration::allCorrect(4).summarize() ==
          CountVector{4, 0, 0});
    CHECK(statusLetter(X) == 'X');
    CHECK(statusLetter(B) == 'B');
    CHECK(statusLetter(C) == 'C');
}

TEST_CASE("quorum validation names the field")
{
    auto check = [](QuorumSpec const& q, std::string const& path) {
        try
        {
            q.validate();
            FAIL("expected configuration error");
        }
        catch (Error const& e)
        {
            CHECK(name(e.kind()) == "configuration");
            CHECK(e.path() == path);
        }
    };
    check(QuorumSpec::raft(3, 0, 2), "quorums.q_per");
    check(QuorumSpec::raft(3, 2, 4), "quorums.q_vc");
    check(QuorumSpec::pbft(4, 5, 3, 3, 2), "quorums.q_eq");
    check(QuorumSpec::pbft(4, 3, 3, 3, 0), "quorums.q_vc_t");
    QuorumSpec missing = QuorumSpec::pbft(4, 3, 3, 3, 2);
    missing.qVcT.reset();
    check(missing, "quorums.q_vc_t");
    CHECK(QuorumSpec::raftMajority(6) == QuorumSpec::raft(6, 4, 4));
    CHECK(QuorumSpec::pbft(4, 3, 2, 1, 2).largestQuorum() == 3);
}
