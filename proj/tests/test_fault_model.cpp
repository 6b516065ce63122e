// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "quorel/fault_model.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

using namespace quorel;
using namespace quorel::test;

namespace
{

using Segments = std::vector<FaultCurve::Segment>;

std::set<std::string>
issueKinds(Deployment const& d, ProtocolKind protocol)
{
    std::set<std::string> kinds;
    for (auto const& issue : validateDeployment(d, protocol))
    {
        kinds.insert(name(issue.kind));
    }
    return kinds;
}

} // namespace

TEST_CASE("profile validity")
{
    CHECK(FaultProfile{0.01, 0.0}.valid());
    CHECK(FaultProfile{0.0, 0.0}.valid());
    CHECK(FaultProfile{0.5, 0.5}.valid());
    CHECK_FALSE(FaultProfile{0.5, 0.6}.valid());
    CHECK_FALSE(FaultProfile{-0.1, 0.0}.valid());
    CHECK_FALSE(FaultProfile{0.0, std::numeric_limits<double>::quiet_NaN()}
                    .valid());
    CHECK(FaultProfile{0.04, 0.0001}.pCorrect() == doctest::Approx(0.9599));
}

TEST_CASE("epoch probability picks the active segment")
{
    FaultCurve single(Segments{{0.0, {0.01, 0.0}}});
    CHECK(epochProbability(single, 5.0) == FaultProfile{0.01, 0.0});

    FaultCurve bathtub(Segments{{0.0, {0.04, 0.0}},
                        {720.0, {0.01, 0.0}},
                        {17520.0, {0.04, 0.0}}});
    CHECK(epochProbability(bathtub, 1000.0) == FaultProfile{0.01, 0.0});
    CHECK(epochProbability(bathtub, 0.0) == FaultProfile{0.04, 0.0});
    CHECK(epochProbability(bathtub, 1e9) == FaultProfile{0.04, 0.0});

    // Right-continuous at every boundary.
    CHECK(epochProbability(bathtub, 720.0) == FaultProfile{0.01, 0.0});
    CHECK(epochProbability(bathtub, 17520.0) == FaultProfile{0.04, 0.0});
    CHECK(epochProbability(bathtub, std::nextafter(720.0, 0.0)) ==
          FaultProfile{0.04, 0.0});

    CHECK(errorKind([&] { epochProbability(bathtub, -1.0); }) == "domain");
    CHECK(errorKind([&] {
              epochProbability(bathtub,
                               std::numeric_limits<double>::quiet_NaN());
          }) == "domain");
}

TEST_CASE("fault curve construction errors")
{
    CHECK(errorKind([] { FaultCurve(Segments{}); }) == "domain");
    CHECK(errorKind([] { FaultCurve(Segments{{1.0, {0.01, 0.0}}}); }) == "domain");
    CHECK(errorKind([] {
              FaultCurve(Segments{{0.0, {0.01, 0.0}}, {0.0, {0.02, 0.0}}});
          }) == "domain");
    CHECK(errorKind([] {
              FaultCurve(Segments{{0.0, {0.01, 0.0}}, {10.0, {0.7, 0.7}}});
          }) == "profile");
}

TEST_CASE("deployment validation")
{
    auto ok = Deployment::homogeneous(3, FaultProfile::crashOnly(0.01));
    CHECK(validateDeployment(ok, ProtocolKind::Raft).empty());
    CHECK_NOTHROW(requireValid(ok, ProtocolKind::Raft));
    CHECK(ok.nodes[2].id == "n2");

    Deployment bad = ok;
    bad.nodes[1].profile = {0.5, 0.6};
    CHECK(issueKinds(bad, ProtocolKind::Pbft) ==
          std::set<std::string>{"profile"});

    Deployment byz = ok;
    byz.nodes[0].profile = {0.04, 0.0001};
    CHECK(issueKinds(byz, ProtocolKind::Raft) ==
          std::set<std::string>{"model-mismatch"});
    CHECK(validateDeployment(byz, ProtocolKind::Pbft).empty());
    try
    {
        requireValid(byz, ProtocolKind::Raft);
        FAIL("expected model mismatch");
    }
    catch (Error const& e)
    {
        CHECK(name(e.kind()) == "model-mismatch");
        CHECK(e.path() == "nodes[0]");
        CHECK(std::string(e.what()).find("n0") != std::string::npos);
    }

    Deployment dup = ok;
    dup.nodes[2].id = "n0";
    CHECK(issueKinds(dup, ProtocolKind::Raft) ==
          std::set<std::string>{"identity"});

    Deployment negative = ok;
    negative.nodes[0].cost = -1.0;
    CHECK(issueKinds(negative, ProtocolKind::Raft) ==
          std::set<std::string>{"domain"});

    CHECK(issueKinds(Deployment{}, ProtocolKind::Raft) ==
          std::set<std::string>{"domain"});
}

TEST_CASE("validation is idempotent and order-insensitive")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 0.7);
    for (int trial = 0; trial < 200; ++trial)
    {
        Deployment d;
        int const n = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i)
        {
            d.nodes.push_back(Node{"x" + std::to_string(rng() % 4),
                                   {u(rng), rng() % 3 == 0 ? u(rng) : 0.0},
                                   std::nullopt,
                                   rng() % 7 == 0 ? -1.0 : 1.0});
        }
        for (auto protocol : {ProtocolKind::Raft, ProtocolKind::Pbft})
        {
            auto const before = issueKinds(d, protocol);
            CHECK(issueKinds(d, protocol) == before);
            Deployment shuffled = d;
            std::shuffle(shuffled.nodes.begin(), shuffled.nodes.end(), rng);
            CHECK(issueKinds(shuffled, protocol) == before);
        }
    }
}

TEST_CASE("deployment helpers")
{
    std::vector<FaultProfile> profiles = {{0.1, 0.0}, {0.0, 0.2}};
    auto d = Deployment::fromProfiles(profiles);
    CHECK(d.size() == 2);
    CHECK(d.profiles() == profiles);
    auto priced = Deployment::homogeneous(4, FaultProfile::crashOnly(0.08), 1.5);
    CHECK(priced.totalCost() == doctest::Approx(6.0));
    CHECK(name(parseProtocol("raft").value()) == "raft");
    CHECK(name(parseProtocol("pbft").value()) == "pbft");
    CHECK_FALSE(parseProtocol("zab").has_value());
    CHECK(std::string(toString(ProtocolKind::Pbft)) == "pbft");
}
