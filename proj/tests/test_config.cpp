// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include "quorel/config.hpp"

#include <string>

using namespace quorel;
using namespace quorel::test;

namespace
{

std::string
scenario(std::string const& file)
{
    return std::string(QUOREL_SCENARIO_DIR) + "/" + file;
}

std::string const kPbft4 = R"({
  "protocol": "pbft",
  "nodes": [{"id": "a", "p_byz": 0.01}, {"id": "b", "p_byz": 0.01},
            {"id": "c", "p_byz": 0.01}, {"id": "d", "p_byz": 0.01}],
  "quorums": {"q_eq": 3, "q_per": 3, "q_vc": 3, "q_vc_t": 2}
})";

} // namespace

TEST_CASE("scenario files parse")
{
    auto raft3 = parseConfig(scenario("raft3.json"));
    CHECK(raft3.deployment.size() == 3);
    CHECK(raft3.quorums == QuorumSpec::raft(3, 2, 2));
    CHECK(raft3.deployment.nodes[1].id == "n1");
    CHECK(raft3.deployment.nodes[1].profile.pCrash == 0.01);

    auto pbft8 = parseConfig(scenario("pbft8.json"));
    CHECK(pbft8.quorums == QuorumSpec::pbft(8, 6, 6, 6, 3));

    auto mixed = parseConfig(scenario("raft7_mixed.json"));
    CHECK(mixed.deployment.size() == 7);
    CHECK(mixed.deployment.totalCost() == 34.0);
    CHECK(mixed.deployment.nodes[6].classLabel == "reserved");
}

TEST_CASE("inline pbft spec")
{
    auto spec = parseConfigJson(kPbft4);
    CHECK(spec.quorums == QuorumSpec::pbft(4, 3, 3, 3, 2));
    CHECK(spec.deployment.nodes[3].profile.pByz == 0.01);
    CHECK(spec.deployment.nodes[3].profile.pCrash == 0.0);
}

TEST_CASE("unsupported protocol")
{
    auto call = [] { parseConfig(std::string(QUOREL_TEST_DATA_DIR) + "/zab.json"); };
    CHECK(errorKind(call) == "unsupported-protocol");
    CHECK(errorPath(call) == "protocol");
}

TEST_CASE("quorum size errors name the field")
{
    auto zero = [] {
        parseConfigJson(R"({"protocol": "raft",
            "nodes": [{"id": "a"}, {"id": "b"}, {"id": "c"}],
            "quorums": {"q_per": 0, "q_vc": 2}})");
    };
    CHECK(errorKind(zero) == "schema");
    CHECK(errorPath(zero) == "quorums.q_per");

    auto tooBig = [] {
        parseConfigJson(R"({"protocol": "raft",
            "nodes": [{"id": "a"}, {"id": "b"}, {"id": "c"}],
            "quorums": {"q_per": 2, "q_vc": 4}})");
    };
    CHECK(errorKind(tooBig) == "schema");
    CHECK(errorPath(tooBig) == "quorums.q_vc");
}

TEST_CASE("shape errors")
{
    CHECK(errorKind([] { parseConfigJson("{not json"); }) == "schema");
    CHECK(errorKind([] { parseConfigJson("[]"); }) == "schema");

    auto unknown = [] {
        parseConfigJson(R"({"protocol": "raft", "nodes": [{"id": "a",
            "p_crush": 0.1}], "quorums": {"q_per": 1, "q_vc": 1}})");
    };
    CHECK(errorKind(unknown) == "schema");
    CHECK(errorPath(unknown) == "nodes[0].p_crush");

    auto topLevel = [] {
        parseConfigJson(R"({"protocol": "raft", "nodes": [{"id": "a"}],
            "quorums": {"q_per": 1, "q_vc": 1}, "extra": true})");
    };
    CHECK(errorPath(topLevel) == "extra");

    auto missingVcT = [] {
        parseConfigJson(R"({"protocol": "pbft", "nodes": [{"id": "a"}],
            "quorums": {"q_eq": 1, "q_per": 1, "q_vc": 1}})");
    };
    CHECK(errorKind(missingVcT) == "schema");
    CHECK(errorPath(missingVcT) == "quorums.q_vc_t");

    auto raftEq = [] {
        parseConfigJson(R"({"protocol": "raft", "nodes": [{"id": "a"}],
            "quorums": {"q_eq": 1, "q_per": 1, "q_vc": 1}})");
    };
    CHECK(errorPath(raftEq) == "quorums.q_eq");

    auto noNodes = [] {
        parseConfigJson(R"({"protocol": "raft", "nodes": [],
            "quorums": {"q_per": 1, "q_vc": 1}})");
    };
    CHECK(errorPath(noNodes) == "nodes");

    auto badType = [] {
        parseConfigJson(R"({"protocol": "raft", "nodes": [{"id": "a",
            "p_crash": "high"}], "quorums": {"q_per": 1, "q_vc": 1}})");
    };
    CHECK(errorPath(badType) == "nodes[0].p_crash");

    auto fractional = [] {
        parseConfigJson(R"({"protocol": "raft", "nodes": [{"id": "a"}],
            "quorums": {"q_per": 1.5, "q_vc": 1}})");
    };
    CHECK(errorPath(fractional) == "quorums.q_per");
}

TEST_CASE("node validation surfaces the offending node")
{
    auto byz = [] {
        parseConfigJson(R"({"protocol": "raft", "nodes": [{"id": "a"},
            {"id": "b", "p_byz": 0.01}], "quorums": {"q_per": 2, "q_vc": 2}})");
    };
    CHECK(errorKind(byz) == "model-mismatch");
    CHECK(errorPath(byz) == "nodes[1]");

    auto dup = [] {
        parseConfigJson(R"({"protocol": "raft", "nodes": [{"id": "a"},
            {"id": "a"}], "quorums": {"q_per": 2, "q_vc": 2}})");
    };
    CHECK(errorKind(dup) == "identity");

    auto range = [] {
        parseConfigJson(R"({"protocol": "pbft", "nodes": [{"id": "a",
            "p_crash": 0.7, "p_byz": 0.4}],
            "quorums": {"q_eq": 1, "q_per": 1, "q_vc": 1, "q_vc_t": 1}})");
    };
    CHECK(errorKind(range) == "profile");
    CHECK(errorPath(range) == "nodes[0]");
}

TEST_CASE("missing file")
{
    CHECK(errorKind([] { parseConfig("/nonexistent/quorel.json"); }) == "io");
}

TEST_CASE("optimize requests")
{
    auto spot = parseOptimizeRequest(scenario("optimize_raft_spot.json"));
    CHECK(name(spot.protocol) == "raft");
    REQUIRE(spot.classes.size() == 2);
    CHECK(spot.classes[1].label == "B");
    CHECK(spot.classes[1].unitCost == 1.0);
    CHECK(spot.target.value == 0.9997);
    CHECK(spot.target.percentDecimals == 2);
    CHECK(spot.maxN == 9);
    CHECK(spot.rule.describe() == QuorumRule::majority().describe());

    auto strict = parseOptimizeRequest(scenario("optimize_raft_strict.json"));
    CHECK_FALSE(strict.target.percentDecimals.has_value());

    auto pbft = parseOptimizeRequestJson(R"({"protocol": "pbft",
        "classes": [{"label": "x", "p_byz": 0.01, "cost": 1}],
        "target": 0.999, "max_n": 5})");
    CHECK(pbft.rule.describe() == QuorumRule::byzantineThreshold().describe());

    auto explicitRule = parseOptimizeRequestJson(R"({"protocol": "pbft",
        "classes": [{"label": "x", "p_byz": 0.01, "cost": 1}],
        "target": 0.999, "max_n": 4, "quorum_rule": {"explicit": [
          {"n": 4, "q_eq": 3, "q_per": 3, "q_vc": 3, "q_vc_t": 2}]}})");
    CHECK(explicitRule.rule.covers(ProtocolKind::Pbft, 4));
    CHECK_FALSE(explicitRule.rule.covers(ProtocolKind::Pbft, 3));
    CHECK(explicitRule.rule.forSize(ProtocolKind::Pbft, 4) ==
          QuorumSpec::pbft(4, 3, 3, 3, 2));
}

TEST_CASE("optimize request errors")
{
    auto badRule = [] {
        parseOptimizeRequestJson(R"({"protocol": "raft",
            "classes": [{"label": "x", "p_crash": 0.01, "cost": 1}],
            "target": 0.999, "max_n": 5, "quorum_rule": "fastest"})");
    };
    CHECK(errorPath(badRule) == "quorum_rule");

    auto noCost = [] {
        parseOptimizeRequestJson(R"({"protocol": "raft",
            "classes": [{"label": "x", "p_crash": 0.01}],
            "target": 0.999, "max_n": 5})");
    };
    CHECK(errorPath(noCost) == "classes[0].cost");

    auto decimals = [] {
        parseOptimizeRequestJson(R"({"protocol": "raft",
            "classes": [{"label": "x", "p_crash": 0.01, "cost": 1}],
            "target": 0.999, "target_decimals": 20, "max_n": 5})");
    };
    CHECK(errorPath(decimals) == "target_decimals");

    auto badRow = [] {
        parseOptimizeRequestJson(R"({"protocol": "raft",
            "classes": [{"label": "x", "p_crash": 0.01, "cost": 1}],
            "target": 0.999, "max_n": 3, "quorum_rule": {"explicit": [
              {"n": 3, "q_per": 2, "q_vc": 5}]}})");
    };
    CHECK(errorKind(badRow) == "schema");
    CHECK(errorPath(badRow).starts_with("quorum_rule.explicit[0]"));
}
