// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "quorel/fault_model.hpp"
#include "quorel/optimizer.hpp"
#include "quorel/predicates.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace quorel
{

// Deployment spec file:
//   {"protocol": "raft" | "pbft",
//    "nodes": [{"id", "p_crash", "p_byz", "class", "cost"}],
//    "quorums": {"q_eq", "q_per", "q_vc", "q_vc_t"}}
// q_eq and q_vc_t appear only for PBFT. p_crash, p_byz, class and cost are
// optional. Unknown fields are rejected.
struct DeploymentSpec
{
    Deployment deployment;
    QuorumSpec quorums;
};

// Errors carry a field path such as "quorums.q_per" or "nodes[2].p_crash".
DeploymentSpec parseConfigJson(std::string_view text);
DeploymentSpec parseConfig(std::string const& path);

// Optimizer request file:
//   {"protocol", "classes": [{"label", "p_crash", "p_byz", "cost"}],
//    "target", "target_decimals", "max_n",
//    "quorum_rule": "majority" | "byzantine-threshold" | "pbft-classic" |
//                   {"explicit": [{"n", "q_eq", "q_per", "q_vc", "q_vc_t"}]}}
struct OptimizeRequest
{
    ProtocolKind protocol{ProtocolKind::Raft};
    std::vector<NodeClass> classes;
    ReliabilityTarget target;
    int maxN{0};
    QuorumRule rule = QuorumRule::majority();
};

OptimizeRequest parseOptimizeRequestJson(std::string_view text);
OptimizeRequest parseOptimizeRequest(std::string const& path);

std::string readFile(std::string const& path);

} // namespace quorel
