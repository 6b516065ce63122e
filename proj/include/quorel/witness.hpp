// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "quorel/predicates.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace quorel
{

// Abstract three-phase consensus (non-equivocation, persistence, view
// change). Views, slots and values are opaque tags.
//
// Trace rules enforced by checkWitness:
//  - Node 0 leads view 0. A later view v is led by whoever completes it with
//    qVc ViewChangeRequests addressed to it; under PBFT only node v mod n
//    may do so.
//  - Non-Byzantine nodes never lower their view, vote / request once per
//    view, persist once per (view, slot) under PBFT, commit once per slot,
//    and report their latest persisted value truthfully in requests.
//  - A non-Byzantine elected leader proposes a value reported by its
//    electing quorum when any was reported.
//  - Only Byzantine leaders Equivoke. Crashed-status nodes act correctly up
//    to their single Crash event and emit nothing afterwards.
enum class EventKind
{
    Propose,
    Equivoke,
    Vote,
    Persist,
    Commit,
    ViewChangeRequest,
    ViewChangeComplete,
    Crash,
    Stall,
};

std::string_view toString(EventKind kind) noexcept;
std::optional<EventKind> parseEventKind(std::string_view name) noexcept;

struct ProtocolEvent
{
    std::size_t step{0};
    int actor{0};
    EventKind kind{EventKind::Propose};
    int view{0};
    int slot{0};
    // Proposed / voted / committed value, or the persisted value reported
    // by a ViewChangeRequest ("" for none).
    std::string value;
    // Candidate addressed by a ViewChangeRequest.
    std::optional<int> target;

    friend bool operator==(ProtocolEvent const&, ProtocolEvent const&) = default;
};

enum class ViolationKind
{
    SplitBrain,
    LostCommit,
    Equivocation,
    Stall,
};

std::string_view toString(ViolationKind kind) noexcept;
std::optional<ViolationKind> parseViolationKind(std::string_view name) noexcept;

enum class Obstruction
{
    // Fewer non-failed nodes than some quorum the protocol must assemble.
    MissingQuorum,
    // Byzantine nodes alone fill the view-change trigger quorum and can
    // force view changes forever.
    SpuriousViewChange,
    // Too many Byzantine nodes inside a view-change quorum leave fewer than
    // qVcT correct nodes to pull the rest into the new view.
    ViewSyncSplit,
};

std::string_view toString(Obstruction o) noexcept;
std::optional<Obstruction> parseObstruction(std::string_view name) noexcept;

// Count argument showing that no required quorum can be assembled.
struct StallProof
{
    Obstruction obstruction{Obstruction::MissingQuorum};
    // Quorum that cannot be formed ("q_eq", "q_per", "q_vc", "q_vc_t").
    std::string quorum;
    int required{0};
    int available{0};

    friend bool operator==(StallProof const&, StallProof const&) = default;
};

struct ViolationWitness
{
    FailureConfiguration configuration;
    QuorumSpec quorums;
    std::vector<ProtocolEvent> trace;
    ViolationKind kind{ViolationKind::SplitBrain};
    LivenessRule rule{LivenessRule::Corrected};
    std::optional<StallProof> stallProof;
};

// A checked violating run when the configuration is unsafe. Returns nullopt
// for safe configurations and for unsafe PBFT configurations without
// Byzantine nodes whose only failed condition is 2 qEq > n: there the
// printed condition is stricter than any run of the protocol.
std::optional<ViolationWitness> findSafetyWitness(
    FailureConfiguration const& config, QuorumSpec const& q);

std::optional<ViolationWitness> findLivenessWitness(
    FailureConfiguration const& config, QuorumSpec const& q,
    LivenessRule rule = LivenessRule::Corrected);

// Independent replay of the trace. Returns the first reason the witness is
// rejected, or nullopt when it is legal and exhibits its violation.
std::optional<std::string> diagnoseWitness(ViolationWitness const& witness);

bool checkWitness(ViolationWitness const& witness);

// Line-oriented human-readable trace.
std::string renderTrace(ViolationWitness const& witness);

} // namespace quorel
