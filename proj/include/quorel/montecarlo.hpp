// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "quorel/exact_analysis.hpp"
#include "quorel/fault_model.hpp"
#include "quorel/predicates.hpp"

#include <cstdint>

namespace quorel
{

// Counter-based generator: the draw for (sample index, lane) is a pure
// function of the seed, so any partition of the sample range across threads
// yields the same draws. Mixing is two rounds of the splitmix64 finalizer.
class CounterRng
{
  public:
    explicit CounterRng(std::uint64_t seed) noexcept;

    std::uint64_t bits(std::uint64_t index, std::uint64_t lane) const noexcept;

    // Uniform in [0, 1) with 53 random bits.
    double uniform(std::uint64_t index, std::uint64_t lane) const noexcept;

  private:
    std::uint64_t mKey;
};

struct RngState
{
    std::uint64_t seed{0};
    std::uint64_t counter{0};
};

// Draws one configuration at rngState.counter (node i uses lane i) and then
// advances the counter by one.
FailureConfiguration sampleConfiguration(Deployment const& deployment,
                                         RngState& rngState);

struct McEstimate
{
    double pHat{0.0};
    double stdError{0.0};
    std::uint64_t samples{0};
    std::uint64_t seed{0};
};

McEstimate makeEstimate(std::uint64_t hits, std::uint64_t samples,
                        std::uint64_t seed);

struct McOptions
{
    LivenessRule rule{LivenessRule::Corrected};
    // 0 picks std::thread::hardware_concurrency().
    unsigned threads{0};
};

// Sample means of the safe / live / safe-and-live indicators over sample
// indices [0, samples). Throws Error(Domain) when samples == 0.
ReliabilityReport estimate(Deployment const& deployment, QuorumSpec const& q,
                           std::uint64_t samples, std::uint64_t seed,
                           McOptions const& options = {});

} // namespace quorel
