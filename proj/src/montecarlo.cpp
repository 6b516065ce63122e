// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "quorel/montecarlo.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <thread>

namespace quorel
{

namespace
{

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kChunk = 1u << 14;

std::uint64_t
mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

NodeStatus
drawStatus(FaultProfile const& p, double u) noexcept
{
    if (u < p.pCrash)
    {
        return NodeStatus::Crashed;
    }
    if (u < p.pCrash + p.pByz)
    {
        return NodeStatus::Byzantine;
    }
    return NodeStatus::Correct;
}

struct Hits
{
    std::uint64_t safe{0};
    std::uint64_t live{0};
    std::uint64_t safeAndLive{0};
};

} // namespace

CounterRng::CounterRng(std::uint64_t seed) noexcept : mKey(mix64(seed + kGolden))
{
}

std::uint64_t
CounterRng::bits(std::uint64_t index, std::uint64_t lane) const noexcept
{
    std::uint64_t const x = mix64(mKey ^ (index * kGolden));
    return mix64(x + (lane + 1) * 0xd1b54a32d192ed03ULL);
}

double
CounterRng::uniform(std::uint64_t index, std::uint64_t lane) const noexcept
{
    return static_cast<double>(bits(index, lane) >> 11) * 0x1.0p-53;
}

FailureConfiguration
sampleConfiguration(Deployment const& deployment, RngState& rngState)
{
    CounterRng const rng(rngState.seed);
    FailureConfiguration config;
    config.statuses.reserve(deployment.size());
    for (std::size_t i = 0; i < deployment.size(); ++i)
    {
        config.statuses.push_back(drawStatus(deployment.nodes[i].profile,
                                             rng.uniform(rngState.counter, i)));
    }
    ++rngState.counter;
    return config;
}

McEstimate
makeEstimate(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed)
{
    double const p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples,
            seed};
}

ReliabilityReport
estimate(Deployment const& deployment, QuorumSpec const& q,
         std::uint64_t samples, std::uint64_t seed, McOptions const& options)
{
    if (samples == 0)
    {
        throw Error(ErrorKind::Domain, "monte carlo needs at least one sample");
    }
    requireValid(deployment, q.protocol);
    q.validate();
    if (static_cast<std::size_t>(q.n) != deployment.size())
    {
        throw Error(ErrorKind::Configuration,
                    fmt::format("quorum spec is for {} nodes but the "
                                "deployment has {}",
                                q.n, deployment.size()));
    }

    auto const profiles = deployment.profiles();
    CounterRng const rng(seed);
    std::uint64_t const chunks = (samples + kChunk - 1) / kChunk;

    // Per-chunk integer counts; the final sum is independent of which
    // thread produced which chunk.
    std::vector<Hits> perChunk(chunks);
    auto runChunk = [&](std::uint64_t chunk) {
        Hits h;
        std::uint64_t const begin = chunk * kChunk;
        std::uint64_t const end = std::min(samples, begin + kChunk);
        for (std::uint64_t s = begin; s < end; ++s)
        {
            CountVector c;
            for (std::size_t i = 0; i < profiles.size(); ++i)
            {
                switch (drawStatus(profiles[i], rng.uniform(s, i)))
                {
                case NodeStatus::Correct:
                    ++c.correct;
                    break;
                case NodeStatus::Crashed:
                    ++c.crashed;
                    break;
                case NodeStatus::Byzantine:
                    ++c.byz;
                    break;
                }
            }
            auto const v = classifyCounts(c, q, options.rule);
            h.safe += v.safe;
            h.live += v.live;
            h.safeAndLive += v.safe && v.live;
        }
        perChunk[chunk] = h;
    };

    unsigned threads = options.threads != 0
                           ? options.threads
                           : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, chunks));
    if (threads <= 1)
    {
        for (std::uint64_t c = 0; c < chunks; ++c)
        {
            runChunk(c);
        }
    }
    else
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
        {
            workers.emplace_back([&, t] {
                for (std::uint64_t c = t; c < chunks; c += threads)
                {
                    runChunk(c);
                }
            });
        }
    }

    Hits total;
    for (auto const& h : perChunk)
    {
        total.safe += h.safe;
        total.live += h.live;
        total.safeAndLive += h.safeAndLive;
    }
    auto const safe = makeEstimate(total.safe, samples, seed);
    auto const live = makeEstimate(total.live, samples, seed);
    auto const both = makeEstimate(total.safeAndLive, samples, seed);
    return ReliabilityReport{
        safe.pHat, live.pHat, both.pHat, Method::MonteCarlo, q,
        MonteCarloInfo{samples, seed,
                       {safe.stdError, live.stdError, both.stdError}}};
}

} // namespace quorel
