// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include "quorel/optimizer.hpp"
#include "quorel/percent.hpp"

#include <array>
#include <random>

using namespace quorel;
using namespace quorel::test;

namespace
{

constexpr std::array<int, 4> kRaftN = {3, 5, 7, 9};
constexpr std::array<double, 4> kRaftP = {0.01, 0.02, 0.04, 0.08};

// Printed safe-and-live percentages, rows n = 3, 5, 7, 9.
std::array<std::array<std::string, 4>, 4> const kRaftPrinted = {{
    {"99.97", "99.88", "99.53", "98.18"},
    {"99.9990", "99.992", "99.94", "99.55"},
    {"99.99997", "99.9995", "99.992", "99.88"},
    {"99.999998", "99.99996", "99.9988", "99.97"},
}};

// Exact values from the enumeration oracle.
std::array<std::array<double, 4>, 4> const kRaftExact = {{
    {0.999702, 0.998816, 0.995328, 0.981824},
    {0.9999901494, 0.9999223808, 0.9993977856, 0.9954747392},
    {0.9999996583302, 0.9999946643456, 0.9999187181568, 0.9988237205504},
    {0.9999999878146314, 0.9999996229968282, 0.999988731492434,
     0.999686418146263},
}};

// Printed safe, live, safe-and-live, rows n = 4, 5, 7, 8.
std::array<std::array<std::string, 3>, 4> const kPbftPrinted = {{
    {"99.94", "99.94", "99.94"},
    {"99.9990", "99.90", "99.90"},
    {"99.997", "99.997", "99.997"},
    {"99.99993", "99.995", "99.995"},
}};

int
decimalsOf(std::string const& printed)
{
    auto dot = printed.find('.');
    return dot == std::string::npos ? 0
                                    : static_cast<int>(printed.size() - dot - 1);
}

std::vector<NodeClass>
spotClasses()
{
    return {{"A", FaultProfile::crashOnly(0.01), 10.0},
            {"B", FaultProfile::crashOnly(0.08), 1.0}};
}

bool
cheaper(Candidate const& a, Candidate const& b)
{
    return std::tuple(a.cost, a.n, a.counts) < std::tuple(b.cost, b.n, b.counts);
}

void
enumerate(std::vector<NodeClass> const& classes, int maxN,
          std::vector<int>& counts, std::vector<Candidate>& out)
{
    if (counts.size() == classes.size())
    {
        int n = 0;
        for (int k : counts)
        {
            n += k;
        }
        if (n == 0)
        {
            return;
        }
        auto const d = buildDeployment(classes, counts);
        auto const q = QuorumSpec::raftMajority(n);
        out.push_back({counts, n, d.totalCost(), q, analyzeDp(d, q)});
        return;
    }
    int used = 0;
    for (int k : counts)
    {
        used += k;
    }
    for (int k = 0; used + k <= maxN; ++k)
    {
        counts.push_back(k);
        enumerate(classes, maxN, counts, out);
        counts.pop_back();
    }
}

} // namespace

TEST_CASE("raft table values")
{
    auto rows = sweepTable(ProtocolKind::Raft, kRaftN, QuorumRule::majority(),
                           kRaftP);
    REQUIRE(rows.size() == 4);
    int matches = 0;
    for (std::size_t i = 0; i < 4; ++i)
    {
        CHECK(rows[i].n == kRaftN[i]);
        CHECK(rows[i].quorums == QuorumSpec::raftMajority(kRaftN[i]));
        for (std::size_t j = 0; j < 4; ++j)
        {
            double const v = rows[i].cells[j].report.pSafeAndLive;
            CHECK(v == doctest::Approx(kRaftExact[i][j]).epsilon(1e-13));
            auto const& printed = kRaftPrinted[i][j];
            matches += formatPercent(v, decimalsOf(printed)) == printed;
        }
    }
    // n = 9 at 1% and 4% round to 99.999999 and 99.9989 from the exact
    // values; every other printed cell is reproduced.
    CHECK(matches == 14);
    CHECK(formatPercent(rows[3].cells[0].report.pSafeAndLive, 6) ==
          "99.999999");
    CHECK(formatPercent(rows[3].cells[2].report.pSafeAndLive, 4) == "99.9989");
    CHECK(formatPercent(rows[2].cells[2].report.pSafeAndLive, 3) == "99.992");
}

TEST_CASE("pbft table values")
{
    constexpr std::array<int, 4> ns = {4, 5, 7, 8};
    constexpr std::array<double, 1> ps = {0.01};
    auto rows =
        sweepTable(ProtocolKind::Pbft, ns, QuorumRule::pbftClassic(), ps);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
    {
        auto const& r = rows[i].cells[0].report;
        std::array<double, 3> const values = {r.pSafe, r.pLive, r.pSafeAndLive};
        for (std::size_t k = 0; k < 3; ++k)
        {
            auto const& printed = kPbftPrinted[i][k];
            CHECK(formatPercent(values[k], decimalsOf(printed)) == printed);
        }
    }
    CHECK(rows[3].cells[0].report.pSafe ==
          doctest::Approx(0.99999932212160).epsilon(1e-13));

    auto literal = sweepTable(ProtocolKind::Pbft, ns, QuorumRule::pbftClassic(),
                              ps, LivenessRule::LiteralTheorem);
    for (auto const& row : literal)
    {
        CHECK(row.cells[0].report.pLive == 0.0);
    }
}

TEST_CASE("threshold rule reproduces the pbft quorum rows")
{
    auto const rule = QuorumRule::byzantineThreshold();
    auto const classic = QuorumRule::pbftClassic();
    for (int n : {4, 5, 7, 8})
    {
        CHECK(rule.forSize(ProtocolKind::Pbft, n) ==
              classic.forSize(ProtocolKind::Pbft, n));
    }
}

TEST_CASE("sweep edge cases")
{
    CHECK(sweepTable(ProtocolKind::Raft, std::span<int const>{},
                     QuorumRule::majority(), kRaftP)
              .empty());
    constexpr std::array<int, 3> ns = {4, 6, 8};
    constexpr std::array<double, 1> ps = {0.01};
    auto call = [&] {
        sweepTable(ProtocolKind::Pbft, ns, QuorumRule::pbftClassic(), ps);
    };
    CHECK(errorKind(call) == "configuration");
    CHECK(errorPath(call) == "rows[1]");
    CHECK(errorKind([&] {
              sweepTable(ProtocolKind::Pbft, ns, QuorumRule::majority(), ps);
          }) == "configuration");
}

TEST_CASE("trade-off frontier")
{
    std::vector<QuorumSpec> candidates = {QuorumSpec::pbft(4, 3, 3, 3, 2),
                                          QuorumSpec::pbft(5, 4, 4, 4, 2),
                                          QuorumSpec::pbft(7, 5, 5, 5, 3)};
    auto f = tradeoffFrontier(ProtocolKind::Pbft, candidates, 0.01);
    REQUIRE(f.points.size() == 3);
    REQUIRE(f.ratios.size() == 3);
    auto const& r45 = f.ratios[0];
    CHECK(r45.a == 0);
    CHECK(r45.b == 1);
    CHECK(*r45.unsafetyRatio == doctest::Approx(60.1014).epsilon(1e-5));
    CHECK(*r45.unlivenessRatio == doctest::Approx(1.65557).epsilon(1e-5));
    CHECK(1.0 - f.points[1].pSafe < 1.0 - f.points[2].pSafe);
    CHECK(1.0 - f.points[2].pSafe == doctest::Approx(3.396253e-5).epsilon(1e-6));

    std::vector<QuorumSpec> raft = {QuorumSpec::raft(3, 2, 2),
                                    QuorumSpec::raft(5, 3, 3)};
    auto rf = tradeoffFrontier(ProtocolKind::Raft, raft, 0.01);
    CHECK_FALSE(rf.ratios[0].unsafetyRatio.has_value());
    CHECK(rf.ratios[0].unlivenessRatio.has_value());
}

TEST_CASE("cheap unreliable nodes at printed precision")
{
    auto const classes = spotClasses();
    auto r = optimizeDeployment(classes, ReliabilityTarget{0.9997, 2},
                                ProtocolKind::Raft, 9, QuorumRule::majority());
    REQUIRE(r.attained);
    CHECK(r.best->counts == std::vector<int>{0, 9});
    CHECK(r.best->cost == 9.0);
    CHECK(r.evaluated == 54);

    auto three = optimizeDeployment(classes, ReliabilityTarget{0.9997, 2},
                                    ProtocolKind::Raft, 3,
                                    QuorumRule::majority());
    REQUIRE(three.attained);
    CHECK(three.best->counts == std::vector<int>{3, 0});
    CHECK(three.best->cost / r.best->cost >= 3.0);
}

TEST_CASE("strict target needs more than nine cheap nodes")
{
    auto const classes = spotClasses();
    auto nine = optimizeDeployment(classes, ReliabilityTarget{0.9997, {}},
                                   ProtocolKind::Raft, 9,
                                   QuorumRule::majority());
    REQUIRE(nine.attained);
    CHECK(nine.best->counts == std::vector<int>{1, 8});
    CHECK(nine.best->cost == 18.0);
    auto eleven = optimizeDeployment(classes, ReliabilityTarget{0.9997, {}},
                                     ProtocolKind::Raft, 11,
                                     QuorumRule::majority());
    CHECK(eleven.best->counts == std::vector<int>{0, 11});
}

TEST_CASE("unattainable targets report the best achieved")
{
    auto r = optimizeDeployment(spotClasses(), ReliabilityTarget{1.0, {}},
                                ProtocolKind::Raft, 5, QuorumRule::majority());
    CHECK_FALSE(r.attained);
    REQUIRE(r.best.has_value());
    CHECK(r.best->counts == std::vector<int>{5, 0});
    CHECK(r.best->report.pSafeAndLive < 1.0);
}

TEST_CASE("single class, single node")
{
    std::vector<NodeClass> one = {{"A", FaultProfile::crashOnly(0.01), 10.0}};
    auto r = optimizeDeployment(one, ReliabilityTarget{0.9, {}},
                                ProtocolKind::Raft, 1, QuorumRule::majority());
    REQUIRE(r.attained);
    CHECK(r.best->counts == std::vector<int>{1});
    CHECK(r.best->quorums == QuorumSpec::raft(1, 1, 1));
    CHECK(r.best->report.pLive == doctest::Approx(0.99));
}

TEST_CASE("optimizer agrees with brute force")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> prob(0.001, 0.15);
    std::uniform_int_distribution<int> cost(1, 12);
    std::uniform_real_distribution<double> target(0.99, 0.99999);
    for (int trial = 0; trial < 20; ++trial)
    {
        std::vector<NodeClass> classes;
        int const k = 1 + static_cast<int>(rng() % 3);
        for (int c = 0; c < k; ++c)
        {
            classes.push_back({std::string(1, static_cast<char>('A' + c)),
                               FaultProfile::crashOnly(prob(rng)),
                               static_cast<double>(cost(rng))});
        }
        ReliabilityTarget const goal{target(rng), {}};
        auto result = optimizeDeployment(classes, goal, ProtocolKind::Raft, 9,
                                         QuorumRule::majority());

        std::vector<Candidate> all;
        std::vector<int> scratch;
        enumerate(classes, 9, scratch, all);
        std::optional<Candidate> best;
        for (auto const& c : all)
        {
            if (c.report.pSafeAndLive >= goal.value &&
                (!best || cheaper(c, *best)))
            {
                best = c;
            }
        }
        REQUIRE(result.attained == best.has_value());
        CHECK(result.evaluated == all.size());
        if (best)
        {
            CHECK(result.best->counts == best->counts);
            auto const again = analyzeDp(
                buildDeployment(classes, result.best->counts),
                result.best->quorums);
            CHECK(again.pSafeAndLive >= goal.value);
        }
    }
}

TEST_CASE("pbft search with mixed classes")
{
    std::vector<NodeClass> classes = {
        {"onprem", FaultProfile::byzantineOnly(0.01), 10.0},
        {"cloud", FaultProfile{0.02, 0.005}, 3.0}};
    auto r = optimizeDeployment(classes, ReliabilityTarget{0.9999, {}},
                                ProtocolKind::Pbft, 8,
                                QuorumRule::byzantineThreshold());
    REQUIRE(r.attained);
    CHECK(r.best->report.pSafeAndLive >= 0.9999);
    CHECK(r.best->counts == std::vector<int>{5, 2});
}

TEST_CASE("optimizer input errors")
{
    auto const classes = spotClasses();
    auto const rule = QuorumRule::majority();
    CHECK(errorKind([&] {
              optimizeDeployment(classes, {0.9, {}}, ProtocolKind::Raft, 0,
                                 rule);
          }) == "domain");
    CHECK(errorKind([&] {
              optimizeDeployment(classes, {0.0, {}}, ProtocolKind::Raft, 3,
                                 rule);
          }) == "domain");
    CHECK(errorKind([&] {
              optimizeDeployment({}, {0.9, {}}, ProtocolKind::Raft, 3, rule);
          }) == "domain");
    std::vector<NodeClass> negative = {
        {"A", FaultProfile::crashOnly(0.01), -1.0}};
    CHECK(errorKind([&] {
              optimizeDeployment(negative, {0.9, {}}, ProtocolKind::Raft, 3,
                                 rule);
          }) == "domain");
    std::vector<NodeClass> byz = {{"A", FaultProfile{0.01, 0.001}, 1.0}};
    CHECK(errorKind([&] {
              optimizeDeployment(byz, {0.9, {}}, ProtocolKind::Raft, 3, rule);
          }) == "model-mismatch");
}

TEST_CASE("rounded target comparison")
{
    ReliabilityTarget const rounded{0.9997, 2};
    CHECK(rounded.met(0.99968641814626));
    CHECK_FALSE(rounded.met(0.99964));
    ReliabilityTarget const strict{0.9997, {}};
    CHECK_FALSE(strict.met(0.99968641814626));
    CHECK(strict.met(0.9997));
}
