// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "quorel/cli.hpp"

#include "quorel/config.hpp"
#include "quorel/exact_analysis.hpp"
#include "quorel/montecarlo.hpp"
#include "quorel/optimizer.hpp"
#include "quorel/witness.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <array>

namespace quorel
{

namespace
{

LivenessRule
livenessRule(Command const& cmd)
{
    return cmd.literalTheorem ? LivenessRule::LiteralTheorem
                              : LivenessRule::Corrected;
}

CliResult
analyze(Command const& cmd)
{
    auto const spec = parseConfig(cmd.input);
    auto const& d = spec.deployment;
    auto const& q = spec.quorums;
    ReliabilityReport report;
    if (cmd.enumCap)
    {
        report = enumerateExact(d, q, livenessRule(cmd),
                                EnumerationCap{*cmd.enumCap, *cmd.enumCap});
    }
    else
    {
        report = analyzeDp(d, q, livenessRule(cmd));
    }

    AnalysisExtras extras;
    extras.pAtLeastQPerFailures = atLeastKFailures(d, q.qPer);
    extras.pRandomQuorumHasCorrect = randomQuorumContainsCorrect(d, q.qPer);
    if (!cmd.quorum.empty() || cmd.requireClass)
    {
        if (cmd.quorum.empty())
        {
            throw Error(ErrorKind::Domain,
                        "--require-class needs --quorum members", "quorum");
        }
        extras.durability = QuorumDurability{
            cmd.quorum, cmd.requireClass,
            constrainedQuorumDurability(d, cmd.quorum, cmd.requireClass)};
    }
    return {0, renderReport(report, &extras, cmd.format), ""};
}

CliResult
simulate(Command const& cmd)
{
    auto const spec = parseConfig(cmd.input);
    McOptions options;
    options.rule = livenessRule(cmd);
    options.threads = cmd.threads;
    auto const report = estimate(spec.deployment, spec.quorums, cmd.samples,
                                 cmd.seed, options);
    return {0, renderReport(report, nullptr, cmd.format), ""};
}

CliResult
sweep(Command const& cmd)
{
    std::vector<SweepRow> rows;
    ProtocolKind protocol = ProtocolKind::Raft;
    if (cmd.table == "raft-majority")
    {
        constexpr std::array<int, 4> ns = {3, 5, 7, 9};
        constexpr std::array<double, 4> ps = {0.01, 0.02, 0.04, 0.08};
        rows = sweepTable(protocol, ns, QuorumRule::majority(), ps,
                          livenessRule(cmd));
    }
    else if (cmd.table == "pbft-classic")
    {
        protocol = ProtocolKind::Pbft;
        constexpr std::array<int, 4> ns = {4, 5, 7, 8};
        constexpr std::array<double, 1> ps = {0.01};
        rows = sweepTable(protocol, ns, QuorumRule::pbftClassic(), ps,
                          livenessRule(cmd));
    }
    else
    {
        throw Error(ErrorKind::Domain,
                    fmt::format("unknown table '{}' (raft-majority, pbft-classic)",
                                cmd.table),
                    "table");
    }
    return {0, renderSweep(protocol, rows, cmd.format), ""};
}

CliResult
optimize(Command const& cmd)
{
    auto const req = parseOptimizeRequest(cmd.input);
    auto const result =
        optimizeDeployment(req.classes, req.target, req.protocol, req.maxN,
                           req.rule, livenessRule(cmd));
    return {result.attained ? 0 : 1,
            renderOptimize(result, req.classes, req.target, cmd.format), ""};
}

FailureConfiguration
parseStatuses(std::string const& letters, int n)
{
    if (static_cast<int>(letters.size()) != n)
    {
        throw Error(ErrorKind::Domain,
                    fmt::format("--statuses has {} letters for {} nodes",
                                letters.size(), n),
                    "statuses");
    }
    FailureConfiguration config;
    for (char c : letters)
    {
        switch (c)
        {
        case 'C':
            config.statuses.push_back(NodeStatus::Correct);
            break;
        case 'X':
            config.statuses.push_back(NodeStatus::Crashed);
            break;
        case 'B':
            config.statuses.push_back(NodeStatus::Byzantine);
            break;
        default:
            throw Error(ErrorKind::Domain,
                        fmt::format("status letter '{}' is not C, X or B", c),
                        "statuses");
        }
    }
    return config;
}

CliResult
witness(Command const& cmd)
{
    auto const spec = parseConfig(cmd.input);
    auto const& q = spec.quorums;
    auto const config =
        cmd.statuses ? parseStatuses(*cmd.statuses, q.n)
                     : FailureConfiguration::allCorrect(
                           static_cast<std::size_t>(q.n));
    auto const rule = livenessRule(cmd);
    auto const verdict = classify(config, q, rule);

    bool const wantSafety = cmd.witnessKind != WitnessRequest::Liveness;
    bool const wantLiveness = cmd.witnessKind != WitnessRequest::Safety;
    std::optional<ViolationWitness> found;
    if (wantSafety && !verdict.safe)
    {
        found = findSafetyWitness(config, q);
    }
    if (!found && wantLiveness && !verdict.live)
    {
        found = findLivenessWitness(config, q, rule);
    }
    if (found)
    {
        if (auto reason = diagnoseWitness(*found))
        {
            throw Error(ErrorKind::Domain,
                        fmt::format("constructed witness rejected: {}",
                                    *reason));
        }
        return {0, renderWitness(*found, cmd.format), ""};
    }

    bool const violating =
        (wantSafety && !verdict.safe) || (wantLiveness && !verdict.live);
    std::string const message =
        violating ? "no witness (configuration classified violating but no "
                    "legal run exhibits it)"
                  : "no witness (configuration classified safe/live)";
    std::string out =
        cmd.format == Format::Json
            ? fmt::format("{{\"witness\":null,\"safe\":{},\"live\":{}}}\n",
                          verdict.safe, verdict.live)
            : message + "\n";
    return {violating ? 1 : 0, out, ""};
}

} // namespace

CliResult
run(Command const& cmd)
{
    try
    {
        switch (cmd.subcommand)
        {
        case Subcommand::Analyze:
            return analyze(cmd);
        case Subcommand::Sweep:
            return sweep(cmd);
        case Subcommand::Optimize:
            return optimize(cmd);
        case Subcommand::Witness:
            return witness(cmd);
        case Subcommand::Simulate:
            return simulate(cmd);
        }
        throw Error(ErrorKind::Domain, "unknown subcommand");
    }
    catch (Error const& e)
    {
        if (cmd.format == Format::Json)
        {
            return {2, "", renderErrorJson(e)};
        }
        std::string where = e.path().empty() ? "" : " at " + e.path();
        return {2, "",
                fmt::format("error ({}){}: {}\n", toString(e.kind()), where,
                            e.what())};
    }
}

std::variant<Command, CliResult>
parseCommandLine(std::vector<std::string> const& args, bool stdoutIsTerminal)
{
    CLI::App app{"Probabilistic safety and liveness of quorum consensus"};
    app.name("quorel");
    app.require_subcommand(1);

    Command cmd;
    std::string format;
    std::string kind = "any";
    std::string quorum;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json, csv or markdown")
            ->check(CLI::IsMember({"json", "csv", "markdown"}));
        sub->add_flag("--literal-theorem", cmd.literalTheorem,
                      "Use the PBFT liveness condition exactly as printed");
    };

    auto* analyzeCmd = app.add_subcommand("analyze", "Exact reliability");
    analyzeCmd->add_option("input", cmd.input, "Deployment spec")->required();
    analyzeCmd->add_option("--enum-cap", cmd.enumCap,
                           "Enumerate all configurations up to this many "
                           "nodes instead of the count recurrence");
    analyzeCmd->add_option("--quorum", quorum,
                           "Comma-separated node indices of a quorum");
    analyzeCmd->add_option("--require-class", cmd.requireClass,
                           "Class the quorum must contain");
    common(analyzeCmd);

    auto* sweepCmd = app.add_subcommand("sweep", "Reliability tables");
    sweepCmd->add_option("--table", cmd.table, "raft-majority or pbft-classic")
        ->required();
    common(sweepCmd);

    auto* optimizeCmd =
        app.add_subcommand("optimize", "Cheapest deployment for a target");
    optimizeCmd->add_option("input", cmd.input, "Optimizer request")
        ->required();
    common(optimizeCmd);

    auto* witnessCmd =
        app.add_subcommand("witness", "Violating run for a configuration");
    witnessCmd->add_option("input", cmd.input, "Deployment spec")->required();
    witnessCmd->add_option("--statuses", cmd.statuses,
                           "One of C/X/B per node (default all correct)");
    witnessCmd->add_option("--kind", kind, "any, safety or liveness")
        ->check(CLI::IsMember({"any", "safety", "liveness"}));
    common(witnessCmd);

    auto* simulateCmd =
        app.add_subcommand("simulate", "Monte Carlo estimate");
    simulateCmd->add_option("input", cmd.input, "Deployment spec")->required();
    simulateCmd->add_option("--seed", cmd.seed, "Random seed");
    simulateCmd->add_option("--samples", cmd.samples, "Sample count")
        ->check(CLI::PositiveNumber);
    simulateCmd->add_option("--threads", cmd.threads,
                            "Worker threads (0 = all cores)");
    common(simulateCmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&)
    {
        return CliResult{0, app.help(), ""};
    }
    catch (CLI::CallForAllHelp const&)
    {
        return CliResult{0, app.help("", CLI::AppFormatMode::All), ""};
    }
    catch (CLI::ParseError const& e)
    {
        return CliResult{2, "", fmt::format("error (usage): {}\n", e.what())};
    }

    if (analyzeCmd->parsed())
    {
        cmd.subcommand = Subcommand::Analyze;
    }
    else if (sweepCmd->parsed())
    {
        cmd.subcommand = Subcommand::Sweep;
    }
    else if (optimizeCmd->parsed())
    {
        cmd.subcommand = Subcommand::Optimize;
    }
    else if (witnessCmd->parsed())
    {
        cmd.subcommand = Subcommand::Witness;
    }
    else
    {
        cmd.subcommand = Subcommand::Simulate;
    }

    if (format.empty())
    {
        cmd.format = stdoutIsTerminal ? Format::Markdown : Format::Json;
    }
    else
    {
        cmd.format = *parseFormat(format);
    }
    cmd.witnessKind = kind == "safety"     ? WitnessRequest::Safety
                      : kind == "liveness" ? WitnessRequest::Liveness
                                           : WitnessRequest::Any;
    if (!quorum.empty())
    {
        std::size_t start = 0;
        while (start <= quorum.size())
        {
            auto const comma = quorum.find(',', start);
            auto const token = quorum.substr(
                start, comma == std::string::npos ? std::string::npos
                                                  : comma - start);
            try
            {
                std::size_t used = 0;
                auto const value = std::stoull(token, &used);
                if (used != token.size())
                {
                    throw std::invalid_argument(token);
                }
                cmd.quorum.push_back(static_cast<std::size_t>(value));
            }
            catch (std::exception const&)
            {
                return CliResult{
                    2, "",
                    fmt::format("error (usage): bad --quorum member '{}'\n",
                                token)};
            }
            if (comma == std::string::npos)
            {
                break;
            }
            start = comma + 1;
        }
    }
    if (cmd.enumCap && *cmd.enumCap < 1)
    {
        return CliResult{2, "", "error (usage): --enum-cap must be positive\n"};
    }
    return cmd;
}

} // namespace quorel
