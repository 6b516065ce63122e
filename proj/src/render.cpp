// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "quorel/render.hpp"

#include "quorel/percent.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

namespace quorel
{

namespace
{

using nlohmann::json;
using ordered = nlohmann::ordered_json;

ordered
quorumsJson(QuorumSpec const& q)
{
    ordered j;
    j["n"] = q.n;
    if (q.qEq)
    {
        j["q_eq"] = *q.qEq;
    }
    j["q_per"] = q.qPer;
    j["q_vc"] = q.qVc;
    if (q.qVcT)
    {
        j["q_vc_t"] = *q.qVcT;
    }
    return j;
}

std::string
quorumsText(QuorumSpec const& q)
{
    if (q.protocol == ProtocolKind::Pbft)
    {
        return fmt::format("q_eq={} q_per={} q_vc={} q_vc_t={}", *q.qEq,
                           q.qPer, q.qVc, *q.qVcT);
    }
    return fmt::format("q_per={} q_vc={}", q.qPer, q.qVc);
}

std::string
ninesText(double p)
{
    auto k = nines(p);
    return k ? fmt::format("{} nines", *k) : std::string("certain");
}

// Rounded probability with its short percentage and nines.
std::string
humanProbability(double p)
{
    return fmt::format("{:.12g} ({}%, {})", p,
                       formatPercent(p, displayDecimals(p)), ninesText(p));
}

std::string
pColumn(double p)
{
    return fmt::format("p{:g}", p * 100.0);
}

std::string
statusString(FailureConfiguration const& config)
{
    std::string s;
    for (auto status : config.statuses)
    {
        s.push_back(statusLetter(status));
    }
    return s;
}

std::string_view
ruleName(LivenessRule rule)
{
    return rule == LivenessRule::Corrected ? "corrected" : "literal-theorem";
}

} // namespace

std::string_view
toString(Format format) noexcept
{
    switch (format)
    {
    case Format::Json:
        return "json";
    case Format::Csv:
        return "csv";
    case Format::Markdown:
        break;
    }
    return "markdown";
}

std::optional<Format>
parseFormat(std::string_view name) noexcept
{
    if (name == "json")
    {
        return Format::Json;
    }
    if (name == "csv")
    {
        return Format::Csv;
    }
    if (name == "markdown")
    {
        return Format::Markdown;
    }
    return std::nullopt;
}

std::string
renderReport(ReliabilityReport const& r, AnalysisExtras const* extras,
             Format format)
{
    auto const& q = r.quorums;
    if (format == Format::Json)
    {
        ordered j;
        j["protocol"] = toString(q.protocol);
        j["method"] = toString(r.method);
        j["quorums"] = quorumsJson(q);
        j["p_safe"] = r.pSafe;
        j["p_live"] = r.pLive;
        j["p_safe_and_live"] = r.pSafeAndLive;
        if (r.monteCarlo)
        {
            auto const& mc = *r.monteCarlo;
            j["monte_carlo"] = {{"samples", mc.samples},
                                {"seed", mc.seed},
                                {"stderr_safe", mc.stdError.safe},
                                {"stderr_live", mc.stdError.live},
                                {"stderr_safe_and_live",
                                 mc.stdError.safeAndLive}};
        }
        if (extras)
        {
            ordered aux;
            aux["p_at_least_q_per_failures"] = extras->pAtLeastQPerFailures;
            aux["p_random_q_per_quorum_has_correct"] =
                extras->pRandomQuorumHasCorrect;
            if (extras->durability)
            {
                auto const& d = *extras->durability;
                ordered dj;
                dj["members"] = d.members;
                if (d.requiredClass)
                {
                    dj["required_class"] = *d.requiredClass;
                }
                dj["p_at_least_one_member_survives"] = d.pSurvives;
                aux["quorum_durability"] = dj;
            }
            j["durability"] = aux;
        }
        return j.dump() + "\n";
    }
    if (format == Format::Csv)
    {
        std::string out = "property,probability\n";
        out += fmt::format("p_safe,{:.17g}\n", r.pSafe);
        out += fmt::format("p_live,{:.17g}\n", r.pLive);
        out += fmt::format("p_safe_and_live,{:.17g}\n", r.pSafeAndLive);
        return out;
    }

    std::string out = "# Reliability report\n\n";
    out += fmt::format("- protocol: {}\n- n: {}\n- quorums: {}\n- method: {}\n",
                       toString(q.protocol), q.n, quorumsText(q),
                       toString(r.method));
    out += fmt::format("- p_safe: {}\n", humanProbability(r.pSafe));
    out += fmt::format("- p_live: {}\n", humanProbability(r.pLive));
    out += fmt::format("- p_safe_and_live: {}\n",
                       humanProbability(r.pSafeAndLive));
    if (r.monteCarlo)
    {
        auto const& mc = *r.monteCarlo;
        out += fmt::format("- samples: {} (seed {})\n", mc.samples, mc.seed);
        out += fmt::format("- stderr: safe {:.3g}, live {:.3g}, "
                           "safe_and_live {:.3g}\n",
                           mc.stdError.safe, mc.stdError.live,
                           mc.stdError.safeAndLive);
    }
    if (extras)
    {
        out += "\n## Durability\n\n";
        out += fmt::format("- p(at least q_per={} nodes fail): {:.6g}\n",
                           q.qPer, extras->pAtLeastQPerFailures);
        out += fmt::format("- p(random {}-node quorum holds a correct node): "
                           "{}\n",
                           q.qPer,
                           humanProbability(extras->pRandomQuorumHasCorrect));
        if (extras->durability)
        {
            auto const& d = *extras->durability;
            out += fmt::format("- quorum {}{}: at least one member survives "
                               "with {}\n",
                               fmt::join(d.members, ","),
                               d.requiredClass
                                   ? fmt::format(" (needs class {})",
                                                 *d.requiredClass)
                                   : std::string(),
                               humanProbability(d.pSurvives));
        }
    }
    return out;
}

std::string
renderSweep(ProtocolKind protocol, std::span<SweepRow const> rows,
            Format format)
{
    std::vector<double> ps;
    if (!rows.empty())
    {
        for (auto const& cell : rows.front().cells)
        {
            ps.push_back(cell.p);
        }
    }
    bool const pbft = protocol == ProtocolKind::Pbft;

    if (format == Format::Json)
    {
        ordered j = ordered::array();
        for (auto const& row : rows)
        {
            ordered r;
            r["n"] = row.n;
            r["quorums"] = quorumsJson(row.quorums);
            ordered cells = ordered::array();
            for (auto const& c : row.cells)
            {
                cells.push_back({{"p", c.p},
                                 {"p_safe", c.report.pSafe},
                                 {"p_live", c.report.pLive},
                                 {"p_safe_and_live", c.report.pSafeAndLive}});
            }
            r["cells"] = cells;
            j.push_back(r);
        }
        return j.dump() + "\n";
    }

    std::vector<std::string> header = {"n"};
    if (pbft)
    {
        header.insert(header.end(), {"q_eq", "q_per", "q_vc", "q_vc_t"});
    }
    else
    {
        header.insert(header.end(), {"q_per", "q_vc"});
    }
    // PBFT tables list all three properties; Raft lists safe-and-live.
    for (double p : ps)
    {
        if (pbft)
        {
            std::string suffix = ps.size() == 1 ? "" : "_" + pColumn(p);
            for (auto name : {"safe", "live", "safe_and_live"})
            {
                header.push_back(name + suffix);
            }
        }
        else
        {
            header.push_back(pColumn(p));
        }
    }

    auto rowValues = [&](SweepRow const& row, bool csv) {
        std::vector<std::string> v = {fmt::format("{}", row.n)};
        auto const& q = row.quorums;
        if (pbft)
        {
            v.push_back(fmt::format("{}", *q.qEq));
        }
        v.push_back(fmt::format("{}", q.qPer));
        v.push_back(fmt::format("{}", q.qVc));
        if (pbft)
        {
            v.push_back(fmt::format("{}", *q.qVcT));
        }
        auto cellText = [&](double p) {
            return csv ? fmt::format("{:.17g}", p)
                       : formatPercent(p, displayDecimals(p)) + "%";
        };
        for (auto const& c : row.cells)
        {
            if (pbft)
            {
                v.push_back(cellText(c.report.pSafe));
                v.push_back(cellText(c.report.pLive));
            }
            v.push_back(cellText(c.report.pSafeAndLive));
        }
        return v;
    };

    std::string out;
    if (format == Format::Csv)
    {
        out += fmt::format("{}\n", fmt::join(header, ","));
        for (auto const& row : rows)
        {
            out += fmt::format("{}\n", fmt::join(rowValues(row, true), ","));
        }
        return out;
    }
    out += fmt::format("| {} |\n", fmt::join(header, " | "));
    out += "|";
    for (std::size_t i = 0; i < header.size(); ++i)
    {
        out += "---|";
    }
    out += "\n";
    for (auto const& row : rows)
    {
        out += fmt::format("| {} |\n", fmt::join(rowValues(row, false), " | "));
    }
    return out;
}

std::string
renderOptimize(OptimizeResult const& result, std::span<NodeClass const> classes,
               ReliabilityTarget const& target, Format format)
{
    if (format == Format::Json)
    {
        ordered j;
        j["attained"] = result.attained;
        j["target"] = target.value;
        if (target.percentDecimals)
        {
            j["target_decimals"] = *target.percentDecimals;
        }
        j["evaluated"] = result.evaluated;
        if (result.best)
        {
            auto const& b = *result.best;
            ordered counts;
            for (std::size_t c = 0; c < classes.size(); ++c)
            {
                counts[classes[c].label] = b.counts[c];
            }
            ordered best;
            best["counts"] = counts;
            best["n"] = b.n;
            best["cost"] = b.cost;
            best["quorums"] = quorumsJson(b.quorums);
            best["p_safe"] = b.report.pSafe;
            best["p_live"] = b.report.pLive;
            best["p_safe_and_live"] = b.report.pSafeAndLive;
            j["best"] = best;
        }
        return j.dump() + "\n";
    }
    if (format == Format::Csv)
    {
        std::string out = "attained,n,cost,p_safe_and_live";
        for (auto const& c : classes)
        {
            out += "," + c.label;
        }
        out += "\n";
        if (result.best)
        {
            auto const& b = *result.best;
            out += fmt::format("{},{},{:g},{:.17g}", result.attained, b.n,
                               b.cost, b.report.pSafeAndLive);
            for (int k : b.counts)
            {
                out += fmt::format(",{}", k);
            }
            out += "\n";
        }
        return out;
    }

    std::string out = "# Deployment search\n\n";
    out += fmt::format("- target: {}{}\n", target.value,
                       target.percentDecimals
                           ? fmt::format(" at {} percent decimals",
                                         *target.percentDecimals)
                           : std::string());
    out += fmt::format("- candidates evaluated: {}\n", result.evaluated);
    if (!result.best)
    {
        out += "- no candidate deployment\n";
        return out;
    }
    auto const& b = *result.best;
    out += result.attained ? "- status: attained\n"
                           : "- status: unattainable (best achieved shown)\n";
    std::vector<std::string> parts;
    for (std::size_t c = 0; c < classes.size(); ++c)
    {
        if (b.counts[c] > 0)
        {
            parts.push_back(fmt::format("{}x{}", b.counts[c], classes[c].label));
        }
    }
    out += fmt::format("- deployment: {} (n={}, cost {:g})\n",
                       fmt::join(parts, " + "), b.n, b.cost);
    out += fmt::format("- quorums: {}\n", quorumsText(b.quorums));
    out += fmt::format("- p_safe_and_live: {}\n",
                       humanProbability(b.report.pSafeAndLive));
    return out;
}

std::string
renderWitness(ViolationWitness const& w, Format format)
{
    if (format != Format::Json)
    {
        return renderTrace(w);
    }
    ordered j;
    j["kind"] = toString(w.kind);
    j["protocol"] = toString(w.quorums.protocol);
    j["rule"] = ruleName(w.rule);
    j["statuses"] = statusString(w.configuration);
    j["quorums"] = quorumsJson(w.quorums);
    ordered trace = ordered::array();
    for (auto const& e : w.trace)
    {
        ordered ej;
        ej["step"] = e.step;
        ej["actor"] = e.actor;
        ej["kind"] = toString(e.kind);
        ej["view"] = e.view;
        ej["slot"] = e.slot;
        ej["value"] = e.value;
        if (e.target)
        {
            ej["target"] = *e.target;
        }
        trace.push_back(ej);
    }
    j["trace"] = trace;
    if (w.stallProof)
    {
        auto const& p = *w.stallProof;
        j["stall_proof"] = {{"obstruction", toString(p.obstruction)},
                            {"quorum", p.quorum},
                            {"required", p.required},
                            {"available", p.available}};
    }
    return j.dump() + "\n";
}

ViolationWitness
parseWitnessJson(std::string_view text)
{
    try
    {
        auto const j = json::parse(text);
        ViolationWitness w;
        auto const kind = parseViolationKind(j.at("kind").get<std::string>());
        auto const protocol =
            parseProtocol(j.at("protocol").get<std::string>());
        if (!kind || !protocol)
        {
            throw Error(ErrorKind::Schema, "unknown witness kind or protocol");
        }
        w.kind = *kind;
        auto const rule = j.at("rule").get<std::string>();
        w.rule = rule == "literal-theorem" ? LivenessRule::LiteralTheorem
                                           : LivenessRule::Corrected;
        for (char c : j.at("statuses").get<std::string>())
        {
            switch (c)
            {
            case 'C':
                w.configuration.statuses.push_back(NodeStatus::Correct);
                break;
            case 'X':
                w.configuration.statuses.push_back(NodeStatus::Crashed);
                break;
            case 'B':
                w.configuration.statuses.push_back(NodeStatus::Byzantine);
                break;
            default:
                throw Error(ErrorKind::Schema, "unknown status letter",
                            "statuses");
            }
        }
        auto const& q = j.at("quorums");
        w.quorums.protocol = *protocol;
        w.quorums.n = q.at("n").get<int>();
        w.quorums.qPer = q.at("q_per").get<int>();
        w.quorums.qVc = q.at("q_vc").get<int>();
        if (q.contains("q_eq"))
        {
            w.quorums.qEq = q.at("q_eq").get<int>();
        }
        if (q.contains("q_vc_t"))
        {
            w.quorums.qVcT = q.at("q_vc_t").get<int>();
        }
        for (auto const& ej : j.at("trace"))
        {
            auto const ek = parseEventKind(ej.at("kind").get<std::string>());
            if (!ek)
            {
                throw Error(ErrorKind::Schema, "unknown event kind", "trace");
            }
            ProtocolEvent e{ej.at("step").get<std::size_t>(),
                            ej.at("actor").get<int>(),
                            *ek,
                            ej.at("view").get<int>(),
                            ej.at("slot").get<int>(),
                            ej.at("value").get<std::string>(),
                            std::nullopt};
            if (ej.contains("target"))
            {
                e.target = ej.at("target").get<int>();
            }
            w.trace.push_back(std::move(e));
        }
        if (j.contains("stall_proof"))
        {
            auto const& p = j.at("stall_proof");
            auto const o =
                parseObstruction(p.at("obstruction").get<std::string>());
            if (!o)
            {
                throw Error(ErrorKind::Schema, "unknown obstruction",
                            "stall_proof");
            }
            w.stallProof = StallProof{*o, p.at("quorum").get<std::string>(),
                                      p.at("required").get<int>(),
                                      p.at("available").get<int>()};
        }
        return w;
    }
    catch (json::exception const& e)
    {
        throw Error(ErrorKind::Schema,
                    fmt::format("malformed witness: {}", e.what()));
    }
}

std::string
renderErrorJson(Error const& error)
{
    ordered j;
    j["error"] = toString(error.kind());
    if (!error.path().empty())
    {
        j["path"] = error.path();
    }
    j["message"] = error.what();
    return j.dump() + "\n";
}

} // namespace quorel
