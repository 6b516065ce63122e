// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "quorel/config.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace quorel
{

namespace
{

using nlohmann::json;

std::string
join(std::string const& parent, std::string_view child)
{
    return parent.empty() ? std::string(child)
                          : fmt::format("{}.{}", parent, child);
}

json
parseJson(std::string_view text)
{
    try
    {
        return json::parse(text);
    }
    catch (json::parse_error const& e)
    {
        throw Error(ErrorKind::Schema,
                    fmt::format("malformed JSON: {}", e.what()));
    }
}

json const&
requireObject(json const& j, std::string const& path)
{
    if (!j.is_object())
    {
        throw Error(ErrorKind::Schema, "expected an object",
                    path.empty() ? "$" : path);
    }
    return j;
}

void
rejectUnknown(json const& obj, std::initializer_list<std::string_view> allowed,
              std::string const& path)
{
    for (auto const& item : obj.items())
    {
        bool known = false;
        for (auto name : allowed)
        {
            known = known || item.key() == name;
        }
        if (!known)
        {
            throw Error(ErrorKind::Schema,
                        fmt::format("unknown field '{}'", item.key()),
                        join(path, item.key()));
        }
    }
}

std::optional<double>
optionalNumber(json const& obj, std::string_view key, std::string const& path)
{
    auto it = obj.find(key);
    if (it == obj.end())
    {
        return std::nullopt;
    }
    if (!it->is_number())
    {
        throw Error(ErrorKind::Schema, "expected a number", join(path, key));
    }
    return it->get<double>();
}

double
requireNumber(json const& obj, std::string_view key, std::string const& path)
{
    auto v = optionalNumber(obj, key, path);
    if (!v)
    {
        throw Error(ErrorKind::Schema, "missing required field",
                    join(path, key));
    }
    return *v;
}

std::optional<int>
optionalInt(json const& obj, std::string_view key, std::string const& path)
{
    auto it = obj.find(key);
    if (it == obj.end())
    {
        return std::nullopt;
    }
    if (!it->is_number_integer())
    {
        throw Error(ErrorKind::Schema, "expected an integer",
                    join(path, key));
    }
    auto const v = it->get<long long>();
    if (v < -1'000'000 || v > 1'000'000)
    {
        throw Error(ErrorKind::Schema, "integer out of range",
                    join(path, key));
    }
    return static_cast<int>(v);
}

int
requireInt(json const& obj, std::string_view key, std::string const& path)
{
    auto v = optionalInt(obj, key, path);
    if (!v)
    {
        throw Error(ErrorKind::Schema, "missing required field",
                    join(path, key));
    }
    return *v;
}

std::optional<std::string>
optionalString(json const& obj, std::string_view key, std::string const& path)
{
    auto it = obj.find(key);
    if (it == obj.end())
    {
        return std::nullopt;
    }
    if (!it->is_string())
    {
        throw Error(ErrorKind::Schema, "expected a string", join(path, key));
    }
    return it->get<std::string>();
}

std::string
requireString(json const& obj, std::string_view key, std::string const& path)
{
    auto v = optionalString(obj, key, path);
    if (!v)
    {
        throw Error(ErrorKind::Schema, "missing required field",
                    join(path, key));
    }
    return *v;
}

ProtocolKind
readProtocol(json const& root)
{
    auto const name = requireString(root, "protocol", "");
    auto protocol = parseProtocol(name);
    if (!protocol)
    {
        throw Error(ErrorKind::UnsupportedProtocol,
                    fmt::format("unsupported protocol '{}'", name),
                    "protocol");
    }
    return *protocol;
}

json const&
requireArray(json const& obj, std::string_view key, std::string const& path)
{
    auto it = obj.find(key);
    if (it == obj.end())
    {
        throw Error(ErrorKind::Schema, "missing required field",
                    join(path, key));
    }
    if (!it->is_array())
    {
        throw Error(ErrorKind::Schema, "expected an array", join(path, key));
    }
    return *it;
}

// Reads q_* fields into a spec and validates sizes, reporting violations as
// schema errors at the offending field.
QuorumSpec
readQuorums(json const& obj, ProtocolKind protocol, int n,
            std::string const& path)
{
    requireObject(obj, path);
    rejectUnknown(obj, {"q_eq", "q_per", "q_vc", "q_vc_t", "n"}, path);
    if (!path.starts_with("quorum_rule") && obj.contains("n"))
    {
        throw Error(ErrorKind::Schema, "unknown field 'n'", join(path, "n"));
    }
    QuorumSpec q;
    q.protocol = protocol;
    q.n = n;
    q.qPer = requireInt(obj, "q_per", path);
    q.qVc = requireInt(obj, "q_vc", path);
    q.qEq = optionalInt(obj, "q_eq", path);
    q.qVcT = optionalInt(obj, "q_vc_t", path);
    if (protocol == ProtocolKind::Raft)
    {
        for (auto key : {"q_eq", "q_vc_t"})
        {
            if (obj.contains(key))
            {
                throw Error(ErrorKind::Schema,
                            fmt::format("{} applies to pbft only", key),
                            join(path, key));
            }
        }
    }
    else
    {
        for (auto key : {"q_eq", "q_vc_t"})
        {
            if (!obj.contains(key))
            {
                throw Error(ErrorKind::Schema,
                            fmt::format("pbft requires {}", key),
                            join(path, key));
            }
        }
    }
    try
    {
        q.validate();
    }
    catch (Error const& e)
    {
        std::string field = e.path();
        if (field.starts_with("quorums."))
        {
            field = join(path, field.substr(8));
        }
        throw Error(ErrorKind::Schema, e.what(),
                    field.empty() ? path : field);
    }
    return q;
}

FaultProfile
readProfile(json const& obj, std::string const& path)
{
    FaultProfile p{optionalNumber(obj, "p_crash", path).value_or(0.0),
                   optionalNumber(obj, "p_byz", path).value_or(0.0)};
    if (!p.valid())
    {
        throw Error(ErrorKind::Profile,
                    fmt::format("p_crash={} p_byz={} must be nonnegative with "
                                "sum at most 1",
                                p.pCrash, p.pByz),
                    path);
    }
    return p;
}

QuorumRule
readRule(json const& root, ProtocolKind protocol)
{
    auto it = root.find("quorum_rule");
    if (it == root.end())
    {
        return protocol == ProtocolKind::Raft ? QuorumRule::majority()
                                              : QuorumRule::byzantineThreshold();
    }
    if (it->is_string())
    {
        auto const name = it->get<std::string>();
        if (name == "majority")
        {
            return QuorumRule::majority();
        }
        if (name == "byzantine-threshold")
        {
            return QuorumRule::byzantineThreshold();
        }
        if (name == "pbft-classic")
        {
            return QuorumRule::pbftClassic();
        }
        throw Error(ErrorKind::Schema,
                    fmt::format("unknown quorum rule '{}'", name),
                    "quorum_rule");
    }
    requireObject(*it, "quorum_rule");
    rejectUnknown(*it, {"explicit"}, "quorum_rule");
    auto const& rows = requireArray(*it, "explicit", "quorum_rule");
    std::map<int, QuorumSpec> sizes;
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        auto const path = fmt::format("quorum_rule.explicit[{}]", i);
        requireObject(rows[i], path);
        int const n = requireInt(rows[i], "n", path);
        if (n < 1)
        {
            throw Error(ErrorKind::Schema, "n must be at least 1",
                        join(path, "n"));
        }
        sizes[n] = readQuorums(rows[i], protocol, n, path);
    }
    return QuorumRule::explicitSizes(std::move(sizes));
}

} // namespace

std::string
readFile(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw Error(ErrorKind::Io, fmt::format("cannot read '{}'", path));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

DeploymentSpec
parseConfigJson(std::string_view text)
{
    auto const root = parseJson(text);
    requireObject(root, "");
    rejectUnknown(root, {"protocol", "nodes", "quorums"}, "");
    ProtocolKind const protocol = readProtocol(root);

    auto const& nodes = requireArray(root, "nodes", "");
    DeploymentSpec spec;
    for (std::size_t i = 0; i < nodes.size(); ++i)
    {
        auto const path = fmt::format("nodes[{}]", i);
        auto const& obj = requireObject(nodes[i], path);
        rejectUnknown(obj, {"id", "p_crash", "p_byz", "class", "cost"}, path);
        Node node;
        node.id = requireString(obj, "id", path);
        node.profile = {optionalNumber(obj, "p_crash", path).value_or(0.0),
                        optionalNumber(obj, "p_byz", path).value_or(0.0)};
        node.classLabel = optionalString(obj, "class", path);
        node.cost = optionalNumber(obj, "cost", path).value_or(0.0);
        spec.deployment.nodes.push_back(std::move(node));
    }
    if (nodes.empty())
    {
        throw Error(ErrorKind::Schema, "at least one node is required",
                    "nodes");
    }
    requireValid(spec.deployment, protocol);

    auto it = root.find("quorums");
    if (it == root.end())
    {
        throw Error(ErrorKind::Schema, "missing required field", "quorums");
    }
    spec.quorums = readQuorums(*it, protocol,
                               static_cast<int>(spec.deployment.size()),
                               "quorums");
    return spec;
}

DeploymentSpec
parseConfig(std::string const& path)
{
    return parseConfigJson(readFile(path));
}

OptimizeRequest
parseOptimizeRequestJson(std::string_view text)
{
    auto const root = parseJson(text);
    requireObject(root, "");
    rejectUnknown(root,
                  {"protocol", "classes", "target", "target_decimals",
                   "max_n", "quorum_rule"},
                  "");
    OptimizeRequest req;
    req.protocol = readProtocol(root);
    auto const& classes = requireArray(root, "classes", "");
    for (std::size_t i = 0; i < classes.size(); ++i)
    {
        auto const path = fmt::format("classes[{}]", i);
        auto const& obj = requireObject(classes[i], path);
        rejectUnknown(obj, {"label", "p_crash", "p_byz", "cost"}, path);
        req.classes.push_back(NodeClass{requireString(obj, "label", path),
                                        readProfile(obj, path),
                                        requireNumber(obj, "cost", path)});
    }
    req.target.value = requireNumber(root, "target", "");
    req.target.percentDecimals = optionalInt(root, "target_decimals", "");
    if (req.target.percentDecimals &&
        (*req.target.percentDecimals < 0 || *req.target.percentDecimals > 12))
    {
        throw Error(ErrorKind::Schema, "target_decimals must lie in [0, 12]",
                    "target_decimals");
    }
    req.maxN = requireInt(root, "max_n", "");
    req.rule = readRule(root, req.protocol);
    return req;
}

OptimizeRequest
parseOptimizeRequest(std::string const& path)
{
    return parseOptimizeRequestJson(readFile(path));
}

} // namespace quorel
