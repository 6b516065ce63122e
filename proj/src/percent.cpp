// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "quorel/percent.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace quorel
{

long long
percentUnits(double p, int decimals)
{
    long double const scaled =
        static_cast<long double>(p) * std::pow(10.0L, decimals + 2);
    return static_cast<long long>(std::floor(scaled + 0.5L));
}

std::string
formatPercent(double p, int decimals)
{
    long long const units = percentUnits(p, decimals);
    if (decimals <= 0)
    {
        return fmt::format("{}", units);
    }
    long long scale = 1;
    for (int i = 0; i < decimals; ++i)
    {
        scale *= 10;
    }
    std::string const sign = units < 0 ? "-" : "";
    long long const magnitude = units < 0 ? -units : units;
    return fmt::format("{}{}.{:0{}}", sign, magnitude / scale,
                       magnitude % scale, decimals);
}

int
displayDecimals(double p)
{
    double const fail = 1.0 - p;
    if (!(fail > 0.0))
    {
        return 2;
    }
    int const exponent = static_cast<int>(std::floor(std::log10(fail)));
    return std::max(2, -exponent - 2);
}

std::optional<int>
nines(double p)
{
    double const fail = 1.0 - p;
    if (!(fail > 0.0))
    {
        return std::nullopt;
    }
    return std::max(0, static_cast<int>(std::floor(-std::log10(fail) + 1e-6)));
}

} // namespace quorel
