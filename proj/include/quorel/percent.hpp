// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <string>

namespace quorel
{

// p as a percentage in units of 10^-decimals percent, rounded half up.
long long percentUnits(double p, int decimals);

// "99.97" for (0.999702, 2). No percent sign.
std::string formatPercent(double p, int decimals);

// Decimals that keep the first nonzero digit of 1 - p plus one more, with
// at least two: 0.999702 -> 2, 0.9999901494 -> 4.
int displayDecimals(double p);

// floor(-log10(1 - p)), tolerant of rounding in 1 - p; empty for p == 1.
std::optional<int> nines(double p);

} // namespace quorel
