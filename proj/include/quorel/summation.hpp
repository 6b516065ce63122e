// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>

namespace quorel
{

// Neumaier's compensated summation. Probabilities in this library are sums
// of many terms spanning twenty-plus orders of magnitude.
class CompensatedSum
{
  public:
    void
    add(double x) noexcept
    {
        double const t = mSum + x;
        if (std::fabs(mSum) >= std::fabs(x))
        {
            mCompensation += (mSum - t) + x;
        }
        else
        {
            mCompensation += (x - t) + mSum;
        }
        mSum = t;
    }

    double
    value() const noexcept
    {
        return mSum + mCompensation;
    }

  private:
    double mSum{0.0};
    double mCompensation{0.0};
};

} // namespace quorel
