// Copyright 2026 The lhzqaoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Sample statistics for ensemble comparisons.

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "errors.hpp"

namespace lhzqaoa::stats {

[[nodiscard]] inline double mean(std::span<const double> x) {
    if (x.empty()) {
        throw InvalidArgument("mean of empty sample");
    }
    double s = 0.0;
    for (double v : x) {
        s += v;
    }
    return s / static_cast<double>(x.size());
}

/// Unbiased sample standard deviation; 0 for a single value.
[[nodiscard]] inline double stddev(std::span<const double> x) {
    if (x.size() < 2) {
        return 0.0;
    }
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) {
        s += (v - m) * (v - m);
    }
    return std::sqrt(s / static_cast<double>(x.size() - 1));
}

[[nodiscard]] inline double stderr_of_mean(std::span<const double> x) {
    return x.empty() ? 0.0 : stddev(x) / std::sqrt(static_cast<double>(x.size()));
}

struct TTest {
    double mean_diff = 0.0;
    double t = 0.0;
    /// One-sided p-value for H1: mean(a - b) > margin.
    double p_value = 1.0;
};

/// Paired one-sided t-test of mean(a - b) > margin.
[[nodiscard]] inline TTest paired_t_greater(std::span<const double> a,
                                            std::span<const double> b,
                                            double margin = 0.0) {
    if (a.size() != b.size() || a.size() < 2) {
        throw InvalidArgument("paired_t_greater: need two equal samples of "
                              "size >= 2");
    }
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        d[i] = a[i] - b[i];
    }
    TTest out;
    out.mean_diff = mean(d);
    const double se = stderr_of_mean(d);
    if (se == 0.0) {
        out.t = out.mean_diff > margin ? INFINITY : -INFINITY;
        out.p_value = out.mean_diff > margin ? 0.0 : 1.0;
        return out;
    }
    out.t = (out.mean_diff - margin) / se;
    const boost::math::students_t dist(static_cast<double>(d.size() - 1));
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.t));
    return out;
}

} // namespace lhzqaoa::stats
