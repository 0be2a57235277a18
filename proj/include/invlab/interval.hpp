#pragma once

#include <cmath>
#include <cstdint>

namespace invlab {

/// Closed real interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double t) const { return lo <= t && t <= hi; }
    std::int64_t first_int() const { return static_cast<std::int64_t>(std::ceil(lo)); }
    std::int64_t last_int() const { return static_cast<std::int64_t>(std::floor(hi)); }
    std::int64_t int_count() const {
        std::int64_t n = last_int() - first_int() + 1;
        return n > 0 ? n : 0;
    }
    bool overlaps(const Interval& other) const { return lo <= other.hi && other.lo <= hi; }

    static Interval centered(std::int64_t center, double width) {
        return {static_cast<double>(center) - width / 2.0,
                static_cast<double>(center) + width / 2.0};
    }
};

}  // namespace invlab
