#pragma once

namespace eisenpack {

/// Neumaier-compensated accumulator. Tracks the rounding error of every
/// addition in a separate carry term, so long series of O(1) terms keep
/// near-full precision even when the running sum is large.
template <typename Value>
struct CompensatedSum {
    Value sum{0};
    Value carry{0};

    void add(Value x) {
        const Value t = sum + x;
        if (abs_(sum) >= abs_(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }

    CompensatedSum& operator+=(Value x) {
        add(x);
        return *this;
    }

    Value value() const { return sum + carry; }

private:
    static Value abs_(Value v) { return v < Value(0) ? -v : v; }
};

}  // namespace eisenpack
