#pragma once

#include <cstddef>
#include <numbers>

namespace pfc {

inline constexpr double kMu0 = 4e-7 * std::numbers::pi; // H/m

// Kahan compensated accumulator. Loss and RMS sums must stay deterministic
// to ~1e-12 relative regardless of evaluation order, so every multi-term
// physical sum in the project goes through this.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

inline std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

} // namespace pfc
