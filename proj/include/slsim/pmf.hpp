#pragma once

#include <cstddef>
#include <vector>

namespace slsim {

/// Probability mass function over a finite observation alphabet.
///
/// Construction validates the invariants once; instances are immutable
/// afterwards, so downstream code never re-checks them.
class Pmf {
public:
    static constexpr double kSumTolerance = 1e-12;

    /// Requires at least two symbols, non-negative masses, and a total of 1
    /// within kSumTolerance. Throws ModelError otherwise.
    explicit Pmf(std::vector<double> masses);

    double operator[](std::size_t symbol) const { return masses_[symbol]; }
    std::size_t size() const { return masses_.size(); }
    const std::vector<double>& masses() const { return masses_; }

    bool operator==(const Pmf&) const = default;

private:
    std::vector<double> masses_;
};

/// True when p assigns positive mass only where q does.
bool support_subset(const Pmf& p, const Pmf& q);

/// Raises every mass below `floor` up to it and removes the excess from the
/// remaining masses in proportion to their headroom above the floor, keeping
/// the total fixed. Returns the number of raised entries. Requires
/// floor * size < 1 so a single pass cannot create new violations.
int clamp_to_floor(std::vector<double>& masses, double floor);

}  // namespace slsim
