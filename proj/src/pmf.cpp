#include "slsim/pmf.hpp"

#include <cmath>
#include <string>

#include "slsim/errors.hpp"

namespace slsim {

Pmf::Pmf(std::vector<double> masses) : masses_(std::move(masses)) {
    if (masses_.size() < 2) {
        throw ModelError("pmf needs an alphabet of at least two symbols, got " +
                         std::to_string(masses_.size()));
    }
    double sum = 0.0;
    for (double m : masses_) {
        if (!(m >= 0.0)) {  // catches negatives and NaN
            throw ModelError("pmf mass must be non-negative, got " +
                             std::to_string(m));
        }
        sum += m;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw ModelError("pmf masses sum to " + std::to_string(sum) +
                         ", expected 1");
    }
}

bool support_subset(const Pmf& p, const Pmf& q) {
    if (p.size() != q.size()) return false;
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (p[s] > 0.0 && q[s] == 0.0) return false;
    }
    return true;
}

int clamp_to_floor(std::vector<double>& masses, double floor) {
    double deficit = 0.0;
    int raised = 0;
    for (double& m : masses) {
        if (m < floor) {
            deficit += floor - m;
            m = floor;
            ++raised;
        }
    }
    if (raised == 0) return 0;

    double headroom = 0.0;
    for (double m : masses) {
        if (m > floor) headroom += m - floor;
    }
    if (headroom <= 0.0) {
        throw ContractError("floor clamp impossible: no headroom left");
    }
    // Total headroom exceeds the deficit whenever floor*size < 1, so one
    // proportional pass keeps every mass at or above the floor.
    for (double& m : masses) {
        if (m > floor) m -= deficit * (m - floor) / headroom;
    }
    return raised;
}

}  // namespace slsim
