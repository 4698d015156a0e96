#pragma once

#include <cstddef>
#include <vector>

namespace percolab {

// Real-valued path sampled on the uniform grid t_k = k * dt, k = 0..size-1.
struct LimitPath {
    double dt = 1.0;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt; }
    double horizon() const noexcept { return values.empty() ? 0.0 : time(values.size() - 1); }
};

}  // namespace percolab
