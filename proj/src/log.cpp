#include "percolab/log.hpp"

#include <atomic>
#include <iostream>

namespace percolab {

namespace {
std::atomic<bool> g_enabled{true};
}

void warn(std::string_view message) {
    if (g_enabled.load(std::memory_order_relaxed)) std::cerr << "warning: " << message << '\n';
}

void set_warnings_enabled(bool enabled) { g_enabled.store(enabled, std::memory_order_relaxed); }

bool warnings_enabled() { return g_enabled.load(std::memory_order_relaxed); }

}  // namespace percolab
