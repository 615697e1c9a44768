#include "reebmapper/tolerance.hpp"

#include <atomic>
#include <cstdlib>

namespace reebmapper {

namespace {

double initial_tolerance() {
    if (const char* env = std::getenv("REEBMAPPER_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
    }
    return 1e-9;
}

std::atomic<double>& tolerance_slot() {
    static std::atomic<double> slot{initial_tolerance()};
    return slot;
}

}  // namespace

double tolerance() { return tolerance_slot().load(std::memory_order_relaxed); }

void set_tolerance(double value) { tolerance_slot().store(value, std::memory_order_relaxed); }

}  // namespace reebmapper
