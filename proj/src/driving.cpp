#include "sle/driving.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sle/rng.hpp"

namespace sle {

namespace {

std::size_t step_count(double horizon, double dt) {
    if (!(horizon > 0.0)) throw std::invalid_argument("driving path: horizon must be positive");
    if (!(dt > 0.0) || dt > horizon) {
        throw std::invalid_argument("driving path: dt must satisfy 0 < dt <= horizon");
    }
    const double ratio = horizon / dt;
    const auto n = static_cast<std::size_t>(std::llround(ratio));
    if (n == 0 || std::fabs(ratio - static_cast<double>(n)) > 1e-9 * ratio + 1e-12) {
        throw std::invalid_argument("driving path: horizon must be an integer multiple of dt");
    }
    return n;
}

} // namespace

DrivingPath sample_driving(double horizon, double dt, std::uint64_t seed) {
    const std::size_t n = step_count(horizon, dt);
    DrivingPath path;
    path.dt = dt;
    path.seed = seed;
    path.horizon = horizon;
    path.values.resize(n + 1);
    path.values[0] = 0.0;
    Rng rng(seed);
    const double sd = std::sqrt(dt);
    for (std::size_t k = 1; k <= n; ++k) {
        path.values[k] = path.values[k - 1] + sd * rng.normal();
    }
    return path;
}

DrivingPath zero_driving(double horizon, double dt) {
    const std::size_t n = step_count(horizon, dt);
    DrivingPath path;
    path.dt = dt;
    path.seed = 0;
    path.horizon = horizon;
    path.values.assign(n + 1, 0.0);
    return path;
}

DrivingPath negate_driving(const DrivingPath& path) {
    DrivingPath out = path;
    for (double& v : out.values) v = -v;
    return out;
}

} // namespace sle
