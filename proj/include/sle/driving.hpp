#ifndef SLE_DRIVING_HPP
#define SLE_DRIVING_HPP

#include <cstdint>
#include <vector>

namespace sle {

/// Discretized driving function V on a uniform capacity-time grid.
/// values[k] = V(k*dt), values[0] = 0; increments are i.i.d. N(0, dt)
/// under sample_driving (standard Brownian motion, V_t = -B_t).
struct DrivingPath {
    double dt = 0.0;
    std::vector<double> values;  // size steps()+1
    std::uint64_t seed = 0;
    double horizon = 0.0;

    std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
};

/// Samples a Brownian driving path; bit-identical for identical arguments.
/// horizon must be an integer multiple of dt (within 1e-9 relative).
DrivingPath sample_driving(double horizon, double dt, std::uint64_t seed);

/// V == 0 path, used by the closed-form oracles.
DrivingPath zero_driving(double horizon, double dt);

/// Pathwise negation (reflects the trace across the imaginary axis).
DrivingPath negate_driving(const DrivingPath& path);

} // namespace sle

#endif
