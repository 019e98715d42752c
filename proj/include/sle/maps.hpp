#ifndef SLE_MAPS_HPP
#define SLE_MAPS_HPP

#include <cmath>
#include <complex>

namespace sle {

constexpr double kEpsSwallow = 1e-9;

/// Square root selecting the branch with nonnegative imaginary part,
/// computed stably (no cancellation near the real axis).
inline std::complex<double> sqrt_htop(std::complex<double> u) {
    const double re = u.real(), im = u.imag();
    const double r = std::sqrt(re * re + im * im);
    if (r == 0.0) return {0.0, 0.0};
    const double p = std::sqrt(0.5 * (r + std::fabs(re)));
    double sr, si;
    if (re >= 0.0) {
        sr = p;
        si = im / (2.0 * p);
    } else {
        sr = std::fabs(im) / (2.0 * p);
        si = std::copysign(p, im);
    }
    // principal branch has Re >= 0; flip to the Im >= 0 root
    if (si < 0.0) { sr = -sr; si = -si; }
    return {sr, si};
}

/// A point carried through a composition of elementary maps, together with
/// the log of the absolute derivative accumulated by the chain rule.
struct TrackedPoint {
    std::complex<double> w;
    double log_deriv = 0.0;
    bool alive = true;
    double v_at_freeze = 0.0;  // driving value when the point was swallowed
};

/// One forward slit map w -> v + sqrt((w-v)^2 + 2 a dt).  Adds hcap a*dt
/// exactly.  If the step would swallow the point (imaginary part below
/// kEpsSwallow, or the image leaves the upper half-plane) the state is
/// frozen at its pre-step value and alive is cleared.
inline void forward_slit_step(TrackedPoint& p, double v, double two_a_dt) {
    if (!p.alive) return;
    if (p.w.imag() < kEpsSwallow) {
        p.alive = false;
        p.v_at_freeze = v;
        return;
    }
    const std::complex<double> u(p.w.real() - v, p.w.imag());
    const std::complex<double> s = sqrt_htop(u * u + two_a_dt);
    if (!(s.imag() > kEpsSwallow)) {
        p.alive = false;
        p.v_at_freeze = v;
        return;
    }
    p.log_deriv += 0.5 * std::log(std::norm(u) / std::norm(s));
    p.w = {v + s.real(), s.imag()};
}

/// One inverse/reverse slit map w -> v + sqrt((w-v)^2 - 2 a dt).
/// The imaginary part strictly increases, so no swallowing can occur.
inline void inverse_slit_step(TrackedPoint& p, double v, double two_a_dt) {
    const std::complex<double> u(p.w.real() - v, p.w.imag());
    const std::complex<double> s = sqrt_htop(u * u - two_a_dt);
    p.log_deriv += 0.5 * std::log(std::norm(u) / std::norm(s));
    p.w = {v + s.real(), s.imag()};
}

} // namespace sle

#endif
