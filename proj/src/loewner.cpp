#include "sle/loewner.hpp"

#include <cmath>
#include <stdexcept>

namespace sle {

LoewnerChain::LoewnerChain(DrivingPath driving, KappaParams params)
    : driving_(std::move(driving)), params_(params) {
    if (driving_.values.size() < 2) {
        throw std::invalid_argument("LoewnerChain: driving path has no steps");
    }
    two_a_dt_ = 2.0 * params_.a * driving_.dt;
    slit_height_ = std::sqrt(two_a_dt_);
}

std::size_t LoewnerChain::step_index(double t) const {
    if (t < -1e-12 || t > horizon() * (1.0 + 1e-9) + 1e-12) {
        throw std::invalid_argument("LoewnerChain: time outside [0, horizon]");
    }
    const auto k = static_cast<std::size_t>(std::llround(t / dt()));
    return k > steps() ? steps() : k;
}

FlowState LoewnerChain::state_from_tracked(const TrackedPoint& p, std::complex<double> z0,
                                           std::size_t k) const {
    FlowState st;
    st.z0 = z0;
    st.t = static_cast<double>(k) * dt();
    st.alive = p.alive;
    const double v = p.alive ? driving_.values[k] : p.v_at_freeze;
    st.Z = {p.w.real() - v, p.w.imag()};
    st.abs_gprime = std::exp(p.log_deriv);
    return st;
}

FlowState LoewnerChain::forward_state(double t, std::complex<double> z) const {
    if (!(z.imag() > 0.0)) throw std::domain_error("forward_state: z must have Im z > 0");
    const std::size_t K = step_index(t);
    TrackedPoint p{z, 0.0, true, 0.0};
    for (std::size_t k = 0; k < K && p.alive; ++k) advance(p, k);
    return state_from_tracked(p, z, K);
}

std::complex<double> LoewnerChain::inverse_point(double t, std::complex<double> w) const {
    if (!(w.imag() > 0.0)) throw std::domain_error("inverse_point: w must have Im w > 0");
    const std::size_t K = step_index(t);
    TrackedPoint p{w, 0.0, true, 0.0};
    for (std::size_t k = K; k-- > 0;) {
        advance_inverse(p, k);
        if (!(p.w.imag() > 0.0)) {
            throw std::domain_error("inverse_point: w left the image domain");
        }
    }
    return p.w;
}

std::pair<std::complex<double>, double> LoewnerChain::fhat_deriv(double t,
                                                                 std::complex<double> z) const {
    if (!(z.imag() > 0.0)) throw std::domain_error("fhat_deriv: z must have Im z > 0");
    const std::size_t K = step_index(t);
    TrackedPoint p{z + driving_.values[K], 0.0, true, 0.0};
    for (std::size_t k = K; k-- > 0;) {
        advance_inverse(p, k);
        if (!(p.w.imag() > 0.0)) {
            throw std::domain_error("fhat_deriv: z left the image domain");
        }
    }
    return {p.w, std::exp(p.log_deriv)};
}

std::vector<std::complex<double>> LoewnerChain::trace(const std::vector<double>& times,
                                                      double eps_trace) const {
    if (eps_trace <= 0.0) eps_trace = std::sqrt(dt()) / 10.0;
    std::vector<std::complex<double>> out;
    out.reserve(times.size());
    const std::complex<double> tip(0.0, eps_trace);
    for (double t : times) {
        out.push_back(fhat_deriv(t, tip).first);
    }
    return out;
}

FlowState reverse_state(const DrivingPath& driving, double t, std::complex<double> z,
                        const KappaParams& params) {
    if (!(z.imag() > 0.0)) throw std::domain_error("reverse_state: z must have Im z > 0");
    const double ratio = t / driving.dt;
    auto K = static_cast<std::size_t>(std::llround(ratio));
    if (K > driving.steps()) K = driving.steps();
    const double two_a_dt = 2.0 * params.a * driving.dt;
    TrackedPoint p{z, 0.0, true, 0.0};
    for (std::size_t k = 0; k < K; ++k) {
        inverse_slit_step(p, driving.values[k], two_a_dt);
    }
    FlowState st;
    st.z0 = z;
    st.t = static_cast<double>(K) * driving.dt;
    st.alive = true;
    st.Z = {p.w.real() - driving.values[K], p.w.imag()};
    st.abs_gprime = std::exp(p.log_deriv);
    return st;
}

} // namespace sle
