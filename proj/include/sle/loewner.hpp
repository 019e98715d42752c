#ifndef SLE_LOEWNER_HPP
#define SLE_LOEWNER_HPP

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "sle/driving.hpp"
#include "sle/maps.hpp"
#include "sle/params.hpp"

namespace sle {

/// State of one point z under the forward flow at time t:
/// Z = g_t(z) - V_t, |g_t'(z)|, and the alive flag (t < T_z).
/// Swallowed points are frozen at their last alive state.
struct FlowState {
    std::complex<double> z0;
    double t = 0.0;
    std::complex<double> Z;
    double abs_gprime = 1.0;
    bool alive = true;

    double R() const { return Z.real() / Z.imag(); }
    /// Conformal-radius ratio Y_t / |g_t'|; nonincreasing in t.
    double upsilon() const { return Z.imag() / abs_gprime; }
};

/// Discretized forward Loewner chain: the solution of
///   dg_t/dt = a / (g_t - V_t)
/// realized as a composition of elementary vertical-slit maps, one per
/// driving step, with the driving value frozen at the left endpoint of
/// each step.  Each elementary map adds hcap exactly a*dt, so
/// hcap after k steps is a*k*dt.  Square roots always take the branch
/// with positive imaginary part.  Evaluation times snap to the grid.
class LoewnerChain {
public:
    LoewnerChain(DrivingPath driving, KappaParams params);

    const DrivingPath& driving() const { return driving_; }
    const KappaParams& params() const { return params_; }
    double dt() const { return driving_.dt; }
    double horizon() const { return driving_.horizon; }
    std::size_t steps() const { return driving_.steps(); }
    /// Height sqrt(2 a dt) of each elementary slit.
    double slit_height() const { return slit_height_; }
    double two_a_dt() const { return two_a_dt_; }

    /// Grid index for time t (nearest step; t must lie in [0, horizon]).
    std::size_t step_index(double t) const;

    /// Forward flow of z up to time t.  Throws std::domain_error if z is
    /// not in the open upper half-plane.
    FlowState forward_state(double t, std::complex<double> z) const;

    /// f_t(w) = g_t^{-1}(w) by reversed composition of elementary inverses.
    /// Throws std::domain_error if an inverse step leaves the half-plane.
    std::complex<double> inverse_point(double t, std::complex<double> w) const;

    /// (f_hat_t(z), |f_hat_t'(z)|) where f_hat_t(z) = f_t(z + V_t).
    std::pair<std::complex<double>, double> fhat_deriv(double t, std::complex<double> z) const;

    /// Trace samples gamma(t) ~ f_hat_t(i*eps_trace).  eps_trace <= 0
    /// selects the default sqrt(dt)/10.
    std::vector<std::complex<double>> trace(const std::vector<double>& times,
                                            double eps_trace = 0.0) const;

    /// Advances a tracked point through elementary map k (time k*dt -> (k+1)*dt).
    void advance(TrackedPoint& p, std::size_t k) const {
        forward_slit_step(p, driving_.values[k], two_a_dt_);
    }
    /// Applies the inverse of elementary map k.
    void advance_inverse(TrackedPoint& p, std::size_t k) const {
        inverse_slit_step(p, driving_.values[k], two_a_dt_);
    }

    FlowState state_from_tracked(const TrackedPoint& p, std::complex<double> z0,
                                 std::size_t k) const;

private:
    DrivingPath driving_;
    KappaParams params_;
    double two_a_dt_;
    double slit_height_;
};

/// Reverse flow dh_t/dt = a/(U_t - h_t), h_0 = z, with U the given driving
/// path.  Returns Z = h_t(z) - U_t and |h_t'(z)|; the imaginary part is
/// strictly increasing so the state is always alive.
FlowState reverse_state(const DrivingPath& driving, double t, std::complex<double> z,
                        const KappaParams& params);

} // namespace sle

#endif
