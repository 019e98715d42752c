#ifndef SLE_PARAMS_HPP
#define SLE_PARAMS_HPP

namespace sle {

/// Parameters of chordal SLE_kappa (0 < kappa < 8) together with the
/// derived exponents used throughout the toolkit.
///
/// Conventions: hcap(gamma(0,t]) = a*t with a = 2/kappa, so the driving
/// function is a standard Brownian motion (increment variance dt, not
/// kappa*dt).
struct KappaParams {
    double kappa;      // diffusion parameter, 0 < kappa < 8
    double a;          // 2/kappa
    double d;          // fractal dimension 1 + kappa/8
    double kappa0;     // 4*(7 - sqrt(33)), threshold for the good regime
    double zeta_lt4;   // 2 - 3*kappa/4
    double zeta_main;  // 4/kappa - 3*kappa/16 - 1
    bool is_good;      // kappa < kappa0

    // Exponent of sin(theta) in the Green's function: kappa/8 + 8/kappa - 2.
    double green_sin_exponent() const { return kappa / 8.0 + 8.0 / kappa - 2.0; }
};

/// Builds the parameter pack; throws std::invalid_argument unless 0 < kappa < 8.
KappaParams make_params(double kappa);

} // namespace sle

#endif
