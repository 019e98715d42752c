#ifndef SLE_MOMENTS_HPP
#define SLE_MOMENTS_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "sle/hitting.hpp"
#include "sle/loewner.hpp"
#include "sle/params.hpp"
#include "sle/quadrature.hpp"
#include "sle/stats.hpp"

namespace sle {

/// One point carried through the reverse flow dh/dt = a/(U_t - h):
/// h_t(z), log|h_t'(z)| and Z_t = h_t(z) - U_t.
struct ReverseSample {
    std::complex<double> z;
    double t = 0.0;
    std::complex<double> h;
    double log_abs_hprime = 0.0;
    std::complex<double> Z;
    std::uint64_t seed = 0;
};

/// Runs the reverse flow along the given driving path up to time t.
ReverseSample sample_reverse(const DrivingPath& driving, double t, std::complex<double> z,
                             const KappaParams& params);

/// Reverse-flow martingale N_{t,r} = |h'|^lambda Y^{-kappa r^2/8} |Z|^r with
/// lambda = r (1 + kappa/4) - kappa r^2 / 8.
double martingale_N(const ReverseSample& s, double r, const KappaParams& params);

/// Two-point version (both samples must come from the same driving path):
/// N(z) N(w) [ |Z(z)-Z(w)| |Z(z)-conj(Z(w))| ]^(-r^2 kappa / 4).
double two_point_N(const ReverseSample& sz, const ReverseSample& sw, double r,
                   const KappaParams& params);

struct MomentEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// I_{s,D} = int |f_hat_s'(w)|^d 1{f_hat_s(w) in D} dmu(w), quadrature on
/// the fixed mu-grid per chain, averaged over n_chains chains at seeds
/// base_seed + index.  Pass std::nullopt for D = H (no indicator).
MomentEstimate estimate_I(double s, const std::optional<DomainBox>& box, const MuGrid& mu,
                          int n_chains, double dt, const KappaParams& params,
                          std::uint64_t base_seed, int threads = 1);

/// F_D(z,w,t) = E[ |h_t'(z)|^d |h_t'(w)|^d ; both Z's in D ], Monte Carlo
/// over reverse-flow seeds (common driving for z and w).
MomentEstimate estimate_F(std::complex<double> z, std::complex<double> w, double t,
                          const DomainBox& box, int n_seeds, double dt,
                          const KappaParams& params, std::uint64_t base_seed, int threads = 1);

/// Exploratory second-moment growth table: for each s in s_values, the
/// empirical sum_{j < s^2} E[I_{j+t^2,D} I_{t^2,D}] over chains, reported
/// together with the reference exponent 2(d-1) + zeta slope; never asserted.
struct SecondMomentRow {
    double s = 0.0;
    double sum_mean = 0.0;
    double sum_std_error = 0.0;
};
std::vector<SecondMomentRow> second_moment_growth(double t, const std::vector<double>& s_values,
                                                  const DomainBox& box, const MuGrid& mu,
                                                  int n_chains, double dt,
                                                  const KappaParams& params,
                                                  std::uint64_t base_seed, int threads = 1);

} // namespace sle

#endif
