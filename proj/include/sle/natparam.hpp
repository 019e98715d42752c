#ifndef SLE_NATPARAM_HPP
#define SLE_NATPARAM_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "sle/hitting.hpp"
#include "sle/loewner.hpp"
#include "sle/quadrature.hpp"
#include "sle/stats.hpp"

namespace sle {

/// Per-level dyadic partial sums Theta_{t,n}(D) with their increments
/// I_{j,n}(D) >= 0 on the grid t = j 2^-n.
struct ThetaSeries {
    int level = 0;
    std::vector<double> increments;  // I_{j,n}, j = 1..floor(t 2^n)
    std::vector<double> theta;       // running sums

    double value() const { return theta.empty() ? 0.0 : theta.back(); }
};

/// I_{j,n}(D): the expected Psi decrement over the j-th dyadic slot,
/// computed on the domain side as
///   int_D M_s(w) phi(Z_s(w) 2^{n/2}) dA(w),   s = (j-1) 2^-n,
/// which is the change-of-variables image of the defining integral
///   int_H |f_hat_s'(z)|^d phi(z 2^{n/2}) G(z) 1{f_hat_s(z) in D} dA(z).
/// The chain's dt must divide 2^-n.
double theta_increment(const LoewnerChain& chain, int j, int n, const DomainBox& box,
                       const QuadratureGrid& grid, const PhiTable& table);

/// Cross-check route: the scaled defining integral with fixed mu-grid nodes,
///   2^{-nd/2} int |f_hat_s'(w 2^{-n/2})|^d 1{f_hat_s(w 2^{-n/2}) in D} dmu(w).
double theta_increment_mu_form(const LoewnerChain& chain, int j, int n, const DomainBox& box,
                               const MuGrid& mu);

/// Theta_{t,n}(D) = sum_{j <= t 2^n} I_{j,n}(D).  t may not exceed the
/// chain horizon; times beyond 1 arise through the scaling rule
/// Theta~_t(D) = r^-d Theta_{r^2 t}(rD).
ThetaSeries theta_estimate(const LoewnerChain& chain, double t, int n, const DomainBox& box,
                           const QuadratureGrid& grid, const PhiTable& table);

/// All requested levels from one forward sweep of the grid.
std::vector<ThetaSeries> theta_levels(const LoewnerChain& chain, double t,
                                      const std::vector<int>& levels, const DomainBox& box,
                                      const QuadratureGrid& grid, const PhiTable& table);

/// Refinement diagnostics: E[(Theta_{1,n+1} - Theta_{1,n})^2] across levels.
struct DyadicReport {
    std::vector<int> levels;
    std::vector<MCAccumulator> sq_diff;     // one per adjacent level pair
    std::vector<MCAccumulator> theta_mean;  // one per level

    /// True when the square differences decrease across pairs, allowing
    /// up to max_inversions that stay within z combined standard errors.
    bool decreasing(int max_inversions = 1, double z = 2.0) const;
};

DyadicReport dyadic_diagnostics(int n_chains, std::uint64_t base_seed, double t, double dt,
                                const KappaParams& params, const DomainBox& box,
                                const QuadratureGrid& grid, const PhiTable& table,
                                const std::vector<int>& levels, int threads = 1);

/// Minkowski-content scan of a curve: for each eps, the raster area of the
/// eps-neighbourhood times eps^(exponent-2), plus the log-log slope of the
/// raw areas (2 - dim for a fractal of dimension dim).
struct MinkowskiResult {
    std::vector<double> eps;
    std::vector<double> area;
    std::vector<double> content;
    double area_slope = 0.0;
    bool raster_warning = false;  // raster cell finer than the curve sampling
};

MinkowskiResult minkowski_content(std::span<const std::complex<double>> curve,
                                  std::vector<double> eps_list, double exponent);

/// Conformal variant: area of {z on the grid : Upsilon_t(z) <= eps} times
/// eps^(d-2); swallowed nodes use their frozen Upsilon.
double conformal_minkowski(const LoewnerChain& chain, double t, double eps,
                           const QuadratureGrid& grid);

/// d-variation sums over uniformly subsampled meshes: for each mesh count m,
/// sum_{k=1..m} |gamma(t_k) - gamma(t_{k-1})|^exponent.
std::vector<double> d_variation(std::span<const std::complex<double>> curve, double exponent,
                                std::span<const int> mesh_counts);

} // namespace sle

#endif
