#ifndef SLE_GREEN_HPP
#define SLE_GREEN_HPP

#include <complex>

#include "sle/loewner.hpp"
#include "sle/params.hpp"
#include "sle/quadrature.hpp"

namespace sle {

/// SLE Green's function G(z) = |z|^(d-2) * sin(theta)^(kappa/8 + 8/kappa - 2)
/// for z in the open upper half-plane.  Satisfies G(rz) = r^(d-2) G(z).
double green_g(std::complex<double> z, const KappaParams& params);

/// Forward local martingale M_t(z) = |g_t'(z)|^(2-d) G(Z_t(z)); zero for
/// swallowed states.
double local_mart_M(const FlowState& state, const KappaParams& params);

/// Psi_t(D) = int_D M_t(z) dA(z), quadrature over the alive nodes of the
/// grid.  The grid must cover D.
double psi(const LoewnerChain& chain, double t, const DomainBox& box,
           const QuadratureGrid& grid, const KappaParams& params);

/// Cross-check route for Psi via the image-side integral
/// int |f_hat_t'(z)|^d G(z) 1{f_hat_t(z) in D} dA(z),
/// integrated with an adaptively chosen window grid of the given resolution.
double psi_image_side(const LoewnerChain& chain, double t, const DomainBox& box,
                      int resolution, const KappaParams& params);

/// Integral of G over the half-disk {|z| <= K, Im z > 0}, midpoint rows
/// with geometric grading in y toward the real axis.  resolution controls
/// both the panel count and the nodes per row.
double integrate_G(double K, int resolution, const KappaParams& params);

} // namespace sle

#endif
