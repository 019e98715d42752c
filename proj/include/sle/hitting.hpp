#ifndef SLE_HITTING_HPP
#define SLE_HITTING_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sle/params.hpp"
#include "sle/quadrature.hpp"

namespace sle {

/// One sampled hitting time of two-sided radial SLE.
struct HittingSample {
    double T = 0.0;
    bool truncated = false;
    enum class Sampler { direct, functional } sampler = Sampler::direct;
    std::uint64_t seed = 0;
};

struct DirectOptions {
    double dt_base = 5e-4;   // base Euler-Maruyama step
    double eps_hit = 1e-4;   // stop once Y <= eps_hit, then extrapolate
    double cfl = 0.05;       // local step <= cfl * |Z|^2 / a
    std::size_t max_steps = 20000000;
    bool mirror_noise = false;  // W -> -W (X -> -X symmetry checks)
    bool zero_noise = false;    // W == 0 (ODE oracle)
};

/// Sampler A: Euler-Maruyama on the two-sided radial SDE
///   dX = (1-3a) X / (X^2+Y^2) dt + dW,   dY/dt = -a Y / (X^2+Y^2),
/// run until Y <= eps_hit with quadratic substep refinement; the remaining
/// time is closed-form extrapolated as |Z|^2/(2a).  T >= y^2/(2a) always.
HittingSample sample_T_direct(std::complex<double> z, const KappaParams& params,
                              std::uint64_t seed, const DirectOptions& opts = {});

struct FunctionalOptions {
    double dt = 1e-3;        // step of the J diffusion
    double tail_tol = 1e-9;  // stop once the running-max tail bound is below this
    double s_cap = 0.0;      // hard cap on diffusion time; <= 0 selects 30/a + 20
    bool zero_noise = false;    // W == 0 (ODE oracle)
    bool use_cosh2_form = false;  // accumulate 1/(4a)-split form (identity check)
};

/// Sampler B: the time-change representation T = int_0^inf e^{-2as} cosh^2(J_s) ds
/// where dJ = (1/2 - 2a) tanh(J) dt + dW, sinh(J_0) = x (start x + i).
/// Trapezoidal accumulation, truncated when the running-max tail bound
/// e^{-2as} cosh^2(J_max)/(2a) drops below tail_tol; the frozen-J tail
/// e^{-2as} cosh^2(J_s)/(2a) is added on.  T >= 1/(2a) always.
HittingSample sample_T_functional(double x, const KappaParams& params, std::uint64_t seed,
                                  const FunctionalOptions& opts = {});

/// phi(z; t) = P{T_z <= t}, estimated with sampler A through the scaling
/// reduction phi(x+iy; t) = P{T_{|x|/y + i} <= t/y^2}.  Exactly zero when
/// y > sqrt(2 a t).  Requires n_samples >= 100.
std::pair<double, double> phi(std::complex<double> z, double t, int n_samples,
                              const KappaParams& params, std::uint64_t seed);

/// Cached Monte Carlo estimates of phi(z) = phi(z;1) on a rectangular grid
/// over x in [0, x_max], y in (0, sqrt(2a)]; bilinear interpolation on
/// query, mirrored in x, exactly zero above the support line.
class PhiTable {
public:
    double kappa() const { return kappa_; }
    double x_max() const { return x_max_; }
    double y_max() const { return y_max_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::size_t samples_per_node() const { return n_per_node_; }
    double dx() const { return x_max_ / (nx_ - 1); }
    double dy() const { return y_max_ / ny_; }
    double node_x(int i) const { return i * dx(); }
    double node_y(int j) const { return (j + 1) * dy(); }
    double node_phi(int i, int j) const { return phi_[static_cast<std::size_t>(j) * nx_ + i]; }
    double node_err(int i, int j) const { return err_[static_cast<std::size_t>(j) * nx_ + i]; }

    /// Interpolated phi(x + iy); stderr doubled on off-node queries.
    std::pair<double, double> query(double x, double y) const;
    double phi_at(double x, double y) const { return query(x, y).first; }

    void save_csv(const std::string& path) const;
    static PhiTable load_csv(const std::string& path, const KappaParams& params);

    friend PhiTable build_phi_table(int resolution, int n_samples, const KappaParams& params,
                                    std::uint64_t seed, int threads);

private:
    double kappa_ = 0.0, x_max_ = 0.0, y_max_ = 0.0;
    int nx_ = 0, ny_ = 0;
    std::vector<double> phi_, err_;
    std::size_t n_per_node_ = 0;
};

/// Builds the table from a bank of sampler-B hitting-time CDFs on an
/// asinh-spaced ratio grid; x_max is chosen so that the tail column stays
/// below 1e-3.  resolution = nodes per y axis (>= 8).
PhiTable build_phi_table(int resolution, int n_samples, const KappaParams& params,
                         std::uint64_t seed, int threads = 1);

/// Density of d(mu) = phi(z) G(z) dA(z); zero for y > sqrt(2a).
double mu_density(std::complex<double> z, const PhiTable& table, const KappaParams& params);

/// Fixed quadrature nodes for integrals against d(mu), cell-centered over
/// [-x_max, x_max] x (0, sqrt(2a)]; zero-mass cells are dropped.
struct MuGrid {
    std::vector<std::complex<double>> nodes;
    std::vector<double> dmu;  // phi * G * cell area
    double total_mass() const;
};

MuGrid make_mu_grid(const PhiTable& table, const KappaParams& params, int nx, int ny);

} // namespace sle

#endif
