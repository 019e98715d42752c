#include "sle/green.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sle {

double green_g(std::complex<double> z, const KappaParams& params) {
    const double y = z.imag();
    if (!(y > 0.0)) throw std::domain_error("green_g: z must have Im z > 0");
    const double x = z.real();
    const double r2 = x * x + y * y;
    const double p = params.green_sin_exponent();
    // |z|^(d-2) sin^p(theta) = y^p * r^(d-2-p)
    return std::pow(y, p) * std::pow(r2, 0.5 * (params.d - 2.0 - p));
}

double local_mart_M(const FlowState& state, const KappaParams& params) {
    if (!state.alive) return 0.0;
    return std::pow(state.abs_gprime, 2.0 - params.d) * green_g(state.Z, params);
}

double psi(const LoewnerChain& chain, double t, const DomainBox& box,
           const QuadratureGrid& grid, const KappaParams& params) {
    if (grid.nodes.empty()) throw std::invalid_argument("psi: empty quadrature grid");
    const std::size_t K = chain.step_index(t);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        if (!box.contains(grid.nodes[i])) continue;
        TrackedPoint p{grid.nodes[i], 0.0, true, 0.0};
        for (std::size_t k = 0; k < K && p.alive; ++k) chain.advance(p, k);
        if (!p.alive) continue;
        const FlowState st = chain.state_from_tracked(p, grid.nodes[i], K);
        sum += grid.weights[i] * local_mart_M(st, params);
    }
    return sum;
}

double psi_image_side(const LoewnerChain& chain, double t, const DomainBox& box,
                      int resolution, const KappaParams& params) {
    if (resolution < 4) throw std::invalid_argument("psi_image_side: resolution too small");
    // Window on the image side: bounding box of Z_t over a boundary sample of D.
    const int nb = 64;
    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = 0.0;
    auto absorb = [&](std::complex<double> w) {
        const FlowState st = chain.forward_state(t, w);
        if (!st.alive) return;
        x_lo = std::min(x_lo, st.Z.real());
        x_hi = std::max(x_hi, st.Z.real());
        y_lo = std::min(y_lo, st.Z.imag());
        y_hi = std::max(y_hi, st.Z.imag());
    };
    for (int i = 0; i <= nb; ++i) {
        const double fx = box.x_min + (box.x_max - box.x_min) * i / nb;
        const double fy = box.y_min + (box.y_max - box.y_min) * i / nb;
        absorb({fx, box.y_min});
        absorb({fx, box.y_max});
        absorb({box.x_min, fy});
        absorb({box.x_max, fy});
    }
    if (!(x_hi > x_lo)) return 0.0;  // everything swallowed
    const double pad_x = 0.15 * (x_hi - x_lo) + 2.0 * chain.slit_height();
    const double pad_y = 0.15 * (y_hi - y_lo) + 2.0 * chain.slit_height();
    x_lo -= pad_x;
    x_hi += pad_x;
    y_lo = std::max(1e-6, y_lo - pad_y);
    y_hi += pad_y;

    const int nx = resolution, ny = resolution;
    const double hx = (x_hi - x_lo) / nx;
    const double hy = (y_hi - y_lo) / ny;
    double sum = 0.0;
    for (int j = 0; j < ny; ++j) {
        const double y = y_lo + (j + 0.5) * hy;
        for (int i = 0; i < nx; ++i) {
            const std::complex<double> z(x_lo + (i + 0.5) * hx, y);
            const auto [fz, df] = chain.fhat_deriv(t, z);
            if (!box.contains(fz)) continue;
            sum += hx * hy * std::pow(df, params.d) * green_g(z, params);
        }
    }
    return sum;
}

double integrate_G(double K, int resolution, const KappaParams& params) {
    if (!(K > 0.0)) throw std::invalid_argument("integrate_G: K must be positive");
    if (resolution < 8) throw std::invalid_argument("integrate_G: resolution too small");
    // Geometric panels in y toward the real axis, anchored on an absolute
    // ladder rho^j (so disks of different radius get genuinely different
    // meshes); midpoint rows in x.
    const int per_efold = std::max(8, resolution / 8);
    const double rho = std::exp(-1.0 / per_efold);
    const double y_floor = K * 1e-8;
    double b_hi = K;
    // first ladder point e^{-j/per_efold} strictly below K
    double ladder = std::exp(-(std::floor(-std::log(K) * per_efold) + 1.0) / per_efold);
    while (ladder >= K) ladder *= rho;
    double sum = 0.0;
    while (b_hi > y_floor) {
        double b_lo = ladder;
        ladder *= rho;
        if (b_lo < y_floor) b_lo = 0.0;
        const double y = 0.5 * (b_hi + b_lo);
        const double half_width = std::sqrt(std::max(0.0, K * K - y * y));
        if (half_width > 0.0) {
            const int nx = resolution;
            const double hx = 2.0 * half_width / nx;
            double row = 0.0;
            for (int i = 0; i < nx; ++i) {
                const double x = -half_width + (i + 0.5) * hx;
                row += green_g({x, y}, params);
            }
            sum += row * hx * (b_hi - b_lo);
        }
        b_hi = b_lo;
    }
    return sum;
}

} // namespace sle
