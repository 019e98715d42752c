#include "sle/natparam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sle/green.hpp"
#include "sle/parallel.hpp"

namespace sle {

namespace {

// steps of the chain grid per dyadic slot 2^-n; throws unless dt divides 2^-n
std::size_t steps_per_slot(const LoewnerChain& chain, int n) {
    if (n < 0) throw std::invalid_argument("theta: level n must be nonnegative");
    const double slot = std::ldexp(1.0, -n);
    const double ratio = slot / chain.dt();
    const auto k = static_cast<std::size_t>(std::llround(ratio));
    if (k == 0 || std::fabs(ratio - static_cast<double>(k)) > 1e-9) {
        throw std::invalid_argument("theta: chain dt must divide the dyadic slot 2^-n");
    }
    return k;
}

// phi(Z * 2^{n/2}) via the table; zero outside the support strip
double phi_scaled(const PhiTable& table, std::complex<double> Z, double scale,
                  double y_support2) {
    const double Y = Z.imag();
    if (Y * Y > y_support2) return 0.0;
    return table.phi_at(Z.real() * scale, Y * scale);
}

} // namespace

double theta_increment(const LoewnerChain& chain, int j, int n, const DomainBox& box,
                       const QuadratureGrid& grid, const PhiTable& table) {
    if (j < 1) throw std::invalid_argument("theta_increment: j must be >= 1");
    if (std::fabs(table.kappa() - chain.params().kappa) > 1e-12) {
        throw std::invalid_argument("theta_increment: phi table built for a different kappa");
    }
    const std::size_t per_slot = steps_per_slot(chain, n);
    const std::size_t K = per_slot * static_cast<std::size_t>(j - 1);
    if (K > chain.steps()) throw std::invalid_argument("theta_increment: slot beyond horizon");
    const double a = chain.params().a;
    const double scale = std::exp2(0.5 * n);
    const double y_support2 = 2.0 * a * std::ldexp(1.0, -n);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        if (!box.contains(grid.nodes[i])) continue;
        TrackedPoint p{grid.nodes[i], 0.0, true, 0.0};
        for (std::size_t k = 0; k < K && p.alive; ++k) chain.advance(p, k);
        if (!p.alive) continue;
        const FlowState st = chain.state_from_tracked(p, grid.nodes[i], K);
        const double ph = phi_scaled(table, st.Z, scale, y_support2);
        if (ph == 0.0) continue;
        sum += grid.weights[i] * local_mart_M(st, chain.params()) * ph;
    }
    return sum;
}

double theta_increment_mu_form(const LoewnerChain& chain, int j, int n, const DomainBox& box,
                               const MuGrid& mu) {
    if (j < 1) throw std::invalid_argument("theta_increment_mu_form: j must be >= 1");
    const std::size_t per_slot = steps_per_slot(chain, n);
    const std::size_t K = per_slot * static_cast<std::size_t>(j - 1);
    if (K > chain.steps()) throw std::invalid_argument("theta_increment_mu_form: slot beyond horizon");
    const double t = static_cast<double>(K) * chain.dt();
    const double d = chain.params().d;
    const double shrink = std::exp2(-0.5 * n);
    double sum = 0.0;
    for (std::size_t i = 0; i < mu.nodes.size(); ++i) {
        const std::complex<double> z = mu.nodes[i] * shrink;
        const auto [fz, df] = chain.fhat_deriv(t, z);
        if (!box.contains(fz)) continue;
        sum += mu.dmu[i] * std::pow(df, d);
    }
    return std::exp2(-0.5 * n * d) * sum;
}

std::vector<ThetaSeries> theta_levels(const LoewnerChain& chain, double t,
                                      const std::vector<int>& levels, const DomainBox& box,
                                      const QuadratureGrid& grid, const PhiTable& table) {
    if (levels.empty()) throw std::invalid_argument("theta_levels: no levels requested");
    if (std::fabs(table.kappa() - chain.params().kappa) > 1e-12) {
        throw std::invalid_argument("theta_levels: phi table built for a different kappa");
    }
    if (t < 0.0 || t > chain.horizon() * (1.0 + 1e-9)) {
        throw std::invalid_argument("theta_levels: t outside [0, horizon]");
    }
    const int n_max = *std::max_element(levels.begin(), levels.end());
    const std::size_t fine_steps = steps_per_slot(chain, n_max);
    const double a = chain.params().a;
    const auto n_fine = static_cast<std::size_t>(std::llround(t * std::exp2(n_max)));

    std::vector<ThetaSeries> out(levels.size());
    std::vector<double> scale(levels.size()), support2(levels.size());
    std::vector<std::size_t> stride(levels.size());
    for (std::size_t li = 0; li < levels.size(); ++li) {
        const int n = levels[li];
        steps_per_slot(chain, n);  // validates divisibility
        out[li].level = n;
        const auto count = static_cast<std::size_t>(std::llround(t * std::exp2(n)));
        out[li].increments.assign(count, 0.0);
        scale[li] = std::exp2(0.5 * n);
        support2[li] = 2.0 * a * std::ldexp(1.0, -n);
        stride[li] = static_cast<std::size_t>(std::llround(std::exp2(n_max - n)));
    }

    // one sweep of the quadrature nodes; increments picked up at their
    // left-endpoint checkpoints
    std::vector<TrackedPoint> pts;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        if (box.contains(grid.nodes[i])) {
            pts.push_back({grid.nodes[i], 0.0, true, 0.0});
            idx.push_back(i);
        }
    }
    for (std::size_t m = 0; m < n_fine; ++m) {
        // checkpoint at s = m * 2^-n_max (start of fine slot m)
        const std::size_t K = m * fine_steps;
        for (std::size_t li = 0; li < levels.size(); ++li) {
            if (m % stride[li] != 0) continue;
            const std::size_t jj = m / stride[li];  // increment index j-1
            if (jj >= out[li].increments.size()) continue;
            double sum = 0.0;
            for (std::size_t q = 0; q < pts.size(); ++q) {
                const TrackedPoint& p = pts[q];
                if (!p.alive) continue;
                const double Y = p.w.imag();
                if (Y * Y > support2[li]) continue;
                const FlowState st = chain.state_from_tracked(p, grid.nodes[idx[q]], K);
                const double ph = phi_scaled(table, st.Z, scale[li], support2[li]);
                if (ph == 0.0) continue;
                sum += grid.weights[idx[q]] * local_mart_M(st, chain.params()) * ph;
            }
            out[li].increments[jj] = sum;
        }
        for (auto& p : pts) {
            for (std::size_t k = K; k < K + fine_steps; ++k) chain.advance(p, k);
        }
    }
    for (auto& series : out) {
        series.theta.resize(series.increments.size());
        double run = 0.0;
        for (std::size_t j = 0; j < series.increments.size(); ++j) {
            run += series.increments[j];
            series.theta[j] = run;
        }
    }
    return out;
}

ThetaSeries theta_estimate(const LoewnerChain& chain, double t, int n, const DomainBox& box,
                           const QuadratureGrid& grid, const PhiTable& table) {
    return theta_levels(chain, t, {n}, box, grid, table).front();
}

bool DyadicReport::decreasing(int max_inversions, double z) const {
    int inversions = 0;
    for (std::size_t i = 0; i + 1 < sq_diff.size(); ++i) {
        if (sq_diff[i + 1].mean > sq_diff[i].mean) {
            ++inversions;
            const double slack =
                z * (sq_diff[i].std_error() + sq_diff[i + 1].std_error());
            if (sq_diff[i + 1].mean - sq_diff[i].mean > slack) return false;
        }
    }
    return inversions <= max_inversions;
}

DyadicReport dyadic_diagnostics(int n_chains, std::uint64_t base_seed, double t, double dt,
                                const KappaParams& params, const DomainBox& box,
                                const QuadratureGrid& grid, const PhiTable& table,
                                const std::vector<int>& levels, int threads) {
    if (n_chains < 2) throw std::invalid_argument("dyadic_diagnostics: need >= 2 chains");
    if (levels.size() < 2) throw std::invalid_argument("dyadic_diagnostics: need >= 2 levels");
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (levels[i] <= levels[i - 1]) {
            throw std::invalid_argument("dyadic_diagnostics: levels must ascend");
        }
    }
    std::vector<std::vector<double>> values(n_chains);
    parallel_for(static_cast<std::size_t>(n_chains), threads, [&](std::size_t c) {
        const LoewnerChain chain(sample_driving(t, dt, base_seed + c), params);
        const auto series = theta_levels(chain, t, levels, box, grid, table);
        std::vector<double> v(series.size());
        for (std::size_t li = 0; li < series.size(); ++li) v[li] = series[li].value();
        values[c] = std::move(v);
    });
    DyadicReport rep;
    rep.levels = levels;
    rep.theta_mean.resize(levels.size());
    rep.sq_diff.resize(levels.size() - 1);
    for (int c = 0; c < n_chains; ++c) {
        for (std::size_t li = 0; li < levels.size(); ++li) {
            rep.theta_mean[li].add(values[c][li]);
            if (li + 1 < levels.size()) {
                const double diff = values[c][li + 1] - values[c][li];
                rep.sq_diff[li].add(diff * diff);
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Minkowski content via an exact Euclidean distance transform

namespace {

// "no seed anywhere near" sentinel; large against any threshold of interest
// yet safe in float arithmetic
constexpr float kFarAway = 1e9f;

// 1D squared-distance transform (Felzenszwalb-Huttenlocher lower envelope);
// all inputs finite, sentinel-valued cells simply stay large.
void edt_1d(const std::vector<float>& f, std::vector<float>& d, std::vector<int>& v,
            std::vector<double>& zbuf, int n) {
    auto sq = [](int x) { return static_cast<double>(x) * x; };
    int k = 0;
    v[0] = 0;
    zbuf[0] = -1e300;
    zbuf[1] = 1e300;
    for (int q = 1; q < n; ++q) {
        double s = ((f[q] + sq(q)) - (f[v[k]] + sq(v[k]))) / (2.0 * (q - v[k]));
        while (s <= zbuf[k]) {
            --k;
            s = ((f[q] + sq(q)) - (f[v[k]] + sq(v[k]))) / (2.0 * (q - v[k]));
        }
        ++k;
        v[k] = q;
        zbuf[k] = s;
        zbuf[k + 1] = 1e300;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (zbuf[k + 1] < q) ++k;
        d[q] = static_cast<float>(sq(q - v[k])) + f[v[k]];
    }
}

} // namespace

MinkowskiResult minkowski_content(std::span<const std::complex<double>> curve,
                                  std::vector<double> eps_list, double exponent) {
    if (curve.empty()) throw std::invalid_argument("minkowski_content: empty curve");
    if (eps_list.empty()) throw std::invalid_argument("minkowski_content: no eps values");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0) || (i > 0 && eps_list[i] >= eps_list[i - 1])) {
            throw std::invalid_argument("minkowski_content: eps must be positive decreasing");
        }
    }
    const double cell = eps_list.back() / 4.0;
    const double eps_max = eps_list.front();

    double x_lo = curve[0].real(), x_hi = x_lo, y_lo = curve[0].imag(), y_hi = y_lo;
    double max_seg = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        x_lo = std::min(x_lo, curve[i].real());
        x_hi = std::max(x_hi, curve[i].real());
        y_lo = std::min(y_lo, curve[i].imag());
        y_hi = std::max(y_hi, curve[i].imag());
        if (i > 0) max_seg = std::max(max_seg, std::abs(curve[i] - curve[i - 1]));
    }
    const double margin = eps_max + 2.0 * cell;
    x_lo -= margin;
    y_lo -= margin;
    x_hi += margin;
    y_hi += margin;
    const int nx = static_cast<int>(std::ceil((x_hi - x_lo) / cell)) + 1;
    const int ny = static_cast<int>(std::ceil((y_hi - y_lo) / cell)) + 1;
    if (static_cast<long long>(nx) * ny > 400000000LL) {
        throw std::invalid_argument("minkowski_content: raster too large; coarsen eps");
    }

    std::vector<float> dist2(static_cast<std::size_t>(nx) * ny, kFarAway);
    auto stamp = [&](std::complex<double> p) {
        const int i = static_cast<int>(std::floor((p.real() - x_lo) / cell));
        const int j = static_cast<int>(std::floor((p.imag() - y_lo) / cell));
        if (i >= 0 && i < nx && j >= 0 && j < ny) {
            dist2[static_cast<std::size_t>(j) * nx + i] = 0.0f;
        }
    };
    stamp(curve[0]);
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const std::complex<double> a = curve[i - 1], b = curve[i];
        const double len = std::abs(b - a);
        const int pieces = std::max(1, static_cast<int>(std::ceil(len / (0.5 * cell))));
        for (int k = 1; k <= pieces; ++k) {
            stamp(a + (b - a) * (static_cast<double>(k) / pieces));
        }
    }

    // column pass then row pass
    {
        std::vector<float> f(ny), dcol(ny);
        std::vector<double> zbuf(static_cast<std::size_t>(ny) + 1);
        std::vector<int> v(ny);
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) f[j] = dist2[static_cast<std::size_t>(j) * nx + i];
            edt_1d(f, dcol, v, zbuf, ny);
            for (int j = 0; j < ny; ++j) dist2[static_cast<std::size_t>(j) * nx + i] = dcol[j];
        }
        std::vector<float> fr(nx), drow(nx);
        std::vector<double> zr(static_cast<std::size_t>(nx) + 1);
        std::vector<int> vr(nx);
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) fr[i] = dist2[static_cast<std::size_t>(j) * nx + i];
            edt_1d(fr, drow, vr, zr, nx);
            for (int i = 0; i < nx; ++i) dist2[static_cast<std::size_t>(j) * nx + i] = drow[i];
        }
    }

    MinkowskiResult res;
    res.raster_warning = cell < max_seg;  // raster finer than the curve sampling
    res.eps = eps_list;
    std::vector<double> thr2(eps_list.size());
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        const double c = eps_list[e] / cell;
        thr2[e] = c * c;
    }
    std::vector<std::size_t> counts(eps_list.size(), 0);
    for (float d2 : dist2) {
        if (d2 >= 0.25f * kFarAway) continue;
        for (std::size_t e = 0; e < eps_list.size(); ++e) {
            if (d2 <= thr2[e]) ++counts[e];
        }
    }
    res.area.resize(eps_list.size());
    res.content.resize(eps_list.size());
    std::vector<double> lx(eps_list.size()), ly(eps_list.size());
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        res.area[e] = static_cast<double>(counts[e]) * cell * cell;
        res.content[e] = std::pow(eps_list[e], exponent - 2.0) * res.area[e];
        lx[e] = std::log(eps_list[e]);
        ly[e] = std::log(res.area[e]);
    }
    res.area_slope = fit_line(lx, ly).slope;
    return res;
}

double conformal_minkowski(const LoewnerChain& chain, double t, double eps,
                           const QuadratureGrid& grid) {
    if (!(eps > 0.0)) throw std::invalid_argument("conformal_minkowski: eps must be positive");
    const std::size_t K = chain.step_index(t);
    double area = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        TrackedPoint p{grid.nodes[i], 0.0, true, 0.0};
        for (std::size_t k = 0; k < K && p.alive; ++k) chain.advance(p, k);
        const FlowState st = chain.state_from_tracked(p, grid.nodes[i], K);
        if (st.upsilon() <= eps) area += grid.weights[i];
    }
    return std::pow(eps, chain.params().d - 2.0) * area;
}

std::vector<double> d_variation(std::span<const std::complex<double>> curve, double exponent,
                                std::span<const int> mesh_counts) {
    if (curve.size() < 2) throw std::invalid_argument("d_variation: curve too short");
    std::vector<double> out;
    out.reserve(mesh_counts.size());
    const std::size_t last = curve.size() - 1;
    for (int m : mesh_counts) {
        if (m < 1 || static_cast<std::size_t>(m) > last) {
            throw std::invalid_argument("d_variation: mesh count outside [1, len-1]");
        }
        double sum = 0.0;
        std::size_t prev = 0;
        for (int k = 1; k <= m; ++k) {
            const std::size_t idx = last * static_cast<std::size_t>(k) / m;
            sum += std::pow(std::abs(curve[idx] - curve[prev]), exponent);
            prev = idx;
        }
        out.push_back(sum);
    }
    return out;
}

} // namespace sle
