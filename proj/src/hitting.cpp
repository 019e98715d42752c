#include "sle/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sle/green.hpp"
#include "sle/parallel.hpp"
#include "sle/rng.hpp"

namespace sle {

HittingSample sample_T_direct(std::complex<double> z, const KappaParams& params,
                              std::uint64_t seed, const DirectOptions& opts) {
    if (!(z.imag() > 0.0)) throw std::domain_error("sample_T_direct: z must have Im z > 0");
    const double a = params.a;
    Rng rng(seed);
    double X = z.real(), Y = z.imag(), t = 0.0;
    const double drift = 1.0 - 3.0 * a;
    const double sign = opts.mirror_noise ? -1.0 : 1.0;
    HittingSample out;
    out.sampler = HittingSample::Sampler::direct;
    out.seed = seed;
    std::size_t steps = 0;
    while (Y > opts.eps_hit) {
        if (++steps > opts.max_steps) {
            out.truncated = true;
            break;
        }
        const double r2 = X * X + Y * Y;
        const double dt = std::min(opts.dt_base, opts.cfl * r2 / a);
        X += drift * X / r2 * dt + std::sqrt(dt) * sign * rng.normal();
        Y -= a * Y / r2 * dt;
        t += dt;
    }
    // remaining time from the local closed form d(Y^2)/dt = -2a Y^2/|Z|^2
    out.T = t + (X * X + Y * Y) / (2.0 * a);
    return out;
}

HittingSample sample_T_functional(double x, const KappaParams& params, std::uint64_t seed,
                                  const FunctionalOptions& opts) {
    const double a = params.a;
    const double s_cap = opts.s_cap > 0.0 ? opts.s_cap : 30.0 / a + 20.0;
    Rng rng(seed);
    double J = std::asinh(x);
    double s = 0.0;
    const double drift = 0.5 - 2.0 * a;
    const double sd = std::sqrt(opts.dt);
    double cosh_max = std::cosh(J);
    double prev = std::cosh(J) * std::cosh(J);  // e^{-2as} cosh^2(J) at s = 0
    double cum = 0.0;
    HittingSample out;
    out.sampler = HittingSample::Sampler::functional;
    out.seed = seed;
    for (;;) {
        J += drift * std::tanh(J) * opts.dt + sd * rng.normal();
        s += opts.dt;
        const double ch = std::cosh(J);
        const double integrand = std::exp(-2.0 * a * s) * ch * ch;
        cum += 0.5 * (prev + integrand) * opts.dt;
        prev = integrand;
        cosh_max = std::max(cosh_max, ch);
        const double tail_bound = std::exp(-2.0 * a * s) * cosh_max * cosh_max / (2.0 * a);
        if (tail_bound < opts.tail_tol) break;
        if (s >= s_cap) {
            out.truncated = true;
            break;
        }
    }
    out.T = cum + prev / (2.0 * a);  // frozen-J completion of the tail
    return out;
}

std::pair<double, double> phi(std::complex<double> z, double t, int n_samples,
                              const KappaParams& params, std::uint64_t seed) {
    if (!(z.imag() > 0.0)) throw std::domain_error("phi: z must have Im z > 0");
    if (!(t > 0.0)) throw std::invalid_argument("phi: t must be positive");
    if (n_samples < 100) throw std::invalid_argument("phi: n_samples must be >= 100");
    const double y = z.imag();
    if (y * y > 2.0 * params.a * t) return {0.0, 0.0};  // deterministic support bound
    const double u = std::fabs(z.real()) / y;
    const double threshold = t / (y * y);
    std::size_t count = 0;
    for (int k = 0; k < n_samples; ++k) {
        const auto s = sample_T_direct({u, 1.0}, params, mix64(seed) + static_cast<std::uint64_t>(k));
        if (s.T <= threshold) ++count;
    }
    const double p = static_cast<double>(count) / n_samples;
    return {p, std::sqrt(p * (1.0 - p) / n_samples)};
}

// ---------------------------------------------------------------------------
// PhiTable

std::pair<double, double> PhiTable::query(double x, double y) const {
    const double ax = std::fabs(x);
    if (y > y_max_ * (1.0 + 1e-12)) return {0.0, 0.0};
    if (ax > x_max_) return {0.0, 1e-3};  // beyond the tail column
    const double hx = dx(), hy = dy();
    double fx = ax / hx;
    double fy = y / hy - 1.0;  // node_y(j) = (j+1) hy
    fx = std::clamp(fx, 0.0, static_cast<double>(nx_ - 1));
    fy = std::clamp(fy, 0.0, static_cast<double>(ny_ - 1));
    const int i0 = std::min(nx_ - 2, static_cast<int>(fx));
    const int j0 = std::min(ny_ - 2, static_cast<int>(fy));
    const double sx = fx - i0, sy = fy - j0;
    auto at = [&](const std::vector<double>& v, int i, int j) {
        return v[static_cast<std::size_t>(j) * nx_ + i];
    };
    const double p = (1 - sx) * (1 - sy) * at(phi_, i0, j0) + sx * (1 - sy) * at(phi_, i0 + 1, j0) +
                     (1 - sx) * sy * at(phi_, i0, j0 + 1) + sx * sy * at(phi_, i0 + 1, j0 + 1);
    const double e = (1 - sx) * (1 - sy) * at(err_, i0, j0) + sx * (1 - sy) * at(err_, i0 + 1, j0) +
                     (1 - sx) * sy * at(err_, i0, j0 + 1) + sx * sy * at(err_, i0 + 1, j0 + 1);
    const bool on_node = std::fabs(sx) < 1e-12 && std::fabs(sy) < 1e-12;
    return {p, on_node ? e : 2.0 * e};  // interpolation absorbed into the error budget
}

PhiTable build_phi_table(int resolution, int n_samples, const KappaParams& params,
                         std::uint64_t seed, int threads) {
    if (resolution < 8) throw std::invalid_argument("build_phi_table: resolution must be >= 8");
    if (n_samples < 100) throw std::invalid_argument("build_phi_table: n_samples must be >= 100");
    PhiTable tab;
    tab.kappa_ = params.kappa;
    tab.y_max_ = std::sqrt(2.0 * params.a);
    tab.ny_ = resolution;
    tab.n_per_node_ = static_cast<std::size_t>(n_samples);
    const double hy = tab.y_max_ / resolution;

    // Bank of sampler-B hitting-time samples on an asinh-spaced ratio grid.
    const double x_cap = 8.0;
    const double xi_cap = std::asinh(x_cap / hy);
    const double dxi = 0.06;
    const int nu = static_cast<int>(std::ceil(xi_cap / dxi)) + 2;
    std::vector<std::vector<double>> bank(nu);
    parallel_for(static_cast<std::size_t>(nu), threads, [&](std::size_t k) {
        const double u = std::sinh(k * dxi);
        std::vector<double> samples(n_samples);
        for (int i = 0; i < n_samples; ++i) {
            Rng key(seed, (static_cast<std::uint64_t>(k) << 32) + static_cast<std::uint64_t>(i));
            samples[i] = sample_T_functional(u, params, key.next_u64()).T;
        }
        std::sort(samples.begin(), samples.end());
        bank[k] = std::move(samples);
    });

    auto cdf = [&](int k, double tau) {
        const auto& v = bank[k];
        return static_cast<double>(std::upper_bound(v.begin(), v.end(), tau) - v.begin()) /
               static_cast<double>(v.size());
    };
    auto phi_of = [&](double x, double y) {
        const double xi = std::asinh(x / y);
        const int k = std::min(nu - 2, static_cast<int>(xi / dxi));
        const double lam = std::clamp(xi / dxi - k, 0.0, 1.0);
        const double tau = 1.0 / (y * y);
        const double f0 = cdf(k, tau), f1 = cdf(k + 1, tau);
        const double p = (1.0 - lam) * f0 + lam * f1;
        const double binom = std::sqrt(std::max(p * (1.0 - p), 1.0 / n_samples) / n_samples);
        return std::pair<double, double>{p, binom + 0.5 * std::fabs(f1 - f0)};
    };

    // Pick x_max: first candidate column whose values all sit below 1e-3.
    double x_max = x_cap;
    for (double cand = 1.0; cand <= x_cap; cand += 0.25) {
        double worst = 0.0;
        for (int j = 0; j < resolution; ++j) {
            worst = std::max(worst, phi_of(cand, (j + 1) * hy).first);
        }
        if (worst < 1e-3) {
            x_max = cand;
            break;
        }
    }
    tab.x_max_ = x_max;
    tab.nx_ = std::max(resolution, static_cast<int>(std::lround(x_max / hy)) + 1);
    const double hx = x_max / (tab.nx_ - 1);
    tab.phi_.resize(static_cast<std::size_t>(tab.nx_) * tab.ny_);
    tab.err_.resize(tab.phi_.size());
    for (int j = 0; j < tab.ny_; ++j) {
        const double y = (j + 1) * hy;
        for (int i = 0; i < tab.nx_; ++i) {
            const auto [p, e] = phi_of(i * hx, y);
            tab.phi_[static_cast<std::size_t>(j) * tab.nx_ + i] = p;
            tab.err_[static_cast<std::size_t>(j) * tab.nx_ + i] = e;
        }
    }
    return tab;
}

void PhiTable::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("PhiTable::save_csv: cannot open " + path);
    out << "x,y,phi,stderr,n\n";
    char buf[160];
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%zu\n", node_x(i), node_y(j),
                          node_phi(i, j), node_err(i, j), n_per_node_);
            out << buf;
        }
    }
}

PhiTable PhiTable::load_csv(const std::string& path, const KappaParams& params) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("PhiTable::load_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "x,y,phi,stderr,n") {
        throw std::runtime_error("PhiTable::load_csv: missing or malformed header row");
    }
    std::vector<double> xs, ys, ps, es;
    std::size_t n_node = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double x, y, p, e;
        std::size_t n;
        char c;
        if (!(ss >> x >> c >> y >> c >> p >> c >> e >> c >> n)) {
            throw std::runtime_error("PhiTable::load_csv: malformed row: " + line);
        }
        xs.push_back(x);
        ys.push_back(y);
        ps.push_back(p);
        es.push_back(e);
        n_node = n;
    }
    if (xs.empty()) throw std::runtime_error("PhiTable::load_csv: no data rows");
    PhiTable tab;
    tab.kappa_ = params.kappa;
    // infer grid shape: rows are written j-major, i-minor
    int nx = 0;
    while (nx < static_cast<int>(xs.size()) && ys[nx] == ys[0]) ++nx;
    const int ny = static_cast<int>(xs.size()) / nx;
    if (static_cast<std::size_t>(nx) * ny != xs.size()) {
        throw std::runtime_error("PhiTable::load_csv: ragged grid");
    }
    tab.nx_ = nx;
    tab.ny_ = ny;
    tab.x_max_ = xs[nx - 1];
    tab.y_max_ = ys.back();
    tab.n_per_node_ = n_node;
    tab.phi_ = ps;
    tab.err_ = es;
    // validate invariants
    const double want_ymax = std::sqrt(2.0 * params.a);
    if (std::fabs(tab.y_max_ - want_ymax) > 1e-6) {
        throw std::runtime_error("PhiTable::load_csv: support bound does not match kappa");
    }
    for (double p : ps) {
        if (p < 0.0 || p > 1.0) throw std::runtime_error("PhiTable::load_csv: phi outside [0,1]");
    }
    for (int j = 0; j < ny; ++j) {
        if (!(ys[static_cast<std::size_t>(j) * nx] > 0.0)) {
            throw std::runtime_error("PhiTable::load_csv: node with y <= 0");
        }
    }
    return tab;
}

double mu_density(std::complex<double> z, const PhiTable& table, const KappaParams& params) {
    if (!(z.imag() > 0.0)) throw std::domain_error("mu_density: z must have Im z > 0");
    if (z.imag() > table.y_max()) return 0.0;
    const double p = table.phi_at(z.real(), z.imag());
    return p == 0.0 ? 0.0 : p * green_g(z, params);
}

double MuGrid::total_mass() const {
    double s = 0.0;
    for (double w : dmu) s += w;
    return s;
}

MuGrid make_mu_grid(const PhiTable& table, const KappaParams& params, int nx, int ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("make_mu_grid: grid too small");
    MuGrid g;
    const double x_max = table.x_max(), y_max = table.y_max();
    const double hx = 2.0 * x_max / nx, hy = y_max / ny;
    for (int j = 0; j < ny; ++j) {
        const double y = (j + 0.5) * hy;
        for (int i = 0; i < nx; ++i) {
            const double x = -x_max + (i + 0.5) * hx;
            const double w = mu_density({x, y}, table, params) * hx * hy;
            if (w > 0.0) {
                g.nodes.emplace_back(x, y);
                g.dmu.push_back(w);
            }
        }
    }
    return g;
}

} // namespace sle
