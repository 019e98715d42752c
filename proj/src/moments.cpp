#include "sle/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "sle/maps.hpp"
#include "sle/parallel.hpp"

namespace sle {

ReverseSample sample_reverse(const DrivingPath& driving, double t, std::complex<double> z,
                             const KappaParams& params) {
    if (!(z.imag() > 0.0)) throw std::domain_error("sample_reverse: z must have Im z > 0");
    const double ratio = t / driving.dt;
    auto K = static_cast<std::size_t>(std::llround(ratio));
    if (K > driving.steps()) K = driving.steps();
    const double two_a_dt = 2.0 * params.a * driving.dt;
    TrackedPoint p{z, 0.0, true, 0.0};
    for (std::size_t k = 0; k < K; ++k) {
        inverse_slit_step(p, driving.values[k], two_a_dt);
    }
    ReverseSample s;
    s.z = z;
    s.t = static_cast<double>(K) * driving.dt;
    s.h = p.w;
    s.log_abs_hprime = p.log_deriv;
    s.Z = {p.w.real() - driving.values[K], p.w.imag()};
    s.seed = driving.seed;
    return s;
}

double martingale_N(const ReverseSample& s, double r, const KappaParams& params) {
    const double kappa = params.kappa;
    const double lambda = r * (1.0 + kappa / 4.0) - kappa * r * r / 8.0;
    const double Y = s.Z.imag();
    const double log_n = lambda * s.log_abs_hprime - (kappa * r * r / 8.0) * std::log(Y) +
                         r * std::log(std::abs(s.Z));
    return std::exp(log_n);
}

double two_point_N(const ReverseSample& sz, const ReverseSample& sw, double r,
                   const KappaParams& params) {
    if (sz.z == sw.z) throw std::domain_error("two_point_N: points must be distinct");
    if (sz.seed != sw.seed || sz.t != sw.t) {
        throw std::invalid_argument("two_point_N: samples must share driving path and time");
    }
    const double cross = std::abs(sz.Z - sw.Z) * std::abs(sz.Z - std::conj(sw.Z));
    return martingale_N(sz, r, params) * martingale_N(sw, r, params) *
           std::pow(cross, -r * r * params.kappa / 4.0);
}

namespace {

// per-chain quadrature of |f_hat_s'|^d 1{f_hat_s in D} against the mu nodes
double one_chain_I(const LoewnerChain& chain, double s, const std::optional<DomainBox>& box,
                   const MuGrid& mu) {
    const double d = chain.params().d;
    double sum = 0.0;
    for (std::size_t i = 0; i < mu.nodes.size(); ++i) {
        const auto [fz, df] = chain.fhat_deriv(s, mu.nodes[i]);
        if (box && !box->contains(fz)) continue;
        sum += mu.dmu[i] * std::pow(df, d);
    }
    return sum;
}

} // namespace

MomentEstimate estimate_I(double s, const std::optional<DomainBox>& box, const MuGrid& mu,
                          int n_chains, double dt, const KappaParams& params,
                          std::uint64_t base_seed, int threads) {
    if (n_chains < 2) throw std::invalid_argument("estimate_I: need >= 2 chains");
    if (mu.nodes.empty()) throw std::invalid_argument("estimate_I: empty mu grid");
    std::vector<double> vals(n_chains);
    parallel_for(static_cast<std::size_t>(n_chains), threads, [&](std::size_t c) {
        const LoewnerChain chain(sample_driving(s, dt, base_seed + c), params);
        vals[c] = one_chain_I(chain, s, box, mu);
    });
    MCAccumulator acc;
    for (double v : vals) acc.add(v);
    return {acc.mean, acc.std_error(), acc.n};
}

MomentEstimate estimate_F(std::complex<double> z, std::complex<double> w, double t,
                          const DomainBox& box, int n_seeds, double dt,
                          const KappaParams& params, std::uint64_t base_seed, int threads) {
    if (!(z.imag() > 0.0) || !(w.imag() > 0.0)) {
        throw std::domain_error("estimate_F: points must have positive imaginary part");
    }
    if (n_seeds < 2) throw std::invalid_argument("estimate_F: need >= 2 seeds");
    const double d = params.d;
    std::vector<double> vals(n_seeds);
    parallel_for(static_cast<std::size_t>(n_seeds), threads, [&](std::size_t c) {
        const DrivingPath path = sample_driving(t, dt, base_seed + c);
        const ReverseSample sz = sample_reverse(path, t, z, params);
        const ReverseSample sw = sample_reverse(path, t, w, params);
        const bool inside = box.contains(sz.Z) && box.contains(sw.Z);
        vals[c] = inside ? std::exp(d * (sz.log_abs_hprime + sw.log_abs_hprime)) : 0.0;
    });
    MCAccumulator acc;
    for (double v : vals) acc.add(v);
    return {acc.mean, acc.std_error(), acc.n};
}

std::vector<SecondMomentRow> second_moment_growth(double t, const std::vector<double>& s_values,
                                                  const DomainBox& box, const MuGrid& mu,
                                                  int n_chains, double dt,
                                                  const KappaParams& params,
                                                  std::uint64_t base_seed, int threads) {
    if (s_values.empty()) throw std::invalid_argument("second_moment_growth: no s values");
    double s_max = 0.0;
    for (double s : s_values) s_max = std::max(s_max, s);
    const double t2 = t * t;
    const auto j_max = static_cast<std::size_t>(std::llround(s_max * s_max));
    const double horizon = t2 + static_cast<double>(j_max);

    // per-chain products I_{j+t^2} * I_{t^2}
    std::vector<std::vector<double>> products(n_chains);
    parallel_for(static_cast<std::size_t>(n_chains), threads, [&](std::size_t c) {
        const LoewnerChain chain(sample_driving(horizon, dt, base_seed + c), params);
        const double base = one_chain_I(chain, t2, box, mu);
        std::vector<double> prod(j_max);
        for (std::size_t j = 0; j < j_max; ++j) {
            prod[j] = base * one_chain_I(chain, t2 + static_cast<double>(j), box, mu);
        }
        products[c] = std::move(prod);
    });

    std::vector<SecondMomentRow> rows;
    rows.reserve(s_values.size());
    for (double s : s_values) {
        const auto lim = static_cast<std::size_t>(std::llround(s * s));
        MCAccumulator acc;
        for (int c = 0; c < n_chains; ++c) {
            double sum = 0.0;
            for (std::size_t j = 0; j < lim && j < products[c].size(); ++j) {
                sum += products[c][j];
            }
            acc.add(sum);
        }
        rows.push_back({s, acc.mean, acc.std_error()});
    }
    return rows;
}

} // namespace sle
