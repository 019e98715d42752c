#ifndef SLE_STATS_HPP
#define SLE_STATS_HPP

#include <cstddef>
#include <vector>

namespace sle {

/// Streaming mean/variance accumulator (Welford).  Merging is associative;
/// reductions in this toolkit always merge in a fixed index order so that
/// results do not depend on the number of worker threads.
struct MCAccumulator {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const MCAccumulator& o) {
        if (o.n == 0) return;
        if (n == 0) { *this = o; return; }
        const double na = static_cast<double>(n);
        const double nb = static_cast<double>(o.n);
        const double delta = o.mean - mean;
        const double nt = na + nb;
        mean += delta * nb / nt;
        m2 += o.m2 + delta * delta * na * nb / nt;
        n += o.n;
    }

    double variance() const { return n >= 2 ? m2 / static_cast<double>(n - 1) : 0.0; }
    /// Standard error of the mean, sqrt(m2 / (n (n-1))).
    double std_error() const;
};

/// Two-sample Kolmogorov-Smirnov statistic sup|F1 - F2| (inputs need not be sorted).
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic two-sample KS p-value for statistic d with sample sizes n and m.
double ks_pvalue(double d, std::size_t n, std::size_t m);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Least-squares line through (x_i, y_i).
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace sle

#endif
