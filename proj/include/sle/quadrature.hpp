#ifndef SLE_QUADRATURE_HPP
#define SLE_QUADRATURE_HPP

#include <complex>
#include <string>
#include <vector>

namespace sle {

/// Axis-aligned box in the upper half-plane, bounded away from the real
/// line: 0 < y_min < y_max.  class_index() is the smallest m with
/// D contained in {|x| < m, 1/m < y < m}.
struct DomainBox {
    double x_min, x_max, y_min, y_max;

    DomainBox(double x0, double x1, double y0, double y1);

    bool contains(std::complex<double> z) const {
        return z.real() >= x_min && z.real() <= x_max && z.imag() >= y_min && z.imag() <= y_max;
    }
    double area() const { return (x_max - x_min) * (y_max - y_min); }
    int class_index() const;
    DomainBox scaled(double r) const { return {r * x_min, r * x_max, r * y_min, r * y_max}; }
};

/// Midpoint-rule nodes and weights; the weights sum to the area of the
/// underlying region (exactly, for a box).
struct QuadratureGrid {
    std::vector<std::complex<double>> nodes;
    std::vector<double> weights;
    std::string scheme;
    int nx = 0, ny = 0;

    double total_weight() const;
};

/// Uniform tensor midpoint grid on a box.  Throws if nx or ny < 1.
QuadratureGrid make_box_grid(const DomainBox& box, int nx, int ny);

} // namespace sle

#endif
