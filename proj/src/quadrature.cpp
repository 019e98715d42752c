#include "sle/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace sle {

DomainBox::DomainBox(double x0, double x1, double y0, double y1)
    : x_min(x0), x_max(x1), y_min(y0), y_max(y1) {
    if (!(x_min < x_max) || !(y_min < y_max) || !(y_min > 0.0)) {
        throw std::invalid_argument("DomainBox: need x_min < x_max and 0 < y_min < y_max");
    }
}

int DomainBox::class_index() const {
    const double xm = std::max(std::fabs(x_min), std::fabs(x_max));
    double need = std::max(xm, y_max);
    need = std::max(need, 1.0 / y_min);
    int m = static_cast<int>(std::ceil(need));
    // strict inclusion: |x| < m, 1/m < y < m
    while (xm >= m || y_max >= m || y_min <= 1.0 / m) ++m;
    return m;
}

double QuadratureGrid::total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

QuadratureGrid make_box_grid(const DomainBox& box, int nx, int ny) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("make_box_grid: empty grid");
    QuadratureGrid g;
    g.scheme = "midpoint";
    g.nx = nx;
    g.ny = ny;
    const double hx = (box.x_max - box.x_min) / nx;
    const double hy = (box.y_max - box.y_min) / ny;
    const double w = hx * hy;
    g.nodes.reserve(static_cast<std::size_t>(nx) * ny);
    g.weights.reserve(g.nodes.capacity());
    for (int j = 0; j < ny; ++j) {
        const double y = box.y_min + (j + 0.5) * hy;
        for (int i = 0; i < nx; ++i) {
            g.nodes.emplace_back(box.x_min + (i + 0.5) * hx, y);
            g.weights.push_back(w);
        }
    }
    return g;
}

} // namespace sle
