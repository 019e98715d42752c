#include "sle/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sle {

KappaParams make_params(double kappa) {
    if (!(kappa > 0.0) || !(kappa < 8.0)) {
        throw std::invalid_argument("kappa must lie in (0, 8), got " + std::to_string(kappa));
    }
    KappaParams p;
    p.kappa = kappa;
    p.a = 2.0 / kappa;
    p.d = 1.0 + kappa / 8.0;
    p.kappa0 = 4.0 * (7.0 - std::sqrt(33.0));
    p.zeta_lt4 = 2.0 - 3.0 * kappa / 4.0;
    p.zeta_main = 4.0 / kappa - 3.0 * kappa / 16.0 - 1.0;
    p.is_good = kappa < p.kappa0;
    return p;
}

} // namespace sle
