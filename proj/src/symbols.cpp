#include "layerstokes/symbols.hpp"

#include <cmath>

namespace layerstokes {

bool sector_check(const ResolventParameter& p) {
    if (!(p.epsilon > 0.0 && p.epsilon < 1.5707963267948966))
        throw std::invalid_argument("sector_check: epsilon must lie in (0, pi/2)");
    if (p.lambda == cplx<double>(0.0, 0.0)) return false;
    const double pi = 3.14159265358979323846;
    return std::abs(std::arg(p.lambda)) <= pi - p.epsilon && std::abs(p.lambda) > p.gamma0;
}

ModeSymbols compute_mode_symbols(std::span<const double> xi, const ResolventParameter& p,
                                 const LayerConfig& cfg, LambdaDomain dom) {
    cfg.validate();
    return compute_mode_symbols<double>(xi, p.lambda, cfg.mu, cfg.delta, dom);
}

}  // namespace layerstokes
