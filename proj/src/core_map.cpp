#include "bcnf/core_map.hpp"

namespace bcnf {

Params make_params(double tau_L, double delta_L, double tau_R, double delta_R) {
    if (!std::isfinite(tau_L) || !std::isfinite(delta_L) ||
        !std::isfinite(tau_R) || !std::isfinite(delta_R)) {
        throw std::invalid_argument("parameters must be finite");
    }
    if (!(tau_L > 0.0)) throw std::invalid_argument("tau_L must be positive");
    if (!(delta_L > 0.0)) throw std::invalid_argument("delta_L must be positive");
    if (!(delta_R > 0.0)) throw std::invalid_argument("delta_R must be positive");
    return {tau_L, delta_L, tau_R, delta_R};
}

}  // namespace bcnf
