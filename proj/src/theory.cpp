#include "mobnet/theory.hpp"

#include <algorithm>
#include <stdexcept>

namespace mobnet::theory {

double beta_c_free(double n_agents, double gen_rate, double avg_travel_time) {
    const double load = gen_rate * avg_travel_time;
    if (!(load > 0.0)) {
        throw std::invalid_argument("beta_c_free: R * <T> must be positive");
    }
    return n_agents / load;
}

double beta_c_congested(Capacity capacity) {
    if (capacity.is_infinite()) {
        throw std::domain_error("beta_c_congested: capacity is infinite, use beta_c_free");
    }
    return 1.0 / static_cast<double>(capacity.finite_value());
}

double rho_steady_mf(double beta, double beta_c) {
    if (beta < 0.0 || beta > 1.0) {
        throw std::invalid_argument("rho_steady_mf: beta outside [0, 1]");
    }
    if (beta == 0.0) {
        if (beta_c == 0.0) {
            throw std::invalid_argument("rho_steady_mf: beta = beta_c = 0 is undefined");
        }
        return 0.0;
    }
    return std::max(0.0, 1.0 - beta_c / beta);
}

double mean_field_step(double rho, double beta, double contacts) {
    return rho + (-rho + contacts * beta * rho * (1.0 - rho));
}

} // namespace mobnet::theory
