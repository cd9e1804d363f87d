#pragma once

#include "mobnet/config.hpp"

#include <cstdint>

namespace mobnet::theory {

// Threshold without congestion: N / (R <T>), with <T> a measured input.
// A value above 1 means no threshold below 1 exists.
double beta_c_free(double n_agents, double gen_rate, double avg_travel_time);

inline bool has_threshold_below_one(double beta_c) { return beta_c <= 1.0; }

// Fully congested limit: every agent sends exactly C packets per step, giving
// 1 / C. Throws std::domain_error for infinite capacity.
double beta_c_congested(Capacity capacity);

// Nontrivial stationary density max(0, 1 - beta_c / beta). Throws
// std::invalid_argument when beta and beta_c are both 0.
double rho_steady_mf(double beta, double beta_c);

// One Euler step of d(rho)/dt = -rho + (R<T>/N) beta rho (1 - rho) with unit
// time step; `contacts` is R<T>/N (or C in the congested limit).
double mean_field_step(double rho, double beta, double contacts);

} // namespace mobnet::theory
