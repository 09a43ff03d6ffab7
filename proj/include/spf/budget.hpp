#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spf {

struct Infeasible : std::runtime_error {
    double estimate, budget;
    Infeasible(const std::string& what, double est, double max);
};

// dim Gamma^D(gl_D) = C(D^2 + D - 1, D), an upper bound for the modules met when resolving in degree D.
double gamma_size_estimate(uint32_t D);

// Throws Infeasible when the degree-D estimate exceeds the budget.
void check_budget(uint32_t D, double max_dim);

constexpr double kDefaultMaxDim = 2.0e5;

} // namespace spf
