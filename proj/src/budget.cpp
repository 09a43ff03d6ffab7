#include "spf/budget.hpp"

#include <cmath>
#include <sstream>

namespace spf {

Infeasible::Infeasible(const std::string& what, double est, double max) : std::runtime_error(what), estimate(est), budget(max) {}

double gamma_size_estimate(uint32_t D)
{
    double n = static_cast<double>(D) * D + D - 1, c = 1;
    for (uint32_t k = 1; k <= D; ++k)
        c = c * (n - D + k) / k;
    return std::round(c);
}

void check_budget(uint32_t D, double max_dim)
{
    double est = gamma_size_estimate(D);
    if (est > max_dim) {
        std::ostringstream o;
        o << "degree " << D << " needs modules of dimension up to about " << est << ", budget " << max_dim;
        throw Infeasible(o.str(), est, max_dim);
    }
}

} // namespace spf
