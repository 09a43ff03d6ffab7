#include "spf/resolution.hpp"

#include <stdexcept>

namespace spf {

namespace {

bool supported_in(const Composition& w, uint32_t n)
{
    for (size_t k = n; k < w.size(); ++k)
        if (w[k])
            return false;
    return true;
}

} // namespace

YonedaIso yoneda(ModulePtr B, uint32_t n, uint32_t m)
{
    if (n > B->left().dim() || m > B->right().dim())
        throw std::invalid_argument("yoneda: evaluation dimension too small");
    std::vector<FreeModule::Gen> gens;
    for (uint32_t l = 0; l < B->nl(); ++l)
        for (uint32_t r = 0; r < B->nr(); ++r)
            if (supported_in(B->left().weights()[l], n) && supported_in(B->right().weights()[r], m))
                gens.push_back({l, r});
    YonedaIso y;
    y.P = std::make_shared<FreeModule>(B->left_ptr(), B->right_ptr(), gens);
    y.basis = hom_space(y.P, B);
    auto off = cochain_offsets(*y.P, *B);
    uint32_t p = B->p();
    std::vector<Vec> cols;
    for (auto& phi : y.basis) {
        Vec v(off.back(), 0);
        for (size_t g = 0; g < gens.size(); ++g) {
            auto [l, r] = gens[g];
            Vec e(y.P->block_dim(l, r), 0);
            e[y.P->unit_position(g)] = 1;
            Vec val = phi.apply(l, r, e);
            std::copy(val.begin(), val.end(), v.begin() + static_cast<long>(off[g]));
        }
        cols.push_back(std::move(v));
    }
    y.to_values = FpMatrix::from_columns(p, off.back(), cols);
    if (y.to_values.rows() != y.to_values.cols() || rank(y.to_values) != y.to_values.rows())
        throw std::logic_error("yoneda: evaluation at the generators is not bijective");
    std::vector<Vec> inv;
    for (size_t c = 0; c < off.back(); ++c) {
        Vec e(off.back(), 0);
        e[c] = 1;
        inv.push_back(*solve(y.to_values, e));
    }
    y.from_values = FpMatrix::from_columns(p, y.basis.size(), inv);
    return y;
}

} // namespace spf
