#pragma once

#include "spf/budget.hpp"
#include "spf/chain.hpp"

#include <memory>
#include <vector>

namespace spf {

// A class of H^{2d}_P((Gamma^d gl)^{(1)}) with its certificate Delta_* c = c[1]^{cup d}.
struct UniversalClass {
    uint32_t p = 0, d = 0;
    Vec rep;                   // cocycle on the resolution of Gamma^{pd} gl
    Vec coords;                // class in the cohomology basis
    Vec image;                 // Delta_* of the class in H^{2d}_P((x)^d gl^{(1)})
    Vec target;                // c[1]^{cup d}
    size_t coset_dim = 0;      // dim ker Delta_* in degree 2d
    std::vector<size_t> gamma_dims, tensor_dims;
    bool target_invariant = true;       // c[1]^{cup d} is fixed by the symmetric group
    bool image_in_invariants = true;    // im Delta_* lies in the invariants in every computed degree
    bool image_is_invariants = true;    // equality in degree 2d
};

struct CupPower {
    uint32_t p = 0, d = 0;
    Vec coords;   // in H^{2d}_P((x)^d gl^{(1)})
    bool nonzero = false;
    bool invariant = false;
    bool bilinear = false;   // (l c) cup c = l (c cup c) for every l in F_p
};

// Shared objects for one (p, d): resolutions, coefficient modules and induced maps. d is 1 or 2.
class UniversalContext {
public:
    UniversalContext(uint32_t p, uint32_t d, double max_dim = kDefaultMaxDim);
    UniversalContext(const UniversalContext&) = delete;
    UniversalContext& operator=(const UniversalContext&) = delete;

    uint32_t p() const { return p_; }
    uint32_t d() const { return d_; }
    const ExtTable& gl_ext() const { return e1_; }       // H^*_P(gl^{(1)})
    const ExtTable& gamma_ext() const { return eG_; }    // H^*_P((Gamma^d gl)^{(1)})
    const ExtTable& tensor_ext() const { return eT_; }   // H^*_P(((x)^d gl)^{(1)})
    const std::vector<FpMatrix>& delta() const { return delta_; }
    const std::vector<FpMatrix>& swap() const { return swap_; }
    const Vec& c1() const { return e1_.basis.at(2)->reps().at(0); }
    // Cocycle of x cup y for cocycles of degrees i, j with coefficients in gl^{(1)}; d = 2 only.
    Vec cup(size_t i, const Vec& x, size_t j, const Vec& y) const;
    const Resolution& total() const;
    // (Gamma^d gl)^{(1)} -> ((x)^d gl)^{(1)}
    const ModuleMap& delta_map() const { return dmap_; }

private:
    uint32_t p_, d_;
    std::shared_ptr<const Resolution> r1_;
    std::unique_ptr<CupProduct> cp_;
    ModulePtr g1_, G_, T_;
    ExtTable e1_, eG_, eT_;
    ModuleMap dmap_;
    std::vector<FpMatrix> delta_, swap_;
};

UniversalClass class_c1(uint32_t p);
CupPower cup_power(const UniversalContext& ctx);
UniversalClass build_universal_class(const UniversalContext& ctx);
UniversalClass build_universal_class(uint32_t d, uint32_t p, double max_dim = kDefaultMaxDim);

struct Verification {
    bool cocycle = false;
    bool nonzero = false;
    bool equation = false;   // Delta_* c = c[1]^{cup d}
    bool ok() const { return cocycle && nonzero && equation; }
};

// Re-derives both conditions from the stored representative on a freshly built context.
Verification verify_class(const UniversalClass& c);
Verification verify_class(const UniversalClass& c, const UniversalContext& ctx);

} // namespace spf
