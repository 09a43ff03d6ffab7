#pragma once

#include "spf/module.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace spf {

// P_s -> ... -> P_0 -> M with P_s free on generators u_h whose boundaries are stored as block vectors.
struct Resolution {
    ModulePtr module;
    std::vector<std::shared_ptr<const FreeModule>> P;
    // bd[s][h]: d(u_h) in block gens[h] of P_{s-1}, or of the module for s = 0
    std::vector<std::vector<Vec>> bd;

    size_t length() const { return P.empty() ? 0 : P.size() - 1; }
    const Module& target_of(size_t s) const { return s == 0 ? *module : *P[s - 1]; }
    std::vector<size_t> ranks() const;
    // Rank of d_s on block (i, j) equals the dimension of the kernel of d_{s-1} there (exactness certificate).
    bool verify() const;
};

// Minimal skips vectors in the radical image of the target, Greedy takes any vector not yet generated.
// Hom(P, B) = sum over generators of B(w_g) for P free on the weights of (k^n, k^m): the Yoneda isomorphism
// Hom(P^{d,k^n,e,k^m}, B) = B(k^n, k^m) when the sides list every composition (Full kind).
struct YonedaIso {
    std::shared_ptr<const FreeModule> P;
    std::vector<ModuleMap> basis;   // of Hom(P, B)
    FpMatrix to_values;             // columns: the basis maps evaluated at the generators
    FpMatrix from_values;           // inverse of to_values
};

YonedaIso yoneda(ModulePtr B, uint32_t n, uint32_t m);

enum class GeneratorChoice { Minimal, Greedy };

struct ResolutionOptions {
    GeneratorChoice choice = GeneratorChoice::Minimal;
    std::function<void(size_t stage, size_t gens)> progress;
};

Resolution projective_resolution(ModulePtr m, size_t length, const ResolutionOptions& opt = {});

// As projective_resolution, but stored under SPF_CACHE_DIR (when set) keyed by a description of m.
// Unreadable or inconsistent cache files are ignored and rewritten.
Resolution cached_resolution(ModulePtr m, const std::string& key, size_t length, const ResolutionOptions& opt = {},
                             bool* cache_hit = nullptr);

// Number of resolutions read back from the disk cache in this process.
size_t resolution_cache_hits();

// Resolution of Gamma^d gl on dominant weights at evaluation dimension N, of length at least L, shared per process.
std::shared_ptr<const Resolution> gamma_resolution(uint32_t p, uint32_t d, uint32_t N, size_t L, bool* cache_hit = nullptr);

// True when the last term of r is zero, so that Ext vanishes above the computed range.
bool is_complete(const Resolution& r);

// Matrix of d_s on block (i, j): columns are the block coordinates of P_s, rows those of the target.
SparseMatrix boundary_block(const Resolution& r, size_t s, uint32_t i, uint32_t j);

// Image of x in block (i, j) of P_s under the module action by both sides: a (x) b applied to u_h, coordinates in block (ai, bi).
// Evaluates a cochain f in Hom(P_s, N) (values f(u_h) in N) on an element of P_s given in block coordinates.
Vec evaluate_cochain(const FreeModule& P, const Module& N, const std::vector<Vec>& values, uint32_t i, uint32_t j, const Vec& x);

// Coboundary Hom(P_{s-1}, N) -> Hom(P_s, N), in the coordinates (h, N_{w_h}).
FpMatrix coboundary(const Resolution& r, size_t s, const Module& N);

// Coordinates of Hom(P_s, N) = sum_h N_{w_h}.
std::vector<size_t> cochain_offsets(const FreeModule& P, const Module& N);

// Cohomology ker(out) / im(in) with chosen representatives.
class CohomologyBasis {
public:
    CohomologyBasis(const FpMatrix& in, const FpMatrix& out, size_t dim);
    size_t dim() const { return reps_.size(); }
    const std::vector<Vec>& reps() const { return reps_; }
    // Coefficients of a cocycle modulo coboundaries; nullopt if z is not a cocycle.
    std::optional<Vec> coords(const Vec& z) const;
    bool is_cocycle(const Vec& z) const;

private:
    uint32_t p_;
    FpMatrix out_;
    size_t nimage_ = 0;
    std::vector<Vec> reps_;
    std::unique_ptr<EchelonSpace> space_;
};

struct ExtTable {
    std::vector<size_t> dims;   // reliable degrees 0 .. L-1
    std::vector<std::shared_ptr<CohomologyBasis>> basis;
    std::vector<FpMatrix> delta;   // delta[s] : C^s -> C^{s+1}
};

ExtTable ext_table(const Resolution& r, const Module& N);

// dim Ext^s(r.module, N) for s < L, padded with zeros past a complete resolution.
std::vector<size_t> ext_dims(const Resolution& r, const Module& N, size_t L);

} // namespace spf
