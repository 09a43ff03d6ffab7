#pragma once

#include "spf/constructions.hpp"
#include "spf/resolution.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace spf {

// An augmented exact complex C_s -> ... -> C_0 -> base.
class Complex {
public:
    virtual ~Complex() = default;
    virtual size_t length() const = 0;
    virtual const Module& term(size_t s) const = 0;
    virtual const Module& base() const = 0;
    // d : C_s -> C_{s-1} (the base for s = 0) on block (i, j).
    virtual SparseMatrix differential(size_t s, uint32_t i, uint32_t j) const = 0;
};

class ResolutionComplex : public Complex {
public:
    explicit ResolutionComplex(const Resolution& r) : r_(r) {}
    size_t length() const override { return r_.length(); }
    const Module& term(size_t s) const override { return *r_.P.at(s); }
    const Module& base() const override { return *r_.module; }
    SparseMatrix differential(size_t s, uint32_t i, uint32_t j) const override;

private:
    const Resolution& r_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<size_t, uint32_t, uint32_t>, SparseMatrix> cache_;
};

// P_s^{(r)} -> ... -> P_0^{(r)} -> M^{(r)}, exact because twisting is exact.
class TwistedComplex : public Complex {
public:
    TwistedComplex(const Resolution& r, std::shared_ptr<const TwistedModule> base);
    size_t length() const override { return r_.length(); }
    const Module& term(size_t s) const override { return *terms_.at(s); }
    const Module& base() const override { return *base_; }
    SparseMatrix differential(size_t s, uint32_t i, uint32_t j) const override;

private:
    const Resolution& r_;
    std::shared_ptr<const TwistedModule> base_;
    std::vector<std::shared_ptr<const TwistedModule>> terms_;
};

// Total complex of P (x) P' over the tensor of the augmentations; the resolutions live on Full sides.
class TensorComplex : public Complex {
public:
    TensorComplex(const Resolution& a, const Resolution& b, std::shared_ptr<const TensorModule> base, size_t length);
    size_t length() const override { return terms_.size() - 1; }
    const Module& term(size_t s) const override { return *terms_.at(s); }
    const Module& base() const override { return *base_; }
    SparseMatrix differential(size_t s, uint32_t i, uint32_t j) const override;
    // Summand P_a (x) P'_{s-a} of C_s.
    const TensorModule& summand(size_t s, size_t a) const;
    size_t summand_offset(size_t s, size_t a, uint32_t i, uint32_t j) const;

private:
    const SparseMatrix& boundary(const Resolution& r, size_t s, uint32_t i, uint32_t j) const;

    const Resolution& a_;
    const Resolution& b_;
    std::shared_ptr<const TensorModule> base_;
    std::vector<std::shared_ptr<const SumModule>> terms_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<const Resolution*, size_t, uint32_t, uint32_t>, SparseMatrix> cache_;
};

// The same resolution read on Full sides (generators and boundaries are unchanged).
Resolution widen(const Resolution& r, ModulePtr full_module);

// phi[s][h] in C_s, block of generator h of Q_s: a chain map Q -> C over f : Q.module -> C.base (identity when null).
// With alternate set, every solution is shifted by the kernel relations found while solving, giving a second lift.
using ChainMapValues = std::vector<std::vector<Vec>>;
ChainMapValues lift_chain_map(const Resolution& Q, const Complex& C, const ModuleMap* f, size_t upto, bool alternate = false);

// Cochain of Hom(Q_s, N) given by evaluating a functional on C_s at the lifted generators.
using CochainOnComplex = std::function<Vec(uint32_t i, uint32_t j, const Vec& x)>;
Vec pull_back(const Resolution& Q, size_t s, const ChainMapValues& phi, const Module& N, const CochainOnComplex& z);

// Splits a cochain vector into per-generator values.
std::vector<Vec> split_cochain(const FreeModule& P, const Module& N, const Vec& z);

// f o z for a cochain z in Hom(P_s, M) and f : M -> M'.
Vec postcompose(const FreeModule& P, const ModuleMap& f, const Vec& z);

// Matrix per degree s < L of f_* : H^s(M) -> H^s(M') in the stored cohomology bases (columns = source classes).
std::vector<FpMatrix> induced_map_on_ext(const Resolution& r, const ModuleMap& f, const ExtTable& src, const ExtTable& dst);

// The symmetric group on H^*(M (x) M) from r: the transposition of the two factors, per degree.
struct SymmetricAction {
    std::vector<std::vector<FpMatrix>> generators;   // one entry per transposition
    bool relations_hold = false;                     // involutions
};

SymmetricAction symmetric_action(const Resolution& r, std::shared_ptr<const TensorModule> t, const ExtTable& e);

struct TwistMap {
    ExtTable source, target;
    std::vector<FpMatrix> matrices;   // Ext^s(B, B') -> Ext^s(B^{(r)}, B'^{(r)})
    std::vector<size_t> ranks;
};

// Tw* : Ext^s(B, B') -> Ext^s(B^{(r)}, B'^{(r)}) for s < L, computed at the cochain level through a lift of the
// identity of B^{(r)} from a projective resolution of B^{(r)} to the twisted resolution of B.
TwistMap twist_map_on_ext(ModulePtr B, ModulePtr Bp, uint32_t r, size_t L, bool alternate = false);

// Cup products H^i(M1) x H^j(M2) -> H^{i+j}(M1 (x) M2) with Ext computed from resolutions of Gamma^d gl,
// Gamma^e gl and Gamma^{d+e} gl at a common evaluation dimension N >= d + e.
class CupProduct {
public:
    CupProduct(uint32_t p, uint32_t d, uint32_t e, uint32_t N, size_t length);
    CupProduct(const CupProduct&) = delete;
    CupProduct& operator=(const CupProduct&) = delete;

    const Resolution& first() const { return a_; }
    const Resolution& second() const { return b_; }
    const Resolution& total() const { return r_; }
    // Cocycle of Hom(R_{i+j}, M1 (x) M2) for cocycles x in Hom(A_i, M1), y in Hom(B_j, M2).
    Vec product(size_t i, const Vec& x, const Module& M1, size_t j, const Vec& y, const Module& M2, const Module& target) const;

private:
    Resolution ad_, bd_, a_, b_, r_;
    std::shared_ptr<const TensorModule> base_;
    std::unique_ptr<TensorComplex> complex_;
    ChainMapValues psi_;
};

} // namespace spf
