#pragma once

#include "spf/expr.hpp"
#include "spf/fp_matrix.hpp"
#include "spf/monomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace spf {

using Label = std::vector<uint32_t>;

struct LabelHash {
    size_t operator()(const Label& l) const noexcept;
};

// Basis of F(k^n) with torus weights and G_m degrees.
struct Basis {
    uint32_t n = 0;
    size_t size = 0;
    std::vector<Composition> weight;
    std::vector<uint32_t> gm;
    std::map<Composition, std::vector<uint32_t>> by_weight;
    std::vector<Label> labels;                                 // leaf functors only
    std::unordered_map<Label, uint32_t, LabelHash> index;      // leaf functors only
};

using BiWeight = std::pair<Composition, Composition>;

struct BiBasis {
    uint32_t n = 0, m = 0;
    size_t size = 0;
    std::vector<Composition> wl, wr;
    std::vector<uint32_t> gm;
    std::map<BiWeight, std::vector<uint32_t>> by_weight;
};

// Unnormalized (index, coefficient) accumulator.
using Terms = std::vector<std::pair<uint32_t, uint32_t>>;

enum class Side { Left, Right };

class FNode {
public:
    FNode(uint32_t p, uint64_t degree);
    virtual ~FNode() = default;

    uint32_t p() const { return f_.p(); }
    const Fp& fp() const { return f_; }
    uint32_t degree() const { return deg_; }
    const Basis& basis(uint32_t n) const;

    // Appends c * F(g) e_col for a divided monomial g of Hom(k^a, k^b).
    virtual void act(const Mono& g, uint32_t a, uint32_t b, uint32_t col, uint32_t c, Terms& out) const = 0;
    // Action of a divided monomial on the parameter space, in the left-action convention.
    virtual void act_param(const Mono& h, uint32_t n, uint32_t col, uint32_t c, Terms& out) const;
    virtual std::string label(uint32_t n, uint32_t i) const;

protected:
    virtual Basis build(uint32_t n) const = 0;
    const Fp& f_;
    uint32_t deg_;

private:
    mutable std::mutex mu_;
    mutable std::map<uint32_t, std::unique_ptr<Basis>> cache_;
};

class BNode {
public:
    BNode(uint32_t p, uint64_t dl, uint64_t dr);
    virtual ~BNode() = default;

    uint32_t p() const { return f_.p(); }
    const Fp& fp() const { return f_; }
    uint32_t deg_left() const { return dl_; }
    uint32_t deg_right() const { return dr_; }
    const BiBasis& basis(uint32_t n, uint32_t m) const;

    // Appends c * B(g) e_col for g a divided monomial of End(k^n) (left) or End(k^m) (right).
    virtual void act(Side side, const Mono& g, uint32_t n, uint32_t m, uint32_t col, uint32_t c, Terms& out) const = 0;
    virtual void act_param(Side side, const Mono& h, uint32_t n, uint32_t m, uint32_t col, uint32_t c, Terms& out) const;
    virtual std::string label(uint32_t n, uint32_t m, uint32_t i) const = 0;

protected:
    virtual BiBasis build(uint32_t n, uint32_t m) const = 0;
    const Fp& f_;
    uint32_t dl_, dr_;

private:
    mutable std::mutex mu_;
    mutable std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<BiBasis>> cache_;
};

using FNodePtr = std::shared_ptr<const FNode>;
using BNodePtr = std::shared_ptr<const BNode>;

FNodePtr compile(const FExpr& e, uint32_t p);
BNodePtr compile(const BExpr& e, uint32_t p);

// Finite space with indexed basis, G_m degree and torus weights (right weights empty for one variable).
struct IndexedSpace {
    uint32_t p = 2;
    std::vector<std::string> labels;
    std::vector<uint32_t> gm;
    std::vector<Composition> wl, wr;
    size_t dim() const { return labels.size(); }
};

enum class PowerKind { Gamma, Sym, Lambda, Tensor };

IndexedSpace enumerate_basis(PowerKind kind, uint32_t d, const IndexedSpace& u);
IndexedSpace er_space(uint32_t r, uint32_t p);
IndexedSpace trivial_space(uint32_t n, uint32_t p);

// Matrix of e(g): e(k^a) -> e(k^b).
FpMatrix structure_map(const FExpr& e, uint32_t p, const Mono& g, uint32_t a, uint32_t b);
FpMatrix structure_map(const FNode& node, const Mono& g, uint32_t a, uint32_t b);
FpMatrix action_matrix(const BNode& node, Side side, const Mono& g, uint32_t n, uint32_t m);

} // namespace spf
