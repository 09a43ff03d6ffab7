#pragma once

#include "spf/module.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace spf {

// M^{(r)} over sides of degree q*d (q = p^r): nonzero on weights divisible by q, where a monomial acts through
// its q-th root and by zero when it has none.
class TwistedModule : public Module {
public:
    TwistedModule(ModulePtr inner, uint32_t r, SidePtr left, SidePtr right);

    const Module& inner() const { return *inner_; }
    ModulePtr inner_ptr() const { return inner_; }
    uint32_t q() const { return q_; }
    // Inner weight index of an outer weight, or -1.
    int64_t inner_left(uint32_t i) const { return lmap_[i]; }
    int64_t inner_right(uint32_t j) const { return rmap_[j]; }

    size_t block_dim(uint32_t i, uint32_t j) const override;
    void act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const override;
    void act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const override;

private:
    ModulePtr inner_;
    uint32_t q_;
    std::vector<int64_t> lmap_, rmap_;
};

// Twist a module onto fresh sides of the same kind and evaluation dimension.
std::shared_ptr<const TwistedModule> twist_module(ModulePtr m, uint32_t r);

// B^# : blocks are dual spaces, a monomial acts by the transpose of its transpose.
class DualModule : public Module {
public:
    explicit DualModule(ModulePtr inner);
    size_t block_dim(uint32_t i, uint32_t j) const override { return inner_->block_dim(i, j); }
    void act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const override;
    void act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const override;

private:
    ModulePtr inner_;
};

// M1 (x) M2 with the Schur algebra acting through the comultiplication. The factors live on Full sides of the
// same evaluation dimension; block (I, J) is the sum of pieces M1(i1, j1) (x) M2(i2, j2) with I = i1 + i2, J = j1 + j2.
class TensorModule : public Module {
public:
    struct Piece {
        uint32_t i1, j1, i2, j2;
        size_t offset, d1, d2;
    };

    TensorModule(ModulePtr a, ModulePtr b, SidePtr left, SidePtr right);

    const Module& first() const { return *a_; }
    const Module& second() const { return *b_; }
    const std::vector<Piece>& pieces(uint32_t i, uint32_t j) const { return pieces_[i * nr() + j]; }
    // Position of piece (i1, j1, i2, j2) inside its block, or -1.
    int64_t piece_index(uint32_t i, uint32_t j, uint32_t i1, uint32_t j1) const;
    std::pair<uint32_t, uint32_t> block_of(uint32_t i1, uint32_t j1, uint32_t i2, uint32_t j2) const;

    size_t block_dim(uint32_t i, uint32_t j) const override { return dims_[i * nr() + j]; }
    void act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const override;
    void act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const override;

private:
    const SparseMatrix& action(Side side, uint32_t ai, uint32_t aj, uint32_t a, uint32_t other) const;

    ModulePtr a_, b_;
    std::vector<std::vector<Piece>> pieces_;
    std::vector<size_t> dims_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, uint32_t, uint32_t, uint32_t, uint32_t>, std::unique_ptr<SparseMatrix>> cache_;
};

// Tensor product over sides of total bidegree (dominant by default); both factors must be on Full sides.
std::shared_ptr<const TensorModule> tensor_module(ModulePtr a, ModulePtr b, SchurSide::Kind kind = SchurSide::Kind::Dominant);

// Blockwise direct sum of modules over common sides.
class SumModule : public Module {
public:
    explicit SumModule(std::vector<ModulePtr> parts);
    const std::vector<ModulePtr>& parts() const { return parts_; }
    size_t offset(uint32_t i, uint32_t j, size_t k) const { return off_[i * nr() + j][k]; }
    size_t block_dim(uint32_t i, uint32_t j) const override { return off_[i * nr() + j].back(); }
    void act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const override;
    void act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const override;

private:
    std::vector<ModulePtr> parts_;
    std::vector<std::vector<size_t>> off_;
};

// Module given by explicit action matrices of every monomial.
class MatrixModule : public Module {
public:
    using Key = std::tuple<uint32_t, uint32_t, uint32_t, uint32_t>;   // (ai, aj, a, other)
    MatrixModule(SidePtr left, SidePtr right, std::vector<size_t> dims, std::map<Key, FpMatrix> left_actions,
                 std::map<Key, FpMatrix> right_actions);
    size_t block_dim(uint32_t i, uint32_t j) const override { return dims_[i * nr() + j]; }
    void act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const override;
    void act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const override;

private:
    std::vector<size_t> dims_;
    std::map<Key, FpMatrix> left_, right_;
};

std::shared_ptr<const EvaluatedModule> evaluate_on(const std::string& expr, uint32_t p, uint32_t N, SchurSide::Kind kind,
                      std::optional<uint32_t> gm = std::nullopt);

// Module map from an evaluated module given on full basis indices: image(k) lists (target block i, j, position, coefficient).
using FullImage = std::vector<std::tuple<uint32_t, uint32_t, size_t, uint32_t>>;
ModuleMap map_from_basis(std::shared_ptr<const EvaluatedModule> src, ModulePtr dst,
                         const std::function<FullImage(uint32_t)>& image);

// Block and position of a pure tensor of full basis indices in a left-nested tensor of evaluated modules.
std::optional<std::tuple<uint32_t, uint32_t, size_t>> locate_tensor(const Module& t, const std::vector<uint32_t>& fulls);

// The inclusion (Gamma^d gl)^{(r)} -> ((x)^d gl)^{(r)}: src evaluates tw(r, gamma(d).gl), target is a left-nested
// tensor of d copies of an evaluation of tw(r, gl).
ModuleMap gamma_to_tensor(std::shared_ptr<const EvaluatedModule> src, ModulePtr target, uint32_t d);

// Comultiplication Gamma^{d1+d2} gl -> Gamma^{d1} gl (x) Gamma^{d2} gl, the target built by tensor_module.
ModuleMap gamma_comultiplication(std::shared_ptr<const EvaluatedModule> src, std::shared_ptr<const TensorModule> target,
                                 uint32_t d1, uint32_t d2);

// The factor swap on M (x) M.
ModuleMap tensor_swap(std::shared_ptr<const TensorModule> t);

ModuleMap compose(const ModuleMap& g, const ModuleMap& f);

} // namespace spf
