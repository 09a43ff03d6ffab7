#pragma once

#include "spf/evaluate.hpp"
#include "spf/schur.hpp"
#include "spf/sparse.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace spf {

// A module over S_L (x) S_R presented through its weight blocks (i, j) = (left weight, right weight).
class Module {
public:
    Module(SidePtr left, SidePtr right);
    virtual ~Module() = default;

    uint32_t p() const { return L_->p(); }
    const Fp& fp() const { return L_->fp(); }
    const SchurSide& left() const { return *L_; }
    const SchurSide& right() const { return *R_; }
    SidePtr left_ptr() const { return L_; }
    SidePtr right_ptr() const { return R_; }
    uint32_t nl() const { return static_cast<uint32_t>(L_->weights().size()); }
    uint32_t nr() const { return static_cast<uint32_t>(R_->weights().size()); }

    virtual size_t block_dim(uint32_t i, uint32_t j) const = 0;
    size_t dim() const;

    // y += c * a x for a = left().monos(ai, aj)[a], x in block (aj, j), y in block (ai, j).
    virtual void act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const = 0;
    // y += c * b x for b = right().monos(bi, bj)[b], x in block (i, bj), y in block (i, bi).
    virtual void act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const = 0;

    FpMatrix left_matrix(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j) const;
    FpMatrix right_matrix(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i) const;

protected:
    SidePtr L_, R_;
};

using ModulePtr = std::shared_ptr<const Module>;

// B(k^N, k^N) restricted to the weights of the two sides, optionally to one G_m degree.
class EvaluatedModule : public Module {
public:
    EvaluatedModule(BNodePtr node, SidePtr left, SidePtr right, std::optional<uint32_t> gm = std::nullopt);

    size_t block_dim(uint32_t i, uint32_t j) const override { return blocks_[i * nr() + j].size(); }
    void act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const override;
    void act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const override;

    const BNode& node() const { return *node_; }
    uint32_t eval_dim() const { return N_; }
    // Indices into node().basis(N, N) of the vectors of block (i, j).
    const std::vector<uint32_t>& source_indices(uint32_t i, uint32_t j) const { return blocks_[i * nr() + j]; }
    // (block id, position) of a full basis index, or nullopt when truncated away.
    std::optional<std::pair<uint32_t, uint32_t>> locate(uint32_t full) const;
    std::vector<uint32_t> gm_degrees(uint32_t i, uint32_t j) const;

private:
    const SparseMatrix& action(Side side, uint32_t ai, uint32_t aj, uint32_t a, uint32_t other) const;

    BNodePtr node_;
    uint32_t N_;
    std::optional<uint32_t> gm_;
    std::vector<std::vector<uint32_t>> blocks_;
    std::vector<std::pair<int64_t, uint32_t>> where_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, uint32_t, uint32_t, uint32_t, uint32_t>, std::unique_ptr<SparseMatrix>> cache_;
};

// Direct sum of projectives S xi_lambda (x) S xi_mu. Block (i, j) of a summand has basis pairs (alpha, beta)
// with alpha in left().monos(i, lambda), beta in right().monos(j, mu), alpha major.
class FreeModule : public Module {
public:
    using Gen = std::pair<uint32_t, uint32_t>;
    FreeModule(SidePtr left, SidePtr right, std::vector<Gen> gens);

    const std::vector<Gen>& gens() const { return gens_; }
    size_t block_dim(uint32_t i, uint32_t j) const override { return offsets_[i * nr() + j].back(); }
    size_t offset(uint32_t i, uint32_t j, size_t g) const { return offsets_[i * nr() + j][g]; }
    void act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const override;
    void act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const override;

    // Coordinate of the generator u_g itself inside its own weight block.
    size_t unit_position(size_t g) const;

private:
    std::vector<Gen> gens_;
    std::vector<std::vector<size_t>> offsets_;
};

using BlockMap = std::map<std::pair<uint32_t, uint32_t>, FpMatrix>;

// Blockwise linear map M -> N intertwining both actions.
struct ModuleMap {
    ModulePtr source, target;
    BlockMap blocks;   // (i, j) -> target block x source block

    Vec apply(uint32_t i, uint32_t j, const Vec& x) const;
    bool intertwines() const;
};

ModuleMap zero_map(ModulePtr a, ModulePtr b);
ModuleMap identity_map(ModulePtr a);

// Basis of Hom(M, N) solved weight block by weight block.
std::vector<ModuleMap> hom_space(ModulePtr m, ModulePtr n);

// y = a b x where a acts on the left, b on the right, x in block (aj, bj), y in block (ai, bi).
void act_both(const Module& m, uint32_t ai, uint32_t aj, uint32_t a, uint32_t bi, uint32_t bj, uint32_t b, const Vec& x,
              Vec& y, uint32_t c);

// a (b x) = (ab) x on both sides, and left and right actions commute, checked on every block.
bool satisfies_module_axioms(const Module& m);

} // namespace spf
