#include "spf/module.hpp"

#include <stdexcept>

namespace spf {

Module::Module(SidePtr left, SidePtr right) : L_(std::move(left)), R_(std::move(right))
{
    if (L_->p() != R_->p())
        throw std::invalid_argument("sides over different fields");
}

size_t Module::dim() const
{
    size_t t = 0;
    for (uint32_t i = 0; i < nl(); ++i)
        for (uint32_t j = 0; j < nr(); ++j)
            t += block_dim(i, j);
    return t;
}

FpMatrix Module::left_matrix(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j) const
{
    size_t src = block_dim(aj, j), dst = block_dim(ai, j);
    FpMatrix m(p(), dst, src);
    Vec x(src, 0);
    for (size_t c = 0; c < src; ++c) {
        x[c] = 1;
        Vec y(dst, 0);
        act_left(ai, aj, a, j, x, y, 1);
        for (size_t r = 0; r < dst; ++r)
            if (y[r])
                m.set(r, c, y[r]);
        x[c] = 0;
    }
    return m;
}

FpMatrix Module::right_matrix(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i) const
{
    size_t src = block_dim(i, bj), dst = block_dim(i, bi);
    FpMatrix m(p(), dst, src);
    Vec x(src, 0);
    for (size_t c = 0; c < src; ++c) {
        x[c] = 1;
        Vec y(dst, 0);
        act_right(bi, bj, b, i, x, y, 1);
        for (size_t r = 0; r < dst; ++r)
            if (y[r])
                m.set(r, c, y[r]);
        x[c] = 0;
    }
    return m;
}

void act_both(const Module& m, uint32_t ai, uint32_t aj, uint32_t a, uint32_t bi, uint32_t bj, uint32_t b, const Vec& x,
              Vec& y, uint32_t c)
{
    Vec t(m.block_dim(aj, bi), 0);
    m.act_right(bi, bj, b, aj, x, t, 1);
    m.act_left(ai, aj, a, bi, t, y, c);
}

// ---------------------------------------------------------------------------

EvaluatedModule::EvaluatedModule(BNodePtr node, SidePtr left, SidePtr right, std::optional<uint32_t> gm)
    : Module(std::move(left), std::move(right)), node_(std::move(node)), N_(L_->dim()), gm_(gm)
{
    if (R_->dim() != N_)
        throw std::invalid_argument("sides evaluated at different dimensions");
    if (node_->deg_left() != L_->degree() || node_->deg_right() != R_->degree())
        throw std::invalid_argument("bidegree mismatch between bifunctor and Schur sides");
    const BiBasis& b = node_->basis(N_, N_);
    blocks_.assign(static_cast<size_t>(nl()) * nr(), {});
    where_.assign(b.size, {-1, 0});
    for (uint32_t k = 0; k < b.size; ++k) {
        if (gm_ && b.gm[k] != *gm_)
            continue;
        auto i = L_->weight_index(b.wl[k]);
        auto j = R_->weight_index(b.wr[k]);
        if (!i || !j)
            continue;
        uint32_t id = *i * nr() + *j;
        where_[k] = {id, static_cast<uint32_t>(blocks_[id].size())};
        blocks_[id].push_back(k);
    }
}

std::optional<std::pair<uint32_t, uint32_t>> EvaluatedModule::locate(uint32_t full) const
{
    if (full >= where_.size() || where_[full].first < 0)
        return std::nullopt;
    return std::make_pair(static_cast<uint32_t>(where_[full].first), where_[full].second);
}

std::vector<uint32_t> EvaluatedModule::gm_degrees(uint32_t i, uint32_t j) const
{
    const BiBasis& b = node_->basis(N_, N_);
    std::vector<uint32_t> out;
    for (auto k : blocks_[i * nr() + j])
        out.push_back(b.gm[k]);
    return out;
}

const SparseMatrix& EvaluatedModule::action(Side side, uint32_t ai, uint32_t aj, uint32_t a, uint32_t other) const
{
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(static_cast<int>(side), ai, aj, a, other);
    auto it = cache_.find(key);
    if (it != cache_.end())
        return *it->second;
    const SchurSide& s = side == Side::Left ? *L_ : *R_;
    const Mono& g = s.monos(ai, aj).at(a);
    uint32_t src_id = side == Side::Left ? aj * nr() + other : other * nr() + aj;
    uint32_t dst_id = side == Side::Left ? ai * nr() + other : other * nr() + ai;
    const auto& src = blocks_[src_id];
    auto m = std::make_unique<SparseMatrix>(p(), blocks_[dst_id].size(), src.size());
    for (uint32_t c = 0; c < src.size(); ++c) {
        Terms t;
        node_->act(side, g, N_, N_, src[c], 1, t);
        Terms local;
        for (auto [k, v] : t) {
            if (where_[k].first != static_cast<int64_t>(dst_id))
                continue;
            local.emplace_back(where_[k].second, v);
        }
        m->col(c) = sparse_normalize(fp(), std::move(local));
    }
    return *cache_.emplace(key, std::move(m)).first->second;
}

void EvaluatedModule::act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const
{
    const SparseMatrix& m = action(Side::Left, ai, aj, a, j);
    const Fp& f = fp();
    for (size_t k = 0; k < x.size(); ++k) {
        if (!x[k])
            continue;
        uint32_t s = f.mul(x[k], c);
        for (auto [r, v] : m.col(k))
            y[r] = f.add(y[r], f.mul(s, v));
    }
}

void EvaluatedModule::act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const
{
    const SparseMatrix& m = action(Side::Right, bi, bj, b, i);
    const Fp& f = fp();
    for (size_t k = 0; k < x.size(); ++k) {
        if (!x[k])
            continue;
        uint32_t s = f.mul(x[k], c);
        for (auto [r, v] : m.col(k))
            y[r] = f.add(y[r], f.mul(s, v));
    }
}

// ---------------------------------------------------------------------------

FreeModule::FreeModule(SidePtr left, SidePtr right, std::vector<Gen> gens) : Module(std::move(left), std::move(right)), gens_(std::move(gens))
{
    offsets_.resize(static_cast<size_t>(nl()) * nr());
    for (uint32_t i = 0; i < nl(); ++i)
        for (uint32_t j = 0; j < nr(); ++j) {
            auto& o = offsets_[i * nr() + j];
            o.push_back(0);
            for (auto [l, m] : gens_)
                o.push_back(o.back() + L_->monos(i, l).size() * R_->monos(j, m).size());
        }
}

size_t FreeModule::unit_position(size_t g) const
{
    auto [l, m] = gens_[g];
    auto diag = [](const Composition& w) {
        std::vector<Term> t;
        for (uint32_t k = 0; k < w.size(); ++k)
            if (w[k])
                t.push_back({k, k, w[k]});
        return Mono::from_terms(std::move(t));
    };
    uint32_t a = L_->mono_index(l, l, diag(L_->weights()[l]));
    uint32_t b = R_->mono_index(m, m, diag(R_->weights()[m]));
    return offset(l, m, g) + static_cast<size_t>(a) * R_->monos(m, m).size() + b;
}

void FreeModule::act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const
{
    const Fp& f = fp();
    for (size_t g = 0; g < gens_.size(); ++g) {
        auto [l, m] = gens_[g];
        size_t nb = R_->monos(j, m).size();
        if (!nb)
            continue;
        const FpMatrix& A = L_->left_mult(ai, aj, a, l);
        size_t xo = offset(aj, j, g), yo = offset(ai, j, g);
        for (size_t k = 0; k < A.cols(); ++k) {
            const uint32_t* xr = x.data() + xo + k * nb;
            bool any = false;
            for (size_t q = 0; q < nb && !any; ++q)
                any = xr[q] != 0;
            if (!any)
                continue;
            for (size_t r = 0; r < A.rows(); ++r) {
                uint32_t v = A.at(r, k);
                if (!v)
                    continue;
                v = f.mul(v, c);
                uint32_t* yr = y.data() + yo + r * nb;
                for (size_t q = 0; q < nb; ++q)
                    if (xr[q])
                        yr[q] = f.add(yr[q], f.mul(v, xr[q]));
            }
        }
    }
}

void FreeModule::act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const
{
    const Fp& f = fp();
    for (size_t g = 0; g < gens_.size(); ++g) {
        auto [l, m] = gens_[g];
        size_t na = L_->monos(i, l).size();
        if (!na)
            continue;
        const FpMatrix& B = R_->left_mult(bi, bj, b, m);
        size_t src_nb = B.cols(), dst_nb = B.rows();
        size_t xo = offset(i, bj, g), yo = offset(i, bi, g);
        for (size_t k = 0; k < src_nb; ++k)
            for (size_t r = 0; r < dst_nb; ++r) {
                uint32_t v = B.at(r, k);
                if (!v)
                    continue;
                v = f.mul(v, c);
                for (size_t al = 0; al < na; ++al) {
                    uint32_t xv = x[xo + al * src_nb + k];
                    if (xv)
                        y[yo + al * dst_nb + r] = f.add(y[yo + al * dst_nb + r], f.mul(v, xv));
                }
            }
    }
}

// ---------------------------------------------------------------------------

Vec ModuleMap::apply(uint32_t i, uint32_t j, const Vec& x) const
{
    auto it = blocks.find({i, j});
    if (it == blocks.end())
        return Vec(target->block_dim(i, j), 0);
    return it->second.apply(x);
}

bool ModuleMap::intertwines() const
{
    const Module& s = *source;
    const Module& t = *target;
    auto blk = [&](uint32_t i, uint32_t j) {
        auto it = blocks.find({i, j});
        return it == blocks.end() ? FpMatrix(s.p(), t.block_dim(i, j), s.block_dim(i, j)) : it->second;
    };
    for (uint32_t ai = 0; ai < s.nl(); ++ai)
        for (uint32_t aj = 0; aj < s.nl(); ++aj)
            for (uint32_t a = 0; a < s.left().monos(ai, aj).size(); ++a)
                for (uint32_t j = 0; j < s.nr(); ++j) {
                    if (!s.block_dim(aj, j) && !t.block_dim(ai, j))
                        continue;
                    if (multiply(t.left_matrix(ai, aj, a, j), blk(aj, j)) != multiply(blk(ai, j), s.left_matrix(ai, aj, a, j)))
                        return false;
                }
    for (uint32_t bi = 0; bi < s.nr(); ++bi)
        for (uint32_t bj = 0; bj < s.nr(); ++bj)
            for (uint32_t b = 0; b < s.right().monos(bi, bj).size(); ++b)
                for (uint32_t i = 0; i < s.nl(); ++i) {
                    if (!s.block_dim(i, bj) && !t.block_dim(i, bi))
                        continue;
                    if (multiply(t.right_matrix(bi, bj, b, i), blk(i, bj)) != multiply(blk(i, bi), s.right_matrix(bi, bj, b, i)))
                        return false;
                }
    return true;
}

ModuleMap zero_map(ModulePtr a, ModulePtr b)
{
    ModuleMap m{a, b, {}};
    for (uint32_t i = 0; i < a->nl(); ++i)
        for (uint32_t j = 0; j < a->nr(); ++j)
            m.blocks[{i, j}] = FpMatrix(a->p(), b->block_dim(i, j), a->block_dim(i, j));
    return m;
}

ModuleMap identity_map(ModulePtr a)
{
    ModuleMap m{a, a, {}};
    for (uint32_t i = 0; i < a->nl(); ++i)
        for (uint32_t j = 0; j < a->nr(); ++j)
            m.blocks[{i, j}] = FpMatrix::identity(a->p(), a->block_dim(i, j));
    return m;
}

std::vector<ModuleMap> hom_space(ModulePtr m, ModulePtr n)
{
    if (m->left().degree() != n->left().degree() || m->right().degree() != n->right().degree() ||
        m->left().weights() != n->left().weights() || m->right().weights() != n->right().weights())
        throw std::invalid_argument("hom_space: bidegree or evaluation mismatch");
    const Fp& f = m->fp();
    uint32_t nl = m->nl(), nr = m->nr();
    // unknown offsets per block
    std::vector<size_t> off(static_cast<size_t>(nl) * nr + 1, 0);
    for (uint32_t i = 0; i < nl; ++i)
        for (uint32_t j = 0; j < nr; ++j)
            off[i * nr + j + 1] = off[i * nr + j] + n->block_dim(i, j) * m->block_dim(i, j);
    size_t unknowns = off.back();
    auto var = [&](uint32_t i, uint32_t j, size_t r, size_t c) { return off[i * nr + j] + r * m->block_dim(i, j) + c; };

    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> cols(unknowns);
    size_t row = 0;
    // N(a) F_src - F_dst M(a) = 0 for one action a : src -> dst blocks
    auto constrain = [&](uint32_t si, uint32_t sj, uint32_t di, uint32_t dj, const FpMatrix& Na, const FpMatrix& Ma) {
        size_t R = n->block_dim(di, dj), C = m->block_dim(si, sj);
        size_t mid_n = n->block_dim(si, sj), mid_m = m->block_dim(di, dj);
        for (size_t r = 0; r < R; ++r)
            for (size_t c = 0; c < C; ++c) {
                bool used = false;
                for (size_t k = 0; k < mid_n; ++k) {
                    uint32_t v = Na.at(r, k);
                    if (v) {
                        cols[var(si, sj, k, c)].emplace_back(static_cast<uint32_t>(row), v);
                        used = true;
                    }
                }
                for (size_t k = 0; k < mid_m; ++k) {
                    uint32_t v = Ma.at(k, c);
                    if (v) {
                        cols[var(di, dj, r, k)].emplace_back(static_cast<uint32_t>(row), f.neg(v));
                        used = true;
                    }
                }
                if (used)
                    ++row;
            }
    };
    for (uint32_t ai = 0; ai < nl; ++ai)
        for (uint32_t aj = 0; aj < nl; ++aj)
            for (uint32_t a = 0; a < m->left().monos(ai, aj).size(); ++a)
                for (uint32_t j = 0; j < nr; ++j) {
                    if ((!m->block_dim(aj, j) || !n->block_dim(ai, j)) && (!n->block_dim(aj, j) || !m->block_dim(ai, j)))
                        continue;
                    constrain(aj, j, ai, j, n->left_matrix(ai, aj, a, j), m->left_matrix(ai, aj, a, j));
                }
    for (uint32_t bi = 0; bi < nr; ++bi)
        for (uint32_t bj = 0; bj < nr; ++bj)
            for (uint32_t b = 0; b < m->right().monos(bi, bj).size(); ++b)
                for (uint32_t i = 0; i < nl; ++i) {
                    if ((!m->block_dim(i, bj) || !n->block_dim(i, bi)) && (!n->block_dim(i, bj) || !m->block_dim(i, bi)))
                        continue;
                    constrain(i, bj, i, bi, n->right_matrix(bi, bj, b, i), m->right_matrix(bi, bj, b, i));
                }
    SparseMatrix E(f.p(), row, unknowns);
    for (size_t c = 0; c < unknowns; ++c)
        E.col(c) = sparse_normalize(f, std::move(cols[c]));
    FpMatrix K = kernel_basis(E);
    std::vector<ModuleMap> out;
    for (size_t k = 0; k < K.cols(); ++k) {
        ModuleMap mm{m, n, {}};
        for (uint32_t i = 0; i < nl; ++i)
            for (uint32_t j = 0; j < nr; ++j) {
                FpMatrix b(f.p(), n->block_dim(i, j), m->block_dim(i, j));
                for (size_t r = 0; r < b.rows(); ++r)
                    for (size_t c = 0; c < b.cols(); ++c)
                        if (uint32_t v = K.at(var(i, j, r, c), k))
                            b.set(r, c, v);
                mm.blocks[{i, j}] = std::move(b);
            }
        out.push_back(std::move(mm));
    }
    return out;
}

} // namespace spf

namespace spf {

namespace {

bool side_associative(const Module& m, Side side)
{
    const SchurSide& S = side == Side::Left ? m.left() : m.right();
    uint32_t n = side == Side::Left ? m.nl() : m.nr(), other = side == Side::Left ? m.nr() : m.nl();
    const Fp& f = m.fp();
    auto mat = [&](uint32_t i, uint32_t j, uint32_t a, uint32_t o) {
        return side == Side::Left ? m.left_matrix(i, j, a, o) : m.right_matrix(i, j, a, o);
    };
    auto dim = [&](uint32_t i, uint32_t o) { return side == Side::Left ? m.block_dim(i, o) : m.block_dim(o, i); };
    for (uint32_t o = 0; o < other; ++o)
        for (uint32_t j = 0; j < n; ++j) {
            if (!dim(j, o))
                continue;
            for (uint32_t k = 0; k < n; ++k)
                for (uint32_t i = 0; i < n; ++i) {
                    if (!dim(i, o))
                        continue;
                    for (uint32_t a = 0; a < S.monos(i, k).size(); ++a)
                        for (uint32_t b = 0; b < S.monos(k, j).size(); ++b) {
                            FpMatrix lhs = multiply(mat(i, k, a, o), mat(k, j, b, o));
                            FpMatrix rhs(f.p(), lhs.rows(), lhs.cols());
                            for (auto& [mono, c] : schur_product(f, S.monos(i, k)[a], S.monos(k, j)[b]))
                                rhs = add(rhs, scale(mat(i, j, S.mono_index(i, j, mono), o), c));
                            if (!(lhs == rhs))
                                return false;
                        }
                }
        }
    return true;
}

} // namespace

bool satisfies_module_axioms(const Module& m)
{
    if (!side_associative(m, Side::Left) || !side_associative(m, Side::Right))
        return false;
    for (uint32_t ai = 0; ai < m.nl(); ++ai)
        for (uint32_t aj = 0; aj < m.nl(); ++aj)
            for (uint32_t a = 0; a < m.left().monos(ai, aj).size(); ++a)
                for (uint32_t bi = 0; bi < m.nr(); ++bi)
                    for (uint32_t bj = 0; bj < m.nr(); ++bj)
                        for (uint32_t b = 0; b < m.right().monos(bi, bj).size(); ++b) {
                            if (!m.block_dim(aj, bj) || !m.block_dim(ai, bi))
                                continue;
                            FpMatrix x = multiply(m.left_matrix(ai, aj, a, bi), m.right_matrix(bi, bj, b, aj));
                            FpMatrix y = multiply(m.right_matrix(bi, bj, b, ai), m.left_matrix(ai, aj, a, bj));
                            if (!(x == y))
                                return false;
                        }
    return true;
}

} // namespace spf
