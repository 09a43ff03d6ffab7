#include "spf/constructions.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace spf {

namespace {

std::vector<int64_t> divided_weights(const SchurSide& outer, const SchurSide& inner, uint32_t q)
{
    std::vector<int64_t> out;
    for (auto& w : outer.weights()) {
        Composition v(w.size());
        bool ok = true;
        for (size_t k = 0; k < w.size() && ok; ++k) {
            ok = w[k] % q == 0;
            v[k] = w[k] / q;
        }
        auto idx = ok ? inner.weight_index(v) : std::nullopt;
        out.push_back(idx ? static_cast<int64_t>(*idx) : -1);
    }
    return out;
}

void add_dense(const Fp& f, const FpMatrix& m, const Vec& x, Vec& y, size_t xo, size_t yo, uint32_t c)
{
    for (size_t k = 0; k < m.cols(); ++k) {
        uint32_t v = x[xo + k];
        if (!v)
            continue;
        v = f.mul(v, c);
        for (size_t r = 0; r < m.rows(); ++r)
            if (uint32_t a = m.at(r, k))
                y[yo + r] = f.add(y[yo + r], f.mul(a, v));
    }
}

Composition add(const Composition& a, const Composition& b)
{
    Composition c(a.size());
    for (size_t k = 0; k < a.size(); ++k)
        c[k] = a[k] + b[k];
    return c;
}

std::optional<Composition> sub(const Composition& a, const Composition& b)
{
    Composition c(a.size());
    for (size_t k = 0; k < a.size(); ++k) {
        if (b[k] > a[k])
            return std::nullopt;
        c[k] = a[k] - b[k];
    }
    return c;
}

} // namespace

// ---------------------------------------------------------------------------

TwistedModule::TwistedModule(ModulePtr inner, uint32_t r, SidePtr left, SidePtr right)
    : Module(std::move(left), std::move(right)), inner_(std::move(inner)), q_(static_cast<uint32_t>(ipow(inner_->p(), r)))
{
    if (L_->dim() != inner_->left().dim() || R_->dim() != inner_->right().dim())
        throw std::invalid_argument("twist: evaluation dimensions differ");
    if (L_->degree() != q_ * inner_->left().degree() || R_->degree() != q_ * inner_->right().degree())
        throw std::invalid_argument("twist: degree mismatch");
    lmap_ = divided_weights(*L_, inner_->left(), q_);
    rmap_ = divided_weights(*R_, inner_->right(), q_);
}

size_t TwistedModule::block_dim(uint32_t i, uint32_t j) const
{
    if (lmap_[i] < 0 || rmap_[j] < 0)
        return 0;
    return inner_->block_dim(static_cast<uint32_t>(lmap_[i]), static_cast<uint32_t>(rmap_[j]));
}

void TwistedModule::act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const
{
    if (lmap_[ai] < 0 || lmap_[aj] < 0 || rmap_[j] < 0)
        return;
    auto u = untwist(L_->monos(ai, aj)[a], q_);
    if (!u)
        return;
    uint32_t li = static_cast<uint32_t>(lmap_[ai]), lj = static_cast<uint32_t>(lmap_[aj]);
    inner_->act_left(li, lj, inner_->left().mono_index(li, lj, *u), static_cast<uint32_t>(rmap_[j]), x, y, c);
}

void TwistedModule::act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const
{
    if (rmap_[bi] < 0 || rmap_[bj] < 0 || lmap_[i] < 0)
        return;
    auto u = untwist(R_->monos(bi, bj)[b], q_);
    if (!u)
        return;
    uint32_t ri = static_cast<uint32_t>(rmap_[bi]), rj = static_cast<uint32_t>(rmap_[bj]);
    inner_->act_right(ri, rj, inner_->right().mono_index(ri, rj, *u), static_cast<uint32_t>(lmap_[i]), x, y, c);
}

std::shared_ptr<const TwistedModule> twist_module(ModulePtr m, uint32_t r)
{
    uint32_t q = static_cast<uint32_t>(ipow(m->p(), r));
    auto L = make_side(m->p(), q * m->left().degree(), m->left().dim(), m->left().kind());
    auto R = make_side(m->p(), q * m->right().degree(), m->right().dim(), m->right().kind());
    return std::make_shared<TwistedModule>(std::move(m), r, std::move(L), std::move(R));
}

// ---------------------------------------------------------------------------

DualModule::DualModule(ModulePtr inner) : Module(inner->left_ptr(), inner->right_ptr()), inner_(std::move(inner)) {}

void DualModule::act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const
{
    uint32_t t = L_->mono_index(aj, ai, L_->monos(ai, aj)[a].transposed());
    FpMatrix m = transpose(inner_->left_matrix(aj, ai, t, j));
    add_dense(fp(), m, x, y, 0, 0, c);
}

void DualModule::act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const
{
    uint32_t t = R_->mono_index(bj, bi, R_->monos(bi, bj)[b].transposed());
    FpMatrix m = transpose(inner_->right_matrix(bj, bi, t, i));
    add_dense(fp(), m, x, y, 0, 0, c);
}

// ---------------------------------------------------------------------------

TensorModule::TensorModule(ModulePtr a, ModulePtr b, SidePtr left, SidePtr right)
    : Module(std::move(left), std::move(right)), a_(std::move(a)), b_(std::move(b))
{
    for (const Module* m : {a_.get(), b_.get()})
        if (m->left().kind() != SchurSide::Kind::Full || m->right().kind() != SchurSide::Kind::Full ||
            m->left().dim() != L_->dim() || m->right().dim() != R_->dim())
            throw std::invalid_argument("tensor factors must be evaluated on Full sides of the same dimension");
    if (L_->degree() != a_->left().degree() + b_->left().degree() || R_->degree() != a_->right().degree() + b_->right().degree())
        throw std::invalid_argument("tensor: degree mismatch");
    pieces_.resize(static_cast<size_t>(nl()) * nr());
    dims_.assign(pieces_.size(), 0);
    for (uint32_t I = 0; I < nl(); ++I)
        for (uint32_t J = 0; J < nr(); ++J) {
            auto& ps = pieces_[I * nr() + J];
            size_t off = 0;
            for (uint32_t i1 = 0; i1 < a_->nl(); ++i1) {
                auto w2 = sub(L_->weights()[I], a_->left().weights()[i1]);
                if (!w2)
                    continue;
                uint32_t i2 = *b_->left().weight_index(*w2);
                for (uint32_t j1 = 0; j1 < a_->nr(); ++j1) {
                    auto v2 = sub(R_->weights()[J], a_->right().weights()[j1]);
                    if (!v2)
                        continue;
                    uint32_t j2 = *b_->right().weight_index(*v2);
                    Piece pc{i1, j1, i2, j2, off, a_->block_dim(i1, j1), b_->block_dim(i2, j2)};
                    off += pc.d1 * pc.d2;
                    ps.push_back(pc);
                }
            }
            dims_[I * nr() + J] = off;
        }
}

int64_t TensorModule::piece_index(uint32_t i, uint32_t j, uint32_t i1, uint32_t j1) const
{
    const auto& ps = pieces(i, j);
    for (size_t k = 0; k < ps.size(); ++k)
        if (ps[k].i1 == i1 && ps[k].j1 == j1)
            return static_cast<int64_t>(k);
    return -1;
}

std::pair<uint32_t, uint32_t> TensorModule::block_of(uint32_t i1, uint32_t j1, uint32_t i2, uint32_t j2) const
{
    auto I = L_->weight_index(add(a_->left().weights()[i1], b_->left().weights()[i2]));
    auto J = R_->weight_index(add(a_->right().weights()[j1], b_->right().weights()[j2]));
    if (!I || !J)
        throw std::out_of_range("tensor: weight outside the product sides");
    return {*I, *J};
}

const SparseMatrix& TensorModule::action(Side side, uint32_t ai, uint32_t aj, uint32_t a, uint32_t other) const
{
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(static_cast<int>(side), ai, aj, a, other);
    auto it = cache_.find(key);
    if (it != cache_.end())
        return *it->second;
    bool left = side == Side::Left;
    const SchurSide& S = left ? *L_ : *R_;
    const SchurSide& S1 = left ? a_->left() : a_->right();
    const SchurSide& S2 = left ? b_->left() : b_->right();
    uint32_t si = left ? aj : other, sj = left ? other : aj;
    uint32_t di = left ? ai : other, dj = left ? other : ai;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> cols(block_dim(si, sj));
    uint32_t N = S.dim();
    for (auto& [m1, m2] : comultiply(S.monos(ai, aj)[a], S1.degree())) {
        uint32_t r1 = *S1.weight_index(m1.row_sums(N)), c1 = *S1.weight_index(m1.col_sums(N));
        uint32_t r2 = *S2.weight_index(m2.row_sums(N)), c2 = *S2.weight_index(m2.col_sums(N));
        uint32_t x1 = S1.mono_index(r1, c1, m1), x2 = S2.mono_index(r2, c2, m2);
        for (auto& pc : pieces(si, sj)) {
            if ((left ? pc.i1 : pc.j1) != c1 || (left ? pc.i2 : pc.j2) != c2 || !pc.d1 || !pc.d2)
                continue;
            uint32_t t1i = left ? r1 : pc.i1, t1j = left ? pc.j1 : r1;
            int64_t tp = piece_index(di, dj, t1i, t1j);
            if (tp < 0)
                continue;
            const Piece& tg = pieces(di, dj)[static_cast<size_t>(tp)];
            if (!tg.d1 || !tg.d2)
                continue;
            FpMatrix F1 = left ? a_->left_matrix(r1, c1, x1, pc.j1) : a_->right_matrix(r1, c1, x1, pc.i1);
            FpMatrix F2 = left ? b_->left_matrix(r2, c2, x2, pc.j2) : b_->right_matrix(r2, c2, x2, pc.i2);
            for (size_t s1 = 0; s1 < pc.d1; ++s1)
                for (size_t q1 = 0; q1 < tg.d1; ++q1) {
                    uint32_t v1 = F1.at(q1, s1);
                    if (!v1)
                        continue;
                    for (size_t s2 = 0; s2 < pc.d2; ++s2)
                        for (size_t q2 = 0; q2 < tg.d2; ++q2)
                            if (uint32_t v2 = F2.at(q2, s2))
                                cols[pc.offset + s1 * pc.d2 + s2].emplace_back(
                                    static_cast<uint32_t>(tg.offset + q1 * tg.d2 + q2), fp().mul(v1, v2));
                }
        }
    }
    auto m = std::make_unique<SparseMatrix>(p(), block_dim(di, dj), cols.size());
    for (size_t c = 0; c < cols.size(); ++c)
        m->col(c) = sparse_normalize(fp(), std::move(cols[c]));
    return *cache_.emplace(key, std::move(m)).first->second;
}

void TensorModule::act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const
{
    const SparseMatrix& m = action(Side::Left, ai, aj, a, j);
    for (size_t k = 0; k < x.size(); ++k)
        if (x[k])
            for (auto [r, v] : m.col(k))
                y[r] = fp().add(y[r], fp().mul(fp().mul(x[k], c), v));
}

void TensorModule::act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const
{
    const SparseMatrix& m = action(Side::Right, bi, bj, b, i);
    for (size_t k = 0; k < x.size(); ++k)
        if (x[k])
            for (auto [r, v] : m.col(k))
                y[r] = fp().add(y[r], fp().mul(fp().mul(x[k], c), v));
}

std::shared_ptr<const TensorModule> tensor_module(ModulePtr a, ModulePtr b, SchurSide::Kind kind)
{
    uint32_t p = a->p(), N = a->left().dim();
    auto L = make_side(p, a->left().degree() + b->left().degree(), N, kind);
    auto R = make_side(p, a->right().degree() + b->right().degree(), N, kind);
    return std::make_shared<TensorModule>(std::move(a), std::move(b), std::move(L), std::move(R));
}

// ---------------------------------------------------------------------------

SumModule::SumModule(std::vector<ModulePtr> parts) : Module(parts.at(0)->left_ptr(), parts.at(0)->right_ptr()), parts_(std::move(parts))
{
    for (auto& m : parts_)
        if (m->left().weights() != L_->weights() || m->right().weights() != R_->weights())
            throw std::invalid_argument("direct sum over different sides");
    off_.resize(static_cast<size_t>(nl()) * nr());
    for (uint32_t i = 0; i < nl(); ++i)
        for (uint32_t j = 0; j < nr(); ++j) {
            auto& o = off_[i * nr() + j];
            o.push_back(0);
            for (auto& m : parts_)
                o.push_back(o.back() + m->block_dim(i, j));
        }
}

void SumModule::act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const
{
    for (size_t k = 0; k < parts_.size(); ++k) {
        size_t xo = offset(aj, j, k), xl = offset(aj, j, k + 1) - xo;
        size_t yo = offset(ai, j, k), yl = offset(ai, j, k + 1) - yo;
        if (!xl || !yl)
            continue;
        Vec xs(x.begin() + static_cast<std::ptrdiff_t>(xo), x.begin() + static_cast<std::ptrdiff_t>(xo + xl));
        Vec ys(yl, 0);
        parts_[k]->act_left(ai, aj, a, j, xs, ys, c);
        for (size_t q = 0; q < yl; ++q)
            y[yo + q] = fp().add(y[yo + q], ys[q]);
    }
}

void SumModule::act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const
{
    for (size_t k = 0; k < parts_.size(); ++k) {
        size_t xo = offset(i, bj, k), xl = offset(i, bj, k + 1) - xo;
        size_t yo = offset(i, bi, k), yl = offset(i, bi, k + 1) - yo;
        if (!xl || !yl)
            continue;
        Vec xs(x.begin() + static_cast<std::ptrdiff_t>(xo), x.begin() + static_cast<std::ptrdiff_t>(xo + xl));
        Vec ys(yl, 0);
        parts_[k]->act_right(bi, bj, b, i, xs, ys, c);
        for (size_t q = 0; q < yl; ++q)
            y[yo + q] = fp().add(y[yo + q], ys[q]);
    }
}

// ---------------------------------------------------------------------------

MatrixModule::MatrixModule(SidePtr left, SidePtr right, std::vector<size_t> dims, std::map<Key, FpMatrix> left_actions,
                           std::map<Key, FpMatrix> right_actions)
    : Module(std::move(left), std::move(right)), dims_(std::move(dims)), left_(std::move(left_actions)), right_(std::move(right_actions))
{
    if (dims_.size() != static_cast<size_t>(nl()) * nr())
        throw std::invalid_argument("matrix module: wrong number of blocks");
}

void MatrixModule::act_left(uint32_t ai, uint32_t aj, uint32_t a, uint32_t j, const Vec& x, Vec& y, uint32_t c) const
{
    auto it = left_.find({ai, aj, a, j});
    if (it != left_.end())
        add_dense(fp(), it->second, x, y, 0, 0, c);
}

void MatrixModule::act_right(uint32_t bi, uint32_t bj, uint32_t b, uint32_t i, const Vec& x, Vec& y, uint32_t c) const
{
    auto it = right_.find({bi, bj, b, i});
    if (it != right_.end())
        add_dense(fp(), it->second, x, y, 0, 0, c);
}

// ---------------------------------------------------------------------------

std::shared_ptr<const EvaluatedModule> evaluate_on(const std::string& expr, uint32_t p, uint32_t N, SchurSide::Kind kind,
                                                   std::optional<uint32_t> gm)
{
    auto e = parse_bifunctor(expr);
    auto [dl, dr] = bidegree(e, p);
    auto L = make_side(p, static_cast<uint32_t>(dl), N, kind);
    auto R = make_side(p, static_cast<uint32_t>(dr), N, kind);
    return std::make_shared<EvaluatedModule>(compile(e, p), L, R, gm);
}

ModuleMap map_from_basis(std::shared_ptr<const EvaluatedModule> src, ModulePtr dst, const std::function<FullImage(uint32_t)>& image)
{
    ModuleMap m = zero_map(src, dst);
    for (uint32_t i = 0; i < src->nl(); ++i)
        for (uint32_t j = 0; j < src->nr(); ++j) {
            FpMatrix& blk = m.blocks[{i, j}];
            const auto& idx = src->source_indices(i, j);
            for (size_t k = 0; k < idx.size(); ++k)
                for (auto [ti, tj, pos, c] : image(idx[k])) {
                    if (ti != i || tj != j)
                        throw std::logic_error("basis map does not preserve weights");
                    blk.add_to(pos, k, c);
                }
        }
    return m;
}

std::optional<std::tuple<uint32_t, uint32_t, size_t>> locate_tensor(const Module& t, const std::vector<uint32_t>& fulls)
{
    if (auto* e = dynamic_cast<const EvaluatedModule*>(&t)) {
        if (fulls.size() != 1)
            throw std::invalid_argument("locate_tensor: arity mismatch");
        auto l = e->locate(fulls[0]);
        if (!l)
            return std::nullopt;
        return std::make_tuple(l->first / t.nr(), l->first % t.nr(), static_cast<size_t>(l->second));
    }
    auto* tm = dynamic_cast<const TensorModule*>(&t);
    if (!tm || fulls.size() < 2)
        throw std::invalid_argument("locate_tensor: not a nested tensor of evaluated modules");
    std::vector<uint32_t> head(fulls.begin(), fulls.end() - 1);
    auto a = locate_tensor(tm->first(), head);
    auto b = locate_tensor(tm->second(), {fulls.back()});
    if (!a || !b)
        return std::nullopt;
    auto [i1, j1, p1] = *a;
    auto [i2, j2, p2] = *b;
    auto [I, J] = tm->block_of(i1, j1, i2, j2);
    int64_t k = tm->piece_index(I, J, i1, j1);
    if (k < 0)
        return std::nullopt;
    const auto& pc = tm->pieces(I, J)[static_cast<size_t>(k)];
    return std::make_tuple(I, J, pc.offset + p1 * pc.d2 + p2);
}

ModuleMap gamma_to_tensor(std::shared_ptr<const EvaluatedModule> src, ModulePtr target, uint32_t d)
{
    uint32_t p = src->p(), N = src->eval_dim();
    auto node = compile(fx::gamma(d), p);
    const Basis& gb = node->basis(N * N);
    if (gb.size != src->node().basis(N, N).size)
        throw std::invalid_argument("gamma_to_tensor: source is not an evaluation of Gamma^d gl");
    return map_from_basis(src, target, [&](uint32_t k) {
        const Label& counts = gb.labels[k];
        std::vector<uint32_t> word;
        for (uint32_t u = 0; u < counts.size(); ++u)
            word.insert(word.end(), counts[u], u);
        FullImage out;
        do {
            auto loc = locate_tensor(*target, word);
            if (!loc)
                throw std::logic_error("gamma_to_tensor: word outside the target weights");
            out.emplace_back(std::get<0>(*loc), std::get<1>(*loc), std::get<2>(*loc), 1);
        } while (std::next_permutation(word.begin(), word.end()));
        return out;
    });
}

ModuleMap gamma_comultiplication(std::shared_ptr<const EvaluatedModule> src, std::shared_ptr<const TensorModule> target, uint32_t d1,
                                 uint32_t d2)
{
    uint32_t p = src->p(), N = src->eval_dim();
    auto n0 = compile(fx::gamma(d1 + d2), p), n1 = compile(fx::gamma(d1), p), n2 = compile(fx::gamma(d2), p);
    const Basis& gb = n0->basis(N * N);
    const Basis& b1 = n1->basis(N * N);
    const Basis& b2 = n2->basis(N * N);
    return map_from_basis(src, target, [&](uint32_t k) {
        const Label& c = gb.labels[k];
        FullImage out;
        Label c1(c.size(), 0);
        std::function<void(size_t, uint32_t)> rec = [&](size_t u, uint32_t left) {
            if (u == c.size()) {
                if (left)
                    return;
                Label c2(c.size());
                for (size_t v = 0; v < c.size(); ++v)
                    c2[v] = c[v] - c1[v];
                auto loc = locate_tensor(*target, {b1.index.at(c1), b2.index.at(c2)});
                if (!loc)
                    throw std::logic_error("comultiplication: term outside the target weights");
                out.emplace_back(std::get<0>(*loc), std::get<1>(*loc), std::get<2>(*loc), 1);
                return;
            }
            for (uint32_t t = 0; t <= std::min(left, c[u]); ++t) {
                c1[u] = t;
                rec(u + 1, left - t);
            }
            c1[u] = 0;
        };
        rec(0, d1);
        return out;
    });
}

ModuleMap tensor_swap(std::shared_ptr<const TensorModule> t)
{
    ModuleMap m = zero_map(t, t);
    for (uint32_t I = 0; I < t->nl(); ++I)
        for (uint32_t J = 0; J < t->nr(); ++J) {
            FpMatrix& blk = m.blocks[{I, J}];
            for (auto& pc : t->pieces(I, J)) {
                int64_t k = t->piece_index(I, J, pc.i2, pc.j2);
                if (k < 0)
                    throw std::invalid_argument("tensor_swap: factors differ");
                const auto& tg = t->pieces(I, J)[static_cast<size_t>(k)];
                for (size_t a = 0; a < pc.d1; ++a)
                    for (size_t b = 0; b < pc.d2; ++b)
                        blk.set(tg.offset + b * tg.d2 + a, pc.offset + a * pc.d2 + b, 1);
            }
        }
    return m;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f)
{
    ModuleMap h = zero_map(f.source, g.target);
    for (auto& [k, blk] : h.blocks) {
        auto fi = f.blocks.find(k);
        auto gi = g.blocks.find(k);
        if (fi != f.blocks.end() && gi != g.blocks.end())
            blk = multiply(gi->second, fi->second);
    }
    return h;
}

} // namespace spf
