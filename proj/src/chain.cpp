#include "spf/chain.hpp"

#include <algorithm>
#include <stdexcept>

namespace spf {

SparseMatrix ResolutionComplex::differential(size_t s, uint32_t i, uint32_t j) const
{
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(s, i, j);
    auto it = cache_.find(key);
    if (it != cache_.end())
        return it->second;
    return cache_.emplace(key, boundary_block(r_, s, i, j)).first->second;
}

// ---------------------------------------------------------------------------

TwistedComplex::TwistedComplex(const Resolution& r, std::shared_ptr<const TwistedModule> base) : r_(r), base_(std::move(base))
{
    if (&base_->inner() != r.module.get())
        throw std::invalid_argument("twisted complex: base is not the twist of the resolved module");
    uint32_t e = 0;
    while (ipow(base_->p(), e) < base_->q())
        ++e;
    for (auto& P : r.P)
        terms_.push_back(std::make_shared<TwistedModule>(P, e, base_->left_ptr(), base_->right_ptr()));
}

SparseMatrix TwistedComplex::differential(size_t s, uint32_t i, uint32_t j) const
{
    int64_t li = base_->inner_left(i), rj = base_->inner_right(j);
    if (li < 0 || rj < 0)
        return SparseMatrix(base_->p(), 0, 0);
    return boundary_block(r_, s, static_cast<uint32_t>(li), static_cast<uint32_t>(rj));
}

// ---------------------------------------------------------------------------

TensorComplex::TensorComplex(const Resolution& a, const Resolution& b, std::shared_ptr<const TensorModule> base, size_t length)
    : a_(a), b_(b), base_(std::move(base))
{
    if (a.length() < length || b.length() < length)
        throw std::invalid_argument("tensor complex: factor resolutions too short");
    for (size_t n = 0; n <= length; ++n) {
        std::vector<ModulePtr> parts;
        for (size_t k = 0; k <= n; ++k)
            parts.push_back(std::make_shared<TensorModule>(a.P[k], b.P[n - k], base_->left_ptr(), base_->right_ptr()));
        terms_.push_back(std::make_shared<SumModule>(std::move(parts)));
    }
}

const TensorModule& TensorComplex::summand(size_t s, size_t a) const
{
    return static_cast<const TensorModule&>(*terms_.at(s)->parts().at(a));
}

size_t TensorComplex::summand_offset(size_t s, size_t a, uint32_t i, uint32_t j) const { return terms_.at(s)->offset(i, j, a); }

const SparseMatrix& TensorComplex::boundary(const Resolution& r, size_t s, uint32_t i, uint32_t j) const
{
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(&r, s, i, j);
    auto it = cache_.find(key);
    if (it != cache_.end())
        return it->second;
    return cache_.emplace(key, boundary_block(r, s, i, j)).first->second;
}

SparseMatrix TensorComplex::differential(size_t n, uint32_t I, uint32_t J) const
{
    const Fp& f = base_->fp();
    const Module& tgt = n == 0 ? static_cast<const Module&>(*base_) : *terms_[n - 1];
    size_t cols = terms_[n]->block_dim(I, J);
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> out(cols);
    for (size_t k = 0; k <= n; ++k) {
        const TensorModule& S = summand(n, k);
        size_t co = summand_offset(n, k, I, J);
        for (auto& pc : S.pieces(I, J)) {
            if (!pc.d1 || !pc.d2)
                continue;
            auto place = [&](const TensorModule& T, size_t ro, const SparseMatrix* D1, const SparseMatrix* D2, uint32_t sign) {
                int64_t t = T.piece_index(I, J, pc.i1, pc.j1);
                const auto& tg = T.pieces(I, J)[static_cast<size_t>(t)];
                if (!tg.d1 || !tg.d2)
                    return;
                for (size_t s1 = 0; s1 < pc.d1; ++s1)
                    for (size_t s2 = 0; s2 < pc.d2; ++s2) {
                        auto& col = out[co + pc.offset + s1 * pc.d2 + s2];
                        if (D1 && D2) {
                            for (auto [r1, v1] : D1->col(s1))
                                for (auto [r2, v2] : D2->col(s2))
                                    col.emplace_back(static_cast<uint32_t>(ro + tg.offset + r1 * tg.d2 + r2), f.mul(sign, f.mul(v1, v2)));
                        } else if (D1) {
                            for (auto [r1, v1] : D1->col(s1))
                                col.emplace_back(static_cast<uint32_t>(ro + tg.offset + r1 * tg.d2 + s2), f.mul(sign, v1));
                        } else {
                            for (auto [r2, v2] : D2->col(s2))
                                col.emplace_back(static_cast<uint32_t>(ro + tg.offset + s1 * tg.d2 + r2), f.mul(sign, v2));
                        }
                    }
            };
            if (n == 0) {
                place(*base_, 0, &boundary(a_, 0, pc.i1, pc.j1), &boundary(b_, 0, pc.i2, pc.j2), 1);
                continue;
            }
            if (k >= 1)
                place(summand(n - 1, k - 1), summand_offset(n - 1, k - 1, I, J), &boundary(a_, k, pc.i1, pc.j1), nullptr, 1);
            if (n - k >= 1)
                place(summand(n - 1, k), summand_offset(n - 1, k, I, J), nullptr, &boundary(b_, n - k, pc.i2, pc.j2),
                      k % 2 ? f.neg(1) : 1);
        }
    }
    SparseMatrix D(f.p(), tgt.block_dim(I, J), cols);
    for (size_t c = 0; c < cols; ++c)
        D.col(c) = sparse_normalize(f, std::move(out[c]));
    return D;
}

// ---------------------------------------------------------------------------

Resolution widen(const Resolution& r, ModulePtr full_module)
{
    Resolution w;
    w.module = full_module;
    const SchurSide& L = full_module->left();
    const SchurSide& R = full_module->right();
    for (size_t s = 0; s < r.P.size(); ++s) {
        std::vector<FreeModule::Gen> gens;
        for (auto [l, m] : r.P[s]->gens())
            gens.push_back({*L.weight_index(r.P[s]->left().weights()[l]), *R.weight_index(r.P[s]->right().weights()[m])});
        w.P.push_back(std::make_shared<FreeModule>(full_module->left_ptr(), full_module->right_ptr(), std::move(gens)));
        w.bd.push_back(r.bd[s]);
    }
    return w;
}

ChainMapValues lift_chain_map(const Resolution& Q, const Complex& C, const ModuleMap* f, size_t upto, bool alternate)
{
    if (upto > Q.length() || upto > C.length())
        throw std::invalid_argument("lift_chain_map: complexes too short");
    uint32_t p = Q.module->p();
    ChainMapValues phi(upto + 1);
    for (size_t s = 0; s <= upto; ++s) {
        std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<EchelonSpace>> solvers;
        const FreeModule& P = *Q.P[s];
        for (size_t h = 0; h < P.gens().size(); ++h) {
            auto [i, j] = P.gens()[h];
            Vec rhs;
            if (s == 0)
                rhs = f ? f->apply(i, j, Q.bd[0][h]) : Q.bd[0][h];
            else
                rhs = evaluate_cochain(*Q.P[s - 1], C.term(s - 1), phi[s - 1], i, j, Q.bd[s][h]);
            auto& sv = solvers[{i, j}];
            if (!sv) {
                SparseMatrix D = C.differential(s, i, j);
                sv = std::make_unique<EchelonSpace>(p, D.rows(), D.cols());
                for (size_t c = 0; c < D.cols(); ++c)
                    sv->insert(sparse_to_dense(D.col(c), D.rows()));
            }
            std::optional<Vec> x;
            if (sv->dim() && sv->inserted())
                x = sv->express(rhs);
            else if (std::all_of(rhs.begin(), rhs.end(), [](uint32_t v) { return v == 0; }))
                x = Vec(sv->inserted(), 0);
            if (!x)
                throw std::logic_error("chain map lift failed: target complex is not exact");
            if (alternate) {
                const Fp& fp = field(p);
                for (auto& rel : sv->relations())
                    for (size_t k = 0; k < rel.size(); ++k)
                        (*x)[k] = fp.add((*x)[k], rel[k]);
            }
            phi[s].push_back(std::move(*x));
        }
    }
    return phi;
}

Vec pull_back(const Resolution& Q, size_t s, const ChainMapValues& phi, const Module& N, const CochainOnComplex& z)
{
    const FreeModule& P = *Q.P[s];
    Vec out;
    for (size_t h = 0; h < P.gens().size(); ++h) {
        auto [i, j] = P.gens()[h];
        Vec v = z(i, j, phi[s][h]);
        if (v.size() != N.block_dim(i, j))
            throw std::logic_error("pull_back: value in the wrong block");
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::vector<Vec> split_cochain(const FreeModule& P, const Module& N, const Vec& z)
{
    auto off = cochain_offsets(P, N);
    std::vector<Vec> out;
    for (size_t h = 0; h < P.gens().size(); ++h)
        out.emplace_back(z.begin() + static_cast<std::ptrdiff_t>(off[h]), z.begin() + static_cast<std::ptrdiff_t>(off[h + 1]));
    return out;
}

Vec postcompose(const FreeModule& P, const ModuleMap& f, const Vec& z)
{
    Vec out;
    auto vals = split_cochain(P, *f.source, z);
    for (size_t h = 0; h < vals.size(); ++h) {
        auto [i, j] = P.gens()[h];
        Vec v = f.apply(i, j, vals[h]);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::vector<FpMatrix> induced_map_on_ext(const Resolution& r, const ModuleMap& f, const ExtTable& src, const ExtTable& dst)
{
    std::vector<FpMatrix> out;
    size_t L = std::min(src.dims.size(), dst.dims.size());
    for (size_t s = 0; s < L; ++s) {
        FpMatrix m(f.source->p(), dst.dims[s], src.dims[s]);
        for (size_t c = 0; c < src.dims[s]; ++c) {
            auto co = dst.basis[s]->coords(postcompose(*r.P[s], f, src.basis[s]->reps()[c]));
            if (!co)
                throw std::logic_error("induced map: image is not a cocycle");
            for (size_t k = 0; k < co->size(); ++k)
                m.set(k, c, (*co)[k]);
        }
        out.push_back(std::move(m));
    }
    return out;
}

TwistMap twist_map_on_ext(ModulePtr B, ModulePtr Bp, uint32_t r, size_t L, bool alternate)
{
    TwistMap t;
    Resolution P = projective_resolution(B, L);
    t.source = ext_table(P, *Bp);
    auto TB = twist_module(B, r);
    auto TBp = std::make_shared<TwistedModule>(Bp, r, TB->left_ptr(), TB->right_ptr());
    Resolution Q = projective_resolution(TB, L);
    t.target = ext_table(Q, *TBp);
    TwistedComplex C(P, TB);
    ChainMapValues phi = lift_chain_map(Q, C, nullptr, L - 1, alternate);
    for (size_t s = 0; s < L; ++s) {
        FpMatrix m(B->p(), t.target.dims[s], t.source.dims[s]);
        for (size_t c = 0; c < t.source.dims[s]; ++c) {
            auto vals = split_cochain(*P.P[s], *Bp, t.source.basis[s]->reps()[c]);
            Vec z = pull_back(Q, s, phi, *TBp, [&](uint32_t i, uint32_t j, const Vec& x) {
                return evaluate_cochain(*P.P[s], *Bp, vals, static_cast<uint32_t>(TB->inner_left(i)),
                                        static_cast<uint32_t>(TB->inner_right(j)), x);
            });
            auto co = t.target.basis[s]->coords(z);
            if (!co)
                throw std::logic_error("twist map: image is not a cocycle");
            for (size_t k = 0; k < co->size(); ++k)
                m.set(k, c, (*co)[k]);
        }
        t.ranks.push_back(rank(m));
        t.matrices.push_back(std::move(m));
    }
    return t;
}

// ---------------------------------------------------------------------------

CupProduct::CupProduct(uint32_t p, uint32_t d, uint32_t e, uint32_t N, size_t length)
{
    using K = SchurSide::Kind;
    auto gl = [&](uint32_t k, K kind) { return evaluate_on("gamma(" + std::to_string(k) + ").gl", p, N, kind); };
    ad_ = *gamma_resolution(p, d, N, length);
    bd_ = *gamma_resolution(p, e, N, length);
    a_ = widen(ad_, gl(d, K::Full));
    b_ = widen(bd_, gl(e, K::Full));
    r_ = *gamma_resolution(p, d + e, N, length + 1);
    auto total = std::dynamic_pointer_cast<const EvaluatedModule>(r_.module);
    base_ = tensor_module(a_.module, b_.module);
    complex_ = std::make_unique<TensorComplex>(a_, b_, base_, length);
    ModuleMap f = gamma_comultiplication(total, base_, d, e);
    psi_ = lift_chain_map(r_, *complex_, &f, length);
}

Vec CupProduct::product(size_t i, const Vec& x, const Module& M1, size_t j, const Vec& y, const Module& M2, const Module& target) const
{
    auto* T = dynamic_cast<const TensorModule*>(&target);
    if (!T || &T->first() != &M1 || &T->second() != &M2)
        throw std::invalid_argument("cup product: target must be the tensor of the coefficient modules");
    size_t n = i + j;
    if (n >= psi_.size())
        throw std::invalid_argument("cup product: degree beyond the lifted range");
    const Fp& f = M1.fp();
    auto xv = split_cochain(*a_.P[i], M1, x);
    auto yv = split_cochain(*b_.P[j], M2, y);
    std::map<std::pair<uint32_t, uint32_t>, FpMatrix> X, Y;
    auto cochain_matrix = [&](std::map<std::pair<uint32_t, uint32_t>, FpMatrix>& cache, const FreeModule& P, const Module& M,
                              const std::vector<Vec>& vals, uint32_t bi, uint32_t bj) -> const FpMatrix& {
        auto it = cache.find({bi, bj});
        if (it != cache.end())
            return it->second;
        FpMatrix m(f.p(), M.block_dim(bi, bj), P.block_dim(bi, bj));
        Vec e(P.block_dim(bi, bj), 0);
        for (size_t c = 0; c < e.size(); ++c) {
            e[c] = 1;
            Vec v = evaluate_cochain(P, M, vals, bi, bj, e);
            for (size_t r = 0; r < v.size(); ++r)
                if (v[r])
                    m.set(r, c, v[r]);
            e[c] = 0;
        }
        return cache.emplace(std::make_pair(bi, bj), std::move(m)).first->second;
    };
    uint32_t sign = (i * j) % 2 ? f.neg(1) : 1;
    return pull_back(r_, n, psi_, target, [&](uint32_t I, uint32_t J, const Vec& el) {
        Vec out(target.block_dim(I, J), 0);
        const TensorModule& S = complex_->summand(n, i);
        size_t so = complex_->summand_offset(n, i, I, J);
        for (auto& pc : S.pieces(I, J)) {
            if (!pc.d1 || !pc.d2)
                continue;
            const auto& tg = T->pieces(I, J)[static_cast<size_t>(T->piece_index(I, J, pc.i1, pc.j1))];
            if (!tg.d1 || !tg.d2)
                continue;
            const FpMatrix& Xm = cochain_matrix(X, *a_.P[i], M1, xv, pc.i1, pc.j1);
            const FpMatrix& Ym = cochain_matrix(Y, *b_.P[j], M2, yv, pc.i2, pc.j2);
            // out = (X (x) Y) el restricted to the piece
            FpMatrix Z(f.p(), pc.d1, tg.d2);
            for (size_t s1 = 0; s1 < pc.d1; ++s1)
                for (size_t s2 = 0; s2 < pc.d2; ++s2)
                    if (uint32_t v = el[so + pc.offset + s1 * pc.d2 + s2])
                        for (size_t r2 = 0; r2 < tg.d2; ++r2)
                            if (uint32_t yv2 = Ym.at(r2, s2))
                                Z.add_to(s1, r2, f.mul(v, yv2));
            for (size_t s1 = 0; s1 < pc.d1; ++s1)
                for (size_t r1 = 0; r1 < tg.d1; ++r1)
                    if (uint32_t xv1 = Xm.at(r1, s1))
                        for (size_t r2 = 0; r2 < tg.d2; ++r2)
                            if (uint32_t z = Z.at(s1, r2))
                                out[tg.offset + r1 * tg.d2 + r2] = f.add(out[tg.offset + r1 * tg.d2 + r2], f.mul(sign, f.mul(xv1, z)));
        }
        return out;
    });
}

SymmetricAction symmetric_action(const Resolution& r, std::shared_ptr<const TensorModule> t, const ExtTable& e)
{
    SymmetricAction a;
    a.generators.push_back(induced_map_on_ext(r, tensor_swap(t), e, e));
    a.relations_hold = true;
    for (auto& m : a.generators[0])
        a.relations_hold = a.relations_hold && multiply(m, m) == FpMatrix::identity(r.module->p(), m.rows());
    return a;
}

} // namespace spf
