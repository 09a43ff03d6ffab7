#include "spf/resolution.hpp"

#include <stdexcept>

namespace spf {

namespace {

// Accumulates a sum of (alpha (x) beta) u_g terms applied to module values.
// X is the component of an element of the free module on generator g, in block (i, j).
void apply_component(const Module& N, const SchurSide& L, const SchurSide& R, uint32_t i, uint32_t j, uint32_t l, uint32_t m,
                     const uint32_t* X, const Vec& value, Vec& y)
{
    size_t na = L.monos(i, l).size(), nb = R.monos(j, m).size();
    Vec t(N.block_dim(l, j));
    for (size_t b = 0; b < nb; ++b) {
        bool any = false;
        for (size_t a = 0; a < na && !any; ++a)
            any = X[a * nb + b] != 0;
        if (!any)
            continue;
        std::fill(t.begin(), t.end(), 0);
        N.act_right(j, m, static_cast<uint32_t>(b), l, value, t, 1);
        for (size_t a = 0; a < na; ++a)
            if (uint32_t c = X[a * nb + b])
                N.act_left(i, l, static_cast<uint32_t>(a), j, t, y, c);
    }
}

} // namespace

Vec evaluate_cochain(const FreeModule& P, const Module& N, const std::vector<Vec>& values, uint32_t i, uint32_t j, const Vec& x)
{
    Vec y(N.block_dim(i, j), 0);
    for (size_t g = 0; g < P.gens().size(); ++g) {
        auto [l, m] = P.gens()[g];
        apply_component(N, P.left(), P.right(), i, j, l, m, x.data() + P.offset(i, j, g), values[g], y);
    }
    return y;
}

std::vector<size_t> cochain_offsets(const FreeModule& P, const Module& N)
{
    std::vector<size_t> off{0};
    for (auto [l, m] : P.gens())
        off.push_back(off.back() + N.block_dim(l, m));
    return off;
}

SparseMatrix boundary_block(const Resolution& r, size_t s, uint32_t i, uint32_t j)
{
    const FreeModule& P = *r.P[s];
    const Module& T = r.target_of(s);
    SparseMatrix out(P.p(), T.block_dim(i, j), P.block_dim(i, j));
    for (size_t h = 0; h < P.gens().size(); ++h) {
        auto [l, m] = P.gens()[h];
        const Vec& v = r.bd[s][h];
        size_t na = P.left().monos(i, l).size(), nb = P.right().monos(j, m).size();
        size_t base = P.offset(i, j, h);
        Vec t(T.block_dim(l, j));
        for (size_t b = 0; b < nb; ++b) {
            std::fill(t.begin(), t.end(), 0);
            T.act_right(j, m, static_cast<uint32_t>(b), l, v, t, 1);
            for (size_t a = 0; a < na; ++a) {
                Vec y(T.block_dim(i, j), 0);
                T.act_left(i, l, static_cast<uint32_t>(a), j, t, y, 1);
                out.col(base + a * nb + b) = sparse_from_dense(y);
            }
        }
    }
    return out;
}

std::vector<size_t> Resolution::ranks() const
{
    std::vector<size_t> out;
    for (auto& p : P)
        out.push_back(p->gens().size());
    return out;
}

bool Resolution::verify() const
{
    for (size_t s = 0; s < P.size(); ++s)
        for (uint32_t i = 0; i < module->nl(); ++i)
            for (uint32_t j = 0; j < module->nr(); ++j) {
                size_t rk = rank(boundary_block(*this, s, i, j));
                size_t need = s == 0 ? module->block_dim(i, j)
                                     : boundary_block(*this, s - 1, i, j).cols() - rank(boundary_block(*this, s - 1, i, j));
                if (rk != need)
                    return false;
            }
    return true;
}

namespace {

// Vectors of the submodule spanned by the columns of K (per block) multiplied by radical elements, landing in block (i, j).
void radical_image(const Module& T, const std::vector<FpMatrix>& K, uint32_t i, uint32_t j, EchelonSpace& space)
{
    const SchurSide& L = T.left();
    const SchurSide& R = T.right();
    uint32_t nr = T.nr();
    const Fp& f = T.fp();
    for (uint32_t i0 = 0; i0 < T.nl(); ++i0) {
        const FpMatrix& rad = L.radical(i, i0);
        const FpMatrix& Kb = K[i0 * nr + j];
        if (!rad.rows() || !Kb.cols())
            continue;
        for (size_t c = 0; c < Kb.cols(); ++c) {
            Vec x = Kb.column(c);
            std::vector<Vec> imgs(L.monos(i, i0).size());
            for (uint32_t a = 0; a < imgs.size(); ++a) {
                imgs[a].assign(T.block_dim(i, j), 0);
                T.act_left(i, i0, a, j, x, imgs[a], 1);
            }
            for (size_t r = 0; r < rad.rows(); ++r) {
                Vec y(T.block_dim(i, j), 0);
                for (uint32_t a = 0; a < imgs.size(); ++a)
                    if (uint32_t v = rad.at(r, a))
                        for (size_t q = 0; q < y.size(); ++q)
                            if (imgs[a][q])
                                y[q] = f.add(y[q], f.mul(v, imgs[a][q]));
                space.insert(y);
            }
        }
    }
    for (uint32_t j0 = 0; j0 < nr; ++j0) {
        const FpMatrix& rad = R.radical(j, j0);
        const FpMatrix& Kb = K[i * nr + j0];
        if (!rad.rows() || !Kb.cols())
            continue;
        for (size_t c = 0; c < Kb.cols(); ++c) {
            Vec x = Kb.column(c);
            std::vector<Vec> imgs(R.monos(j, j0).size());
            for (uint32_t b = 0; b < imgs.size(); ++b) {
                imgs[b].assign(T.block_dim(i, j), 0);
                T.act_right(j, j0, b, i, x, imgs[b], 1);
            }
            for (size_t r = 0; r < rad.rows(); ++r) {
                Vec y(T.block_dim(i, j), 0);
                for (uint32_t b = 0; b < imgs.size(); ++b)
                    if (uint32_t v = rad.at(r, b))
                        for (size_t q = 0; q < y.size(); ++q)
                            if (imgs[b][q])
                                y[q] = f.add(y[q], f.mul(v, imgs[b][q]));
                space.insert(y);
            }
        }
    }
}

// Span of the submodule generated by the given generators inside block (i, j).
void generated_image(const Module& T, const std::vector<FreeModule::Gen>& gens, const std::vector<Vec>& vals, uint32_t i, uint32_t j,
                     EchelonSpace& space)
{
    for (size_t h = 0; h < gens.size(); ++h) {
        auto [l, m] = gens[h];
        size_t na = T.left().monos(i, l).size(), nb = T.right().monos(j, m).size();
        Vec t(T.block_dim(l, j));
        for (size_t b = 0; b < nb; ++b) {
            std::fill(t.begin(), t.end(), 0);
            T.act_right(j, m, static_cast<uint32_t>(b), l, vals[h], t, 1);
            for (size_t a = 0; a < na; ++a) {
                Vec y(T.block_dim(i, j), 0);
                T.act_left(i, l, static_cast<uint32_t>(a), j, t, y, 1);
                space.insert(y);
            }
        }
    }
}

} // namespace

Resolution projective_resolution(ModulePtr m, size_t length, const ResolutionOptions& opt)
{
    if (m->left().kind() != SchurSide::Kind::Dominant || m->right().kind() != SchurSide::Kind::Dominant)
        throw std::invalid_argument("resolutions are computed on dominant weights");
    Resolution r;
    r.module = m;
    uint32_t nl = m->nl(), nr = m->nr();
    uint32_t p = m->p();
    // K[b]: columns spanning the part of the target (module or kernel of the previous differential) to cover
    std::vector<FpMatrix> K(static_cast<size_t>(nl) * nr);
    for (uint32_t i = 0; i < nl; ++i)
        for (uint32_t j = 0; j < nr; ++j)
            K[i * nr + j] = FpMatrix::identity(p, m->block_dim(i, j));

    for (size_t s = 0; s <= length; ++s) {
        const Module& T = r.target_of(s);
        std::vector<FreeModule::Gen> gens;
        std::vector<Vec> vals;
        for (uint32_t i = 0; i < nl; ++i)
            for (uint32_t j = 0; j < nr; ++j) {
                const FpMatrix& Kb = K[i * nr + j];
                if (!Kb.cols())
                    continue;
                EchelonSpace space(p, T.block_dim(i, j));
                if (opt.choice == GeneratorChoice::Minimal)
                    radical_image(T, K, i, j, space);
                generated_image(T, gens, vals, i, j, space);
                for (size_t c = 0; c < Kb.cols(); ++c) {
                    Vec v = Kb.column(c);
                    if (space.insert(v)) {
                        generated_image(T, {{i, j}}, {v}, i, j, space);
                        gens.push_back({i, j});
                        vals.push_back(std::move(v));
                    }
                }
            }

        // certify coverage; fix up greedily if a block is short
        std::vector<FpMatrix> next(K.size());
        while (true) {
            r.P.resize(s + 1);
            r.bd.resize(s + 1);
            r.P[s] = std::make_shared<FreeModule>(m->left_ptr(), m->right_ptr(), gens);
            r.bd[s] = vals;
            bool ok = true;
            for (uint32_t i = 0; i < nl && ok; ++i)
                for (uint32_t j = 0; j < nr && ok; ++j) {
                    SparseMatrix B = boundary_block(r, s, i, j);
                    FpMatrix ker = kernel_basis(B);
                    size_t rk = B.cols() - ker.cols();
                    const FpMatrix& Kb = K[i * nr + j];
                    if (rk < Kb.cols()) {
                        ok = false;
                        EchelonSpace img(p, T.block_dim(i, j));
                        for (size_t c = 0; c < B.cols(); ++c)
                            img.insert(sparse_to_dense(B.col(c), B.rows()));
                        for (size_t c = 0; c < Kb.cols(); ++c) {
                            Vec v = Kb.column(c);
                            if (img.insert(v)) {
                                gens.push_back({i, j});
                                vals.push_back(std::move(v));
                            }
                        }
                    }
                    next[i * nr + j] = std::move(ker);
                }
            if (ok)
                break;
        }
        if (opt.progress)
            opt.progress(s, gens.size());
        K = std::move(next);
    }
    return r;
}

FpMatrix coboundary(const Resolution& r, size_t s, const Module& N)
{
    const FreeModule& src = *r.P[s - 1];
    const FreeModule& dst = *r.P[s];
    auto in_off = cochain_offsets(src, N);
    auto out_off = cochain_offsets(dst, N);
    FpMatrix D(N.p(), out_off.back(), in_off.back());
    for (size_t q = 0; q < dst.gens().size(); ++q) {
        auto [i, j] = dst.gens()[q];
        const Vec& x = r.bd[s][q];
        for (size_t h = 0; h < src.gens().size(); ++h) {
            auto [l, m] = src.gens()[h];
            const uint32_t* X = x.data() + src.offset(i, j, h);
            size_t len = src.offset(i, j, h + 1) - src.offset(i, j, h);
            bool any = false;
            for (size_t k = 0; k < len && !any; ++k)
                any = X[k] != 0;
            if (!any)
                continue;
            size_t dimh = N.block_dim(l, m);
            Vec e(dimh, 0);
            for (size_t c = 0; c < dimh; ++c) {
                e[c] = 1;
                Vec y(N.block_dim(i, j), 0);
                apply_component(N, src.left(), src.right(), i, j, l, m, X, e, y);
                for (size_t k = 0; k < y.size(); ++k)
                    if (y[k])
                        D.add_to(out_off[q] + k, in_off[h] + c, y[k]);
                e[c] = 0;
            }
        }
    }
    return D;
}

CohomologyBasis::CohomologyBasis(const FpMatrix& in, const FpMatrix& out, size_t dim) : p_(out.p() ? out.p() : in.p()), out_(out)
{
    FpMatrix img = in.cols() ? image_basis(in) : FpMatrix(p_, dim, 0);
    FpMatrix ker = kernel_basis(out);
    EchelonSpace probe(p_, dim);
    for (size_t c = 0; c < img.cols(); ++c)
        probe.insert(img.column(c));
    nimage_ = img.cols();
    for (size_t c = 0; c < ker.cols(); ++c) {
        Vec v = ker.column(c);
        if (probe.insert(v))
            reps_.push_back(std::move(v));
    }
    space_ = std::make_unique<EchelonSpace>(p_, dim, nimage_ + reps_.size());
    for (size_t c = 0; c < img.cols(); ++c)
        space_->insert(img.column(c));
    for (auto& v : reps_)
        space_->insert(v);
}

bool CohomologyBasis::is_cocycle(const Vec& z) const
{
    for (auto v : out_.apply(z))
        if (v)
            return false;
    return true;
}

std::optional<Vec> CohomologyBasis::coords(const Vec& z) const
{
    if (!is_cocycle(z))
        return std::nullopt;
    auto e = space_->express(z);
    if (!e)
        return std::nullopt;
    return Vec(e->begin() + static_cast<std::ptrdiff_t>(nimage_), e->end());
}

ExtTable ext_table(const Resolution& r, const Module& N)
{
    ExtTable t;
    size_t L = r.length();
    if (L == 0)
        throw std::invalid_argument("ext_table needs a resolution of length at least 1");
    for (size_t s = 1; s <= L; ++s)
        t.delta.push_back(coboundary(r, s, N));
    for (size_t s = 0; s < L; ++s) {
        size_t dim = cochain_offsets(*r.P[s], N).back();
        FpMatrix in = s == 0 ? FpMatrix(N.p(), dim, 0) : t.delta[s - 1];
        auto cb = std::make_shared<CohomologyBasis>(in, t.delta[s], dim);
        t.dims.push_back(cb->dim());
        t.basis.push_back(std::move(cb));
    }
    return t;
}

} // namespace spf

namespace spf {

std::vector<size_t> ext_dims(const Resolution& r, const Module& N, size_t L)
{
    std::vector<size_t> d = ext_table(r, N).dims;
    if (d.size() < L && !is_complete(r))
        throw std::invalid_argument("ext_dims: resolution too short");
    d.resize(L, 0);
    return d;
}

} // namespace spf
