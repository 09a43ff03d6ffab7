#include "spf/universal.hpp"

#include <stdexcept>

namespace spf {

namespace {

using K = SchurSide::Kind;

std::vector<FpMatrix> identities(uint32_t p, const ExtTable& e)
{
    std::vector<FpMatrix> out;
    for (auto d : e.dims)
        out.push_back(FpMatrix::identity(p, d));
    return out;
}

bool is_zero(const Vec& v)
{
    for (auto x : v)
        if (x)
            return false;
    return true;
}

Vec scaled(const Fp& f, const Vec& v, uint32_t c)
{
    Vec out(v);
    for (auto& x : out)
        x = f.mul(x, c);
    return out;
}

Vec class_coords(const ExtTable& e, size_t s, const Vec& z)
{
    auto c = e.basis.at(s)->coords(z);
    if (!c)
        throw std::logic_error("not a cocycle");
    return *c;
}

FpMatrix minus_identity(const Fp& f, const FpMatrix& m)
{
    FpMatrix out = m;
    for (size_t k = 0; k < m.rows(); ++k)
        out.set(k, k, f.sub(m.at(k, k), 1));
    return out;
}

} // namespace

UniversalContext::UniversalContext(uint32_t p, uint32_t d, double max_dim) : p_(p), d_(d)
{
    if (d == 0)
        throw std::invalid_argument("universal classes start at d = 1");
    check_budget(p * d, max_dim);
    if (d > 2)
        throw Infeasible("iterated cup products are supported up to d = 2", gamma_size_estimate(p * d), max_dim);
    if (d == 1) {
        r1_ = gamma_resolution(p, p, p, 3);
        auto G = evaluate_on("tw(1, gl)", p, p, K::Dominant);
        g1_ = G_ = T_ = G;
        e1_ = ext_table(*r1_, *G);
        eG_ = e1_;
        eT_ = e1_;
        dmap_ = identity_map(G);
        delta_ = identities(p, eG_);
        swap_ = identities(p, eT_);
        return;
    }
    uint32_t N = 2 * p;
    cp_ = std::make_unique<CupProduct>(p, p, p, N, 5);
    auto g1 = evaluate_on("tw(1, gl)", p, N, K::Full);
    auto T = tensor_module(g1, g1);
    auto G = evaluate_on("tw(1, gamma(2).gl)", p, N, K::Dominant);
    g1_ = g1;
    T_ = T;
    G_ = G;
    e1_ = ext_table(cp_->first(), *g1);
    eT_ = ext_table(cp_->total(), *T);
    eG_ = ext_table(cp_->total(), *G);
    dmap_ = gamma_to_tensor(G, T, 2);
    delta_ = induced_map_on_ext(cp_->total(), dmap_, eG_, eT_);
    swap_ = symmetric_action(cp_->total(), T, eT_).generators.at(0);
}

const Resolution& UniversalContext::total() const
{
    return cp_ ? cp_->total() : *r1_;
}

Vec UniversalContext::cup(size_t i, const Vec& x, size_t j, const Vec& y) const
{
    if (!cp_)
        throw std::logic_error("cup products need d = 2");
    return cp_->product(i, x, *g1_, j, y, *g1_, *T_);
}

UniversalClass class_c1(uint32_t p)
{
    UniversalContext ctx(p, 1);
    return build_universal_class(ctx);
}

CupPower cup_power(const UniversalContext& ctx)
{
    if (ctx.d() != 2)
        throw std::invalid_argument("cup_power: d = 2 only");
    const Fp& f = field(ctx.p());
    CupPower out;
    out.p = ctx.p();
    out.d = 2;
    const Vec& c = ctx.c1();
    out.coords = class_coords(ctx.tensor_ext(), 4, ctx.cup(2, c, 2, c));
    out.nonzero = !is_zero(out.coords);
    out.invariant = ctx.swap().at(4).apply(out.coords) == out.coords;
    out.bilinear = true;
    for (uint32_t l = 0; l < ctx.p(); ++l) {
        Vec lhs = class_coords(ctx.tensor_ext(), 4, ctx.cup(2, scaled(f, c, l), 2, c));
        out.bilinear = out.bilinear && lhs == scaled(f, out.coords, l);
    }
    return out;
}

UniversalClass build_universal_class(const UniversalContext& ctx)
{
    const Fp& f = field(ctx.p());
    uint32_t d = ctx.d();
    size_t s = 2 * d;
    UniversalClass c;
    c.p = ctx.p();
    c.d = d;
    c.gamma_dims = ctx.gamma_ext().dims;
    c.tensor_dims = ctx.tensor_ext().dims;
    if (ctx.gl_ext().dims.at(2) != 1)
        throw std::logic_error("H^2 of gl^{(1)} is not one dimensional");
    c.target = d == 1 ? class_coords(ctx.gl_ext(), 2, ctx.c1()) : cup_power(ctx).coords;

    const FpMatrix& D = ctx.delta().at(s);
    const FpMatrix& S = ctx.swap().at(s);
    c.target_invariant = S.apply(c.target) == c.target;
    for (size_t k = 0; k < ctx.delta().size() && k < ctx.swap().size(); ++k) {
        FpMatrix m = multiply(minus_identity(f, ctx.swap()[k]), ctx.delta()[k]);
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t q = 0; q < m.cols(); ++q)
                if (m.at(r, q))
                    c.image_in_invariants = false;
    }
    size_t rk = rank(D);
    c.image_is_invariants = rk == S.rows() - rank(minus_identity(f, S));
    c.coset_dim = D.cols() - rk;

    auto x = solve(D, c.target);
    if (!x)
        throw std::logic_error("Delta_* x = c[1]^d has no solution, contradicting surjectivity onto the invariants");
    c.coords = *x;
    c.image = D.apply(c.coords);
    const auto& reps = ctx.gamma_ext().basis.at(s)->reps();
    c.rep.assign(reps.empty() ? 0 : reps[0].size(), 0);
    for (size_t k = 0; k < reps.size(); ++k)
        for (size_t q = 0; q < c.rep.size(); ++q)
            c.rep[q] = f.add(c.rep[q], f.mul(c.coords[k], reps[k][q]));
    return c;
}

UniversalClass build_universal_class(uint32_t d, uint32_t p, double max_dim)
{
    UniversalContext ctx(p, d, max_dim);
    return build_universal_class(ctx);
}

Verification verify_class(const UniversalClass& c, const UniversalContext& ctx)
{
    Verification v;
    size_t s = 2 * c.d;
    const auto& eG = ctx.gamma_ext();
    if (s >= eG.basis.size())
        return v;
    v.cocycle = eG.basis[s]->is_cocycle(c.rep);
    if (!v.cocycle)
        return v;
    v.nonzero = !is_zero(class_coords(eG, s, c.rep));
    const FreeModule& P = *ctx.total().P.at(s);
    Vec image = class_coords(ctx.tensor_ext(), s, postcompose(P, ctx.delta_map(), c.rep));
    Vec target = c.d == 1 ? class_coords(ctx.gl_ext(), 2, ctx.c1())
                          : class_coords(ctx.tensor_ext(), 4, ctx.cup(2, ctx.c1(), 2, ctx.c1()));
    v.equation = image == target;
    return v;
}

Verification verify_class(const UniversalClass& c)
{
    UniversalContext ctx(c.p, c.d);
    return verify_class(c, ctx);
}

} // namespace spf
