#include <doctest.h>

#include "spf/universal.hpp"

using namespace spf;

TEST_CASE("identity induces the identity on Ext")
{
    auto gl = evaluate_on("tw(1, gl)", 2, 2, SchurSide::Kind::Dominant);
    auto r = gamma_resolution(2, 2, 2, 4);
    auto e = ext_table(*r, *gl);
    auto m = induced_map_on_ext(*r, identity_map(gl), e, e);
    for (size_t s = 0; s < m.size(); ++s)
        CHECK(m[s] == FpMatrix::identity(2, e.dims[s]));
}

TEST_CASE("zero map induces zero on Ext")
{
    auto gl = evaluate_on("tw(1, gl)", 2, 2, SchurSide::Kind::Dominant);
    auto r = gamma_resolution(2, 2, 2, 4);
    auto e = ext_table(*r, *gl);
    auto m = induced_map_on_ext(*r, zero_map(gl, gl), e, e);
    for (auto& x : m)
        CHECK(x.is_zero());
}

TEST_CASE("cup product with the unit")
{
    using K = SchurSide::Kind;
    CupProduct cp(2, 2, 0, 2, 3);
    auto g = evaluate_on("tw(1, gl)", 2, 2, K::Full);
    auto one = evaluate_on("gamma(0).gl", 2, 2, K::Full);
    auto T = tensor_module(g, one);
    auto e1 = ext_table(cp.first(), *g);
    auto e0 = ext_table(cp.second(), *one);
    auto eT = ext_table(cp.total(), *T);
    REQUIRE(e0.dims.at(0) == 1);
    auto gd = evaluate_on("tw(1, gl)", 2, 2, K::Dominant);
    ModuleMap j = map_from_basis(gd, T, [&](uint32_t k) {
        auto loc = locate_tensor(*T, {k, 0});
        return FullImage{{std::get<0>(*loc), std::get<1>(*loc), std::get<2>(*loc), 1}};
    });
    CHECK(j.intertwines());
    for (size_t s : {0u, 2u}) {
        Vec x = e1.basis[s]->reps().at(0);
        auto lhs = eT.basis[s]->coords(cp.product(s, x, *g, 0, e0.basis[0]->reps().at(0), *one, *T));
        auto rhs = eT.basis[s]->coords(postcompose(*cp.total().P[s], j, x));
        REQUIRE(lhs);
        REQUIRE(rhs);
        CHECK(*lhs == *rhs);
    }
}

TEST_CASE("symmetric group on H^*((x)^2 gl^{(1)})")
{
    UniversalContext ctx(2, 2);
    for (auto& m : ctx.swap())
        CHECK(multiply(m, m) == FpMatrix::identity(2, m.rows()));
    // degree 0 against the swap acting on Hom(Gamma^4 gl, (x)^2 gl^{(1)}) directly
    auto T = std::dynamic_pointer_cast<const TensorModule>(ctx.delta_map().target);
    REQUIRE(T);
    auto H = hom_space(ctx.total().module, T);
    ModuleMap sw = tensor_swap(T);
    auto flat = [](const ModuleMap& f) {
        Vec v;
        for (auto& [k, b] : f.blocks)
            for (size_t r = 0; r < b.rows(); ++r)
                for (size_t c = 0; c < b.cols(); ++c)
                    v.push_back(b.at(r, c));
        return v;
    };
    std::vector<Vec> cols;
    for (auto& h : H)
        cols.push_back(flat(h));
    FpMatrix basis = FpMatrix::from_columns(2, cols.empty() ? 0 : cols[0].size(), cols);
    uint32_t trace = 0;
    for (size_t k = 0; k < H.size(); ++k)
        trace = (trace + solve(basis, flat(compose(sw, H[k])))->at(k)) % 2;
    uint32_t expect = 0;
    for (size_t k = 0; k < ctx.swap()[0].rows(); ++k)
        expect = (expect + ctx.swap()[0].at(k, k)) % 2;
    CHECK(H.size() == ctx.tensor_ext().dims[0]);
    CHECK(trace == expect);
}

TEST_CASE("c[1]")
{
    for (uint32_t p : {2u, 3u}) {
        auto c = class_c1(p);
        CHECK(c.gamma_dims.at(1) == 0);
        CHECK(c.gamma_dims.at(2) == 1);
        CHECK(c.coset_dim == 0);
        CHECK(c.coords == Vec{1});
        CHECK(verify_class(c).ok());
    }
}

TEST_CASE("c[2] at p = 2")
{
    UniversalContext ctx(2, 2);
    auto cp = cup_power(ctx);
    CHECK(cp.nonzero);
    CHECK(cp.invariant);
    CHECK(cp.bilinear);
    auto c = build_universal_class(ctx);
    CHECK(c.image == c.target);
    CHECK(c.target_invariant);
    CHECK(c.image_in_invariants);
    CHECK(c.image_is_invariants);
    CHECK(c.coset_dim == ctx.delta().at(4).cols() - rank(ctx.delta().at(4)));
    CHECK(verify_class(c, ctx).ok());

    UniversalClass zero = c;
    for (auto& x : zero.rep)
        x = 0;
    auto v = verify_class(zero, ctx);
    CHECK(v.cocycle);
    CHECK_FALSE(v.equation);
    CHECK_FALSE(v.ok());
}

TEST_CASE("out of budget")
{
    CHECK_THROWS_AS(UniversalContext(2, 9), Infeasible);
    CHECK_THROWS_AS(UniversalContext(2, 3), Infeasible);
    CHECK(gamma_size_estimate(4) == 3876);
}
