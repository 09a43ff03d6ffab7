#include <doctest.h>

#include "properties.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace spf;
using K = SchurSide::Kind;
using props::evaluated;

TEST_CASE("twisted module matches the twisted expression")
{
    for (uint32_t p : {2u, 3u}) {
        auto inner = evaluate_on("gl", p, p, K::Dominant);
        auto T = twist_module(inner, 1);
        auto E = evaluated("tw(1, gl)", p, p);
        CHECK(satisfies_module_axioms(*T));
        CHECK(T->dim() == E->dim());
        CHECK(hom_space(T, E).size() == 1);
        auto r = projective_resolution(evaluated("gamma(" + std::to_string(p) + ").gl", p, p), 4);
        CHECK(ext_dims(r, *T, 4) == ext_dims(r, *E, 4));
    }
    auto g2 = twist_module(evaluate_on("gamma(2).gl", 2, 4, K::Dominant), 1);
    auto e2 = evaluated("tw(1, gamma(2).gl)", 2, 4);
    CHECK(g2->dim() == e2->dim());
    CHECK(hom_space(g2, e2).size() == hom_space(e2, e2).size());
}

TEST_CASE("dual module matches the dual expression")
{
    for (const char* b : {"gamma(2).gl", "sym(2).gl", "hom(lambda(2), otimes(2))", "proj(2,1,2,2)"}) {
        INFO(b);
        auto M = evaluated(b, 2, 2);
        auto D = std::make_shared<DualModule>(M);
        auto E = evaluated(std::string("dual(") + b + ")", 2, 2);
        CHECK(satisfies_module_axioms(*D));
        for (uint32_t i = 0; i < D->nl(); ++i)
            for (uint32_t j = 0; j < D->nr(); ++j)
                CHECK(D->block_dim(i, j) == E->block_dim(i, j));
        CHECK(hom_space(D, E).size() == hom_space(E, E).size());
        CHECK(hom_space(E, D).size() == hom_space(E, E).size());
    }
    CHECK(evaluated("dual(gamma(2).gl)", 3, 2)->dim() == evaluated("sym(2).gl", 3, 2)->dim());
}

TEST_CASE("tensor modules")
{
    auto g = evaluate_on("gl", 2, 2, K::Full);
    auto T = tensor_module(g, g);
    CHECK(satisfies_module_axioms(*T));
    auto E = evaluated("otimes(2).gl", 2, 2);
    CHECK(hom_space(T, E).size() == 4);
    CHECK(hom_space(E, E).size() == 4);
    ModuleMap s = tensor_swap(T);
    CHECK(s.intertwines());
    ModuleMap ss = compose(s, s);
    ModuleMap id = identity_map(T);
    for (auto& [k, m] : ss.blocks)
        CHECK(m == id.blocks.at(k));
    auto G = evaluate_on("gamma(2).gl", 2, 2, K::Dominant);
    CHECK(gamma_to_tensor(G, T, 2).intertwines());
}

TEST_CASE("ell in degrees one and two")
{
    for (uint32_t p : {2u, 3u}) {
        auto B = evaluated("gamma(" + std::to_string(p) + ").gl", p, p);
        auto ld = ell_dual(B, 1);
        CHECK(satisfies_module_axioms(*ld));
        CHECK(ld->dim() == 1);
    }
    for (const char* b : {"gamma(4).gl", "tw(1, gamma(2).gl)", "proj(4,1,4,1)"}) {
        INFO(b);
        auto B = evaluated(b, 2, 4);
        auto ld = ell_dual(B, 2);
        CHECK(satisfies_module_axioms(*ld));
        auto l = ell(B, 2);
        for (const char* bp : {"gamma(2).gl", "sym(2).gl", "lambda(2).gl", "otimes(2).gl"}) {
            INFO(bp);
            auto tw = twist_module(evaluate_on(bp, 2, 4, K::Dominant), 1);
            CHECK(hom_space(l, evaluated(bp, 2, 2)).size() == hom_space(B, tw).size());
        }
    }
}

TEST_CASE("ell of a projective is projective")
{
    for (uint32_t p : {2u, 3u}) {
        std::string P = std::to_string(p);
        auto l = ell(evaluated("proj(" + P + ",2," + P + ",1)", p, p), 1);
        Resolution r = projective_resolution(l, 2);
        CHECK(r.verify());
        CHECK(r.P[1]->gens().empty());
        auto l2 = ell(evaluated("proj(4,1,4,1)", 2, 4), 2);
        Resolution r2 = projective_resolution(l2, 2);
        CHECK(r2.P[1]->gens().empty());
        for (const char* m : {"gamma(2).gl", "sym(2).gl", "lambda(2).gl"})
            CHECK(ext_dims(r2, *evaluated(m, 2, 2), 2)[1] == 0);
    }
}

TEST_CASE("resolution cache")
{
    auto dir = std::filesystem::temp_directory_path() / "spf-cache-test";
    std::filesystem::remove_all(dir);
    setenv("SPF_CACHE_DIR", dir.c_str(), 1);
    auto M = evaluated("gamma(2).gl", 2, 2);
    bool hit = true;
    Resolution a = cached_resolution(M, "gamma(2).gl", 4, {}, &hit);
    CHECK_FALSE(hit);
    Resolution b = cached_resolution(M, "gamma(2).gl", 3, {}, &hit);
    CHECK(hit);
    CHECK(b.verify());
    CHECK(b.length() == 3);
    for (size_t s = 0; s <= 3; ++s)
        CHECK(a.P[s]->gens() == b.P[s]->gens());
    cached_resolution(M, "gamma(2).gl", 6, {}, &hit);
    CHECK_FALSE(hit);

    for (auto& f : std::filesystem::directory_iterator(dir))
        if (f.path().extension() == ".res")
            std::ofstream(f.path()) << "SPFRES 1 2\nnonsense";
    Resolution c = cached_resolution(M, "gamma(2).gl", 4, {}, &hit);
    CHECK_FALSE(hit);
    CHECK(c.verify());
    CHECK(c.ranks() == a.ranks());
    Resolution d = cached_resolution(M, "gamma(2).gl", 4, {}, &hit);
    CHECK(hit);
    unsetenv("SPF_CACHE_DIR");
    std::filesystem::remove_all(dir);
}

TEST_CASE("Yoneda isomorphism")
{
    auto B = evaluate_on("gamma(2).gl", 2, 2, K::Full);
    auto y = yoneda(B, 2, 2);
    CHECK(y.basis.size() == 10);
    CHECK(multiply(y.to_values, y.from_values) == FpMatrix::identity(2, 10));
    for (const char* b : {"sym(2).gl", "hom(lambda(2), otimes(2))", "proj(2,1,2,2)"})
        for (uint32_t n : {1u, 2u}) {
            INFO(b << " n=" << n);
            auto M = evaluate_on(b, 3, 2, K::Full);
            CHECK(yoneda(M, n, 2).basis.size() == compile(parse_bifunctor(b), 3)->basis(n, 2).size);
        }

    auto P = evaluate_on("proj(2,2,2,2)", 2, 2, K::Full);
    CHECK(yoneda(P, 2, 2).basis.size() == P->dim());

    // naturality along a map Gamma^2 gl -> otimes^2 gl
    auto T = evaluate_on("otimes(2).gl", 2, 2, K::Full);
    auto f = hom_space(B, T).at(0);
    auto yt = yoneda(T, 2, 2);
    auto off_b = cochain_offsets(*y.P, *B), off_t = cochain_offsets(*yt.P, *T);
    for (size_t k = 0; k < y.basis.size(); ++k) {
        ModuleMap g = compose(f, y.basis[k]);
        Vec direct(off_t.back(), 0);
        Vec values = y.to_values.column(k);
        for (size_t h = 0; h < y.P->gens().size(); ++h) {
            auto [l, r] = y.P->gens()[h];
            Vec v(values.begin() + static_cast<long>(off_b[h]), values.begin() + static_cast<long>(off_b[h + 1]));
            Vec w = f.apply(l, r, v);
            std::copy(w.begin(), w.end(), direct.begin() + static_cast<long>(off_t[h]));
        }
        Vec via(off_t.back(), 0);
        for (size_t h = 0; h < yt.P->gens().size(); ++h) {
            auto [l, r] = yt.P->gens()[h];
            Vec e(yt.P->block_dim(l, r), 0);
            e[yt.P->unit_position(h)] = 1;
            Vec w = g.apply(l, r, e);
            std::copy(w.begin(), w.end(), via.begin() + static_cast<long>(off_t[h]));
        }
        CHECK(direct == via);
    }
}
