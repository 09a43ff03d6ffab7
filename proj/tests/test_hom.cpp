#include <doctest.h>

#include "spf/resolution.hpp"

#include <chrono>
#include <iostream>

using namespace spf;

namespace {

ModulePtr evaluated(const std::string& expr, uint32_t p, uint32_t N, std::optional<uint32_t> gm = std::nullopt)
{
    auto e = parse_bifunctor(expr);
    auto [dl, dr] = bidegree(e, p);
    auto L = make_side(p, static_cast<uint32_t>(dl), N, SchurSide::Kind::Dominant);
    auto R = make_side(p, static_cast<uint32_t>(dr), N, SchurSide::Kind::Dominant);
    return std::make_shared<EvaluatedModule>(compile(e, p), L, R, gm);
}

std::vector<size_t> ext_dims(const std::string& b0, const std::string& b, uint32_t p, uint32_t N, size_t len)
{
    auto M0 = evaluated(b0, p, N);
    auto M = evaluated(b, p, N);
    Resolution r = projective_resolution(M0, len);
    return ext_table(r, *M).dims;
}

} // namespace

TEST_CASE("small hom spaces")
{
    for (uint32_t N : {1u, 2u})
        CHECK(hom_space(evaluated("gl", 2, N), evaluated("gl", 2, N)).size() == 1);
    CHECK(hom_space(evaluated("hom(gamma(0), sym(2))", 2, 2), evaluated("hom(gamma(0), gamma(2))", 2, 2)).size() == 1);
    CHECK(hom_space(evaluated("hom(gamma(0), sym(3))", 3, 3), evaluated("hom(gamma(0), gamma(3))", 3, 3)).size() == 1);
    CHECK(hom_space(evaluated("gamma(2).gl", 2, 2), evaluated("otimes(2).gl", 2, 2)).size() == 2);
    CHECK(hom_space(evaluated("gamma(2).gl", 3, 2), evaluated("otimes(2).gl", 3, 2)).size() == 2);
    auto maps = hom_space(evaluated("gamma(2).gl", 2, 2), evaluated("otimes(2).gl", 2, 2));
    for (auto& m : maps)
        CHECK(m.intertwines());
}

TEST_CASE("Yoneda dimension")
{
    for (const char* b : {"gamma(2).gl", "sym(2).gl", "lambda(2).gl", "otimes(2).gl", "hom(sym(2), lambda(2))"}) {
        INFO(b);
        auto P = evaluated("proj(2,2,2,2)", 2, 2);
        auto B = evaluated(b, 2, 2);
        auto full = compile(parse_bifunctor(b), 2)->basis(2, 2).size;
        CHECK(hom_space(P, B).size() == full);
    }
}

TEST_CASE("cohomology of gl and its twists")
{
    CHECK(ext_dims("gl", "gl", 2, 1, 3) == std::vector<size_t>{1, 0, 0});
    CHECK(ext_dims("gamma(2).gl", "tw(1, gl)", 2, 2, 6) == std::vector<size_t>{1, 0, 1, 0, 0, 0});
    CHECK(ext_dims("gamma(3).gl", "tw(1, gl)", 3, 3, 7) == std::vector<size_t>{1, 0, 1, 0, 1, 0, 0});
    CHECK(ext_dims("gamma(2).gl", "otimes(2).gl", 2, 2, 5) == std::vector<size_t>{2, 0, 0, 0, 0});
}

TEST_CASE("resolutions are exact and choice independent")
{
    auto M = evaluated("gamma(2).gl", 2, 2);
    Resolution a = projective_resolution(M, 5);
    Resolution b = projective_resolution(M, 5, {GeneratorChoice::Greedy, {}});
    CHECK(a.verify());
    CHECK(b.verify());
    auto N = evaluated("tw(1, gl)", 2, 2);
    CHECK(ext_table(a, *N).dims == ext_table(b, *N).dims);
    auto total = [](const std::vector<size_t>& v) { size_t t = 0; for (size_t x : v) t += x; return t; };
    CHECK(total(a.ranks()) <= total(b.ranks()));
}
