#pragma once

#include "oracles.hpp"

#include "spf/adjoint.hpp"
#include "spf/chain.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace props {

using namespace spf;

struct Outcome {
    size_t cases = 0;
    std::vector<std::string> failed;
    bool ok() const { return cases > 0 && failed.empty(); }
    void record(bool good, const std::string& what)
    {
        ++cases;
        if (!good)
            failed.push_back(what);
    }
    std::string summary() const
    {
        std::ostringstream o;
        o << cases - failed.size() << "/" << cases;
        for (auto& f : failed)
            o << "; " << f;
        return o.str();
    }
};

inline ModulePtr evaluated(const std::string& expr, uint32_t p, uint32_t N = 0)
{
    auto e = parse_bifunctor(expr);
    auto [dl, dr] = bidegree(e, p);
    if (!N)
        N = std::max<uint32_t>({static_cast<uint32_t>(dl), static_cast<uint32_t>(dr), 1});
    return std::make_shared<EvaluatedModule>(compile(e, p), make_side(p, static_cast<uint32_t>(dl), N, SchurSide::Kind::Dominant),
                                             make_side(p, static_cast<uint32_t>(dr), N, SchurSide::Kind::Dominant));
}

inline std::vector<size_t> ext(const std::string& a, const std::string& b, uint32_t p, size_t L)
{
    auto A = evaluated(a, p), B = evaluated(b, p);
    Resolution r = projective_resolution(A, L);
    return ext_dims(r, *B, L);
}

class ExprGen {
public:
    ExprGen(uint32_t p, uint64_t seed) : p_(p), g_(seed) {}

    std::string functor(uint32_t k)
    {
        if (k == 0)
            return "gamma(0)";
        if (k == 1)
            return "id";
        std::vector<std::string> c{"gamma(2)", "sym(2)", "lambda(2)", "otimes(2)", "tensor(id, id)"};
        if (p_ == 2)
            c.push_back("tw(1, id)");
        return pick(c);
    }

    std::string bifunctor(uint32_t d, uint32_t e, int depth = 0)
    {
        std::vector<int> kinds{0, 0, 1, 2, 3, 4};
        if (d == e && d > 0)
            kinds.push_back(5), kinds.push_back(5);
        if (depth == 0 && d + e >= 2)
            kinds.push_back(6);
        switch (pick(kinds)) {
        case 1:
            return "dual(" + bifunctor(d, e, depth + 1) + ")";
        case 2:
            return "param(" + bifunctor(d, e, depth + 1) + ", k(2))";
        case 3:
            return "proj(" + num(d) + "," + num(1 + g_() % 2) + "," + num(e) + "," + num(1 + g_() % 2) + ")";
        case 4:
            return "inj(" + num(d) + "," + num(1 + g_() % 2) + "," + num(e) + "," + num(1 + g_() % 2) + ")";
        case 5:
            return d == 1 ? "gl" : pick(std::vector<std::string>{"gamma(2).gl", "sym(2).gl", "lambda(2).gl", "otimes(2).gl"});
        case 6: {
            uint32_t d1 = d ? static_cast<uint32_t>(g_() % (d + 1)) : 0, e1 = e ? static_cast<uint32_t>(g_() % (e + 1)) : 0;
            if (d1 + e1 == 0 || d1 + e1 == d + e)
                d1 = d ? 1 : 0, e1 = d ? 0 : 1;
            return "tensor(" + bifunctor(d1, e1, depth + 1) + ", " + bifunctor(d - d1, e - e1, depth + 1) + ")";
        }
        default:
            return "hom(" + functor(d) + ", " + functor(e) + ")";
        }
    }

    std::pair<uint32_t, uint32_t> bidegree()
    {
        static const std::pair<uint32_t, uint32_t> b[] = {{1, 1}, {2, 2}, {1, 2}, {2, 1}, {0, 2}, {2, 0}, {2, 2}};
        return b[g_() % 7];
    }

    uint64_t next() { return g_(); }

private:
    template <class T>
    T pick(const std::vector<T>& v) { return v[g_() % v.size()]; }
    static std::string num(uint64_t x) { return std::to_string(x); }

    uint32_t p_;
    std::mt19937_64 g_;
};

inline Outcome yoneda(size_t n, uint64_t seed)
{
    Outcome o;
    for (uint32_t p : {2u, 3u}) {
        ExprGen gen(p, seed + p);
        for (size_t k = 0; k < n / 2; ++k) {
            auto [d, e] = gen.bidegree();
            std::string b = gen.bifunctor(d, e);
            uint32_t x = 1 + gen.next() % 2, y = 1 + gen.next() % 2;
            std::string P = "proj(" + std::to_string(d) + "," + std::to_string(x) + "," + std::to_string(e) + "," + std::to_string(y) + ")";
            size_t expect = compile(parse_bifunctor(b), p)->basis(x, y).size;
            size_t got = hom_space(evaluated(P, p), evaluated(b, p)).size();
            o.record(got == expect, "p=" + std::to_string(p) + " " + b + " at (" + std::to_string(x) + "," + std::to_string(y) + ")");
        }
    }
    return o;
}

inline Outcome duality(size_t n, uint64_t seed, size_t L = 4)
{
    Outcome o;
    for (uint32_t p : {2u, 3u}) {
        ExprGen gen(p, seed + 10 * p);
        for (size_t k = 0; k < n / 2; ++k) {
            auto [d, e] = gen.bidegree();
            std::string a = gen.bifunctor(d, e), b = gen.bifunctor(d, e);
            bool good = ext(a, b, p, L) == ext("dual(" + b + ")", "dual(" + a + ")", p, L);
            o.record(good, "p=" + std::to_string(p) + " " + a + " / " + b);
        }
    }
    return o;
}

inline Outcome kunneth(size_t n, uint64_t seed, size_t L = 4)
{
    Outcome o;
    const std::vector<std::vector<std::string>> by_degree{{"gamma(0)"}, {"id"}, {"gamma(2)", "sym(2)", "lambda(2)", "otimes(2)"}};
    for (uint32_t p : {2u, 3u}) {
        std::mt19937_64 g(seed + p);
        for (size_t k = 0; k < n / 2; ++k) {
            uint32_t a = 1 + g() % 2, b = g() % 3;
            auto pickf = [&](uint32_t deg) { return by_degree[deg][g() % by_degree[deg].size()]; };
            std::string F = pickf(a), G = pickf(b), F2 = pickf(a), G2 = pickf(b);
            auto lhs = ext("hom(" + F + ", " + G + ")", "hom(" + F2 + ", " + G2 + ")", p, L);
            auto ef = ext("hom(gamma(0), " + F2 + ")", "hom(gamma(0), " + F + ")", p, L);
            auto eg = ext("hom(gamma(0), " + G + ")", "hom(gamma(0), " + G2 + ")", p, L);
            std::vector<size_t> rhs(L, 0);
            for (size_t i = 0; i < L; ++i)
                for (size_t j = 0; i + j < L; ++j)
                    rhs[i + j] += ef[i] * eg[j];
            o.record(lhs == rhs, "p=" + std::to_string(p) + " hom(" + F + "," + G + ") vs hom(" + F2 + "," + G2 + ")");
        }
    }
    return o;
}

// Hom(F^X, G) = Hom(F, G_X) and Hom(F_X, G) = Hom(F, G^X) for functors, read as bifunctors of bidegree (0, d).
inline Outcome param_adjunction(size_t n, uint64_t seed)
{
    Outcome o;
    const std::vector<std::string> deg2{"gamma(2)", "sym(2)", "lambda(2)", "otimes(2)", "tensor(id, id)"};
    for (uint32_t p : {2u, 3u}) {
        std::mt19937_64 g(seed + p);
        for (size_t k = 0; k < n / 2; ++k) {
            uint32_t d = 1 + g() % 2;
            auto pick = [&] { return d == 1 ? std::string("id") : deg2[g() % deg2.size()]; };
            std::string F = pick(), G = pick(), X = "k(" + std::to_string(1 + g() % 2) + ")";
            auto dim = [&](const std::string& a, const std::string& b) {
                return hom_space(evaluated("hom(gamma(0), " + a + ")", p), evaluated("hom(gamma(0), " + b + ")", p)).size();
            };
            bool good = dim("uparam(" + F + ", " + X + ")", G) == dim(F, "param(" + G + ", " + X + ")") &&
                        dim("param(" + F + ", " + X + ")", G) == dim(F, "uparam(" + G + ", " + X + ")");
            o.record(good, "p=" + std::to_string(p) + " " + F + " / " + G + " over " + X);
        }
    }
    return o;
}

// Tw* on Ext^*(gl, gl) has full rank on its source, with the same matrices for two different lifts.
inline Outcome twist_injectivity()
{
    Outcome o;
    for (uint32_t p : {2u, 3u}) {
        auto gl = evaluated("gl", p, p);
        auto a = twist_map_on_ext(gl, gl, 1, 3);
        auto b = twist_map_on_ext(gl, gl, 1, 3, true);
        bool same = a.matrices.size() == b.matrices.size();
        for (size_t s = 0; same && s < a.matrices.size(); ++s)
            same = a.matrices[s] == b.matrices[s];
        bool monotone = true;
        for (size_t s = 0; s < a.source.dims.size(); ++s)
            monotone = monotone && a.source.dims[s] <= a.target.dims[s];
        o.record(a.ranks == a.source.dims && same && monotone, "p=" + std::to_string(p));
    }
    return o;
}

inline Outcome ell_adjunction()
{
    Outcome o;
    for (uint32_t p : {2u, 3u}) {
        std::string P = std::to_string(p);
        for (std::string b : {"proj(" + P + ",1," + P + ",1)", "gamma(" + P + ").gl", std::string("tw(1, gl)"), "sym(" + P + ").gl",
                              "proj(" + P + ",2," + P + ",1)"}) {
            auto B = evaluated(b, p, p);
            auto l = ell(B, 1);
            for (std::string bp : {"gl", "inj(1,1,1,1)", "inj(1,2,1,1)", "proj(1,1,1,3)"}) {
                size_t lhs = hom_space(l, evaluated(bp, p, 1)).size();
                size_t rhs = hom_space(B, twist_module(evaluated(bp, p, p), 1)).size();
                o.record(lhs == rhs, "p=" + P + " " + b + " / " + bp);
            }
        }
    }
    return o;
}

inline Outcome gamma_tensor_vanishing()
{
    Outcome o;
    for (uint32_t p : {2u, 3u})
        for (uint32_t d : {1u, 2u}) {
            std::string D = std::to_string(d);
            auto e = ext("gamma(" + D + ").gl", d == 1 ? "gl" : "otimes(2).gl", p, 5);
            bool good = e[0] > 0;
            for (size_t s = 1; s < e.size(); ++s)
                good = good && e[s] == 0;
            o.record(good, "p=" + std::to_string(p) + " d=" + D);
        }
    return o;
}

inline Outcome linalg_random(size_t n, uint64_t seed)
{
    Outcome o;
    std::mt19937_64 g(seed);
    const uint32_t primes[] = {2, 3, 5, 7, 101};
    for (size_t k = 0; k < n; ++k) {
        uint32_t p = primes[k % 5];
        size_t rows = 1 + g() % 25, cols = 1 + g() % 25;
        FpMatrix a = oracle::random_matrix(g, p, rows, cols, k % 3 ? 0.6 : 0.15);
        size_t r = rank(a);
        FpMatrix ker = kernel_basis(a);
        bool good = r == oracle::naive_rank(oracle::to_rows(a), p) && r + ker.cols() == cols && multiply(a, ker).is_zero() &&
                    rank(SparseMatrix::from_dense(a)) == r;
        o.record(good, "matrix " + std::to_string(k));
    }
    return o;
}

} // namespace props
