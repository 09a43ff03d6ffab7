#include <doctest.h>

#include "oracles.hpp"
#include "spf/evaluate.hpp"

#include <random>

using namespace spf;

namespace {

FpMatrix from_plain(const oracle::Rows& r, uint32_t p)
{
    std::vector<std::vector<uint32_t>> rows;
    for (auto& row : r) {
        std::vector<uint32_t> v;
        for (auto x : row)
            v.push_back(static_cast<uint32_t>(oracle::md(x, p)));
        rows.push_back(v);
    }
    return FpMatrix::from_rows(p, rows);
}

std::vector<std::array<uint32_t, 3>> units_of(const Mono& g)
{
    std::vector<std::array<uint32_t, 3>> u;
    for (auto& t : g.terms)
        u.push_back({t.s, t.t, t.a});
    return u;
}

std::vector<Mono> sample(const std::vector<Mono>& all, size_t k, std::mt19937_64& rng)
{
    if (all.size() <= k)
        return all;
    std::vector<Mono> out;
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    for (size_t i = 0; i < k; ++i)
        out.push_back(all[pick(rng)]);
    return out;
}

FpMatrix lincomb_action(const FNode& node, const LinComb& lc, uint32_t n)
{
    const Basis& b = node.basis(n);
    FpMatrix m(node.p(), b.size, b.size);
    for (auto& [mono, c] : lc)
        m = add(m, scale(structure_map(node, mono, n, n), c));
    return m;
}

} // namespace

TEST_CASE("basis enumeration sizes")
{
    auto k2 = trivial_space(2, 2);
    CHECK(enumerate_basis(PowerKind::Gamma, 2, k2).dim() == 3);
    CHECK(enumerate_basis(PowerKind::Lambda, 2, k2).dim() == 1);
    CHECK(enumerate_basis(PowerKind::Sym, 4, trivial_space(16, 2)).dim() == 3876);
    CHECK(enumerate_basis(PowerKind::Tensor, 3, trivial_space(3, 3)).dim() == 27);
    CHECK(enumerate_basis(PowerKind::Gamma, 0, k2).dim() == 1);

    auto g = enumerate_basis(PowerKind::Gamma, 2, er_space(1, 2));
    CHECK(g.labels == std::vector<std::string>{"g2(e0)", "g1(e0)*g1(e1)", "g2(e1)"});
    CHECK(g.gm == std::vector<uint32_t>{0, 2, 4});

    auto l = enumerate_basis(PowerKind::Lambda, 2, trivial_space(3, 5));
    CHECK(l.labels == std::vector<std::string>{"e0^e1", "e0^e2", "e1^e2"});
    for (auto& w : l.wl) {
        uint32_t s = 0;
        for (auto v : w)
            s += v;
        CHECK(s == 2);
    }
}

TEST_CASE("E_r spaces")
{
    CHECK(er_space(1, 2).gm == std::vector<uint32_t>{0, 2});
    CHECK(er_space(1, 3).gm == std::vector<uint32_t>{0, 2, 4});
    CHECK(er_space(2, 2).gm == std::vector<uint32_t>{0, 2, 4, 6});
    CHECK_THROWS(er_space(0, 2));
}

TEST_CASE("evaluated bifunctor dimensions")
{
    auto gl = compile(parse_bifunctor("gl"), 2);
    const BiBasis& b = gl->basis(2, 2);
    CHECK(b.size == 4);
    for (uint32_t i = 0; i < 4; ++i) {
        CHECK(b.wl[i][i / 2] == 1);
        CHECK(b.wr[i][i % 2] == 1);
    }
    CHECK(compile(parse_bifunctor("gamma(2).gl"), 3)->basis(2, 2).size == 10);
    CHECK(compile(parse_bifunctor("tw(1, gamma(2).gl)"), 2)->basis(4, 4).size == 136);

    for (const char* f : {"gamma(2)", "lambda(2)", "tensor(id, sym(2))"})
        for (const char* g : {"sym(2)", "otimes(2)", "lambda(3)"}) {
            auto sep = compile(bx::hom(parse_functor(f), parse_functor(g)), 3);
            auto F = compile(parse_functor(f), 3);
            auto G = compile(parse_functor(g), 3);
            CHECK(sep->basis(3, 3).size == F->basis(3).size * G->basis(3).size);
        }

    auto g2 = parse_bifunctor("gamma(2).gl");
    auto pe = compile(bx::param(g2, ParamSpace::er(1)), 2);
    CHECK(pe->basis(2, 2).size == compile(g2, 2)->basis(2, 4).size);
    auto pe3 = compile(bx::param(g2, ParamSpace::er(1)), 3);
    CHECK(pe3->basis(2, 2).size == compile(g2, 3)->basis(2, 6).size);
}

TEST_CASE("graded pieces of a parametrized bifunctor")
{
    auto pe = compile(parse_bifunctor("param(gamma(2).gl, E(1))"), 2);
    const BiBasis& b = pe->basis(2, 2);
    std::map<uint32_t, size_t> pieces;
    for (auto g : b.gm)
        pieces[g]++;
    CHECK(pieces == std::map<uint32_t, size_t>{{0, 10}, {2, 16}, {4, 10}});

    auto gle = compile(parse_bifunctor("param(gl, E(1))"), 2);
    std::map<uint32_t, size_t> p2;
    for (auto g : gle->basis(2, 2).gm)
        p2[g]++;
    CHECK(p2 == std::map<uint32_t, size_t>{{0, 4}, {2, 4}});

    auto glk = compile(parse_bifunctor("param(gl, k(1))"), 5);
    for (auto g : glk->basis(2, 2).gm)
        CHECK(g == 0);
}

TEST_CASE("twist degree law")
{
    for (uint32_t p : {2u, 3u}) {
        auto e = parse_functor("tensor(gamma(2), lambda(2))");
        auto t = fx::tw(1, e);
        CHECK(degree(t, p) == p * degree(e, p));
        CHECK(compile(t, p)->basis(3).size == compile(e, p)->basis(3).size);
    }
}

TEST_CASE("degree one structure maps are the matrices themselves")
{
    auto id = compile(fx::id(), 3);
    for (auto& g : all_monomials(1, 2, 3)) {
        FpMatrix m = structure_map(*id, g, 2, 3);
        CHECK(m == from_plain(oracle::unit(g.terms[0].s, g.terms[0].t, 2, 3), 3));
    }
    CHECK_THROWS_AS(structure_map(*id, all_monomials(2, 2, 2)[0], 2, 2), std::invalid_argument);
}

TEST_CASE("tensor square examples")
{
    uint32_t p = 5;
    auto t2 = compile(fx::otimes(2), p);
    Mono f = Mono::from_terms({{1, 0, 2}});
    FpMatrix ff = structure_map(*t2, f, 2, 2);
    FpMatrix e10 = from_plain(oracle::unit(1, 0, 2, 2), p);
    CHECK(ff == kron(e10, e10));
    Mono fg = Mono::from_terms({{1, 0, 1}, {0, 1, 1}});
    FpMatrix e01 = from_plain(oracle::unit(0, 1, 2, 2), p);
    CHECK(structure_map(*t2, fg, 2, 2) == add(kron(e10, e01), kron(e01, e10)));
}

TEST_CASE("tensor powers agree with Kronecker sums")
{
    std::mt19937_64 rng(11);
    for (uint32_t p : {2u, 3u})
        for (uint32_t d : {1u, 2u, 3u}) {
            auto node = compile(fx::otimes(d), p);
            for (auto [a, b] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}})
                for (auto& g : sample(all_monomials(d, a, b), 25, rng))
                    CHECK(structure_map(*node, g, a, b) ==
                          from_plain(oracle::tensor_power_action(units_of(g), a, b, p), p));
        }
}

TEST_CASE("Gamma, Sym and Lambda are sub/quotients of the tensor power")
{
    std::mt19937_64 rng(12);
    for (uint32_t p : {2u, 3u, 5u})
        for (uint32_t d : {2u, 3u}) {
            auto T = compile(fx::otimes(d), p);
            auto G = compile(fx::gamma(d), p);
            auto S = compile(fx::sym(d), p);
            auto L = compile(fx::lambda(d), p);
            auto inc_gamma = [&](uint32_t n) {
                const Basis& tb = T->basis(n);
                const Basis& gb = G->basis(n);
                FpMatrix m(p, tb.size, gb.size);
                for (uint32_t i = 0; i < tb.size; ++i)
                    m.set(i, gb.index.at(tb.weight[i]), 1);
                return m;
            };
            auto proj_sym = [&](uint32_t n) {
                const Basis& tb = T->basis(n);
                const Basis& sb = S->basis(n);
                FpMatrix m(p, sb.size, tb.size);
                for (uint32_t i = 0; i < tb.size; ++i)
                    m.set(sb.index.at(tb.weight[i]), i, 1);
                return m;
            };
            auto inc_lambda = [&](uint32_t n) {
                const Basis& tb = T->basis(n);
                const Basis& lb = L->basis(n);
                FpMatrix m(p, tb.size, lb.size);
                const Fp& f = field(p);
                for (uint32_t i = 0; i < tb.size; ++i) {
                    const Label& w = tb.labels[i];
                    auto it = lb.index.find(tb.weight[i]);
                    if (it == lb.index.end())
                        continue;
                    size_t inv = 0;
                    for (size_t x = 0; x < w.size(); ++x)
                        for (size_t y = x + 1; y < w.size(); ++y)
                            inv += w[x] > w[y];
                    m.set(i, it->second, inv % 2 ? f.neg(1) : 1);
                }
                return m;
            };
            for (auto [a, b] : {std::pair{2u, 3u}, {3u, 3u}, {3u, 2u}})
                for (auto& g : sample(all_monomials(d, a, b), 20, rng)) {
                    FpMatrix t = structure_map(*T, g, a, b);
                    CHECK(multiply(t, inc_gamma(a)) == multiply(inc_gamma(b), structure_map(*G, g, a, b)));
                    CHECK(multiply(proj_sym(b), t) == multiply(structure_map(*S, g, a, b), proj_sym(a)));
                    CHECK(multiply(t, inc_lambda(a)) == multiply(inc_lambda(b), structure_map(*L, g, a, b)));
                }
        }
}

TEST_CASE("Frobenius twist of the identity is the square subspace of S^2")
{
    uint32_t p = 2;
    auto tw = compile(parse_functor("tw(1, id)"), p);
    auto s2 = compile(fx::sym(2), p);
    for (auto [a, b] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
        auto squares = [&](uint32_t n) {
            std::vector<uint32_t> idx;
            for (uint32_t i = 0; i < n; ++i) {
                Composition c(n, 0);
                c[i] = 2;
                idx.push_back(s2->basis(n).index.at(c));
            }
            return idx;
        };
        auto sa = squares(a), sb = squares(b);
        for (auto& g : all_monomials(2, a, b)) {
            FpMatrix full = structure_map(*s2, g, a, b);
            FpMatrix restricted(p, b, a);
            for (uint32_t i = 0; i < b; ++i)
                for (uint32_t j = 0; j < a; ++j)
                    restricted.set(i, j, full.at(sb[i], sa[j]));
            for (uint32_t j = 0; j < a; ++j)
                for (uint32_t i = 0; i < s2->basis(b).size; ++i)
                    if (std::find(sb.begin(), sb.end(), i) == sb.end())
                        CHECK(full.at(i, sa[j]) == 0);
            CHECK(structure_map(*tw, g, a, b) == restricted);
        }
    }
    Mono fg = Mono::from_terms({{0, 0, 1}, {1, 1, 1}});
    CHECK(structure_map(*tw, fg, 2, 2).is_zero());
    Mono f2 = Mono::from_terms({{1, 0, 2}});
    CHECK(structure_map(*tw, f2, 2, 2) == from_plain(oracle::unit(1, 0, 2, 2), p));
}

TEST_CASE("actions are multiplicative")
{
    std::mt19937_64 rng(13);
    const char* exprs[] = {"gamma(3)", "sym(3)", "lambda(2)", "otimes(2)", "tensor(gamma(1), sym(2))",
                           "dual(gamma(2))", "tw(1, gamma(1))", "param(sym(2), k(2))", "param(gamma(2), E(1))",
                           "tw(1, tensor(id, id))"};
    for (uint32_t p : {2u, 3u})
        for (const char* e : exprs) {
            INFO(std::string(e) << " p=" << p);
            auto node = compile(parse_functor(e), p);
            uint32_t d = node->degree();
            uint32_t n = 2;
            auto all = all_monomials(d, n, n);
            for (int rep = 0; rep < 8; ++rep) {
                auto x = sample(all, 1, rng)[0], y = sample(all, 1, rng)[0];
                LinComb prod = schur_product(field(p), x, y);
                FpMatrix lhs = lincomb_action(*node, prod, n);
                FpMatrix rhs = multiply(structure_map(*node, x, n, n), structure_map(*node, y, n, n));
                CHECK(lhs == rhs);
            }
            CHECK(lincomb_action(*node, identity_element(field(p), d, n), n) ==
                  FpMatrix::identity(p, node->basis(n).size));
        }
}

TEST_CASE("weights shift by the acting monomial")
{
    std::mt19937_64 rng(14);
    for (const char* e : {"gamma(2)", "lambda(3)", "tensor(sym(2), id)", "tw(1, sym(2))", "dual(otimes(2))"}) {
        uint32_t p = 2;
        auto node = compile(parse_functor(e), p);
        uint32_t d = node->degree();
        for (auto [a, b] : {std::pair{2u, 3u}, {3u, 3u}})
            for (auto& g : sample(all_monomials(d, a, b), 15, rng)) {
                FpMatrix m = structure_map(*node, g, a, b);
                const Basis& sa = node->basis(a);
                const Basis& sb = node->basis(b);
                for (uint32_t j = 0; j < sa.size; ++j)
                    for (uint32_t i = 0; i < sb.size; ++i)
                        if (m.at(i, j)) {
                            CHECK(sa.weight[j] == g.col_sums(a));
                            CHECK(sb.weight[i] == g.row_sums(b));
                        }
            }
    }
}

TEST_CASE("dual is the transpose on the transposed monomial")
{
    std::mt19937_64 rng(15);
    for (const char* e : {"gamma(2)", "lambda(2)", "tensor(sym(2), id)"}) {
        uint32_t p = 3;
        auto F = compile(parse_functor(e), p);
        auto D = compile(fx::dual(parse_functor(e)), p);
        for (auto& g : sample(all_monomials(F->degree(), 2, 3), 20, rng))
            CHECK(structure_map(*D, g, 2, 3) == transpose(structure_map(*F, g.transposed(), 3, 2)));
    }
}

TEST_CASE("dualize agrees with the dual node")
{
    std::mt19937_64 rng(16);
    const char* exprs[] = {"gamma(2).gl", "tw(1, gamma(2).gl)", "hom(gamma(2), sym(2))", "proj(2,1,2,1)",
                           "tensor(gl, lambda(2).gl)", "param(gamma(2).gl, k(2))", "inj(1,2,1,1)"};
    for (uint32_t p : {2u, 3u})
        for (const char* s : exprs) {
            INFO(std::string(s) << " p=" << p);
            auto e = parse_bifunctor(s);
            auto a = compile(bx::dual(e), p);
            auto b = compile(dualize(e), p);
            auto [dl, dr] = bidegree(e, p);
            uint32_t n = static_cast<uint32_t>(dl), m = static_cast<uint32_t>(dr);
            REQUIRE(a->basis(n, m).size == b->basis(n, m).size);
            CHECK(a->basis(n, m).wl == b->basis(n, m).wl);
            CHECK(a->basis(n, m).wr == b->basis(n, m).wr);
            for (auto& g : sample(all_monomials(dl, n, n), 6, rng))
                CHECK(action_matrix(*a, Side::Left, g, n, m) == action_matrix(*b, Side::Left, g, n, m));
            for (auto& g : sample(all_monomials(dr, m, m), 6, rng))
                CHECK(action_matrix(*a, Side::Right, g, n, m) == action_matrix(*b, Side::Right, g, n, m));
            CHECK(equal(dualize(dualize(e)), e));
        }
    CHECK(to_string(dualize(parse_bifunctor("gamma(2).gl"))) == "sym(2).gl");
}

TEST_CASE("gl as a hom bifunctor")
{
    std::mt19937_64 rng(17);
    auto a = compile(parse_bifunctor("gl"), 3);
    auto b = compile(parse_bifunctor("hom(id, id)"), 3);
    for (auto side : {Side::Left, Side::Right})
        for (auto& g : all_monomials(1, 3, 3))
            CHECK(action_matrix(*a, side, g, 3, 3) == action_matrix(*b, side, g, 3, 3));
}

TEST_CASE("left and right actions commute")
{
    std::mt19937_64 rng(18);
    for (const char* s : {"gamma(2).gl", "proj(2,1,2,1)", "tw(1, gl)", "param(gl, E(1))", "tensor(gl, gl)"}) {
        uint32_t p = 2;
        auto node = compile(parse_bifunctor(s), p);
        uint32_t n = node->deg_left(), m = node->deg_right();
        for (int rep = 0; rep < 6; ++rep) {
            auto x = sample(all_monomials(n, n, n), 1, rng)[0];
            auto y = sample(all_monomials(m, m, m), 1, rng)[0];
            FpMatrix l = action_matrix(*node, Side::Left, x, n, m);
            FpMatrix r = action_matrix(*node, Side::Right, y, n, m);
            CHECK(multiply(l, r) == multiply(r, l));
        }
    }
}

TEST_CASE("parser round trip and errors")
{
    for (const char* s : {"gl", "gamma(2).gl", "tw(1, gamma(2).gl)", "hom(sym(2), gamma(2))", "proj(2,1,2,1)",
                          "inj(1,2,1,3)", "tensor(gl, tw(1, gl))", "dual(lambda(2).gl)", "param(gamma(2).gl, E(1))",
                          "tensor(id, otimes(2)).gl"}) {
        auto e = parse_bifunctor(s);
        CHECK(equal(parse_bifunctor(to_string(e)), e));
    }
    for (const char* s : {"id", "tw(2, sym(3))", "uparam(gamma(2), k(3))", "dual(tensor(id, lambda(2)))"}) {
        auto e = parse_functor(s);
        CHECK(equal(parse_functor(to_string(e)), e));
    }
    CHECK(bidegree(parse_bifunctor("tw(1, gamma(2).gl)"), 2) == std::pair<uint64_t, uint64_t>{4, 4});
    CHECK(bidegree(parse_bifunctor("proj(2,1,3,1)"), 3) == std::pair<uint64_t, uint64_t>{2, 3});
    for (const char* s : {"", "gamma(", "gamma(x).gl", "foo(2)", "tensor(gl)", "gl gl", "param(gl, E(0))",
                          "hom(gl, id)", "gamma(2)"})
        CHECK_THROWS_AS(parse_bifunctor(s), ParseError);
}
