#include <doctest.h>

#include "spf/schur.hpp"

#include <random>

using namespace spf;

namespace {

size_t rad_total(const SchurSide& s)
{
    size_t t = 0;
    uint32_t W = static_cast<uint32_t>(s.weights().size());
    for (uint32_t i = 0; i < W; ++i)
        for (uint32_t j = 0; j < W; ++j)
            t += s.radical(i, j).rows();
    return t;
}

size_t algebra_dim(const SchurSide& s)
{
    size_t t = 0;
    uint32_t W = static_cast<uint32_t>(s.weights().size());
    for (uint32_t i = 0; i < W; ++i)
        for (uint32_t j = 0; j < W; ++j)
            t += s.monos(i, j).size();
    return t;
}

size_t semisimple_dim(const SchurSide& s)
{
    size_t t = 0;
    uint32_t W = static_cast<uint32_t>(s.weights().size());
    for (uint32_t l = 0; l < W; ++l) {
        size_t e = 0;
        for (uint32_t v = 0; v < W; ++v)
            e += s.simple_dim(l, v);
        t += e * e;
    }
    return t;
}

} // namespace

TEST_CASE("dominant weights and corner algebra size")
{
    SchurSide s(2, 2, 2, SchurSide::Kind::Dominant);
    REQUIRE(s.weights().size() == 2);
    CHECK(s.weights()[0] == Composition{2, 0});
    CHECK(algebra_dim(s) == 5);
    SchurSide full(2, 2, 2, SchurSide::Kind::Full);
    CHECK(full.weights().size() == 3);
    CHECK(algebra_dim(full) == 10);
    SchurSide s4(2, 4, 4, SchurSide::Kind::Dominant);
    CHECK(s4.weights().size() == 5);
    size_t col1111 = 0;
    for (uint32_t i = 0; i < 5; ++i)
        col1111 += s4.monos(i, 4).size();
    CHECK(col1111 == 47);
}

TEST_CASE("simple modules in small degree")
{
    SchurSide s(2, 2, 2, SchurSide::Kind::Dominant);
    CHECK(s.simple_dim(0, 0) == 1);
    CHECK(s.simple_dim(0, 1) == 0);
    CHECK(s.simple_dim(1, 1) == 1);
    SchurSide t(3, 2, 2, SchurSide::Kind::Dominant);
    CHECK(t.simple_dim(0, 1) == 1);
    SchurSide u(3, 3, 3, SchurSide::Kind::Dominant);
    // L(2,1) at p = 3 has the weight (1,1,1) with multiplicity 1
    CHECK(u.simple_dim(1, 2) == 1);
    CHECK(u.simple_dim(0, 2) == 0);
}

TEST_CASE("radical dimension equals algebra minus semisimple quotient")
{
    for (auto [p, d] : {std::pair{2u, 2u}, {3u, 2u}, {5u, 2u}, {2u, 3u}, {3u, 3u}, {5u, 3u}, {2u, 4u}, {3u, 4u}}) {
        INFO("p=" << p << " d=" << d);
        SchurSide s(p, d, d, SchurSide::Kind::Dominant);
        CHECK(rad_total(s) == algebra_dim(s) - semisimple_dim(s));
        if (p > d)
            CHECK(rad_total(s) == 0);
    }
}

TEST_CASE("radical is a two-sided ideal")
{
    std::mt19937_64 rng(3);
    for (auto [p, d] : {std::pair{2u, 3u}, {3u, 3u}, {2u, 4u}}) {
        SchurSide s(p, d, d, SchurSide::Kind::Dominant);
        uint32_t W = static_cast<uint32_t>(s.weights().size());
        const Fp& f = s.fp();
        std::uniform_int_distribution<uint32_t> pick(0, W - 1);
        for (int rep = 0; rep < 40; ++rep) {
            uint32_t i = pick(rng), j = pick(rng), k = pick(rng);
            const FpMatrix& R = s.radical(j, k);
            if (R.rows() == 0 || s.monos(i, j).empty())
                continue;
            std::uniform_int_distribution<uint32_t> pa(0, static_cast<uint32_t>(s.monos(i, j).size() - 1));
            uint32_t a = pa(rng);
            // a * r for each radical row r, expanded in monos(i,k)
            for (size_t r = 0; r < R.rows(); ++r) {
                LinComb lc;
                for (uint32_t b = 0; b < R.cols(); ++b)
                    if (R.at(r, b))
                        for (auto& [m, c] : schur_product(f, s.monos(i, j)[a], s.monos(j, k)[b]))
                            lc_add(f, lc, m, f.mul(c, R.at(r, b)));
                Vec v(s.monos(i, k).size(), 0);
                for (auto& [m, c] : lc)
                    v[s.mono_index(i, k, m)] = c;
                const FpMatrix& T = s.radical(i, k);
                FpMatrix stacked = vstack(T, FpMatrix::from_rows(p, {v}));
                CHECK(rank(stacked) == T.rows());
            }
        }
    }
}

TEST_CASE("left multiplication is associative")
{
    SchurSide s(3, 3, 3, SchurSide::Kind::Full);
    uint32_t W = static_cast<uint32_t>(s.weights().size());
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<uint32_t> pick(0, W - 1);
    for (int rep = 0; rep < 30; ++rep) {
        uint32_t i = pick(rng), j = pick(rng), k = pick(rng), l = 0;
        if (s.monos(i, j).empty() || s.monos(j, k).empty())
            continue;
        for (uint32_t a = 0; a < s.monos(i, j).size(); ++a)
            for (uint32_t b = 0; b < std::min<size_t>(3, s.monos(j, k).size()); ++b) {
                FpMatrix lhs = multiply(s.left_mult(i, j, a, l), s.left_mult(j, k, b, l));
                FpMatrix rhs(3, lhs.rows(), lhs.cols());
                for (auto& [m, c] : schur_product(s.fp(), s.monos(i, j)[a], s.monos(j, k)[b]))
                    rhs = add(rhs, scale(s.left_mult(i, k, s.mono_index(i, k, m), l), c));
                CHECK(lhs == rhs);
            }
    }
}
