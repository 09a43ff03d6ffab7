#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "spf/fp_matrix.hpp"

namespace oracle {

using Rows = std::vector<std::vector<int64_t>>;

inline int64_t md(int64_t a, int64_t p) { return ((a % p) + p) % p; }

inline int64_t inv_mod(int64_t a, int64_t p)
{
    int64_t r = 1, e = p - 2;
    a = md(a, p);
    while (e) {
        if (e & 1)
            r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

// Full-pivot elimination on a plain integer table, no shared code with the library.
inline size_t naive_rank(Rows a, int64_t p)
{
    size_t r = 0;
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<char> used_col(cols, 0);
    while (r < rows) {
        size_t pi = rows, pj = cols;
        for (size_t i = r; i < rows && pi == rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                if (!used_col[j] && md(a[i][j], p)) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == rows)
            break;
        std::swap(a[r], a[pi]);
        used_col[pj] = 1;
        int64_t iv = inv_mod(a[r][pj], p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || md(a[i][pj], p) == 0)
                continue;
            int64_t c = md(a[i][pj], p) * iv % p;
            for (size_t j = 0; j < cols; ++j)
                a[i][j] = md(a[i][j] - c * a[r][j], p);
        }
        ++r;
    }
    return r;
}

inline Rows to_rows(const spf::FpMatrix& m)
{
    Rows r(m.rows(), std::vector<int64_t>(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            r[i][j] = m.at(i, j);
    return r;
}

inline spf::FpMatrix random_matrix(std::mt19937_64& g, uint32_t p, size_t rows, size_t cols, double density = 1.0)
{
    spf::FpMatrix m(p, rows, cols);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<uint32_t> v(1, p - 1);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            if (u(g) < density)
                m.set(i, j, v(g));
    return m;
}

} // namespace oracle

namespace oracle {

// Plain matrix of the unit E_{st} : k^a -> k^b.
inline Rows unit(uint32_t s, uint32_t t, uint32_t a, uint32_t b)
{
    Rows m(b, std::vector<int64_t>(a, 0));
    m[s][t] = 1;
    return m;
}

inline Rows naive_kron(const Rows& x, const Rows& y)
{
    size_t xr = x.size(), xc = xr ? x[0].size() : 0, yr = y.size(), yc = yr ? y[0].size() : 0;
    Rows r(xr * yr, std::vector<int64_t>(xc * yc, 0));
    for (size_t i = 0; i < xr; ++i)
        for (size_t j = 0; j < xc; ++j)
            for (size_t k = 0; k < yr; ++k)
                for (size_t l = 0; l < yc; ++l)
                    r[i * yr + k][j * yc + l] = x[i][j] * y[k][l];
    return r;
}

// Tensor power action: sum over distinct orderings of the multiset of units of the Kronecker products.
inline Rows tensor_power_action(const std::vector<std::array<uint32_t, 3>>& units, uint32_t a, uint32_t b, int64_t p)
{
    std::vector<std::pair<uint32_t, uint32_t>> seq;
    for (auto& u : units)
        for (uint32_t k = 0; k < u[2]; ++k)
            seq.push_back({u[0], u[1]});
    std::sort(seq.begin(), seq.end());
    size_t d = seq.size();
    size_t rows = 1, cols = 1;
    for (size_t i = 0; i < d; ++i) {
        rows *= b;
        cols *= a;
    }
    Rows total(rows, std::vector<int64_t>(cols, 0));
    do {
        Rows acc{{1}};
        for (auto [s, t] : seq)
            acc = naive_kron(acc, unit(s, t, a, b));
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                total[i][j] = md(total[i][j] + acc[i][j], p);
    } while (std::next_permutation(seq.begin(), seq.end()));
    return total;
}

} // namespace oracle
