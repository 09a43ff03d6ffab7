#include "spf/sparse.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace spf {

void sparse_axpy(const Fp& f, SparseVec& y, const SparseVec& x, uint32_t c)
{
    if (c == 0 || x.empty())
        return;
    SparseVec out;
    out.reserve(y.size() + x.size());
    size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].first < y[i].first) {
            out.emplace_back(x[j].first, f.mul(c, x[j].second));
            ++j;
        } else {
            uint32_t v = f.add(y[i].second, f.mul(c, x[j].second));
            if (v)
                out.emplace_back(y[i].first, v);
            ++i;
            ++j;
        }
    }
    y.swap(out);
}

SparseVec sparse_from_dense(const Vec& v)
{
    SparseVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i])
            s.emplace_back(static_cast<uint32_t>(i), v[i]);
    return s;
}

Vec sparse_to_dense(const SparseVec& v, size_t dim)
{
    Vec d(dim, 0);
    for (auto [i, x] : v)
        d[i] = x;
    return d;
}

SparseVec sparse_normalize(const Fp& f, std::vector<std::pair<uint32_t, uint32_t>> terms)
{
    std::sort(terms.begin(), terms.end(), [](auto& a, auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto [i, v] : terms) {
        v %= f.p();
        if (!out.empty() && out.back().first == i) {
            out.back().second = f.add(out.back().second, v);
            if (out.back().second == 0)
                out.pop_back();
        } else if (v) {
            out.emplace_back(i, v);
        }
    }
    return out;
}

SparseMatrix SparseMatrix::from_dense(const FpMatrix& a)
{
    SparseMatrix s(a.p(), a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = a.first_nonzero(i); j < a.cols(); j = a.first_nonzero(i, j + 1))
            s.data_[j].emplace_back(static_cast<uint32_t>(i), a.at(i, j));
    return s;
}

size_t SparseMatrix::nnz() const
{
    size_t n = 0;
    for (auto& c : data_)
        n += c.size();
    return n;
}

double SparseMatrix::density() const
{
    if (rows_ == 0 || cols_ == 0)
        return 0.0;
    return double(nnz()) / (double(rows_) * double(cols_));
}

FpMatrix SparseMatrix::to_dense() const
{
    FpMatrix d(p_, rows_, cols_);
    for (size_t j = 0; j < cols_; ++j)
        for (auto [i, v] : data_[j])
            d.set(i, j, v);
    return d;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const
{
    const Fp& f = field(p_);
    std::vector<std::pair<uint32_t, uint32_t>> terms;
    for (auto [j, xv] : x)
        for (auto [i, v] : data_[j])
            terms.emplace_back(i, f.mul(v, xv));
    return sparse_normalize(f, std::move(terms));
}

SparseMatrix SparseMatrix::compose(const SparseMatrix& b) const
{
    if (cols_ != b.rows_)
        throw std::invalid_argument("incompatible sparse matrices");
    SparseMatrix c(p_, rows_, b.cols_);
    for (size_t j = 0; j < b.cols_; ++j)
        c.data_[j] = apply(b.data_[j]);
    return c;
}

SparseMatrix SparseMatrix::transposed() const
{
    SparseMatrix t(p_, cols_, rows_);
    for (size_t j = 0; j < cols_; ++j)
        for (auto [i, v] : data_[j])
            t.data_[i].emplace_back(static_cast<uint32_t>(j), v);
    return t;
}

// Column reduction with lowest-index pivots; each reduced column stores the combination that produced it.
namespace {

struct SparseReduction {
    std::vector<SparseVec> reduced;
    std::vector<SparseVec> combos;
    std::vector<SparseVec> kernel;
};

SparseReduction reduce_columns(const SparseMatrix& a)
{
    const Fp& f = field(a.p());
    SparseReduction out;
    std::map<uint32_t, size_t> pivot_of;
    for (size_t j = 0; j < a.cols(); ++j) {
        SparseVec v = a.col(j);
        SparseVec comb{{static_cast<uint32_t>(j), 1}};
        while (!v.empty()) {
            auto it = pivot_of.find(v.front().first);
            if (it == pivot_of.end())
                break;
            const SparseVec& r = out.reduced[it->second];
            uint32_t c = f.neg(f.mul(v.front().second, f.inv(r.front().second)));
            sparse_axpy(f, v, r, c);
            sparse_axpy(f, comb, out.combos[it->second], c);
        }
        if (v.empty()) {
            out.kernel.push_back(std::move(comb));
        } else {
            pivot_of[v.front().first] = out.reduced.size();
            out.reduced.push_back(std::move(v));
            out.combos.push_back(std::move(comb));
        }
    }
    return out;
}

} // namespace

size_t rank(const SparseMatrix& a, double threshold)
{
    if (a.density() >= threshold)
        return rank(a.to_dense());
    return reduce_columns(a).reduced.size();
}

FpMatrix kernel_basis(const SparseMatrix& a, double threshold)
{
    if (a.density() >= threshold)
        return kernel_basis(a.to_dense());
    auto red = reduce_columns(a);
    FpMatrix k(a.p(), a.cols(), red.kernel.size());
    for (size_t c = 0; c < red.kernel.size(); ++c)
        for (auto [i, v] : red.kernel[c])
            k.set(i, c, v);
    return k;
}

} // namespace spf
