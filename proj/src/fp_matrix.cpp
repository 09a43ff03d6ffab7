#include "spf/fp_matrix.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace spf {

const Fp& field(uint32_t p)
{
    static std::mutex mu;
    static std::map<uint32_t, std::unique_ptr<Fp>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[p];
    if (!slot) {
        try {
            slot = std::make_unique<Fp>(p);
        } catch (...) {
            cache.erase(p);
            throw;
        }
    }
    return *slot;
}

FpMatrix::FpMatrix(uint32_t p, size_t rows, size_t cols) : f_(&field(p)), rows_(rows), cols_(cols)
{
    if (p == 2) {
        words_ = (cols + 63) / 64;
        bits_.assign(rows * words_, 0);
    } else {
        vals_.assign(rows * cols, 0);
    }
}

FpMatrix FpMatrix::identity(uint32_t p, size_t n)
{
    FpMatrix m(p, n, n);
    for (size_t i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::from_rows(uint32_t p, const std::vector<std::vector<uint32_t>>& rows)
{
    size_t c = rows.empty() ? 0 : rows[0].size();
    FpMatrix m(p, rows.size(), c);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c)
            throw std::invalid_argument("ragged rows");
        for (size_t j = 0; j < c; ++j)
            m.set(i, j, rows[i][j] % p);
    }
    return m;
}

FpMatrix FpMatrix::from_columns(uint32_t p, size_t rows, const std::vector<Vec>& cols)
{
    FpMatrix m(p, rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < rows; ++i)
            if (cols[j][i])
                m.set(i, j, cols[j][i] % p);
    return m;
}

void FpMatrix::set(size_t i, size_t j, uint32_t v)
{
    if (binary()) {
        uint64_t& w = bits_[i * words_ + (j >> 6)];
        uint64_t mask = uint64_t(1) << (j & 63);
        w = (v & 1) ? (w | mask) : (w & ~mask);
    } else {
        vals_[i * cols_ + j] = static_cast<uint16_t>(v);
    }
}

void FpMatrix::add_to(size_t i, size_t j, uint32_t v)
{
    if (binary()) {
        if (v & 1)
            bits_[i * words_ + (j >> 6)] ^= uint64_t(1) << (j & 63);
    } else {
        uint16_t& e = vals_[i * cols_ + j];
        e = static_cast<uint16_t>(f_->add(e, v % f_->p()));
    }
}

Vec FpMatrix::row(size_t i) const
{
    Vec r(cols_);
    for (size_t j = 0; j < cols_; ++j)
        r[j] = at(i, j);
    return r;
}

Vec FpMatrix::column(size_t j) const
{
    Vec c(rows_);
    for (size_t i = 0; i < rows_; ++i)
        c[i] = at(i, j);
    return c;
}

bool FpMatrix::is_zero() const
{
    for (uint64_t w : bits_)
        if (w)
            return false;
    for (uint16_t v : vals_)
        if (v)
            return false;
    return true;
}

bool FpMatrix::operator==(const FpMatrix& o) const
{
    return p() == o.p() && rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_ && vals_ == o.vals_;
}

void FpMatrix::swap_rows(size_t a, size_t b)
{
    if (a == b)
        return;
    if (binary()) {
        for (size_t w = 0; w < words_; ++w)
            std::swap(bits_[a * words_ + w], bits_[b * words_ + w]);
    } else {
        for (size_t j = 0; j < cols_; ++j)
            std::swap(vals_[a * cols_ + j], vals_[b * cols_ + j]);
    }
}

void FpMatrix::scale_row(size_t i, uint32_t c)
{
    if (binary()) {
        if ((c & 1) == 0)
            clear_row(i);
        return;
    }
    uint16_t* r = &vals_[i * cols_];
    for (size_t j = 0; j < cols_; ++j)
        r[j] = static_cast<uint16_t>(f_->mul(r[j], c));
}

void FpMatrix::axpy_row(size_t dst, size_t src, uint32_t c, size_t from)
{
    axpy_from(dst, *this, src, c, from);
}

void FpMatrix::axpy_from(size_t dst, const FpMatrix& src, size_t srow, uint32_t c, size_t from)
{
    if (binary()) {
        if ((c & 1) == 0)
            return;
        uint64_t* d = &bits_[dst * words_];
        const uint64_t* s = &src.bits_[srow * src.words_];
        for (size_t w = from >> 6; w < words_; ++w)
            d[w] ^= s[w];
        return;
    }
    if (c == 0)
        return;
    uint32_t p = f_->p();
    uint16_t* d = &vals_[dst * cols_];
    const uint16_t* s = &src.vals_[srow * src.cols_];
    for (size_t j = from; j < cols_; ++j)
        if (s[j])
            d[j] = static_cast<uint16_t>((d[j] + c * s[j]) % p);
}

size_t FpMatrix::first_nonzero(size_t i, size_t from) const
{
    if (binary()) {
        const uint64_t* r = &bits_[i * words_];
        size_t w = from >> 6;
        if (w >= words_)
            return cols_;
        uint64_t cur = r[w] & (~uint64_t(0) << (from & 63));
        while (true) {
            if (cur) {
                size_t j = w * 64 + std::countr_zero(cur);
                return j < cols_ ? j : cols_;
            }
            if (++w >= words_)
                return cols_;
            cur = r[w];
        }
    }
    const uint16_t* r = &vals_[i * cols_];
    for (size_t j = from; j < cols_; ++j)
        if (r[j])
            return j;
    return cols_;
}

size_t FpMatrix::append_row(const Vec& v)
{
    size_t i = rows_++;
    if (binary())
        bits_.resize(rows_ * words_, 0);
    else
        vals_.resize(rows_ * cols_, 0);
    set_row(i, v);
    return i;
}

void FpMatrix::set_row(size_t i, const Vec& v)
{
    if (v.size() != cols_)
        throw std::invalid_argument("row length mismatch");
    clear_row(i);
    for (size_t j = 0; j < cols_; ++j)
        if (v[j] % f_->p())
            set(i, j, v[j] % f_->p());
}

void FpMatrix::clear_row(size_t i)
{
    if (binary())
        std::fill(bits_.begin() + i * words_, bits_.begin() + (i + 1) * words_, 0);
    else
        std::fill(vals_.begin() + i * cols_, vals_.begin() + (i + 1) * cols_, 0);
}

Vec FpMatrix::apply(const Vec& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("dimension mismatch in apply");
    Vec y(rows_, 0);
    for (size_t i = 0; i < rows_; ++i) {
        uint64_t acc = 0;
        for (size_t j = first_nonzero(i); j < cols_; j = first_nonzero(i, j + 1))
            acc += uint64_t(at(i, j)) * x[j];
        y[i] = static_cast<uint32_t>(acc % p());
    }
    return y;
}

Rref rref(const FpMatrix& a)
{
    Rref out{a, {}, 0};
    FpMatrix& r = out.r;
    const Fp& f = r.fp();
    size_t row = 0;
    for (size_t c = 0; c < r.cols() && row < r.rows(); ++c) {
        size_t piv = r.rows();
        for (size_t i = row; i < r.rows(); ++i)
            if (r.at(i, c)) {
                piv = i;
                break;
            }
        if (piv == r.rows())
            continue;
        r.swap_rows(row, piv);
        uint32_t lead = r.at(row, c);
        if (lead != 1)
            r.scale_row(row, f.inv(lead));
        for (size_t i = 0; i < r.rows(); ++i) {
            if (i == row)
                continue;
            uint32_t v = r.at(i, c);
            if (v)
                r.axpy_row(i, row, f.neg(v), c);
        }
        out.pivots.push_back(c);
        ++row;
    }
    out.rank = row;
    return out;
}

size_t rank(const FpMatrix& a)
{
    EchelonSpace e(a.p(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        e.insert(a.row(i));
    return e.rank();
}

FpMatrix kernel_basis(const FpMatrix& a)
{
    Rref rr = rref(a);
    std::vector<char> is_pivot(a.cols(), 0);
    for (size_t c : rr.pivots)
        is_pivot[c] = 1;
    const Fp& f = a.fp();
    FpMatrix k(a.p(), a.cols(), a.cols() - rr.rank);
    size_t col = 0;
    for (size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free])
            continue;
        k.set(free, col, 1);
        for (size_t i = 0; i < rr.rank; ++i) {
            uint32_t v = rr.r.at(i, free);
            if (v)
                k.set(rr.pivots[i], col, f.neg(v));
        }
        ++col;
    }
    return k;
}

FpMatrix image_basis(const FpMatrix& a)
{
    Rref rr = rref(a);
    return select_columns(a, rr.pivots);
}

std::optional<Vec> solve(const FpMatrix& a, const Vec& b)
{
    if (b.size() != a.rows())
        throw std::invalid_argument("dimension mismatch in solve");
    FpMatrix aug(a.p(), a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = a.first_nonzero(i); j < a.cols(); j = a.first_nonzero(i, j + 1))
            aug.set(i, j, a.at(i, j));
        aug.set(i, a.cols(), b[i] % a.p());
    }
    Rref rr = rref(aug);
    if (!rr.pivots.empty() && rr.pivots.back() == a.cols())
        return std::nullopt;
    Vec x(a.cols(), 0);
    for (size_t i = 0; i < rr.rank; ++i)
        x[rr.pivots[i]] = rr.r.at(i, a.cols());
    return x;
}

FpMatrix transpose(const FpMatrix& a)
{
    FpMatrix t(a.p(), a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = a.first_nonzero(i); j < a.cols(); j = a.first_nonzero(i, j + 1))
            t.set(j, i, a.at(i, j));
    return t;
}

FpMatrix multiply(const FpMatrix& a, const FpMatrix& b)
{
    if (a.p() != b.p() || a.cols() != b.rows())
        throw std::invalid_argument("incompatible matrices in multiply");
    FpMatrix c(a.p(), a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = a.first_nonzero(i); k < a.cols(); k = a.first_nonzero(i, k + 1))
            c.axpy_from(i, b, k, a.at(i, k));
    return c;
}

FpMatrix add(const FpMatrix& a, const FpMatrix& b)
{
    if (a.p() != b.p() || a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("incompatible matrices in add");
    FpMatrix c = a;
    for (size_t i = 0; i < a.rows(); ++i)
        c.axpy_from(i, b, i, 1);
    return c;
}

FpMatrix scale(const FpMatrix& a, uint32_t c)
{
    FpMatrix s = a;
    for (size_t i = 0; i < a.rows(); ++i)
        s.scale_row(i, c % a.p());
    return s;
}

FpMatrix kron(const FpMatrix& a, const FpMatrix& b)
{
    if (a.p() != b.p())
        throw std::invalid_argument("modulus mismatch in kron");
    const Fp& f = a.fp();
    FpMatrix k(a.p(), a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = a.first_nonzero(i); j < a.cols(); j = a.first_nonzero(i, j + 1)) {
            uint32_t x = a.at(i, j);
            for (size_t u = 0; u < b.rows(); ++u)
                for (size_t v = b.first_nonzero(u); v < b.cols(); v = b.first_nonzero(u, v + 1))
                    k.set(i * b.rows() + u, j * b.cols() + v, f.mul(x, b.at(u, v)));
        }
    return k;
}

FpMatrix hstack(const FpMatrix& a, const FpMatrix& b)
{
    if (a.p() != b.p() || a.rows() != b.rows())
        throw std::invalid_argument("incompatible matrices in hstack");
    FpMatrix c(a.p(), a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = a.first_nonzero(i); j < a.cols(); j = a.first_nonzero(i, j + 1))
            c.set(i, j, a.at(i, j));
        for (size_t j = b.first_nonzero(i); j < b.cols(); j = b.first_nonzero(i, j + 1))
            c.set(i, a.cols() + j, b.at(i, j));
    }
    return c;
}

FpMatrix vstack(const FpMatrix& a, const FpMatrix& b)
{
    if (a.p() != b.p() || a.cols() != b.cols())
        throw std::invalid_argument("incompatible matrices in vstack");
    FpMatrix c(a.p(), a.rows() + b.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        c.axpy_from(i, a, i, 1);
    for (size_t i = 0; i < b.rows(); ++i)
        c.axpy_from(a.rows() + i, b, i, 1);
    return c;
}

FpMatrix select_columns(const FpMatrix& a, const std::vector<size_t>& cols)
{
    FpMatrix s(a.p(), a.rows(), cols.size());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < cols.size(); ++k)
            if (uint32_t v = a.at(i, cols[k]))
                s.set(i, k, v);
    return s;
}

// ---------------------------------------------------------------------------
// EchelonSpace

EchelonSpace::EchelonSpace(uint32_t p, size_t dim, size_t track_capacity)
    : p_(p), dim_(dim), cap_(track_capacity), rows_(p, 0, dim), comb_(p, 0, track_capacity)
{
}

void EchelonSpace::reduce_row(FpMatrix& work, FpMatrix* comb) const
{
    const Fp& f = field(p_);
    for (size_t i = 0; i < pivots_.size(); ++i) {
        uint32_t v = work.at(0, pivots_[i]);
        if (!v)
            continue;
        work.axpy_from(0, rows_, i, f.neg(v));
        if (comb)
            comb->axpy_from(0, comb_, i, f.neg(v));
    }
}

bool EchelonSpace::insert(const Vec& v)
{
    FpMatrix work(p_, 0, dim_);
    work.append_row(v);
    FpMatrix comb(p_, 1, cap_);
    bool tracking = cap_ > 0;
    if (tracking) {
        if (inserted_ >= cap_)
            throw std::length_error("EchelonSpace tracking capacity exceeded");
        comb.set(0, inserted_, 1);
    }
    ++inserted_;
    reduce_row(work, tracking ? &comb : nullptr);
    size_t lead = work.first_nonzero(0);
    if (lead == dim_) {
        if (tracking)
            relations_.push_back(comb.row(0));
        return false;
    }
    uint32_t inv = field(p_).inv(work.at(0, lead));
    work.scale_row(0, inv);
    rows_.append_row(work.row(0));
    if (tracking) {
        comb.scale_row(0, inv);
        comb_.append_row(comb.row(0));
    }
    pivots_.push_back(lead);
    return true;
}

Vec EchelonSpace::reduce(const Vec& v) const
{
    FpMatrix work(p_, 0, dim_);
    work.append_row(v);
    reduce_row(work, nullptr);
    return work.row(0);
}

bool EchelonSpace::contains(const Vec& v) const
{
    FpMatrix work(p_, 0, dim_);
    work.append_row(v);
    reduce_row(work, nullptr);
    return work.first_nonzero(0) == dim_;
}

std::optional<Vec> EchelonSpace::express(const Vec& v) const
{
    if (cap_ == 0)
        throw std::logic_error("EchelonSpace::express requires tracking");
    FpMatrix work(p_, 0, dim_);
    work.append_row(v);
    FpMatrix comb(p_, 1, cap_);
    reduce_row(work, &comb);
    if (work.first_nonzero(0) != dim_)
        return std::nullopt;
    const Fp& f = field(p_);
    Vec c = comb.row(0);
    for (auto& x : c)
        x = f.neg(x);
    c.resize(inserted_);
    return c;
}

} // namespace spf
