#pragma once

#include "spf/field.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace spf {

using Vec = std::vector<uint32_t>;

const Fp& field(uint32_t p);

// Dense matrix over F_p. Rows are bit-packed for p = 2 and stored as 16-bit residues otherwise.
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(uint32_t p, size_t rows, size_t cols);

    static FpMatrix identity(uint32_t p, size_t n);
    static FpMatrix from_rows(uint32_t p, const std::vector<std::vector<uint32_t>>& rows);
    static FpMatrix from_columns(uint32_t p, size_t rows, const std::vector<Vec>& cols);

    uint32_t p() const { return f_ ? f_->p() : 0; }
    const Fp& fp() const { return *f_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool binary() const { return f_ && f_->p() == 2; }

    uint32_t at(size_t i, size_t j) const
    {
        if (binary())
            return (bits_[i * words_ + (j >> 6)] >> (j & 63)) & 1u;
        return vals_[i * cols_ + j];
    }
    void set(size_t i, size_t j, uint32_t v);
    void add_to(size_t i, size_t j, uint32_t v);

    Vec row(size_t i) const;
    Vec column(size_t j) const;
    bool is_zero() const;
    bool operator==(const FpMatrix& o) const;

    void swap_rows(size_t a, size_t b);
    void scale_row(size_t i, uint32_t c);
    // row dst += c * row src, touching only columns >= from
    void axpy_row(size_t dst, size_t src, uint32_t c, size_t from = 0);
    // row dst += c * (row srow of src), touching only columns >= from
    void axpy_from(size_t dst, const FpMatrix& src, size_t srow, uint32_t c, size_t from = 0);
    // first column >= from with a nonzero entry in row i, or cols()
    size_t first_nonzero(size_t i, size_t from = 0) const;
    size_t append_row(const Vec& v);
    void set_row(size_t i, const Vec& v);
    void clear_row(size_t i);

    Vec apply(const Vec& x) const;

private:
    const Fp* f_ = nullptr;
    size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<uint64_t> bits_;
    std::vector<uint16_t> vals_;
};

struct Rref {
    FpMatrix r;
    std::vector<size_t> pivots;
    size_t rank = 0;
};

Rref rref(const FpMatrix& a);
size_t rank(const FpMatrix& a);
FpMatrix kernel_basis(const FpMatrix& a);
FpMatrix image_basis(const FpMatrix& a);
std::optional<Vec> solve(const FpMatrix& a, const Vec& b);

FpMatrix transpose(const FpMatrix& a);
FpMatrix multiply(const FpMatrix& a, const FpMatrix& b);
FpMatrix add(const FpMatrix& a, const FpMatrix& b);
FpMatrix scale(const FpMatrix& a, uint32_t c);
FpMatrix kron(const FpMatrix& a, const FpMatrix& b);
FpMatrix hstack(const FpMatrix& a, const FpMatrix& b);
FpMatrix vstack(const FpMatrix& a, const FpMatrix& b);
FpMatrix select_columns(const FpMatrix& a, const std::vector<size_t>& cols);

// Incrementally built semi-echelon basis of a subspace of F_p^dim. Optionally records, for every
// stored row, its expression in terms of the inserted vectors.
class EchelonSpace {
public:
    // track_capacity > 0 enables tracking for up to that many inserted vectors.
    EchelonSpace(uint32_t p, size_t dim, size_t track_capacity = 0);

    size_t dim() const { return dim_; }
    size_t rank() const { return pivots_.size(); }
    const std::vector<size_t>& pivots() const { return pivots_; }

    // Returns true when v was independent of the stored span (and stores it).
    bool insert(const Vec& v);
    bool contains(const Vec& v) const;
    Vec reduce(const Vec& v) const;
    // Coefficients c with sum c_i inserted_i = v, or nullopt. Requires tracking.
    std::optional<Vec> express(const Vec& v) const;
    // Combinations of inserted vectors that vanished (kernel of the insertion map). Requires tracking.
    const std::vector<Vec>& relations() const { return relations_; }
    size_t inserted() const { return inserted_; }

private:
    void reduce_row(FpMatrix& work, FpMatrix* comb) const;

    uint32_t p_;
    size_t dim_;
    size_t cap_;
    size_t inserted_ = 0;
    FpMatrix rows_;
    FpMatrix comb_;
    std::vector<size_t> pivots_;
    std::vector<Vec> relations_;
};

} // namespace spf
