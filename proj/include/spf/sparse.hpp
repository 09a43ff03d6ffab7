#pragma once

#include "spf/fp_matrix.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace spf {

// Sorted (index, value) list with nonzero values.
using SparseVec = std::vector<std::pair<uint32_t, uint32_t>>;

void sparse_axpy(const Fp& f, SparseVec& y, const SparseVec& x, uint32_t c);
SparseVec sparse_from_dense(const Vec& v);
Vec sparse_to_dense(const SparseVec& v, size_t dim);
// Accumulate unordered (index, value) terms into a canonical SparseVec.
SparseVec sparse_normalize(const Fp& f, std::vector<std::pair<uint32_t, uint32_t>> terms);

// Compressed column storage.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(uint32_t p, size_t rows, size_t cols) : p_(p), rows_(rows), cols_(cols), data_(cols) {}

    static SparseMatrix from_dense(const FpMatrix& a);

    uint32_t p() const { return p_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const SparseVec& col(size_t j) const { return data_[j]; }
    SparseVec& col(size_t j) { return data_[j]; }
    size_t nnz() const;
    double density() const;
    FpMatrix to_dense() const;

    SparseVec apply(const SparseVec& x) const;
    SparseMatrix compose(const SparseMatrix& b) const;   // this * b
    SparseMatrix transposed() const;
    bool operator==(const SparseMatrix& o) const = default;

private:
    uint32_t p_ = 2;
    size_t rows_ = 0, cols_ = 0;
    std::vector<SparseVec> data_;
};

inline constexpr double kDenseThreshold = 0.20;

// Rank and kernel with automatic dense/sparse dispatch by density.
size_t rank(const SparseMatrix& a, double threshold = kDenseThreshold);
FpMatrix kernel_basis(const SparseMatrix& a, double threshold = kDenseThreshold);

} // namespace spf
