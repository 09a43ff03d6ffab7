#pragma once

#include "spf/fp_matrix.hpp"
#include "spf/monomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

namespace spf {

// One tensor factor of the Schur algebra S(N,d) = Gamma^d End(k^N), restricted to a set of weights.
// Dominant: partitions of d (the Morita-equivalent corner e S e). Full: all compositions of d.
class SchurSide {
public:
    enum class Kind { Dominant, Full };

    SchurSide(uint32_t p, uint32_t d, uint32_t N, Kind kind);

    uint32_t p() const { return p_; }
    uint32_t degree() const { return d_; }
    uint32_t dim() const { return N_; }
    Kind kind() const { return kind_; }
    const Fp& fp() const { return f_; }

    const std::vector<Composition>& weights() const { return weights_; }
    std::optional<uint32_t> weight_index(const Composition& w) const;
    bool is_dominant(uint32_t i) const { return is_partition(weights_[i]); }

    // Monomials with row sums weights[i] and column sums weights[j].
    const std::vector<Mono>& monos(uint32_t i, uint32_t j) const;
    uint32_t mono_index(uint32_t i, uint32_t j, const Mono& m) const;

    // Left multiplication by monos(i,j)[a] on the projective S xi_l, from row block j to row block i.
    const FpMatrix& left_mult(uint32_t i, uint32_t j, uint32_t a, uint32_t l) const;

    // Rows span rad(S) restricted to xi_i S xi_j, in the coordinates of monos(i,j). Dominant kind only.
    const FpMatrix& radical(uint32_t i, uint32_t j) const;

    // Dimension of the weight-nu space of the simple module L(lambda), both given as weight indices.
    size_t simple_dim(uint32_t lambda, uint32_t nu) const;

private:
    struct Simple {
        std::vector<FpMatrix> basis;   // per weight index: columns spanning L_nu inside S^lambda(k^N)
        std::vector<std::vector<uint32_t>> coords;   // per weight index: S^lambda basis indices of that weight
    };
    const Simple& simple(uint32_t lambda) const;
    void compute_radical() const;

    uint32_t p_, d_, N_;
    Kind kind_;
    const Fp& f_;
    std::vector<Composition> weights_;
    std::map<Composition, uint32_t> windex_;

    mutable std::recursive_mutex mu_;
    mutable std::map<std::pair<uint32_t, uint32_t>, std::vector<Mono>> monos_;
    mutable std::map<std::pair<uint32_t, uint32_t>, std::map<Mono, uint32_t>> mindex_;
    mutable std::map<std::tuple<uint32_t, uint32_t, uint32_t, uint32_t>, std::unique_ptr<FpMatrix>> mult_;
    mutable std::map<uint32_t, std::unique_ptr<Simple>> simples_;
    mutable std::map<std::pair<uint32_t, uint32_t>, FpMatrix> rad_;
    mutable bool rad_done_ = false;
};

using SidePtr = std::shared_ptr<const SchurSide>;

SidePtr make_side(uint32_t p, uint32_t d, uint32_t N, SchurSide::Kind kind);

} // namespace spf
