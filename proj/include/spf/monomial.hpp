#pragma once

#include "spf/field.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spf {

using Composition = std::vector<uint32_t>;

// Exponent a on the matrix unit E_{st} (e_t -> e_s).
struct Term {
    uint32_t s = 0, t = 0, a = 0;
    auto operator<=>(const Term&) const = default;
};

// Divided monomial prod gamma_{a_k}(E_{s_k t_k}) with terms sorted by (s,t), all exponents positive.
struct Mono {
    std::vector<Term> terms;

    uint32_t degree() const;
    Composition row_sums(uint32_t rows) const;
    Composition col_sums(uint32_t cols) const;
    Mono transposed() const;
    bool is_diagonal() const;
    std::string str() const;
    auto operator<=>(const Mono&) const = default;

    // Sorts and merges repeated units (exponents add without coefficients).
    static Mono from_terms(std::vector<Term> t);
};

struct MonoHash {
    size_t operator()(const Mono& m) const noexcept;
};

using LinComb = std::map<Mono, uint32_t>;

void lc_add(const Fp& f, LinComb& lc, const Mono& m, uint32_t c);

// gamma_a(u) gamma_b(u) = C(a+b,a) gamma_{a+b}(u); returns the product of two monomials in Gamma(Hom).
std::pair<Mono, uint32_t> gamma_product(const Fp& f, const Mono& x, const Mono& y);

// Gamma(L) for a linear map L on matrix units: gamma_a(sum c_i u_i) = sum over compositions of a.
using UnitImage = std::vector<std::pair<std::pair<uint32_t, uint32_t>, uint32_t>>;
LinComb expand(const Fp& f, const Mono& m, const std::function<UnitImage(uint32_t, uint32_t)>& image);

// Terms of the comultiplication Gamma^{d} -> Gamma^{d1} (x) Gamma^{d-d1} (coefficients are all 1).
std::vector<std::pair<Mono, Mono>> comultiply(const Mono& m, uint32_t d1);

// m = q * m' for the returned m', if every exponent is divisible by q.
std::optional<Mono> untwist(const Mono& m, uint32_t q);
Mono twist(const Mono& m, uint32_t q);

// Schur algebra product f o g (f after g).
LinComb schur_product(const Fp& f, const Mono& a, const Mono& b);
LinComb schur_product(const Fp& f, const LinComb& a, const LinComb& b);

// All nonnegative integer matrices with the given row and column sums.
std::vector<std::vector<std::vector<uint32_t>>> contingency_tables(const Composition& rows, const Composition& cols);

// Sum of gamma over all terms: gamma_d(id) expanded, i.e. the identity of Gamma^d End(k^n).
LinComb identity_element(const Fp& f, uint32_t d, uint32_t n);

// All divided monomials of degree d in Hom(k^a, k^b), in lexicographic order of their unit words.
std::vector<Mono> all_monomials(uint32_t d, uint32_t a, uint32_t b);

std::vector<Composition> compositions(uint32_t d, uint32_t parts);
// Partitions of d padded with zeros to the given length (parts larger than len are dropped).
std::vector<Composition> partitions(uint32_t d, uint32_t len);
bool is_partition(const Composition& c);

} // namespace spf
