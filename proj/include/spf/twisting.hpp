#pragma once

#include "spf/resolution.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spf {

using Bigraded = std::map<std::pair<size_t, uint32_t>, size_t>;   // (s, t) -> dim, zero entries omitted

// E_2^{s,t}(B, r) = H^s_P(B^t_{E_r}) for s < degrees.
struct E2Page {
    uint32_t p = 0, r = 0;
    std::string expr;
    size_t degrees = 0;
    std::vector<uint32_t> t_values;   // degrees of the nonzero pieces
    Bigraded entries;
    bool complete = false;
    bool cache_hit = false;

    size_t at(size_t s, uint32_t t) const;
    size_t total() const;
    // sum over s + t = k for k < degrees
    std::vector<size_t> totals() const;
};

E2Page e2_page(const std::string& expr, uint32_t p, uint32_t r, size_t degrees);

struct TwistedCohomology {
    std::vector<size_t> dims;
    bool complete = false;
    bool cache_hit = false;
};

// H^s_P(B^{(r)}) for s < degrees, computed directly in degree p^r d.
TwistedCohomology twisted_cohomology(const std::string& expr, uint32_t p, uint32_t r, size_t degrees);

struct CollapseReport {
    E2Page e2;
    TwistedCohomology twisted;
    std::vector<size_t> lhs, rhs;   // per total degree
    std::optional<bool> euler;       // evaluated when both sides are complete
    bool pass = false;
    std::string note;
};

CollapseReport collapse_check(const std::string& expr, uint32_t p, uint32_t r, size_t degrees);

struct PoincareReport {
    uint32_t p = 0, d = 0;
    size_t degrees = 0;
    Bigraded table;         // H^{s>0}_P((Gamma^d gl)^t_{E_1})
    Bigraded closed_form;   // expansion of s(1 - s^{2p-2})/(1 - s) (1 - t^{4p^2})/(1 - t^{2p}) for d = p, zero for d < p
    bool complete = false;

    size_t total() const;
    size_t closed_total() const;
};

PoincareReport norm_complex_cohomology(uint32_t p, size_t degrees, uint32_t d = 0);

} // namespace spf
