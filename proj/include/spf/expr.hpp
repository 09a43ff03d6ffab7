#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spf {

// Finite parameter space: k^n in degree 0, or E_r with one line in each degree 0,2,...,2p^r-2.
struct ParamSpace {
    enum class Kind { Trivial, E } kind = Kind::Trivial;
    uint32_t value = 1;

    static ParamSpace trivial(uint32_t n) { return {Kind::Trivial, n}; }
    static ParamSpace er(uint32_t r) { return {Kind::E, r}; }
    bool graded() const { return kind == Kind::E; }
    uint32_t dim(uint32_t p) const;
    std::vector<uint32_t> degrees(uint32_t p) const;
    std::string str() const;
    bool operator==(const ParamSpace&) const = default;
};

uint64_t ipow(uint64_t b, uint32_t e);

struct FunctorExpr;
struct BifunctorExpr;
using FExpr = std::shared_ptr<const FunctorExpr>;
using BExpr = std::shared_ptr<const BifunctorExpr>;

struct FunctorExpr {
    enum class Kind { Id, Gamma, Sym, Lambda, Otimes, Tensor, Dual, Twist, LowerParam, UpperParam };
    Kind kind = Kind::Id;
    uint32_t n = 0;   // degree for Gamma/Sym/Lambda/Otimes, r for Twist
    FExpr a, b;
    ParamSpace z;
};

struct BifunctorExpr {
    enum class Kind { Hom, Gl, Tensor, Dual, Twist, LowerParam, Proj, Inj };
    Kind kind = Kind::Gl;
    FExpr f, g;
    BExpr a, b;
    uint32_t r = 0;
    ParamSpace z;
    uint32_t d = 0, x = 0, e = 0, y = 0;
};

namespace fx {
FExpr id();
FExpr gamma(uint32_t d);
FExpr sym(uint32_t d);
FExpr lambda(uint32_t d);
FExpr otimes(uint32_t d);
FExpr tensor(FExpr a, FExpr b);
FExpr dual(FExpr a);
FExpr tw(uint32_t r, FExpr a);
FExpr param(FExpr a, ParamSpace z);
FExpr uparam(FExpr a, ParamSpace z);
} // namespace fx

namespace bx {
BExpr hom(FExpr f, FExpr g);
BExpr gl(FExpr f);
BExpr tensor(BExpr a, BExpr b);
BExpr dual(BExpr a);
BExpr tw(uint32_t r, BExpr a);
BExpr param(BExpr a, ParamSpace z);
BExpr proj(uint32_t d, uint32_t x, uint32_t e, uint32_t y);
BExpr inj(uint32_t d, uint32_t x, uint32_t e, uint32_t y);
} // namespace bx

uint64_t degree(const FExpr& e, uint32_t p);
std::pair<uint64_t, uint64_t> bidegree(const BExpr& e, uint32_t p);
std::string to_string(const FExpr& e);
std::string to_string(const BExpr& e);
bool equal(const FExpr& a, const FExpr& b);
bool equal(const BExpr& a, const BExpr& b);

// Rewrites the standard projective/injective into separable form.
BExpr expand_standard(const BExpr& e);

// Pushes duals to the leaves: Gamma <-> Sym, Lambda and Otimes self-dual, twists and tensors commute.
// Graded parametrizations keep an explicit Dual node.
FExpr dualize(const FExpr& e);
BExpr dualize(const BExpr& e);

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& msg, size_t at);
};

FExpr parse_functor(const std::string& text);
BExpr parse_bifunctor(const std::string& text);

} // namespace spf
