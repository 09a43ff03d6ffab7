#include "spf/twisting.hpp"

#include "spf/evaluate.hpp"
#include "spf/expr.hpp"

#include <set>
#include <stdexcept>

namespace spf {

namespace {

uint32_t diagonal_degree(const BExpr& e, uint32_t p)
{
    auto [dl, dr] = bidegree(e, p);
    if (dl != dr)
        throw std::invalid_argument("expected a bifunctor of bidegree (d, d)");
    return static_cast<uint32_t>(dl);
}

std::shared_ptr<const EvaluatedModule> evaluate_at(const BExpr& e, uint32_t p, uint32_t d, std::optional<uint32_t> gm = std::nullopt)
{
    uint32_t N = std::max<uint32_t>(d, 1);
    return std::make_shared<EvaluatedModule>(compile(e, p), make_side(p, d, N, SchurSide::Kind::Dominant),
                                             make_side(p, d, N, SchurSide::Kind::Dominant), gm);
}

std::set<uint32_t> piece_degrees(const EvaluatedModule& m)
{
    std::set<uint32_t> out;
    for (uint32_t i = 0; i < m.nl(); ++i)
        for (uint32_t j = 0; j < m.nr(); ++j)
            for (auto g : m.gm_degrees(i, j))
                out.insert(g);
    return out;
}

// H^s of every piece of B_{E_r}.
Bigraded graded_cohomology(const BExpr& b, uint32_t p, uint32_t r, size_t degrees, bool& complete, bool& hit,
                           std::vector<uint32_t>& ts)
{
    uint32_t d = diagonal_degree(b, p);
    BExpr e = bx::param(b, ParamSpace::er(r));
    auto res = gamma_resolution(p, d, std::max<uint32_t>(d, 1), degrees, &hit);
    complete = is_complete(*res);
    Bigraded out;
    for (uint32_t t : piece_degrees(*evaluate_at(e, p, d))) {
        ts.push_back(t);
        auto piece = evaluate_at(e, p, d, t);
        auto dims = ext_dims(*res, *piece, degrees);
        for (size_t s = 0; s < degrees; ++s)
            if (dims[s])
                out[{s, t}] = dims[s];
    }
    return out;
}

} // namespace

size_t E2Page::at(size_t s, uint32_t t) const
{
    auto it = entries.find({s, t});
    return it == entries.end() ? 0 : it->second;
}

size_t E2Page::total() const
{
    size_t n = 0;
    for (auto& [k, v] : entries)
        n += v;
    return n;
}

std::vector<size_t> E2Page::totals() const
{
    std::vector<size_t> out(degrees, 0);
    for (auto& [k, v] : entries)
        if (k.first + k.second < degrees)
            out[k.first + k.second] += v;
    return out;
}

E2Page e2_page(const std::string& expr, uint32_t p, uint32_t r, size_t degrees)
{
    E2Page page;
    page.p = p;
    page.r = r;
    page.expr = expr;
    page.degrees = degrees;
    page.entries = graded_cohomology(parse_bifunctor(expr), p, r, degrees, page.complete, page.cache_hit, page.t_values);
    return page;
}

TwistedCohomology twisted_cohomology(const std::string& expr, uint32_t p, uint32_t r, size_t degrees)
{
    BExpr e = bx::tw(r, parse_bifunctor(expr));
    uint32_t D = diagonal_degree(e, p);
    auto res = gamma_resolution(p, D, std::max<uint32_t>(D, 1), degrees);
    TwistedCohomology out;
    out.complete = is_complete(*res);
    out.dims = ext_dims(*res, *evaluate_at(e, p, D), degrees);
    return out;
}

CollapseReport collapse_check(const std::string& expr, uint32_t p, uint32_t r, size_t degrees)
{
    CollapseReport rep;
    rep.e2 = e2_page(expr, p, r, degrees);
    rep.twisted = twisted_cohomology(expr, p, r, degrees);
    rep.lhs = rep.e2.totals();
    rep.rhs = rep.twisted.dims;
    rep.pass = rep.lhs == rep.rhs;
    if (rep.e2.complete && rep.twisted.complete) {
        long a = 0, b = 0;
        for (auto& [k, v] : rep.e2.entries)
            a += ((k.first + k.second) % 2 ? -1 : 1) * static_cast<long>(v);
        for (size_t k = 0; k < rep.rhs.size(); ++k)
            b += (k % 2 ? -1 : 1) * static_cast<long>(rep.rhs[k]);
        rep.euler = a == b;
    }
    if (!rep.pass)
        rep.note = "per-degree totals differ: the collapse holds unconditionally, so this indicates an engine bug";
    else if (!rep.e2.complete || !rep.twisted.complete)
        rep.note = "compared below the truncation bound only";
    return rep;
}

size_t PoincareReport::total() const
{
    size_t n = 0;
    for (auto& [k, v] : table)
        n += v;
    return n;
}

size_t PoincareReport::closed_total() const
{
    size_t n = 0;
    for (auto& [k, v] : closed_form)
        n += v;
    return n;
}

PoincareReport norm_complex_cohomology(uint32_t p, size_t degrees, uint32_t d)
{
    PoincareReport rep;
    rep.p = p;
    rep.d = d ? d : p;
    rep.degrees = degrees;
    bool hit = false;
    std::vector<uint32_t> ts;
    Bigraded all = graded_cohomology(bx::gl(fx::gamma(rep.d)), p, 1, degrees, rep.complete, hit, ts);
    for (auto& [k, v] : all)
        if (k.first > 0)
            rep.table[k] = v;
    if (rep.d == p)
        for (size_t s = 1; s <= 2 * p - 2; ++s)
            for (uint32_t k = 0; k < 2 * p; ++k)
                rep.closed_form[{s, 2 * p * k}] = 1;
    return rep;
}

} // namespace spf
