#include "spf/adjoint.hpp"

#include "spf/evaluate.hpp"
#include "spf/expr.hpp"

#include <stdexcept>
#include <string>

namespace spf {

ModuleMap parameter_action(std::shared_ptr<const EvaluatedModule> m, Side side, const Mono& h)
{
    uint32_t N = m->eval_dim();
    return map_from_basis(m, m, [&](uint32_t full) {
        Terms t;
        m->node().act_param(side, h, N, N, full, 1, t);
        FullImage out;
        for (auto [k, v] : t)
            if (auto loc = m->locate(k)) {
                uint32_t b = loc->first;
                out.emplace_back(b / m->nr(), b % m->nr(), loc->second, v);
            }
        return out;
    });
}

namespace {

Vec flatten(const ModuleMap& f)
{
    Vec v;
    for (auto& [key, blk] : f.blocks)
        for (size_t r = 0; r < blk.rows(); ++r)
            for (size_t c = 0; c < blk.cols(); ++c)
                v.push_back(blk.at(r, c));
    return v;
}

Mono diagonal(const Composition& w)
{
    std::vector<Term> t;
    for (uint32_t k = 0; k < w.size(); ++k)
        if (w[k])
            t.push_back({k, k, w[k]});
    return Mono::from_terms(std::move(t));
}

} // namespace

std::shared_ptr<const MatrixModule> ell_dual(ModulePtr B, uint32_t d, SchurSide::Kind kind)
{
    uint32_t p = B->p();
    if (B->left().degree() != p * d || B->right().degree() != p * d)
        throw std::invalid_argument("ell_dual: bidegree must be (pd, pd)");
    std::string dd = std::to_string(d);
    auto node = compile(parse_bifunctor("tw(1, inj(" + dd + "," + dd + "," + dd + "," + dd + "))"), p);
    auto J = std::make_shared<EvaluatedModule>(node, B->left_ptr(), B->right_ptr());
    auto H = hom_space(B, J);
    size_t n = H.size();

    std::vector<Vec> flat;
    size_t len = 0;
    for (auto& h : H) {
        flat.push_back(flatten(h));
        len = flat.back().size();
    }
    FpMatrix Hm = FpMatrix::from_columns(p, len, flat);
    auto coords = [&](const ModuleMap& g) {
        auto c = solve(Hm, flatten(g));
        if (!c)
            throw std::logic_error("ell_dual: parameter action left the hom space");
        return *c;
    };
    // matrix of h on Hom(B, J) in the hom basis
    auto operator_of = [&](Side side, const Mono& h) {
        ModuleMap a = parameter_action(J, side, h);
        std::vector<Vec> cols;
        for (auto& g : H)
            cols.push_back(coords(compose(a, g)));
        return FpMatrix::from_columns(p, n, cols);
    };

    auto L = make_side(p, d, d, kind), R = make_side(p, d, d, kind);
    uint32_t nl = static_cast<uint32_t>(L->weights().size()), nr = static_cast<uint32_t>(R->weights().size());
    std::vector<FpMatrix> el, er;
    for (auto& w : L->weights())
        el.push_back(operator_of(Side::Left, diagonal(w)));
    for (auto& w : R->weights())
        er.push_back(operator_of(Side::Right, diagonal(w)));
    std::vector<FpMatrix> U(static_cast<size_t>(nl) * nr);
    std::vector<size_t> dims(U.size());
    for (uint32_t i = 0; i < nl; ++i)
        for (uint32_t j = 0; j < nr; ++j) {
            U[i * nr + j] = image_basis(multiply(el[i], er[j]));
            dims[i * nr + j] = U[i * nr + j].cols();
        }

    auto restrict = [&](const FpMatrix& op, const FpMatrix& from, const FpMatrix& to) {
        FpMatrix img = multiply(op, from);
        std::vector<Vec> cols;
        for (size_t c = 0; c < img.cols(); ++c) {
            auto x = solve(to, img.column(c));
            if (!x)
                throw std::logic_error("ell_dual: action does not respect weights");
            cols.push_back(*x);
        }
        return FpMatrix::from_columns(p, to.cols(), cols);
    };
    std::map<MatrixModule::Key, FpMatrix> left, right;
    for (uint32_t ai = 0; ai < nl; ++ai)
        for (uint32_t aj = 0; aj < nl; ++aj)
            for (uint32_t a = 0; a < L->monos(ai, aj).size(); ++a) {
                FpMatrix op = operator_of(Side::Left, L->monos(ai, aj)[a]);
                for (uint32_t j = 0; j < nr; ++j)
                    left[{ai, aj, a, j}] = restrict(op, U[aj * nr + j], U[ai * nr + j]);
            }
    for (uint32_t bi = 0; bi < nr; ++bi)
        for (uint32_t bj = 0; bj < nr; ++bj)
            for (uint32_t b = 0; b < R->monos(bi, bj).size(); ++b) {
                FpMatrix op = operator_of(Side::Right, R->monos(bi, bj)[b]);
                for (uint32_t i = 0; i < nl; ++i)
                    right[{bi, bj, b, i}] = restrict(op, U[i * nr + bj], U[i * nr + bi]);
            }
    return std::make_shared<MatrixModule>(L, R, std::move(dims), std::move(left), std::move(right));
}

ModulePtr ell(ModulePtr B, uint32_t d, SchurSide::Kind kind)
{
    return std::make_shared<DualModule>(ell_dual(std::move(B), d, kind));
}

} // namespace spf
