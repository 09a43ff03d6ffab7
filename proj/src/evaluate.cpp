#include "spf/evaluate.hpp"

#include "spf/sparse.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace spf {

size_t LabelHash::operator()(const Label& l) const noexcept
{
    uint64_t h = 1469598103934665603ull;
    for (uint32_t v : l) {
        h ^= v;
        h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
}

FNode::FNode(uint32_t p, uint64_t degree) : f_(field(p)), deg_(static_cast<uint32_t>(degree)) {}

const Basis& FNode::basis(uint32_t n) const
{
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = cache_[n];
    if (!slot) {
        slot = std::make_unique<Basis>(build(n));
        slot->n = n;
        slot->by_weight.clear();
        for (uint32_t i = 0; i < slot->size; ++i)
            slot->by_weight[slot->weight[i]].push_back(i);
    }
    return *slot;
}

void FNode::act_param(const Mono&, uint32_t, uint32_t, uint32_t, Terms&) const
{
    throw std::logic_error("functor has no parameter to act on");
}

std::string FNode::label(uint32_t, uint32_t i) const { return std::to_string(i); }

BNode::BNode(uint32_t p, uint64_t dl, uint64_t dr)
    : f_(field(p)), dl_(static_cast<uint32_t>(dl)), dr_(static_cast<uint32_t>(dr))
{
}

const BiBasis& BNode::basis(uint32_t n, uint32_t m) const
{
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = cache_[{n, m}];
    if (!slot) {
        slot = std::make_unique<BiBasis>(build(n, m));
        slot->n = n;
        slot->m = m;
        slot->by_weight.clear();
        for (uint32_t i = 0; i < slot->size; ++i)
            slot->by_weight[{slot->wl[i], slot->wr[i]}].push_back(i);
    }
    return *slot;
}

void BNode::act_param(Side, const Mono&, uint32_t, uint32_t, uint32_t, uint32_t, Terms&) const
{
    throw std::logic_error("bifunctor has no parameter to act on");
}

namespace {

uint32_t coefficient_of(const Fp& f, const Terms& t, uint32_t idx)
{
    uint32_t s = 0;
    for (auto [i, v] : t)
        if (i == idx)
            s = f.add(s, v);
    return s;
}

Composition word_counts(const Label& w, uint32_t n)
{
    Composition c(n, 0);
    for (auto x : w)
        c[x]++;
    return c;
}

// Multisets (non-decreasing words) or strictly increasing words, or all words, in lex order.
std::vector<Label> enumerate_words(PowerKind kind, uint32_t d, uint32_t n)
{
    std::vector<Label> out;
    Label w(d, 0);
    std::function<void(uint32_t, uint32_t)> rec = [&](uint32_t i, uint32_t lo) {
        if (i == d) {
            out.push_back(w);
            return;
        }
        uint32_t start = kind == PowerKind::Tensor ? 0 : lo;
        for (uint32_t x = start; x < n; ++x) {
            w[i] = x;
            rec(i + 1, kind == PowerKind::Lambda ? x + 1 : x);
        }
    };
    rec(0, 0);
    return out;
}

class PowerNode : public FNode {
public:
    PowerNode(uint32_t p, PowerKind kind, uint32_t d) : FNode(p, d), kind_(kind) {}

    void act(const Mono& g, uint32_t a, uint32_t b, uint32_t col, uint32_t c, Terms& out) const override
    {
        if (g.degree() != deg_)
            throw std::invalid_argument("degree mismatch in structure map");
        const Basis& src = basis(a);
        const Composition& x = src.weight[col];
        Composition cs(a, 0);
        for (auto& t : g.terms) {
            if (t.t >= a || t.s >= b)
                throw std::invalid_argument("matrix unit out of range");
            cs[t.t] += t.a;
        }
        if (cs != x)
            return;
        if (kind_ == PowerKind::Tensor) {
            act_tensor(g, a, b, col, c, out);
            return;
        }
        Composition r(b, 0);
        for (auto& t : g.terms)
            r[t.s] += t.a;
        const Basis& dst = basis(b);
        uint32_t coef = c;
        if (kind_ == PowerKind::Lambda) {
            // for each source index j (increasing) the unique unit leaving j
            std::vector<uint32_t> seq;
            for (uint32_t j = 0; j < a; ++j) {
                if (!x[j])
                    continue;
                for (auto& t : g.terms)
                    if (t.t == j)
                        seq.push_back(t.s);
            }
            for (auto v : r)
                if (v > 1)
                    return;
            size_t inv = 0;
            for (size_t i = 0; i < seq.size(); ++i)
                for (size_t j = i + 1; j < seq.size(); ++j)
                    if (seq[i] > seq[j])
                        ++inv;
            if (inv & 1)
                coef = f_.neg(coef);
        } else {
            std::map<uint32_t, std::vector<uint32_t>> groups;
            for (auto& t : g.terms)
                groups[kind_ == PowerKind::Gamma ? t.s : t.t].push_back(t.a);
            for (auto& [k, parts] : groups)
                coef = f_.mul(coef, f_.multinomial(parts));
        }
        if (!coef)
            return;
        out.emplace_back(dst.index.at(r), coef);
    }

    std::string label(uint32_t n, uint32_t i) const override
    {
        const Label& l = basis(n).labels[i];
        std::ostringstream o;
        o << (kind_ == PowerKind::Gamma ? 'g' : kind_ == PowerKind::Sym ? 's' : kind_ == PowerKind::Lambda ? 'l' : 'w') << '(';
        for (size_t k = 0; k < l.size(); ++k)
            o << (k ? "," : "") << l[k];
        o << ')';
        return o.str();
    }

protected:
    Basis build(uint32_t n) const override
    {
        Basis b;
        auto words = enumerate_words(kind_, deg_, n);
        b.size = words.size();
        for (uint32_t i = 0; i < words.size(); ++i) {
            Composition w = word_counts(words[i], n);
            b.weight.push_back(w);
            b.gm.push_back(0);
            Label l = kind_ == PowerKind::Tensor ? words[i] : w;
            b.index.emplace(l, i);
            b.labels.push_back(std::move(l));
        }
        return b;
    }

private:
    void act_tensor(const Mono& g, uint32_t a, uint32_t b, uint32_t col, uint32_t c, Terms& out) const
    {
        const Label& w = basis(a).labels[col];
        // slots grouped by source index, each group receiving the targets of the units leaving it
        std::vector<std::vector<uint32_t>> slots(a), targets(a);
        for (uint32_t i = 0; i < w.size(); ++i)
            slots[w[i]].push_back(i);
        for (auto& t : g.terms)
            targets[t.t].insert(targets[t.t].end(), t.a, t.s);
        for (auto& tg : targets)
            std::sort(tg.begin(), tg.end());
        std::vector<uint32_t> groups;
        for (uint32_t j = 0; j < a; ++j)
            if (!slots[j].empty())
                groups.push_back(j);
        Label res(w.size(), 0);
        std::function<void(size_t)> rec = [&](size_t gi) {
            if (gi == groups.size()) {
                uint64_t idx = 0;
                for (auto v : res)
                    idx = idx * b + v;
                out.emplace_back(static_cast<uint32_t>(idx), c);
                return;
            }
            uint32_t j = groups[gi];
            std::vector<uint32_t> perm = targets[j];
            do {
                for (size_t k = 0; k < perm.size(); ++k)
                    res[slots[j][k]] = perm[k];
                rec(gi + 1);
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
        rec(0);
    }

    PowerKind kind_;
};

class TensorFNode : public FNode {
public:
    TensorFNode(uint32_t p, FNodePtr a, FNodePtr b) : FNode(p, a->degree() + b->degree()), a_(std::move(a)), b_(std::move(b)) {}

    void act(const Mono& g, uint32_t a, uint32_t b, uint32_t col, uint32_t c, Terms& out) const override
    {
        size_t nb_src = b_->basis(a).size, nb_dst = b_->basis(b).size;
        uint32_t i = static_cast<uint32_t>(col / nb_src), j = static_cast<uint32_t>(col % nb_src);
        const Composition& wi = a_->basis(a).weight[i];
        for (auto& [g1, g2] : comultiply(g, a_->degree())) {
            if (g1.col_sums(a) != wi)
                continue;
            Terms ta, tb;
            a_->act(g1, a, b, i, 1, ta);
            if (ta.empty())
                continue;
            b_->act(g2, a, b, j, 1, tb);
            for (auto [x, cx] : ta)
                for (auto [y, cy] : tb)
                    out.emplace_back(static_cast<uint32_t>(x * nb_dst + y), f_.mul(c, f_.mul(cx, cy)));
        }
    }

    std::string label(uint32_t n, uint32_t i) const override
    {
        size_t nb = b_->basis(n).size;
        return a_->label(n, static_cast<uint32_t>(i / nb)) + "x" + b_->label(n, static_cast<uint32_t>(i % nb));
    }

protected:
    Basis build(uint32_t n) const override
    {
        const Basis& x = a_->basis(n);
        const Basis& y = b_->basis(n);
        Basis r;
        r.size = x.size * y.size;
        for (size_t i = 0; i < x.size; ++i)
            for (size_t j = 0; j < y.size; ++j) {
                Composition w = x.weight[i];
                for (size_t k = 0; k < n; ++k)
                    w[k] += y.weight[j][k];
                r.weight.push_back(std::move(w));
                r.gm.push_back(x.gm[i] + y.gm[j]);
            }
        return r;
    }

private:
    FNodePtr a_, b_;
};

class DualFNode : public FNode {
public:
    DualFNode(uint32_t p, FNodePtr a) : FNode(p, a->degree()), a_(std::move(a)) {}

    void act(const Mono& g, uint32_t a, uint32_t b, uint32_t col, uint32_t c, Terms& out) const override
    {
        const Basis& src = a_->basis(a);
        if (g.col_sums(a) != src.weight[col])
            return;
        const Basis& dst = a_->basis(b);
        auto it = dst.by_weight.find(g.row_sums(b));
        if (it == dst.by_weight.end())
            return;
        Mono gt = g.transposed();
        for (uint32_t i : it->second) {
            Terms t;
            a_->act(gt, b, a, i, 1, t);
            uint32_t v = coefficient_of(f_, t, col);
            if (v)
                out.emplace_back(i, f_.mul(c, v));
        }
    }

    void act_param(const Mono& h, uint32_t n, uint32_t col, uint32_t c, Terms& out) const override
    {
        const Basis& bs = a_->basis(n);
        Mono ht = h.transposed();
        for (uint32_t i : bs.by_weight.at(bs.weight[col])) {
            Terms t;
            a_->act_param(ht, n, i, 1, t);
            uint32_t v = coefficient_of(f_, t, col);
            if (v)
                out.emplace_back(i, f_.mul(c, v));
        }
    }

    std::string label(uint32_t n, uint32_t i) const override { return a_->label(n, i) + "*"; }

protected:
    Basis build(uint32_t n) const override
    {
        Basis b = a_->basis(n);
        b.labels.clear();
        b.index.clear();
        return b;
    }

private:
    FNodePtr a_;
};

class TwistFNode : public FNode {
public:
    TwistFNode(uint32_t p, uint32_t r, FNodePtr a) : FNode(p, ipow(p, r) * a->degree()), q_(static_cast<uint32_t>(ipow(p, r))), a_(std::move(a)) {}

    void act(const Mono& g, uint32_t a, uint32_t b, uint32_t col, uint32_t c, Terms& out) const override
    {
        if (g.degree() != deg_)
            throw std::invalid_argument("degree mismatch in structure map");
        if (auto u = untwist(g, q_))
            a_->act(*u, a, b, col, c, out);
    }

    void act_param(const Mono& h, uint32_t n, uint32_t col, uint32_t c, Terms& out) const override
    {
        a_->act_param(h, n, col, c, out);
    }

    std::string label(uint32_t n, uint32_t i) const override { return a_->label(n, i); }

protected:
    Basis build(uint32_t n) const override
    {
        Basis b = a_->basis(n);
        for (auto& w : b.weight)
            for (auto& x : w)
                x *= q_;
        b.labels.clear();
        b.index.clear();
        return b;
    }

private:
    uint32_t q_;
    FNodePtr a_;
};

// F(Z (x) V); index of z (x) v is z * dim V + v.
class ParamFNode : public FNode {
public:
    ParamFNode(uint32_t p, FNodePtr a, ParamSpace z) : FNode(p, a->degree()), a_(std::move(a)), deg_z_(z.degrees(p)) {}

    void act(const Mono& g, uint32_t a, uint32_t b, uint32_t col, uint32_t c, Terms& out) const override
    {
        uint32_t z = static_cast<uint32_t>(deg_z_.size());
        LinComb e = expand(f_, g, [&](uint32_t s, uint32_t t) {
            UnitImage img;
            for (uint32_t x = 0; x < z; ++x)
                img.push_back({{x * b + s, x * a + t}, 1});
            return img;
        });
        for (auto& [m, k] : e)
            a_->act(m, z * a, z * b, col, f_.mul(c, k), out);
    }

    void act_param(const Mono& h, uint32_t n, uint32_t col, uint32_t c, Terms& out) const override
    {
        LinComb e = expand(f_, h, [&](uint32_t s, uint32_t t) {
            UnitImage img;
            for (uint32_t v = 0; v < n; ++v)
                img.push_back({{s * n + v, t * n + v}, 1});
            return img;
        });
        uint32_t z = static_cast<uint32_t>(deg_z_.size());
        for (auto& [m, k] : e)
            a_->act(m, z * n, z * n, col, f_.mul(c, k), out);
    }

    std::string label(uint32_t n, uint32_t i) const override
    {
        return a_->label(static_cast<uint32_t>(deg_z_.size()) * n, i);
    }

protected:
    Basis build(uint32_t n) const override
    {
        uint32_t z = static_cast<uint32_t>(deg_z_.size());
        const Basis& inner = a_->basis(z * n);
        Basis b;
        b.size = inner.size;
        for (size_t i = 0; i < inner.size; ++i) {
            Composition w(n, 0);
            uint32_t g = inner.gm[i];
            for (uint32_t x = 0; x < z; ++x)
                for (uint32_t v = 0; v < n; ++v) {
                    uint32_t k = inner.weight[i][x * n + v];
                    w[v] += k;
                    g += deg_z_[x] * k;
                }
            b.weight.push_back(std::move(w));
            b.gm.push_back(g);
        }
        return b;
    }

private:
    FNodePtr a_;
    std::vector<uint32_t> deg_z_;
};

// ---------------------------------------------------------------------------
// bifunctors

class SepNode : public BNode {
public:
    SepNode(uint32_t p, FNodePtr f, FNodePtr g)
        : BNode(p, f->degree(), g->degree()), fd_(std::make_shared<DualFNode>(p, std::move(f))), g_(std::move(g))
    {
    }

    void act(Side side, const Mono& x, uint32_t n, uint32_t m, uint32_t col, uint32_t c, Terms& out) const override
    {
        size_t ng = g_->basis(m).size;
        uint32_t i = static_cast<uint32_t>(col / ng), j = static_cast<uint32_t>(col % ng);
        Terms t;
        if (side == Side::Left) {
            fd_->act(x, n, n, i, c, t);
            for (auto [k, v] : t)
                out.emplace_back(static_cast<uint32_t>(k * ng + j), v);
        } else {
            g_->act(x, m, m, j, c, t);
            for (auto [k, v] : t)
                out.emplace_back(static_cast<uint32_t>(i * ng + k), v);
        }
    }

    void act_param(Side side, const Mono& h, uint32_t n, uint32_t m, uint32_t col, uint32_t c, Terms& out) const override
    {
        size_t ng = g_->basis(m).size;
        uint32_t i = static_cast<uint32_t>(col / ng), j = static_cast<uint32_t>(col % ng);
        Terms t;
        if (side == Side::Left) {
            fd_->act_param(h, n, i, c, t);
            for (auto [k, v] : t)
                out.emplace_back(static_cast<uint32_t>(k * ng + j), v);
        } else {
            g_->act_param(h, m, j, c, t);
            for (auto [k, v] : t)
                out.emplace_back(static_cast<uint32_t>(i * ng + k), v);
        }
    }

    std::string label(uint32_t n, uint32_t m, uint32_t i) const override
    {
        size_t ng = g_->basis(m).size;
        return fd_->label(n, static_cast<uint32_t>(i / ng)) + "|" + g_->label(m, static_cast<uint32_t>(i % ng));
    }

protected:
    BiBasis build(uint32_t n, uint32_t m) const override
    {
        const Basis& x = fd_->basis(n);
        const Basis& y = g_->basis(m);
        BiBasis b;
        b.size = x.size * y.size;
        for (size_t i = 0; i < x.size; ++i)
            for (size_t j = 0; j < y.size; ++j) {
                b.wl.push_back(x.weight[i]);
                b.wr.push_back(y.weight[j]);
                b.gm.push_back(x.gm[i] + y.gm[j]);
            }
        return b;
    }

private:
    FNodePtr fd_, g_;
};

// F(A (x) W); index of a (x) w is a * m + w.
class GlNode : public BNode {
public:
    GlNode(uint32_t p, FNodePtr f) : BNode(p, f->degree(), f->degree()), f_node_(std::move(f)) {}

    void act(Side side, const Mono& x, uint32_t n, uint32_t m, uint32_t col, uint32_t c, Terms& out) const override
    {
        LinComb e = expand(f_, x, [&](uint32_t s, uint32_t t) {
            UnitImage img;
            if (side == Side::Left)
                for (uint32_t w = 0; w < m; ++w)
                    img.push_back({{s * m + w, t * m + w}, 1});
            else
                for (uint32_t a = 0; a < n; ++a)
                    img.push_back({{a * m + s, a * m + t}, 1});
            return img;
        });
        for (auto& [mono, k] : e)
            f_node_->act(mono, n * m, n * m, col, f_.mul(c, k), out);
    }

    void act_param(Side, const Mono& h, uint32_t n, uint32_t m, uint32_t col, uint32_t c, Terms& out) const override
    {
        f_node_->act_param(h, n * m, col, c, out);
    }

    std::string label(uint32_t n, uint32_t m, uint32_t i) const override { return f_node_->label(n * m, i); }

protected:
    BiBasis build(uint32_t n, uint32_t m) const override
    {
        const Basis& inner = f_node_->basis(n * m);
        BiBasis b;
        b.size = inner.size;
        for (size_t i = 0; i < inner.size; ++i) {
            Composition l(n, 0), r(m, 0);
            for (uint32_t a = 0; a < n; ++a)
                for (uint32_t w = 0; w < m; ++w) {
                    l[a] += inner.weight[i][a * m + w];
                    r[w] += inner.weight[i][a * m + w];
                }
            b.wl.push_back(std::move(l));
            b.wr.push_back(std::move(r));
            b.gm.push_back(inner.gm[i]);
        }
        return b;
    }

private:
    FNodePtr f_node_;
};

class TensorBNode : public BNode {
public:
    TensorBNode(uint32_t p, BNodePtr a, BNodePtr b)
        : BNode(p, a->deg_left() + b->deg_left(), a->deg_right() + b->deg_right()), a_(std::move(a)), b_(std::move(b))
    {
    }

    void act(Side side, const Mono& x, uint32_t n, uint32_t m, uint32_t col, uint32_t c, Terms& out) const override
    {
        size_t nb = b_->basis(n, m).size;
        uint32_t i = static_cast<uint32_t>(col / nb), j = static_cast<uint32_t>(col % nb);
        uint32_t d1 = side == Side::Left ? a_->deg_left() : a_->deg_right();
        const BiBasis& ab = a_->basis(n, m);
        const Composition& wi = side == Side::Left ? ab.wl[i] : ab.wr[i];
        uint32_t dim = side == Side::Left ? n : m;
        for (auto& [x1, x2] : comultiply(x, d1)) {
            if (x1.col_sums(dim) != wi)
                continue;
            Terms ta, tb;
            a_->act(side, x1, n, m, i, 1, ta);
            if (ta.empty())
                continue;
            b_->act(side, x2, n, m, j, 1, tb);
            for (auto [u, cu] : ta)
                for (auto [v, cv] : tb)
                    out.emplace_back(static_cast<uint32_t>(u * nb + v), f_.mul(c, f_.mul(cu, cv)));
        }
    }

    std::string label(uint32_t n, uint32_t m, uint32_t i) const override
    {
        size_t nb = b_->basis(n, m).size;
        return "(" + a_->label(n, m, static_cast<uint32_t>(i / nb)) + ")x(" + b_->label(n, m, static_cast<uint32_t>(i % nb)) + ")";
    }

protected:
    BiBasis build(uint32_t n, uint32_t m) const override
    {
        const BiBasis& x = a_->basis(n, m);
        const BiBasis& y = b_->basis(n, m);
        BiBasis b;
        b.size = x.size * y.size;
        for (size_t i = 0; i < x.size; ++i)
            for (size_t j = 0; j < y.size; ++j) {
                Composition l = x.wl[i], r = x.wr[i];
                for (uint32_t k = 0; k < n; ++k)
                    l[k] += y.wl[j][k];
                for (uint32_t k = 0; k < m; ++k)
                    r[k] += y.wr[j][k];
                b.wl.push_back(std::move(l));
                b.wr.push_back(std::move(r));
                b.gm.push_back(x.gm[i] + y.gm[j]);
            }
        return b;
    }

private:
    BNodePtr a_, b_;
};

class DualBNode : public BNode {
public:
    DualBNode(uint32_t p, BNodePtr a) : BNode(p, a->deg_left(), a->deg_right()), a_(std::move(a)) {}

    void act(Side side, const Mono& x, uint32_t n, uint32_t m, uint32_t col, uint32_t c, Terms& out) const override
    {
        const BiBasis& bs = a_->basis(n, m);
        uint32_t dim = side == Side::Left ? n : m;
        const Composition& own = side == Side::Left ? bs.wl[col] : bs.wr[col];
        if (x.col_sums(dim) != own)
            return;
        BiWeight key = side == Side::Left ? BiWeight{x.row_sums(n), bs.wr[col]} : BiWeight{bs.wl[col], x.row_sums(m)};
        auto it = bs.by_weight.find(key);
        if (it == bs.by_weight.end())
            return;
        Mono xt = x.transposed();
        for (uint32_t i : it->second) {
            Terms t;
            a_->act(side, xt, n, m, i, 1, t);
            uint32_t v = coefficient_of(f_, t, col);
            if (v)
                out.emplace_back(i, f_.mul(c, v));
        }
    }

    void act_param(Side side, const Mono& h, uint32_t n, uint32_t m, uint32_t col, uint32_t c, Terms& out) const override
    {
        const BiBasis& bs = a_->basis(n, m);
        Mono ht = h.transposed();
        for (uint32_t i : bs.by_weight.at({bs.wl[col], bs.wr[col]})) {
            Terms t;
            a_->act_param(side, ht, n, m, i, 1, t);
            uint32_t v = coefficient_of(f_, t, col);
            if (v)
                out.emplace_back(i, f_.mul(c, v));
        }
    }

    std::string label(uint32_t n, uint32_t m, uint32_t i) const override { return a_->label(n, m, i) + "*"; }

protected:
    BiBasis build(uint32_t n, uint32_t m) const override { return a_->basis(n, m); }

private:
    BNodePtr a_;
};

class TwistBNode : public BNode {
public:
    TwistBNode(uint32_t p, uint32_t r, BNodePtr a)
        : BNode(p, ipow(p, r) * a->deg_left(), ipow(p, r) * a->deg_right()), q_(static_cast<uint32_t>(ipow(p, r))), a_(std::move(a))
    {
    }

    void act(Side side, const Mono& x, uint32_t n, uint32_t m, uint32_t col, uint32_t c, Terms& out) const override
    {
        if (auto u = untwist(x, q_))
            a_->act(side, *u, n, m, col, c, out);
    }

    void act_param(Side side, const Mono& h, uint32_t n, uint32_t m, uint32_t col, uint32_t c, Terms& out) const override
    {
        a_->act_param(side, h, n, m, col, c, out);
    }

    std::string label(uint32_t n, uint32_t m, uint32_t i) const override { return a_->label(n, m, i); }

protected:
    BiBasis build(uint32_t n, uint32_t m) const override
    {
        BiBasis b = a_->basis(n, m);
        for (auto& w : b.wl)
            for (auto& v : w)
                v *= q_;
        for (auto& w : b.wr)
            for (auto& v : w)
                v *= q_;
        return b;
    }

private:
    uint32_t q_;
    BNodePtr a_;
};

// B(A, Z (x) W); index of z (x) w is z * m + w.
class ParamBNode : public BNode {
public:
    ParamBNode(uint32_t p, BNodePtr a, ParamSpace z)
        : BNode(p, a->deg_left(), a->deg_right()), a_(std::move(a)), deg_z_(z.degrees(p))
    {
    }

    void act(Side side, const Mono& x, uint32_t n, uint32_t m, uint32_t col, uint32_t c, Terms& out) const override
    {
        uint32_t z = static_cast<uint32_t>(deg_z_.size());
        if (side == Side::Left) {
            a_->act(side, x, n, z * m, col, c, out);
            return;
        }
        LinComb e = expand(f_, x, [&](uint32_t s, uint32_t t) {
            UnitImage img;
            for (uint32_t k = 0; k < z; ++k)
                img.push_back({{k * m + s, k * m + t}, 1});
            return img;
        });
        for (auto& [mono, k] : e)
            a_->act(side, mono, n, z * m, col, f_.mul(c, k), out);
    }

    std::string label(uint32_t n, uint32_t m, uint32_t i) const override
    {
        return a_->label(n, static_cast<uint32_t>(deg_z_.size()) * m, i);
    }

protected:
    BiBasis build(uint32_t n, uint32_t m) const override
    {
        uint32_t z = static_cast<uint32_t>(deg_z_.size());
        const BiBasis& inner = a_->basis(n, z * m);
        BiBasis b;
        b.size = inner.size;
        b.wl = inner.wl;
        for (size_t i = 0; i < inner.size; ++i) {
            Composition w(m, 0);
            uint32_t g = inner.gm[i];
            for (uint32_t k = 0; k < z; ++k)
                for (uint32_t v = 0; v < m; ++v) {
                    w[v] += inner.wr[i][k * m + v];
                    g += deg_z_[k] * inner.wr[i][k * m + v];
                }
            b.wr.push_back(std::move(w));
            b.gm.push_back(g);
        }
        return b;
    }

private:
    BNodePtr a_;
    std::vector<uint32_t> deg_z_;
};

} // namespace

FNodePtr compile(const FExpr& e, uint32_t p)
{
    using K = FunctorExpr::Kind;
    switch (e->kind) {
    case K::Id: return std::make_shared<PowerNode>(p, PowerKind::Gamma, 1);
    case K::Gamma: return std::make_shared<PowerNode>(p, PowerKind::Gamma, e->n);
    case K::Sym: return std::make_shared<PowerNode>(p, PowerKind::Sym, e->n);
    case K::Lambda: return std::make_shared<PowerNode>(p, PowerKind::Lambda, e->n);
    case K::Otimes: return std::make_shared<PowerNode>(p, PowerKind::Tensor, e->n);
    case K::Tensor: return std::make_shared<TensorFNode>(p, compile(e->a, p), compile(e->b, p));
    case K::Dual: return std::make_shared<DualFNode>(p, compile(e->a, p));
    case K::Twist: return std::make_shared<TwistFNode>(p, e->n, compile(e->a, p));
    case K::LowerParam:
    case K::UpperParam: return std::make_shared<ParamFNode>(p, compile(e->a, p), e->z);
    }
    throw std::logic_error("unknown functor node");
}

BNodePtr compile(const BExpr& e, uint32_t p)
{
    using K = BifunctorExpr::Kind;
    switch (e->kind) {
    case K::Hom: return std::make_shared<SepNode>(p, compile(e->f, p), compile(e->g, p));
    case K::Gl: return std::make_shared<GlNode>(p, compile(e->f, p));
    case K::Tensor: return std::make_shared<TensorBNode>(p, compile(e->a, p), compile(e->b, p));
    case K::Dual: return std::make_shared<DualBNode>(p, compile(e->a, p));
    case K::Twist: return std::make_shared<TwistBNode>(p, e->r, compile(e->a, p));
    case K::LowerParam: return std::make_shared<ParamBNode>(p, compile(e->a, p), e->z);
    case K::Proj:
    case K::Inj: return compile(expand_standard(e), p);
    }
    throw std::logic_error("unknown bifunctor node");
}

// ---------------------------------------------------------------------------

IndexedSpace enumerate_basis(PowerKind kind, uint32_t d, const IndexedSpace& u)
{
    IndexedSpace out;
    out.p = u.p;
    uint32_t n = static_cast<uint32_t>(u.dim());
    bool two = !u.wr.empty();
    for (auto& w : enumerate_words(kind, d, n)) {
        std::ostringstream o;
        uint32_t g = 0;
        Composition wl(u.wl.empty() ? 0 : u.wl[0].size(), 0), wr(two ? u.wr[0].size() : 0, 0);
        if (kind == PowerKind::Gamma || kind == PowerKind::Sym) {
            Composition c = word_counts(w, n);
            bool first = true;
            for (uint32_t i = 0; i < n; ++i)
                if (c[i]) {
                    o << (first ? "" : "*") << (kind == PowerKind::Gamma ? "g" : "s") << c[i] << '(' << u.labels[i] << ')';
                    first = false;
                }
            if (first)
                o << "1";
        } else {
            for (size_t i = 0; i < w.size(); ++i)
                o << (i ? (kind == PowerKind::Lambda ? "^" : "x") : "") << u.labels[w[i]];
            if (w.empty())
                o << "1";
        }
        for (auto x : w) {
            g += u.gm[x];
            for (size_t k = 0; k < wl.size(); ++k)
                wl[k] += u.wl[x][k];
            for (size_t k = 0; k < wr.size(); ++k)
                wr[k] += u.wr[x][k];
        }
        out.labels.push_back(o.str());
        out.gm.push_back(g);
        out.wl.push_back(std::move(wl));
        if (two)
            out.wr.push_back(std::move(wr));
    }
    return out;
}

IndexedSpace trivial_space(uint32_t n, uint32_t p)
{
    IndexedSpace s;
    s.p = p;
    for (uint32_t i = 0; i < n; ++i) {
        s.labels.push_back("e" + std::to_string(i));
        s.gm.push_back(0);
        Composition w(n, 0);
        w[i] = 1;
        s.wl.push_back(w);
    }
    return s;
}

IndexedSpace er_space(uint32_t r, uint32_t p)
{
    if (r == 0)
        throw std::invalid_argument("E_r requires r >= 1");
    auto deg = ParamSpace::er(r).degrees(p);
    IndexedSpace s = trivial_space(static_cast<uint32_t>(deg.size()), p);
    s.gm = deg;
    return s;
}

FpMatrix structure_map(const FNode& node, const Mono& g, uint32_t a, uint32_t b)
{
    if (g.degree() != node.degree())
        throw std::invalid_argument("degree mismatch: monomial of degree " + std::to_string(g.degree()) +
                                    " on a functor of degree " + std::to_string(node.degree()));
    const Basis& src = node.basis(a);
    const Basis& dst = node.basis(b);
    FpMatrix m(node.p(), dst.size, src.size);
    for (uint32_t j = 0; j < src.size; ++j) {
        Terms t;
        node.act(g, a, b, j, 1, t);
        for (auto [i, v] : sparse_normalize(node.fp(), std::move(t)))
            m.set(i, j, v);
    }
    return m;
}

FpMatrix action_matrix(const BNode& node, Side side, const Mono& g, uint32_t n, uint32_t m)
{
    if (g.degree() != (side == Side::Left ? node.deg_left() : node.deg_right()))
        throw std::invalid_argument("degree mismatch in bifunctor action");
    const BiBasis& b = node.basis(n, m);
    FpMatrix out(node.p(), b.size, b.size);
    for (uint32_t j = 0; j < b.size; ++j) {
        Terms t;
        node.act(side, g, n, m, j, 1, t);
        for (auto [i, v] : sparse_normalize(node.fp(), std::move(t)))
            out.set(i, j, v);
    }
    return out;
}

FpMatrix structure_map(const FExpr& e, uint32_t p, const Mono& g, uint32_t a, uint32_t b)
{
    return structure_map(*compile(e, p), g, a, b);
}

} // namespace spf
