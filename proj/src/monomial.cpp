#include "spf/monomial.hpp"

#include <algorithm>
#include <sstream>

namespace spf {

uint32_t Mono::degree() const
{
    uint32_t d = 0;
    for (auto& t : terms)
        d += t.a;
    return d;
}

Composition Mono::row_sums(uint32_t rows) const
{
    Composition r(rows, 0);
    for (auto& t : terms)
        r.at(t.s) += t.a;
    return r;
}

Composition Mono::col_sums(uint32_t cols) const
{
    Composition c(cols, 0);
    for (auto& t : terms)
        c.at(t.t) += t.a;
    return c;
}

Mono Mono::transposed() const
{
    std::vector<Term> t;
    t.reserve(terms.size());
    for (auto& x : terms)
        t.push_back({x.t, x.s, x.a});
    return from_terms(std::move(t));
}

bool Mono::is_diagonal() const
{
    for (auto& t : terms)
        if (t.s != t.t)
            return false;
    return true;
}

std::string Mono::str() const
{
    if (terms.empty())
        return "1";
    std::ostringstream o;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i)
            o << '*';
        o << 'g' << terms[i].a << "(E" << terms[i].s << ',' << terms[i].t << ')';
    }
    return o.str();
}

Mono Mono::from_terms(std::vector<Term> t)
{
    std::sort(t.begin(), t.end(), [](const Term& x, const Term& y) { return std::tie(x.s, x.t) < std::tie(y.s, y.t); });
    Mono m;
    for (auto& x : t) {
        if (x.a == 0)
            continue;
        if (!m.terms.empty() && m.terms.back().s == x.s && m.terms.back().t == x.t)
            m.terms.back().a += x.a;
        else
            m.terms.push_back(x);
    }
    return m;
}

size_t MonoHash::operator()(const Mono& m) const noexcept
{
    uint64_t h = 1469598103934665603ull;
    for (auto& t : m.terms) {
        for (uint32_t v : {t.s, t.t, t.a}) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 1099511628211ull;
        }
    }
    return static_cast<size_t>(h);
}

void lc_add(const Fp& f, LinComb& lc, const Mono& m, uint32_t c)
{
    c %= f.p();
    if (!c)
        return;
    auto [it, inserted] = lc.emplace(m, c);
    if (!inserted) {
        it->second = f.add(it->second, c);
        if (!it->second)
            lc.erase(it);
    }
}

std::pair<Mono, uint32_t> gamma_product(const Fp& f, const Mono& x, const Mono& y)
{
    Mono r;
    uint32_t c = 1;
    size_t i = 0, j = 0;
    auto key = [](const Term& t) { return std::make_pair(t.s, t.t); };
    while (i < x.terms.size() || j < y.terms.size()) {
        if (j == y.terms.size() || (i < x.terms.size() && key(x.terms[i]) < key(y.terms[j]))) {
            r.terms.push_back(x.terms[i++]);
        } else if (i == x.terms.size() || key(y.terms[j]) < key(x.terms[i])) {
            r.terms.push_back(y.terms[j++]);
        } else {
            Term t = x.terms[i];
            c = f.mul(c, f.binom(t.a + y.terms[j].a, t.a));
            t.a += y.terms[j].a;
            r.terms.push_back(t);
            ++i;
            ++j;
        }
    }
    return {r, c};
}

static uint32_t pow_mod(const Fp& f, uint32_t b, uint32_t e)
{
    uint32_t r = 1;
    while (e) {
        if (e & 1)
            r = f.mul(r, b);
        b = f.mul(b, b);
        e >>= 1;
    }
    return r;
}

template <class F>
static void for_each_composition(uint32_t total, size_t parts, F&& fn)
{
    std::vector<uint32_t> c(parts, 0);
    if (parts == 0) {
        if (total == 0)
            fn(c);
        return;
    }
    std::function<void(size_t, uint32_t)> rec = [&](size_t i, uint32_t left) {
        if (i + 1 == parts) {
            c[i] = left;
            fn(c);
            return;
        }
        for (uint32_t v = left + 1; v-- > 0;) {
            c[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, total);
}

LinComb expand(const Fp& f, const Mono& m, const std::function<UnitImage(uint32_t, uint32_t)>& image)
{
    LinComb cur;
    cur.emplace(Mono{}, 1);
    for (auto& term : m.terms) {
        UnitImage img = image(term.s, term.t);
        LinComb next;
        if (img.empty())
            return next;
        std::vector<std::pair<Mono, uint32_t>> pieces;
        for_each_composition(term.a, img.size(), [&](const std::vector<uint32_t>& c) {
            std::vector<Term> ts;
            uint32_t coef = 1;
            for (size_t i = 0; i < c.size(); ++i) {
                if (!c[i])
                    continue;
                coef = f.mul(coef, pow_mod(f, img[i].second % f.p(), c[i]));
                ts.push_back({img[i].first.first, img[i].first.second, c[i]});
            }
            if (!coef)
                return;
            // repeated units in the image merge through gamma_product
            Mono acc;
            for (auto& t : ts) {
                auto [pm, pc] = gamma_product(f, acc, Mono{{t}});
                acc = std::move(pm);
                coef = f.mul(coef, pc);
            }
            if (coef)
                pieces.emplace_back(std::move(acc), coef);
        });
        for (auto& [cm, cc] : cur)
            for (auto& [pm, pc] : pieces) {
                auto [prod, k] = gamma_product(f, cm, pm);
                lc_add(f, next, prod, f.mul(f.mul(cc, pc), k));
            }
        cur.swap(next);
    }
    return cur;
}

std::vector<std::pair<Mono, Mono>> comultiply(const Mono& m, uint32_t d1)
{
    std::vector<std::pair<Mono, Mono>> out;
    uint32_t total = m.degree();
    if (d1 > total)
        return out;
    std::vector<uint32_t> take(m.terms.size(), 0);
    std::vector<uint32_t> suffix(m.terms.size() + 1, 0);
    for (size_t i = m.terms.size(); i-- > 0;)
        suffix[i] = suffix[i + 1] + m.terms[i].a;
    std::function<void(size_t, uint32_t)> rec = [&](size_t i, uint32_t left) {
        if (i == m.terms.size()) {
            if (left)
                return;
            Mono a, b;
            for (size_t k = 0; k < m.terms.size(); ++k) {
                if (take[k])
                    a.terms.push_back({m.terms[k].s, m.terms[k].t, take[k]});
                if (m.terms[k].a > take[k])
                    b.terms.push_back({m.terms[k].s, m.terms[k].t, m.terms[k].a - take[k]});
            }
            out.emplace_back(std::move(a), std::move(b));
            return;
        }
        uint32_t hi = std::min(left, m.terms[i].a);
        uint32_t lo = left > suffix[i + 1] ? left - suffix[i + 1] : 0;
        for (uint32_t v = lo; v <= hi; ++v) {
            take[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, d1);
    return out;
}

std::optional<Mono> untwist(const Mono& m, uint32_t q)
{
    Mono r = m;
    for (auto& t : r.terms) {
        if (t.a % q)
            return std::nullopt;
        t.a /= q;
    }
    return r;
}

Mono twist(const Mono& m, uint32_t q)
{
    Mono r = m;
    for (auto& t : r.terms)
        t.a *= q;
    return r;
}

std::vector<std::vector<std::vector<uint32_t>>> contingency_tables(const Composition& rows, const Composition& cols)
{
    std::vector<std::vector<std::vector<uint32_t>>> out;
    uint64_t rs = 0, cs = 0;
    for (auto r : rows)
        rs += r;
    for (auto c : cols)
        cs += c;
    if (rs != cs)
        return out;
    std::vector<std::vector<uint32_t>> x(rows.size(), std::vector<uint32_t>(cols.size(), 0));
    Composition left = cols;
    std::function<void(size_t, size_t, uint32_t)> rec = [&](size_t i, size_t j, uint32_t rem) {
        if (i == rows.size()) {
            out.push_back(x);
            return;
        }
        if (j + 1 == cols.size()) {
            if (rem > left[j])
                return;
            x[i][j] = rem;
            left[j] -= rem;
            rec(i + 1, 0, i + 1 < rows.size() ? rows[i + 1] : 0);
            left[j] += rem;
            x[i][j] = 0;
            return;
        }
        uint32_t hi = std::min(rem, left[j]);
        for (uint32_t v = hi + 1; v-- > 0;) {
            x[i][j] = v;
            left[j] -= v;
            rec(i, j + 1, rem - v);
            left[j] += v;
        }
        x[i][j] = 0;
    };
    if (rows.empty()) {
        out.push_back(x);
        return out;
    }
    if (cols.empty()) {
        if (rs == 0)
            out.push_back(x);
        return out;
    }
    rec(0, 0, rows[0]);
    return out;
}

LinComb schur_product(const Fp& f, const Mono& a, const Mono& b)
{
    // group a's units by source and b's units by target
    std::map<uint32_t, std::vector<std::pair<uint32_t, uint32_t>>> fa, gb;
    for (auto& t : a.terms)
        fa[t.t].emplace_back(t.s, t.a);
    for (auto& t : b.terms)
        gb[t.s].emplace_back(t.t, t.a);
    LinComb out;
    for (auto& [v, list] : fa) {
        auto it = gb.find(v);
        if (it == gb.end())
            return out;
    }
    for (auto& [v, list] : gb)
        if (!fa.count(v))
            return out;

    struct Mid {
        std::vector<std::pair<uint32_t, uint32_t>> us, ts;
        std::vector<std::vector<std::vector<uint32_t>>> tables;
    };
    std::vector<Mid> mids;
    for (auto& [v, list] : fa) {
        Mid m;
        m.us = list;
        m.ts = gb[v];
        Composition r, c;
        for (auto& x : m.us)
            r.push_back(x.second);
        for (auto& x : m.ts)
            c.push_back(x.second);
        m.tables = contingency_tables(r, c);
        if (m.tables.empty())
            return out;
        mids.push_back(std::move(m));
    }
    std::vector<size_t> choice(mids.size(), 0);
    while (true) {
        std::map<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>> parts;
        for (size_t k = 0; k < mids.size(); ++k) {
            auto& tab = mids[k].tables[choice[k]];
            for (size_t i = 0; i < tab.size(); ++i)
                for (size_t j = 0; j < tab[i].size(); ++j)
                    if (tab[i][j])
                        parts[{mids[k].us[i].first, mids[k].ts[j].first}].push_back(tab[i][j]);
        }
        uint32_t coef = 1;
        std::vector<Term> terms;
        for (auto& [ut, ps] : parts) {
            coef = f.mul(coef, f.multinomial(ps));
            uint32_t s = 0;
            for (auto x : ps)
                s += x;
            terms.push_back({ut.first, ut.second, s});
        }
        if (coef)
            lc_add(f, out, Mono::from_terms(std::move(terms)), coef);
        size_t k = 0;
        while (k < mids.size() && ++choice[k] == mids[k].tables.size())
            choice[k++] = 0;
        if (k == mids.size())
            break;
    }
    return out;
}

LinComb schur_product(const Fp& f, const LinComb& a, const LinComb& b)
{
    LinComb out;
    for (auto& [ma, ca] : a)
        for (auto& [mb, cb] : b)
            for (auto& [m, c] : schur_product(f, ma, mb))
                lc_add(f, out, m, f.mul(f.mul(ca, cb), c));
    return out;
}

LinComb identity_element(const Fp& f, uint32_t d, uint32_t n)
{
    LinComb out;
    for (auto& c : compositions(d, n)) {
        std::vector<Term> t;
        for (uint32_t i = 0; i < n; ++i)
            if (c[i])
                t.push_back({i, i, c[i]});
        lc_add(f, out, Mono::from_terms(std::move(t)), 1);
    }
    return out;
}

std::vector<Mono> all_monomials(uint32_t d, uint32_t a, uint32_t b)
{
    std::vector<Mono> out;
    uint32_t units = a * b;
    if (units == 0) {
        if (d == 0)
            out.push_back(Mono{});
        return out;
    }
    std::vector<uint32_t> word(d, 0);
    std::function<void(uint32_t, uint32_t)> rec = [&](uint32_t i, uint32_t lo) {
        if (i == d) {
            std::vector<Term> t;
            for (uint32_t u : word)
                t.push_back({u / a, u % a, 1});
            out.push_back(Mono::from_terms(std::move(t)));
            return;
        }
        for (uint32_t u = lo; u < units; ++u) {
            word[i] = u;
            rec(i + 1, u);
        }
    };
    rec(0, 0);
    return out;
}

std::vector<Composition> compositions(uint32_t d, uint32_t parts)
{
    std::vector<Composition> out;
    for_each_composition(d, parts, [&](const std::vector<uint32_t>& c) { out.push_back(c); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Composition> partitions(uint32_t d, uint32_t len)
{
    std::vector<Composition> out;
    Composition cur;
    std::function<void(uint32_t, uint32_t)> rec = [&](uint32_t left, uint32_t maxpart) {
        if (left == 0) {
            if (cur.size() <= len) {
                Composition c = cur;
                c.resize(len, 0);
                out.push_back(c);
            }
            return;
        }
        if (cur.size() >= len)
            return;
        for (uint32_t v = std::min(left, maxpart); v >= 1; --v) {
            cur.push_back(v);
            rec(left - v, v);
            cur.pop_back();
        }
    };
    rec(d, d);
    return out;
}

bool is_partition(const Composition& c)
{
    for (size_t i = 1; i < c.size(); ++i)
        if (c[i] > c[i - 1])
            return false;
    return true;
}

} // namespace spf
