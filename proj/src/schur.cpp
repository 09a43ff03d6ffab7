#include "spf/schur.hpp"

#include "spf/evaluate.hpp"

#include <algorithm>
#include <functional>

namespace spf {

SchurSide::SchurSide(uint32_t p, uint32_t d, uint32_t N, Kind kind) : p_(p), d_(d), N_(N), kind_(kind), f_(field(p))
{
    if (N < d)
        throw std::invalid_argument("Schur algebra evaluated below its degree");
    if (kind == Kind::Dominant) {
        weights_ = partitions(d, N);
        std::sort(weights_.begin(), weights_.end(), std::greater<>());
    } else {
        weights_ = compositions(d, N);
    }
    for (uint32_t i = 0; i < weights_.size(); ++i)
        windex_[weights_[i]] = i;
}

std::optional<uint32_t> SchurSide::weight_index(const Composition& w) const
{
    auto it = windex_.find(w);
    if (it == windex_.end())
        return std::nullopt;
    return it->second;
}

const std::vector<Mono>& SchurSide::monos(uint32_t i, uint32_t j) const
{
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_pair(i, j);
    auto it = monos_.find(key);
    if (it != monos_.end())
        return it->second;
    std::vector<Mono> out;
    for (auto& tab : contingency_tables(weights_[i], weights_[j])) {
        std::vector<Term> t;
        for (uint32_t s = 0; s < tab.size(); ++s)
            for (uint32_t u = 0; u < tab[s].size(); ++u)
                if (tab[s][u])
                    t.push_back({s, u, tab[s][u]});
        out.push_back(Mono::from_terms(std::move(t)));
    }
    std::sort(out.begin(), out.end());
    auto& idx = mindex_[key];
    for (uint32_t k = 0; k < out.size(); ++k)
        idx[out[k]] = k;
    return monos_.emplace(key, std::move(out)).first->second;
}

uint32_t SchurSide::mono_index(uint32_t i, uint32_t j, const Mono& m) const
{
    monos(i, j);
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return mindex_.at({i, j}).at(m);
}

const FpMatrix& SchurSide::left_mult(uint32_t i, uint32_t j, uint32_t a, uint32_t l) const
{
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_tuple(i, j, a, l);
    auto it = mult_.find(key);
    if (it != mult_.end())
        return *it->second;
    const auto& src = monos(j, l);
    const auto& dst = monos(i, l);
    const Mono& x = monos(i, j).at(a);
    auto m = std::make_unique<FpMatrix>(p_, dst.size(), src.size());
    for (uint32_t c = 0; c < src.size(); ++c)
        for (auto& [mono, v] : schur_product(f_, x, src[c]))
            m->add_to(mono_index(i, l, mono), c, v);
    return *mult_.emplace(key, std::move(m)).first->second;
}

namespace {

FExpr tensor_of(const std::vector<uint32_t>& parts, FExpr (*leaf)(uint32_t))
{
    FExpr e = leaf(parts.back());
    for (size_t k = parts.size() - 1; k-- > 0;)
        e = fx::tensor(leaf(parts[k]), e);
    return e;
}

} // namespace

// L(lambda) is the image of Gamma^lambda -> (x)^d -> (antisymmetrize columns) -> (x)^d -> S^lambda.
const SchurSide::Simple& SchurSide::simple(uint32_t lambda) const
{
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = simples_.find(lambda);
    if (it != simples_.end())
        return *it->second;
    std::vector<uint32_t> parts;
    for (auto v : weights_[lambda])
        if (v)
            parts.push_back(v);
    auto gam = compile(tensor_of(parts, fx::gamma), p_);
    auto sym = compile(tensor_of(parts, fx::sym), p_);
    std::vector<FNodePtr> gl, sl;
    for (auto v : parts) {
        gl.push_back(compile(fx::gamma(v), p_));
        sl.push_back(compile(fx::sym(v), p_));
    }
    size_t k = parts.size();
    std::vector<uint32_t> offset(k + 1, 0);
    for (size_t r = 0; r < k; ++r)
        offset[r + 1] = offset[r] + parts[r];
    // columns of the tableau as lists of positions
    std::vector<std::vector<uint32_t>> cols(parts[0]);
    for (size_t r = 0; r < k; ++r)
        for (uint32_t j = 0; j < parts[r]; ++j)
            cols[j].push_back(offset[r] + j);

    auto split = [&](const std::vector<FNodePtr>& nodes, uint64_t idx) {
        std::vector<uint32_t> out(k);
        for (size_t r = k; r-- > 0;) {
            size_t s = nodes[r]->basis(N_).size;
            out[r] = static_cast<uint32_t>(idx % s);
            idx /= s;
        }
        return out;
    };
    auto sym_index = [&](const std::vector<uint32_t>& word) {
        uint64_t idx = 0;
        for (size_t r = 0; r < k; ++r) {
            Composition c(N_, 0);
            for (uint32_t q = offset[r]; q < offset[r + 1]; ++q)
                c[word[q]]++;
            idx = idx * sl[r]->basis(N_).size + sl[r]->basis(N_).index.at(c);
        }
        return static_cast<uint32_t>(idx);
    };

    auto sim = std::make_unique<Simple>();
    sim->basis.resize(weights_.size());
    sim->coords.resize(weights_.size());
    const Basis& gb = gam->basis(N_);
    const Basis& sb = sym->basis(N_);
    for (uint32_t w = 0; w < weights_.size(); ++w) {
        auto sit = sb.by_weight.find(weights_[w]);
        auto git = gb.by_weight.find(weights_[w]);
        if (sit == sb.by_weight.end() || git == gb.by_weight.end()) {
            sim->basis[w] = FpMatrix(p_, 0, 0);
            continue;
        }
        sim->coords[w] = sit->second;
        std::map<uint32_t, uint32_t> local;
        for (uint32_t q = 0; q < sit->second.size(); ++q)
            local[sit->second[q]] = q;
        FpMatrix phi(p_, sit->second.size(), git->second.size());
        for (uint32_t c = 0; c < git->second.size(); ++c) {
            auto fac = split(gl, git->second[c]);
            // every word in the row-stabilizer orbit
            std::vector<std::vector<uint32_t>> rows(k);
            for (size_t r = 0; r < k; ++r) {
                const Label& ex = gl[r]->basis(N_).labels[fac[r]];
                for (uint32_t x = 0; x < N_; ++x)
                    rows[r].insert(rows[r].end(), ex[x], x);
            }
            std::vector<uint32_t> word(d_);
            std::function<void(size_t)> orbit = [&](size_t r) {
                if (r == k) {
                    // signed column permutations
                    std::vector<uint32_t> w2 = word;
                    std::function<void(size_t, bool)> colrec = [&](size_t j, bool neg) {
                        if (j == cols.size()) {
                            uint32_t row = local.at(sym_index(w2));
                            phi.add_to(row, c, neg ? f_.neg(1) : 1);
                            return;
                        }
                        std::vector<uint32_t> perm(cols[j].size());
                        for (size_t q = 0; q < perm.size(); ++q)
                            perm[q] = static_cast<uint32_t>(q);
                        do {
                            size_t inv = 0;
                            for (size_t x = 0; x < perm.size(); ++x)
                                for (size_t y = x + 1; y < perm.size(); ++y)
                                    inv += perm[x] > perm[y];
                            for (size_t q = 0; q < perm.size(); ++q)
                                w2[cols[j][q]] = word[cols[j][perm[q]]];
                            colrec(j + 1, neg ^ (inv & 1));
                        } while (std::next_permutation(perm.begin(), perm.end()));
                        for (size_t q = 0; q < perm.size(); ++q)
                            w2[cols[j][q]] = word[cols[j][q]];
                    };
                    colrec(0, false);
                    return;
                }
                std::vector<uint32_t> ms = rows[r];
                do {
                    for (uint32_t q = 0; q < parts[r]; ++q)
                        word[offset[r] + q] = ms[q];
                    orbit(r + 1);
                } while (std::next_permutation(ms.begin(), ms.end()));
            };
            orbit(0);
        }
        sim->basis[w] = image_basis(phi);
    }
    return *simples_.emplace(lambda, std::move(sim)).first->second;
}

size_t SchurSide::simple_dim(uint32_t lambda, uint32_t nu) const
{
    return simple(lambda).basis[nu].cols();
}

void SchurSide::compute_radical() const
{
    if (rad_done_)
        return;
    if (kind_ != Kind::Dominant)
        throw std::logic_error("radical requested on a full Schur side");
    uint32_t W = static_cast<uint32_t>(weights_.size());
    std::vector<std::vector<uint32_t>> lparts(W);
    std::vector<FNodePtr> sym(W);
    for (uint32_t l = 0; l < W; ++l) {
        for (auto v : weights_[l])
            if (v)
                lparts[l].push_back(v);
        if (d_ > 0)
            sym[l] = compile(tensor_of(lparts[l], fx::sym), p_);
    }
    for (uint32_t i = 0; i < W; ++i)
        for (uint32_t j = 0; j < W; ++j) {
            const auto& ms = monos(i, j);
            if (d_ == 0) {
                rad_[{i, j}] = FpMatrix(p_, 0, ms.size());
                continue;
            }
            // equations: sum_a c_a S^lambda(a) v = 0 for v in L(lambda)_j, all lambda
            std::vector<Vec> eqs;
            for (uint32_t l = 0; l < W; ++l) {
                const Simple& s = simple(l);
                const FpMatrix& B = s.basis[j];
                if (B.cols() == 0 || s.coords[i].empty())
                    continue;
                std::map<uint32_t, uint32_t> local;
                for (uint32_t q = 0; q < s.coords[i].size(); ++q)
                    local[s.coords[i][q]] = q;
                size_t rows = s.coords[i].size();
                for (size_t v = 0; v < B.cols(); ++v) {
                    std::vector<Vec> block(rows, Vec(ms.size(), 0));
                    for (uint32_t a = 0; a < ms.size(); ++a) {
                        for (size_t q = 0; q < B.rows(); ++q) {
                            uint32_t coef = B.at(q, v);
                            if (!coef)
                                continue;
                            Terms t;
                            sym[l]->act(ms[a], N_, N_, s.coords[j][q], coef, t);
                            for (auto [idx, val] : t) {
                                uint32_t r = local.at(idx);
                                block[r][a] = f_.add(block[r][a], val);
                            }
                        }
                    }
                    for (auto& row : block)
                        eqs.push_back(std::move(row));
                }
            }
            FpMatrix E = eqs.empty() ? FpMatrix(p_, 0, ms.size()) : FpMatrix::from_rows(p_, eqs);
            rad_[{i, j}] = transpose(kernel_basis(E));
        }
    rad_done_ = true;
}

const FpMatrix& SchurSide::radical(uint32_t i, uint32_t j) const
{
    std::lock_guard<std::recursive_mutex> lock(mu_);
    compute_radical();
    return rad_.at({i, j});
}

SidePtr make_side(uint32_t p, uint32_t d, uint32_t N, SchurSide::Kind kind)
{
    static std::mutex mu;
    static std::map<std::tuple<uint32_t, uint32_t, uint32_t, int>, SidePtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, d, N, static_cast<int>(kind));
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    auto s = std::make_shared<const SchurSide>(p, d, N, kind);
    cache.emplace(key, s);
    return s;
}

} // namespace spf
