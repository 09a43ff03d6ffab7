#include "properties.hpp"

#include "spf/twisting.hpp"
#include "spf/universal.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace spf;

namespace {

struct Line {
    bool pass;
    std::string detail;
};

std::string join(const std::vector<size_t>& v)
{
    std::ostringstream o;
    for (size_t k = 0; k < v.size(); ++k)
        o << (k ? " " : "") << v[k];
    return o.str();
}

std::string join(const Vec& v) { return join(std::vector<size_t>(v.begin(), v.end())); }

std::vector<size_t> even_ones(uint32_t q)
{
    std::vector<size_t> v(2 * q + 1, 0);
    for (size_t k = 0; k < 2 * q; k += 2)
        v[k] = 1;
    return v;
}

double since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<std::pair<uint32_t, uint32_t>> kCases{{2, 1}, {3, 1}, {2, 2}};

Line criterion1()
{
    Line l{true, ""};
    for (auto [p, r] : kCases) {
        auto t0 = std::chrono::steady_clock::now();
        uint32_t q = static_cast<uint32_t>(ipow(p, r));
        auto h = twisted_cohomology("gl", p, r, 2 * q + 1);
        double t = since(t0);
        bool ok = h.dims == even_ones(q) && t < 300;
        l.pass = l.pass && ok;
        l.detail += "(p=" + std::to_string(p) + ",r=" + std::to_string(r) + ") [" + join(h.dims) + "] " + std::to_string(t) + "s; ";
    }
    return l;
}

Line criterion2()
{
    Line l{true, ""};
    for (auto [p, r] : kCases) {
        auto t0 = std::chrono::steady_clock::now();
        uint32_t q = static_cast<uint32_t>(ipow(p, r));
        auto c = collapse_check("gl", p, r, 2 * q + 1);
        double t = since(t0);
        l.pass = l.pass && c.pass && t < 600;
        l.detail += "(p=" + std::to_string(p) + ",r=" + std::to_string(r) + ") E2 [" + join(c.lhs) + "] vs [" + join(c.rhs) + "] " +
                    std::to_string(t) + "s; ";
    }
    return l;
}

Line criterion3()
{
    auto t0 = std::chrono::steady_clock::now();
    auto c = collapse_check("gamma(2).gl", 2, 1, 9);
    double t = since(t0);
    return {c.pass && t < 4 * 3600,
            "(Gamma^2 gl, r=1, p=2) E2 [" + join(c.lhs) + "] vs [" + join(c.rhs) + "] " + std::to_string(t) + "s"};
}

Line criterion4()
{
    auto t0 = std::chrono::steady_clock::now();
    auto c1 = class_c1(2);
    auto v1 = verify_class(c1);
    UniversalContext ctx(2, 2);
    auto cp = cup_power(ctx);
    auto c2 = build_universal_class(ctx);
    auto v2 = verify_class(c2, ctx);
    double t = since(t0);
    bool ok = c1.gamma_dims.at(2) == 1 && v1.ok() && cp.nonzero && cp.invariant && c2.image == c2.target && v2.ok() && t < 4 * 3600;
    return {ok, "dim H^2(gl^(1)) = " + std::to_string(c1.gamma_dims.at(2)) + ", c[1]^2 = [" + join(cp.coords) + "] swap-invariant " +
                    (cp.invariant ? "yes" : "no") + ", c[2] = [" + join(c2.coords) + "], Delta_* c[2] = [" + join(c2.image) +
                    "], coset dim " + std::to_string(c2.coset_dim) + ", " + std::to_string(t) + "s"};
}

Line criterion5()
{
    auto t0 = std::chrono::steady_clock::now();
    auto r = norm_complex_cohomology(2, 9);
    double t = since(t0);
    std::ostringstream o;
    o << "grand total " << r.total() << " (expected " << r.closed_total() << "); table";
    for (auto& [k, v] : r.table)
        o << " (" << k.first << "," << k.second << ")=" << v;
    std::set<uint32_t> ts;
    for (auto& [k, v] : r.closed_form)
        ts.insert(k.second);
    o << "; closed form t-degrees";
    for (auto x : ts)
        o << " " << x;
    o << "; pieces exist only for t <= " << 2 * (r.p - 1) * r.d << "; " << t << "s";
    return {r.total() == r.closed_total() && t < 1800, o.str()};
}

Line criterion6()
{
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, props::Outcome>> parts{
        {"yoneda", props::yoneda(20, 11)},
        {"duality", props::duality(10, 19)},
        {"kunneth", props::kunneth(10, 17)},
        {"parametrization", props::param_adjunction(10, 13)},
        {"twist injectivity", props::twist_injectivity()},
        {"ell adjunction", props::ell_adjunction()},
        {"Gamma vs tensor", props::gamma_tensor_vanishing()},
        {"linalg", props::linalg_random(100, 5)},
    };
    Line l{true, ""};
    for (auto& [name, o] : parts) {
        l.pass = l.pass && o.ok();
        l.detail += name + " " + o.summary() + "; ";
    }
    double t = since(t0);
    l.pass = l.pass && t < 600;
    l.detail += std::to_string(t) + "s";
    return l;
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<std::function<Line()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5, criterion6};
    std::set<int> chosen;
    for (int k = 1; k < argc; ++k)
        chosen.insert(std::atoi(argv[k]));
    bool all = true;
    for (size_t k = 0; k < criteria.size(); ++k) {
        if (!chosen.empty() && !chosen.count(static_cast<int>(k + 1)))
            continue;
        Line l;
        try {
            l = criteria[k]();
        } catch (const Infeasible& e) {
            l = {false, std::string("INFEASIBLE: ") + e.what()};
        } catch (const std::exception& e) {
            l = {false, std::string("error: ") + e.what()};
        }
        all = all && l.pass;
        std::cout << "criterion " << k + 1 << ": " << (l.pass ? "PASS" : "FAIL") << "  " << l.detail << std::endl;
    }
    return all ? 0 : 1;
}
