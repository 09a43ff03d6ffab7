#include "report.hpp"

#include <iomanip>
#include <set>
#include <sstream>

namespace spf::report {

json to_json(const Bigraded& b)
{
    json a = json::array();
    for (auto& [k, v] : b)
        a.push_back({{"s", k.first}, {"t", k.second}, {"dim", v}});
    return a;
}

Bigraded bigraded_from_json(const json& j)
{
    Bigraded b;
    for (auto& e : j)
        b[{e.at("s").get<size_t>(), e.at("t").get<uint32_t>()}] = e.at("dim").get<size_t>();
    return b;
}

json to_json(const ExtReport& r)
{
    return {{"p", r.p}, {"n", r.n}, {"b0", r.b0}, {"b", r.b}, {"len", r.len}, {"dims", r.dims}, {"complete", r.complete}};
}

ExtReport ext_from_json(const json& j)
{
    ExtReport r;
    r.p = j.at("p");
    r.n = j.at("n");
    r.b0 = j.at("b0");
    r.b = j.at("b");
    r.len = j.at("len");
    r.dims = j.at("dims").get<std::vector<size_t>>();
    r.complete = j.at("complete");
    return r;
}

json to_json(const E2Page& e)
{
    return {{"p", e.p},           {"r", e.r}, {"expr", e.expr}, {"degrees", e.degrees}, {"t_values", e.t_values},
            {"entries", to_json(e.entries)}, {"totals", e.totals()}, {"complete", e.complete}};
}

E2Page e2_from_json(const json& j)
{
    E2Page e;
    e.p = j.at("p");
    e.r = j.at("r");
    e.expr = j.at("expr");
    e.degrees = j.at("degrees");
    e.t_values = j.at("t_values").get<std::vector<uint32_t>>();
    e.entries = bigraded_from_json(j.at("entries"));
    e.complete = j.at("complete");
    return e;
}

json to_json(const TwistedCohomology& t)
{
    return {{"dims", t.dims}, {"complete", t.complete}};
}

TwistedCohomology twisted_from_json(const json& j)
{
    TwistedCohomology t;
    t.dims = j.at("dims").get<std::vector<size_t>>();
    t.complete = j.at("complete");
    return t;
}

json to_json(const CollapseReport& c)
{
    json j{{"e2", to_json(c.e2)}, {"twisted", to_json(c.twisted)}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}, {"note", c.note}};
    j["euler"] = c.euler ? json(*c.euler) : json(nullptr);
    return j;
}

CollapseReport collapse_from_json(const json& j)
{
    CollapseReport c;
    c.e2 = e2_from_json(j.at("e2"));
    c.twisted = twisted_from_json(j.at("twisted"));
    c.lhs = j.at("lhs").get<std::vector<size_t>>();
    c.rhs = j.at("rhs").get<std::vector<size_t>>();
    c.pass = j.at("pass");
    c.note = j.at("note");
    if (!j.at("euler").is_null())
        c.euler = j.at("euler").get<bool>();
    return c;
}

json to_json(const PoincareReport& r)
{
    return {{"p", r.p},
            {"d", r.d},
            {"degrees", r.degrees},
            {"complete", r.complete},
            {"table", to_json(r.table)},
            {"closed_form", to_json(r.closed_form)},
            {"total", r.total()},
            {"closed_total", r.closed_total()}};
}

PoincareReport poincare_from_json(const json& j)
{
    PoincareReport r;
    r.p = j.at("p");
    r.d = j.at("d");
    r.degrees = j.at("degrees");
    r.complete = j.at("complete");
    r.table = bigraded_from_json(j.at("table"));
    r.closed_form = bigraded_from_json(j.at("closed_form"));
    return r;
}

json to_json(const UniversalClass& c)
{
    return {{"p", c.p},
            {"d", c.d},
            {"rep", c.rep},
            {"coords", c.coords},
            {"image", c.image},
            {"target", c.target},
            {"coset_dim", c.coset_dim},
            {"gamma_dims", c.gamma_dims},
            {"tensor_dims", c.tensor_dims},
            {"target_invariant", c.target_invariant},
            {"image_in_invariants", c.image_in_invariants},
            {"image_is_invariants", c.image_is_invariants}};
}

UniversalClass universal_from_json(const json& j)
{
    UniversalClass c;
    c.p = j.at("p");
    c.d = j.at("d");
    c.rep = j.at("rep").get<Vec>();
    c.coords = j.at("coords").get<Vec>();
    c.image = j.at("image").get<Vec>();
    c.target = j.at("target").get<Vec>();
    c.coset_dim = j.at("coset_dim");
    c.gamma_dims = j.at("gamma_dims").get<std::vector<size_t>>();
    c.tensor_dims = j.at("tensor_dims").get<std::vector<size_t>>();
    c.target_invariant = j.at("target_invariant");
    c.image_in_invariants = j.at("image_in_invariants");
    c.image_is_invariants = j.at("image_is_invariants");
    return c;
}

json to_json(const Verification& v)
{
    return {{"cocycle", v.cocycle}, {"nonzero", v.nonzero}, {"equation", v.equation}};
}

Verification verification_from_json(const json& j)
{
    Verification v;
    v.cocycle = j.at("cocycle");
    v.nonzero = j.at("nonzero");
    v.equation = j.at("equation");
    return v;
}

namespace {

std::string list(const std::vector<size_t>& v)
{
    std::ostringstream o;
    for (size_t k = 0; k < v.size(); ++k)
        o << (k ? " " : "") << v[k];
    return o.str();
}

std::string grid(const Bigraded& b, size_t degrees)
{
    std::set<uint32_t> ts;
    for (auto& [k, v] : b)
        ts.insert(k.second);
    std::ostringstream o;
    if (ts.empty())
        return "(empty)\n";
    o << std::setw(6) << "s\\t";
    for (auto t : ts)
        o << std::setw(5) << t;
    o << "\n";
    for (size_t s = 0; s < degrees; ++s) {
        o << std::setw(6) << s;
        for (auto t : ts) {
            auto it = b.find({s, t});
            o << std::setw(5) << (it == b.end() ? 0 : it->second);
        }
        o << "\n";
    }
    return o.str();
}

} // namespace

std::string table(const ExtReport& r)
{
    std::ostringstream o;
    o << "Ext^s(" << r.b0 << ", " << r.b << ") at p = " << r.p << ", n = " << r.n << "\n";
    for (size_t s = 0; s < r.dims.size(); ++s)
        o << "  s = " << s << ": " << r.dims[s] << "\n";
    if (!r.complete)
        o << "  (degrees >= " << r.dims.size() << " not computed)\n";
    return o.str();
}

std::string table(const E2Page& e)
{
    std::ostringstream o;
    o << "E_2^{s,t}(" << e.expr << ", r = " << e.r << ") at p = " << e.p << "\n" << grid(e.entries, e.degrees);
    o << "totals by s + t: " << list(e.totals()) << "\n";
    return o.str();
}

std::string table(const CollapseReport& c)
{
    std::ostringstream o;
    o << table(c.e2);
    o << "H^k(B^(r)):       " << list(c.rhs) << "\n";
    o << "Euler check: " << (c.euler ? (*c.euler ? "equal" : "different") : "not evaluated") << "\n";
    o << "verdict: " << (c.pass ? "PASS" : "FAIL") << "\n";
    if (!c.note.empty())
        o << "note: " << c.note << "\n";
    return o.str();
}

std::string table(const PoincareReport& r, bool closed_form)
{
    std::ostringstream o;
    o << "H^{s>0}((Gamma^" << r.d << " gl)^t_{E_1}) at p = " << r.p << "\n" << grid(r.table, r.degrees);
    o << "total: " << r.total() << "\n";
    if (closed_form) {
        o << "closed form expansion:\n" << grid(r.closed_form, r.degrees) << "closed form total: " << r.closed_total() << "\n";
        if (r.total() != r.closed_total())
            o << "note: the pieces of (Gamma^d gl)_{E_1} only reach t = " << 2 * (r.p - 1) * r.d
              << ", the closed form also has terms beyond\n";
    }
    return o.str();
}

std::string table(const UniversalClass& c, const Verification& v)
{
    std::ostringstream o;
    o << "c[" << c.d << "] at p = " << c.p << "\n";
    o << "  H^*((Gamma^" << c.d << " gl)^(1)): " << list(c.gamma_dims) << "\n";
    o << "  class coordinates: " << list(std::vector<size_t>(c.coords.begin(), c.coords.end())) << "\n";
    o << "  Delta_* c:         " << list(std::vector<size_t>(c.image.begin(), c.image.end())) << "\n";
    o << "  c[1]^" << c.d << ":            " << list(std::vector<size_t>(c.target.begin(), c.target.end())) << "\n";
    o << "  solution coset dimension: " << c.coset_dim << "\n";
    o << "  invariant target: " << (c.target_invariant ? "yes" : "no") << ", image = invariants in degree " << 2 * c.d << ": "
      << (c.image_is_invariants ? "yes" : "no") << "\n";
    o << "  cocycle: " << (v.cocycle ? "yes" : "no") << ", nonzero: " << (v.nonzero ? "yes" : "no")
      << ", equation: " << (v.equation ? "yes" : "no") << "\n";
    o << "verdict: " << (v.ok() ? "PASS" : "FAIL") << "\n";
    return o.str();
}

std::string csv(const Bigraded& b)
{
    std::ostringstream o;
    o << "s,t,dim\n";
    for (auto& [k, v] : b)
        o << k.first << "," << k.second << "," << v << "\n";
    return o.str();
}

std::string csv(const ExtReport& r)
{
    std::ostringstream o;
    o << "s,dim\n";
    for (size_t s = 0; s < r.dims.size(); ++s)
        o << s << "," << r.dims[s] << "\n";
    return o.str();
}

std::string csv(const CollapseReport& c)
{
    std::ostringstream o;
    o << "k,e2,twisted\n";
    for (size_t k = 0; k < c.lhs.size(); ++k)
        o << k << "," << c.lhs[k] << "," << c.rhs[k] << "\n";
    return o.str();
}

} // namespace spf::report
