#include "spf/expr.hpp"

#include <cctype>
#include <sstream>

namespace spf {

uint64_t ipow(uint64_t b, uint32_t e)
{
    uint64_t r = 1;
    while (e--)
        r *= b;
    return r;
}

uint32_t ParamSpace::dim(uint32_t p) const
{
    return kind == Kind::Trivial ? value : static_cast<uint32_t>(ipow(p, value));
}

std::vector<uint32_t> ParamSpace::degrees(uint32_t p) const
{
    std::vector<uint32_t> d(dim(p), 0);
    if (kind == Kind::E)
        for (uint32_t j = 0; j < d.size(); ++j)
            d[j] = 2 * j;
    return d;
}

std::string ParamSpace::str() const
{
    return (kind == Kind::E ? "E(" : "k(") + std::to_string(value) + ")";
}

namespace {

template <class K>
FExpr fnode(K kind, uint32_t n, FExpr a = nullptr, FExpr b = nullptr, ParamSpace z = {})
{
    auto e = std::make_shared<FunctorExpr>();
    e->kind = kind;
    e->n = n;
    e->a = std::move(a);
    e->b = std::move(b);
    e->z = z;
    return e;
}

std::shared_ptr<BifunctorExpr> bnode(BifunctorExpr::Kind kind)
{
    auto e = std::make_shared<BifunctorExpr>();
    e->kind = kind;
    return e;
}

} // namespace

namespace fx {
using K = FunctorExpr::Kind;
FExpr id() { return fnode(K::Id, 1); }
FExpr gamma(uint32_t d) { return fnode(K::Gamma, d); }
FExpr sym(uint32_t d) { return fnode(K::Sym, d); }
FExpr lambda(uint32_t d) { return fnode(K::Lambda, d); }
FExpr otimes(uint32_t d) { return fnode(K::Otimes, d); }
FExpr tensor(FExpr a, FExpr b) { return fnode(K::Tensor, 0, std::move(a), std::move(b)); }
FExpr dual(FExpr a) { return fnode(K::Dual, 0, std::move(a)); }
FExpr tw(uint32_t r, FExpr a) { return fnode(K::Twist, r, std::move(a)); }
FExpr param(FExpr a, ParamSpace z) { return fnode(K::LowerParam, 0, std::move(a), nullptr, z); }
FExpr uparam(FExpr a, ParamSpace z)
{
    if (z.graded())
        throw std::invalid_argument("upper parametrization by a graded space is not supported");
    return fnode(K::UpperParam, 0, std::move(a), nullptr, z);
}
} // namespace fx

namespace bx {
using K = BifunctorExpr::Kind;
BExpr hom(FExpr f, FExpr g)
{
    auto e = bnode(K::Hom);
    e->f = std::move(f);
    e->g = std::move(g);
    return e;
}
BExpr gl(FExpr f)
{
    auto e = bnode(K::Gl);
    e->f = std::move(f);
    return e;
}
BExpr tensor(BExpr a, BExpr b)
{
    auto e = bnode(K::Tensor);
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}
BExpr dual(BExpr a)
{
    auto e = bnode(K::Dual);
    e->a = std::move(a);
    return e;
}
BExpr tw(uint32_t r, BExpr a)
{
    auto e = bnode(K::Twist);
    e->r = r;
    e->a = std::move(a);
    return e;
}
BExpr param(BExpr a, ParamSpace z)
{
    auto e = bnode(K::LowerParam);
    e->a = std::move(a);
    e->z = z;
    return e;
}
BExpr proj(uint32_t d, uint32_t x, uint32_t e_, uint32_t y)
{
    auto e = bnode(K::Proj);
    e->d = d, e->x = x, e->e = e_, e->y = y;
    return e;
}
BExpr inj(uint32_t d, uint32_t x, uint32_t e_, uint32_t y)
{
    auto e = bnode(K::Inj);
    e->d = d, e->x = x, e->e = e_, e->y = y;
    return e;
}
} // namespace bx

uint64_t degree(const FExpr& e, uint32_t p)
{
    using K = FunctorExpr::Kind;
    switch (e->kind) {
    case K::Id: return 1;
    case K::Gamma:
    case K::Sym:
    case K::Lambda:
    case K::Otimes: return e->n;
    case K::Tensor: return degree(e->a, p) + degree(e->b, p);
    case K::Twist: return ipow(p, e->n) * degree(e->a, p);
    case K::Dual:
    case K::LowerParam:
    case K::UpperParam: return degree(e->a, p);
    }
    return 0;
}

std::pair<uint64_t, uint64_t> bidegree(const BExpr& e, uint32_t p)
{
    using K = BifunctorExpr::Kind;
    switch (e->kind) {
    case K::Hom: return {degree(e->f, p), degree(e->g, p)};
    case K::Gl: {
        auto d = degree(e->f, p);
        return {d, d};
    }
    case K::Tensor: {
        auto x = bidegree(e->a, p), y = bidegree(e->b, p);
        return {x.first + y.first, x.second + y.second};
    }
    case K::Twist: {
        auto x = bidegree(e->a, p);
        uint64_t q = ipow(p, e->r);
        return {x.first * q, x.second * q};
    }
    case K::Dual:
    case K::LowerParam: return bidegree(e->a, p);
    case K::Proj:
    case K::Inj: return {e->d, e->e};
    }
    return {0, 0};
}

std::string to_string(const FExpr& e)
{
    using K = FunctorExpr::Kind;
    switch (e->kind) {
    case K::Id: return "id";
    case K::Gamma: return "gamma(" + std::to_string(e->n) + ")";
    case K::Sym: return "sym(" + std::to_string(e->n) + ")";
    case K::Lambda: return "lambda(" + std::to_string(e->n) + ")";
    case K::Otimes: return "otimes(" + std::to_string(e->n) + ")";
    case K::Tensor: return "tensor(" + to_string(e->a) + ", " + to_string(e->b) + ")";
    case K::Dual: return "dual(" + to_string(e->a) + ")";
    case K::Twist: return "tw(" + std::to_string(e->n) + ", " + to_string(e->a) + ")";
    case K::LowerParam: return "param(" + to_string(e->a) + ", " + e->z.str() + ")";
    case K::UpperParam: return "uparam(" + to_string(e->a) + ", " + e->z.str() + ")";
    }
    return "?";
}

std::string to_string(const BExpr& e)
{
    using K = BifunctorExpr::Kind;
    auto quad = [&](const char* name) {
        std::ostringstream o;
        o << name << '(' << e->d << ", " << e->x << ", " << e->e << ", " << e->y << ')';
        return o.str();
    };
    switch (e->kind) {
    case K::Hom: return "hom(" + to_string(e->f) + ", " + to_string(e->g) + ")";
    case K::Gl: return e->f->kind == FunctorExpr::Kind::Id ? "gl" : to_string(e->f) + ".gl";
    case K::Tensor: return "tensor(" + to_string(e->a) + ", " + to_string(e->b) + ")";
    case K::Dual: return "dual(" + to_string(e->a) + ")";
    case K::Twist: return "tw(" + std::to_string(e->r) + ", " + to_string(e->a) + ")";
    case K::LowerParam: return "param(" + to_string(e->a) + ", " + e->z.str() + ")";
    case K::Proj: return quad("proj");
    case K::Inj: return quad("inj");
    }
    return "?";
}

bool equal(const FExpr& a, const FExpr& b) { return to_string(a) == to_string(b); }
bool equal(const BExpr& a, const BExpr& b) { return to_string(a) == to_string(b); }

BExpr expand_standard(const BExpr& e)
{
    using K = BifunctorExpr::Kind;
    switch (e->kind) {
    case K::Proj:
        return bx::hom(fx::param(fx::sym(e->d), ParamSpace::trivial(e->x)), fx::param(fx::gamma(e->e), ParamSpace::trivial(e->y)));
    case K::Inj:
        return bx::hom(fx::param(fx::gamma(e->d), ParamSpace::trivial(e->x)), fx::param(fx::sym(e->e), ParamSpace::trivial(e->y)));
    case K::Tensor: return bx::tensor(expand_standard(e->a), expand_standard(e->b));
    case K::Dual: return bx::dual(expand_standard(e->a));
    case K::Twist: return bx::tw(e->r, expand_standard(e->a));
    case K::LowerParam: return bx::param(expand_standard(e->a), e->z);
    default: return e;
    }
}

FExpr dualize(const FExpr& e)
{
    using K = FunctorExpr::Kind;
    switch (e->kind) {
    case K::Id:
    case K::Lambda:
    case K::Otimes: return e;
    case K::Gamma: return fx::sym(e->n);
    case K::Sym: return fx::gamma(e->n);
    case K::Tensor: return fx::tensor(dualize(e->a), dualize(e->b));
    case K::Dual: return e->a;
    case K::Twist: return fx::tw(e->n, dualize(e->a));
    case K::LowerParam:
        if (e->z.graded())
            return fx::dual(e);
        return fx::param(dualize(e->a), e->z);
    case K::UpperParam: return fx::uparam(dualize(e->a), e->z);
    }
    return e;
}

BExpr dualize(const BExpr& e)
{
    using K = BifunctorExpr::Kind;
    switch (e->kind) {
    case K::Hom: return bx::hom(dualize(e->f), dualize(e->g));
    case K::Gl: return bx::gl(dualize(e->f));
    case K::Tensor: return bx::tensor(dualize(e->a), dualize(e->b));
    case K::Dual: return e->a;
    case K::Twist: return bx::tw(e->r, dualize(e->a));
    case K::LowerParam:
        if (e->z.graded())
            return bx::dual(e);
        return bx::param(dualize(e->a), e->z);
    case K::Proj: return bx::inj(e->d, e->x, e->e, e->y);
    case K::Inj: return bx::proj(e->d, e->x, e->e, e->y);
    }
    return e;
}

// ---------------------------------------------------------------------------
// Parsing

ParseError::ParseError(const std::string& msg, size_t at)
    : std::runtime_error("parse error at position " + std::to_string(at) + ": " + msg), pos(at)
{
}

namespace {

struct Node {
    std::string name;
    size_t pos = 0;
    std::vector<uint32_t> ints;
    std::vector<Node> kids;
    ParamSpace z;
    bool has_z = false;
    bool dot_gl = false;
};

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Node parse_all()
    {
        Node n = expr();
        skip();
        if (i_ != s_.size())
            throw ParseError("unexpected trailing input '" + s_.substr(i_) + "'", i_);
        return n;
    }

private:
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }
    bool peek(char c)
    {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    void expect(char c)
    {
        skip();
        if (i_ >= s_.size() || s_[i_] != c)
            throw ParseError(std::string("expected '") + c + "'", i_);
        ++i_;
    }
    std::string ident()
    {
        skip();
        size_t b = i_;
        while (i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
            ++i_;
        if (b == i_)
            throw ParseError("expected a name", b);
        return s_.substr(b, i_ - b);
    }
    uint32_t number()
    {
        skip();
        size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        if (b == i_)
            throw ParseError("expected a nonnegative integer", b);
        if (i_ - b > 6)
            throw ParseError("integer too large", b);
        return static_cast<uint32_t>(std::stoul(s_.substr(b, i_ - b)));
    }
    ParamSpace space()
    {
        skip();
        size_t at = i_;
        std::string n = ident();
        if (n == "E") {
            expect('(');
            uint32_t r = number();
            expect(')');
            if (r == 0)
                throw ParseError("E(r) requires r >= 1", at);
            return ParamSpace::er(r);
        }
        if (n == "k") {
            if (peek('(')) {
                expect('(');
                uint32_t d = number();
                expect(')');
                if (d == 0)
                    throw ParseError("k(n) requires n >= 1", at);
                return ParamSpace::trivial(d);
            }
            return ParamSpace::trivial(1);
        }
        throw ParseError("unknown parameter space '" + n + "' (expected E(r) or k(n))", at);
    }

    Node expr()
    {
        Node n = primary();
        while (peek('.')) {
            size_t at = i_;
            expect('.');
            std::string g = ident();
            if (g != "gl")
                throw ParseError("only '.gl' may follow '.'", at);
            Node w;
            w.name = ".gl";
            w.pos = at;
            w.kids.push_back(std::move(n));
            n = std::move(w);
        }
        return n;
    }

    Node primary()
    {
        skip();
        Node n;
        n.pos = i_;
        if (peek('(')) {
            expect('(');
            Node inner = expr();
            expect(')');
            return inner;
        }
        n.name = ident();
        const std::string& k = n.name;
        if (k == "id" || k == "gl")
            return n;
        if (k == "gamma" || k == "sym" || k == "lambda" || k == "otimes") {
            expect('(');
            n.ints.push_back(number());
            expect(')');
            return n;
        }
        if (k == "proj" || k == "inj") {
            expect('(');
            for (int j = 0; j < 4; ++j) {
                if (j)
                    expect(',');
                n.ints.push_back(number());
            }
            expect(')');
            return n;
        }
        if (k == "tensor" || k == "hom") {
            expect('(');
            n.kids.push_back(expr());
            expect(',');
            n.kids.push_back(expr());
            expect(')');
            return n;
        }
        if (k == "dual") {
            expect('(');
            n.kids.push_back(expr());
            expect(')');
            return n;
        }
        if (k == "tw") {
            expect('(');
            n.ints.push_back(number());
            expect(',');
            n.kids.push_back(expr());
            expect(')');
            return n;
        }
        if (k == "param" || k == "uparam") {
            expect('(');
            n.kids.push_back(expr());
            expect(',');
            n.z = space();
            n.has_z = true;
            expect(')');
            return n;
        }
        throw ParseError("unknown constructor '" + k + "'", n.pos);
    }

    const std::string& s_;
    size_t i_ = 0;
};

bool is_bi(const Node& n)
{
    if (n.name == "gl" || n.name == ".gl" || n.name == "hom" || n.name == "proj" || n.name == "inj")
        return true;
    if (n.name == "tensor" || n.name == "dual" || n.name == "tw" || n.name == "param")
        return is_bi(n.kids[0]);
    return false;
}

FExpr to_f(const Node& n)
{
    if (is_bi(n))
        throw ParseError("expected a one-variable functor, found a bifunctor", n.pos);
    const std::string& k = n.name;
    if (k == "id")
        return fx::id();
    if (k == "gamma")
        return fx::gamma(n.ints[0]);
    if (k == "sym")
        return fx::sym(n.ints[0]);
    if (k == "lambda")
        return fx::lambda(n.ints[0]);
    if (k == "otimes")
        return fx::otimes(n.ints[0]);
    if (k == "tensor")
        return fx::tensor(to_f(n.kids[0]), to_f(n.kids[1]));
    if (k == "dual")
        return fx::dual(to_f(n.kids[0]));
    if (k == "tw") {
        if (n.ints[0] == 0)
            throw ParseError("tw(r, ...) requires r >= 1", n.pos);
        return fx::tw(n.ints[0], to_f(n.kids[0]));
    }
    if (k == "param")
        return fx::param(to_f(n.kids[0]), n.z);
    if (k == "uparam") {
        if (n.z.graded())
            throw ParseError("uparam does not accept a graded space", n.pos);
        return fx::uparam(to_f(n.kids[0]), n.z);
    }
    throw ParseError("'" + k + "' is not a one-variable functor", n.pos);
}

BExpr to_b(const Node& n)
{
    const std::string& k = n.name;
    if (!is_bi(n))
        throw ParseError("expected a bifunctor (use '.gl', hom(F,G), proj or inj)", n.pos);
    if (k == "gl")
        return bx::gl(fx::id());
    if (k == ".gl")
        return bx::gl(to_f(n.kids[0]));
    if (k == "hom")
        return bx::hom(to_f(n.kids[0]), to_f(n.kids[1]));
    if (k == "proj")
        return bx::proj(n.ints[0], n.ints[1], n.ints[2], n.ints[3]);
    if (k == "inj")
        return bx::inj(n.ints[0], n.ints[1], n.ints[2], n.ints[3]);
    if (k == "tensor") {
        if (!is_bi(n.kids[1]))
            throw ParseError("tensor of a bifunctor with a one-variable functor", n.kids[1].pos);
        return bx::tensor(to_b(n.kids[0]), to_b(n.kids[1]));
    }
    if (k == "dual")
        return bx::dual(to_b(n.kids[0]));
    if (k == "tw") {
        if (n.ints[0] == 0)
            throw ParseError("tw(r, ...) requires r >= 1", n.pos);
        return bx::tw(n.ints[0], to_b(n.kids[0]));
    }
    if (k == "param")
        return bx::param(to_b(n.kids[0]), n.z);
    throw ParseError("'" + k + "' is not a bifunctor constructor", n.pos);
}

} // namespace

FExpr parse_functor(const std::string& text)
{
    Parser ps(text);
    return to_f(ps.parse_all());
}

BExpr parse_bifunctor(const std::string& text)
{
    Parser ps(text);
    return to_b(ps.parse_all());
}

} // namespace spf
