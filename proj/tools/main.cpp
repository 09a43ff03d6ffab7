#include "report.hpp"

#include "spf/budget.hpp"
#include "spf/constructions.hpp"
#include "spf/expr.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

using namespace spf;
using report::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kFail = 3 };

struct Config {
    uint32_t p = 2;
    uint32_t r = 1;
    uint32_t d = 0;
    uint32_t n = 0;
    size_t len = 0;
    std::string b0 = "", b = "gl";
    std::string cache_dir;
    bool json_out = false, csv_out = false, closed_form = false;
    double max_dim = kDefaultMaxDim;
    unsigned threads = 1;
};

json config_json(const std::string& cmd, const Config& c)
{
    json j{{"p", c.p}, {"max_dim", c.max_dim}, {"threads", c.threads}};
    if (cmd == "ext")
        j.update({{"b0", c.b0}, {"b", c.b}, {"len", c.len}, {"n", c.n}});
    if (cmd == "e2" || cmd == "collapse")
        j.update({{"b", c.b}, {"r", c.r}, {"len", c.len}});
    if (cmd == "universal" || cmd == "poincare")
        j.update({{"d", c.d}, {"len", c.len}});
    if (!c.cache_dir.empty())
        j["cache_dir"] = c.cache_dir;
    return j;
}

void print_parse_error(const std::string& text, const ParseError& e)
{
    std::cerr << "error: " << e.what() << "\n  " << text << "\n  " << std::string(std::min(e.pos, text.size()), ' ') << "^\n";
}

uint32_t diagonal_degree(const std::string& expr, uint32_t p)
{
    auto [dl, dr] = bidegree(parse_bifunctor(expr), p);
    return static_cast<uint32_t>(std::max(dl, dr));
}

int run(const std::string& cmd, Config& c)
{
    auto t0 = std::chrono::steady_clock::now();
    json result;
    std::string text;
    std::optional<bool> verdict;

    if (cmd == "ext") {
        std::string b0 = c.b0.empty() ? "gamma(" + std::to_string(diagonal_degree(c.b, c.p)) + ").gl" : c.b0;
        auto e0 = parse_bifunctor(b0);
        auto e = parse_bifunctor(c.b);
        auto target = bidegree(e, c.p);
        if (bidegree(e0, c.p) != target && e0->kind == BifunctorExpr::Kind::Gl && e0->f->kind == FunctorExpr::Kind::Gamma &&
            target.first == target.second) {
            std::string fixed = "gamma(" + std::to_string(target.first) + ").gl";
            std::cerr << "note: reading --b0 " << b0 << " as " << fixed << " (bifunctor cohomology in the degree of --b)\n";
            b0 = fixed;
            e0 = parse_bifunctor(b0);
        }
        auto [dl, dr] = bidegree(e0, c.p);
        if (bidegree(e, c.p) != std::make_pair(dl, dr))
            throw std::invalid_argument("the two bifunctors have different bidegrees");
        uint32_t D = static_cast<uint32_t>(std::max(dl, dr));
        check_budget(D, c.max_dim);
        uint32_t n = c.n ? c.n : std::max<uint32_t>(D, 1);
        if (n < D)
            throw std::invalid_argument("evaluation dimension below the degree");
        auto L = make_side(c.p, static_cast<uint32_t>(dl), n, SchurSide::Kind::Dominant);
        auto R = make_side(c.p, static_cast<uint32_t>(dr), n, SchurSide::Kind::Dominant);
        auto M0 = std::make_shared<EvaluatedModule>(compile(e0, c.p), L, R);
        auto M = std::make_shared<EvaluatedModule>(compile(e, c.p), L, R);
        size_t len = c.len ? c.len : 2 * D + 2;
        Resolution res = cached_resolution(M0, to_string(e0) + "@" + std::to_string(n), len);
        report::ExtReport rep{c.p, n, b0, c.b, len, ext_dims(res, *M, len), is_complete(res)};
        result = report::to_json(rep);
        text = c.csv_out ? report::csv(rep) : report::table(rep);
    } else if (cmd == "e2" || cmd == "collapse") {
        uint32_t d = diagonal_degree(c.b, c.p);
        uint32_t D = d * static_cast<uint32_t>(ipow(c.p, c.r));
        check_budget(cmd == "e2" ? d : D, c.max_dim);
        size_t len = c.len ? c.len : 2 * D + 1;
        if (cmd == "e2") {
            auto e = e2_page(c.b, c.p, c.r, len);
            result = report::to_json(e);
            text = c.csv_out ? report::csv(e.entries) : report::table(e);
        } else {
            auto rep = collapse_check(c.b, c.p, c.r, len);
            result = report::to_json(rep);
            text = c.csv_out ? report::csv(rep) : report::table(rep);
            verdict = rep.pass;
        }
    } else if (cmd == "poincare") {
        uint32_t d = c.d ? c.d : c.p;
        check_budget(d, c.max_dim);
        size_t len = c.len ? c.len : 2 * d + 4;
        auto rep = norm_complex_cohomology(c.p, len, d);
        result = report::to_json(rep);
        if (c.csv_out)
            text = report::csv(rep.table) + (c.closed_form ? "closed form\n" + report::csv(rep.closed_form) : "");
        else
            text = report::table(rep, c.closed_form);
    } else if (cmd == "universal") {
        uint32_t d = c.d ? c.d : 1;
        UniversalContext ctx(c.p, d, c.max_dim);
        auto cls = build_universal_class(ctx);
        auto v = verify_class(cls, ctx);
        result = {{"class", report::to_json(cls)}, {"verification", report::to_json(v)}};
        text = report::table(cls, v);
        verdict = v.ok();
    }

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.json_out) {
        json doc{{"schema_version", report::kSchemaVersion},
                 {"command", cmd},
                 {"config", config_json(cmd, c)},
                 {"result", result},
                 {"runtime_s", secs},
                 {"cache_hits", resolution_cache_hits()}};
        doc["verdict"] = verdict ? json(*verdict ? "PASS" : "FAIL") : json(nullptr);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << text;
    }
    return verdict && !*verdict ? kFail : kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Strict polynomial bifunctor cohomology over F_p"};
    app.require_subcommand(1);
    Config c;
    if (const char* env = std::getenv("SPF_CACHE_DIR"))
        c.cache_dir = env;

    auto common = [&](CLI::App* s) {
        s->add_option("--p", c.p, "prime")->required();
        s->add_option("--len", c.len, "number of cohomological degrees computed");
        s->add_option("--cache-dir", c.cache_dir, "resolution cache directory (default: $SPF_CACHE_DIR)");
        s->add_option("--max-dim", c.max_dim, "size budget on module dimensions")->check(CLI::PositiveNumber);
        s->add_option("--threads", c.threads, "thread budget")->check(CLI::PositiveNumber);
        s->add_flag("--json", c.json_out, "structured output");
        s->add_flag("--csv", c.csv_out, "CSV tables");
    };
    auto* ext = app.add_subcommand("ext", "Ext^*(B0, B)");
    common(ext);
    ext->add_option("--b0", c.b0, "first argument (default gamma(d).gl)");
    ext->add_option("--b", c.b, "second argument")->required();
    ext->add_option("--n", c.n, "evaluation dimension");
    auto* e2 = app.add_subcommand("e2", "second page of the twisting spectral sequence");
    auto* col = app.add_subcommand("collapse", "compare the E2 page with H^*(B^(r))");
    for (auto* s : {e2, col}) {
        common(s);
        s->add_option("--b", c.b, "bifunctor of bidegree (d, d)");
        s->add_option("--r", c.r, "twist")->check(CLI::PositiveNumber);
    }
    auto* uni = app.add_subcommand("universal", "construct and certify c[d]");
    common(uni);
    uni->add_option("--d", c.d, "degree")->check(CLI::PositiveNumber);
    auto* poi = app.add_subcommand("poincare", "H^{>0}((Gamma^d gl)_{E_1}) and the norm complex series");
    common(poi);
    poi->add_option("--d", c.d, "degree (default p)")->check(CLI::PositiveNumber);
    poi->add_flag("--closed-form", c.closed_form, "print the closed form expansion alongside");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    if (!spf::is_prime(c.p)) {
        std::cerr << "error: p must be prime\n";
        return kUsage;
    }
    if (!c.cache_dir.empty())
        setenv("SPF_CACHE_DIR", c.cache_dir.c_str(), 1);
    std::string cmd = app.get_subcommands().front()->get_name();
    for (const std::string* text : {&c.b0, &c.b}) {
        if (text->empty())
            continue;
        try {
            parse_bifunctor(*text);
        } catch (const ParseError& e) {
            print_parse_error(*text, e);
            return kUsage;
        }
    }
    try {
        return run(cmd, c);
    } catch (const Infeasible& e) {
        if (c.json_out)
            std::cout << json{{"schema_version", report::kSchemaVersion}, {"command", cmd}, {"config", config_json(cmd, c)},
                              {"infeasible", {{"message", e.what()}, {"estimate", e.estimate}, {"budget", e.budget}}}}
                             .dump(2)
                      << "\n";
        else
            std::cerr << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
