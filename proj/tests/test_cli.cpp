#include <doctest.h>

#include "report.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <sys/wait.h>

using namespace spf;
using report::json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    std::string cmd = std::string(SPF_CLI) + " " + args + " 2>&1";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0)
        out.append(buf.data(), n);
    int status = pclose(pipe.release());
    return {WEXITSTATUS(status), out};
}

json strip(json j)
{
    j.erase("runtime_s");
    j.erase("cache_hits");
    return j;
}

} // namespace

TEST_CASE("exit codes")
{
    auto ok = run("ext --p 2 --b0 'gamma(1).gl' --b 'tw(1, gl)' --len 6");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("s = 2: 1") != std::string::npos);
    auto bad = run("ext --p 2 --b 'tw(1, gl'");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("position 8") != std::string::npos);
    CHECK(run("ext --p 4 --b gl").code == 1);
    CHECK(run("frobnicate").code == 1);
    auto big = run("universal --p 2 --d 9");
    CHECK(big.code == 2);
    CHECK(big.out.find("infeasible") != std::string::npos);
    auto col = run("collapse --p 2 --b gl --r 1");
    CHECK(col.code == 0);
    CHECK(col.out.find("verdict: PASS") != std::string::npos);
}

TEST_CASE("tables and csv")
{
    auto e2 = run("e2 --p 3 --b gl --r 1 --csv");
    CHECK(e2.code == 0);
    CHECK(e2.out == "s,t,dim\n0,0,1\n0,2,1\n0,4,1\n");
    auto small = run("poincare --p 2 --d 1 --csv");
    CHECK(small.out == "s,t,dim\n");
    auto pc = run("poincare --p 2 --closed-form");
    CHECK(pc.out.find("closed form total: 8") != std::string::npos);
    CHECK(pc.out.find("total: 4") != std::string::npos);
}

TEST_CASE("structured reports round trip and are reproducible")
{
    auto dir = std::filesystem::temp_directory_path() / "spf-cli-test";
    std::filesystem::remove_all(dir);
    std::string cache = " --cache-dir " + dir.string();
    for (std::string args : {"ext --p 2 --b 'tw(1, gl)' --len 4", "e2 --p 2 --b 'gamma(2).gl' --r 1 --len 4",
                             "collapse --p 3 --b gl --r 1", "poincare --p 2", "universal --p 2 --d 1"}) {
        INFO(args);
        auto a = run(args + " --json" + cache), b = run(args + " --json" + cache);
        REQUIRE(a.code == 0);
        json ja = json::parse(a.out), jb = json::parse(b.out);
        CHECK(ja["schema_version"] == report::kSchemaVersion);
        CHECK(strip(ja) == strip(jb));
        const json& r = ja["result"];
        std::string cmd = ja["command"];
        if (cmd == "ext")
            CHECK(report::to_json(report::ext_from_json(r)) == r);
        else if (cmd == "e2")
            CHECK(report::to_json(report::e2_from_json(r)) == r);
        else if (cmd == "collapse")
            CHECK(report::to_json(report::collapse_from_json(r)) == r);
        else if (cmd == "poincare")
            CHECK(report::to_json(report::poincare_from_json(r)) == r);
        else {
            CHECK(report::to_json(report::universal_from_json(r["class"])) == r["class"]);
            CHECK(report::to_json(report::verification_from_json(r["verification"])) == r["verification"]);
        }
    }
    std::filesystem::remove_all(dir);
}
