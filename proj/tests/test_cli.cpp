#include <cstdio>
#include <numeric>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(std::string const& args)
{
    std::string cmd = std::string(UNIVINT_BIN) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, f)) out.append(buf, n);
    int st = pclose(f);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

fs::path tmpdir()
{
    static fs::path d = [] {
        auto p = fs::temp_directory_path() / ("univint_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return d;
}

std::string ctx_file(std::string const& spec, std::string const& name)
{
    auto p = (tmpdir() / name).string();
    auto r = run("ctx select '" + spec + "' --out " + p);
    REQUIRE(r.code == 0);
    return p;
}

int count(std::string const& s, std::string const& needle)
{
    int n = 0;
    for (auto i = s.find(needle); i != std::string::npos; i = s.find(needle, i + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("useq text output")
{
    auto r = run("useq 11");
    CHECK(r.code == 0);
    CHECK(r.out == "0 1 5 6 10\n");
    CHECK(run("useq 12").code == 1);
    CHECK(run("useq --audit 40").code == 0);
}

TEST_CASE("hilbert product")
{
    auto r = run("hilbert Q 1 7 --all");
    CHECK(r.code == 0);
    CHECK(r.out.find("product=1") != std::string::npos);
    r = run("--format json hilbert Q 17 73 --all");
    CHECK(r.code == 0);
    CHECK(r.out.find("{\"product\":1}") != std::string::npos);
    r = run("--format json hilbert 'Q(sqrt,-1)' 3 '1+w' --all");
    CHECK(r.code == 0);
    CHECK(r.out.find("{\"product\":1}") != std::string::npos);
}

TEST_CASE("exit codes")
{
    CHECK(run("").code == 1);
    CHECK(run("nosuch").code == 1);
    CHECK(run("hilbert Q 0 7 --all").code == 1);
    CHECK(run("factor 'Q(sqrt,4)' 2").code == 1);
    CHECK(run("witness /nonexistent/ctx 1/3").code == 1);
    CHECK(run("--format xml useq 11").code == 1);
    CHECK(run("trace check Q 17 73 1/17").code == 1);
    CHECK(run("trace check Q 17 73 5").code == 0);
}

TEST_CASE("integrality sweep agrees with denominators")
{
    auto q = ctx_file("Q", "q.ctx");
    auto r = run("integrality sweep " + q + " --height 5");
    CHECK(r.code == 0);
    CHECK(count(r.out, "denominator_test=true") == count(r.out, "\n"));
    CHECK(count(r.out, "denominator_test=false") == 0);
    CHECK(count(r.out, "verified=false") == 0);
    // height 5 over Q: a/c with |a| <= 5, 1 <= c <= 5 in lowest terms
    int expect = 0;
    for (int c = 1; c <= 5; ++c)
        for (int a = -5; a <= 5; ++a)
            if (std::gcd(a, c) == 1 || (a == 0 && c == 1)) ++expect;
    CHECK(count(r.out, "\n") == expect);
}

TEST_CASE("witness files survive ctx verify")
{
    auto q = ctx_file("Q", "q2.ctx");
    auto dir = tmpdir() / "wit";
    fs::create_directories(dir);
    auto r = run("integrality sweep " + q + " --height 3 --dir " + dir.string());
    REQUIRE(r.code == 0);
    std::string files;
    int n = 0;
    for (auto const& e : fs::directory_iterator(dir)) {
        files += " --witness " + e.path().string();
        ++n;
    }
    REQUIRE(n > 0);
    r = run("ctx verify " + q + files);
    CHECK(r.code == 0);
    CHECK(count(r.out, "valid=true") == n + 1);

    auto w = (tmpdir() / "w.txt").string();
    REQUIRE(run("witness " + q + " 2/7 --out " + w).code == 0);
    std::ifstream in(w);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    auto i = text.find("y = ");
    REQUIRE(i != std::string::npos);
    text.replace(i, text.find('\n', i) - i, "y = 7");
    std::ofstream(w) << text;
    r = run("ctx verify " + q + " --witness " + w);
    CHECK(r.code == 1);
    CHECK(r.out.find("valid=false") != std::string::npos);
}

TEST_CASE("config file and determinism")
{
    auto cfg = (tmpdir() / "cfg.ini").string();
    std::ofstream(cfg) << "format = json\n";
    auto r = run("--config " + cfg + " useq 11");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"U\":\"0 1 5 6 10\"") != std::string::npos);
    auto env = run("useq 11");
    CHECK(env.out == "0 1 5 6 10\n");

    auto q = ctx_file("Q(sqrt,5)", "r.ctx");
    auto a = run("audit all " + q);
    auto b = run("audit all " + q);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto s1 = run("integrality sweep " + q + " --height 2");
    auto s2 = run("integrality sweep " + q + " --height 2");
    CHECK(s1.out == s2.out);
}
