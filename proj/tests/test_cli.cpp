#include "doctest.h"
#include "support.hpp"

#include "rht/report.hpp"

#include <cstdlib>
#include <sys/wait.h>

using namespace rht;
using rht::test::data;
using rht::test::fixture;
using rht::test::Gen;

namespace {

const char* const fixtures[] = {"s2.ring",   "s2.cdga",   "cp2.ring",       "cp2.cdga",        "s2s2.ring",
                                "hp2.ring",  "s3s3.ring", "wedge.ring",     "wedge_seed.cdga", "wedge_table.cdga",
                                "sphere_wedge.ring"};

bool same_algebra(const Cdga& a, const Cdga& b)
{
    if (a.generators() != b.generators() || a.top_degree() != b.top_degree())
        return false;
    for (std::size_t i = 0; i < a.generator_count(); ++i)
        if (a.d_of_generator(i).terms() != b.d_of_generator(i).terms())
            return false;
    for (int k = 0; k <= 12; ++k)
        if (a.dimension(k) != b.dimension(k))
            return false;
    return true;
}

int run(const std::string& args)
{
    const std::string cmd = std::string(RHT_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int parse_line(const std::string& text)
{
    try {
        parse_presentation(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST_CASE("fixtures round-trip through the printer")
{
    for (const char* f : fixtures) {
        CAPTURE(f);
        const Presentation p = fixture(f);
        const std::string text = format_presentation(p);
        const Presentation q = parse_presentation(text);
        CHECK(format_presentation(q) == text);
        CHECK(same_algebra(p.algebra, q.algebra));
    }
}

TEST_CASE("property: random presentations round-trip")
{
    Gen g(81);
    for (int it = 0; it < 40; ++it) {
        const Cdga a = g.free_cdga(2 + g.below(3), 1 + g.below(3));
        Presentation p;
        p.name = "R" + std::to_string(it);
        p.algebra = a;
        const std::string text = format_presentation(p);
        const Presentation q = parse_presentation(text);
        CHECK(same_algebra(a, q.algebra));
        CHECK(format_presentation(q) == text);
    }
}

TEST_CASE("property: elements print and parse back")
{
    Gen g(82);
    const Cdga a = fixture("wedge_table.cdga").algebra;
    for (int it = 0; it < 200; ++it) {
        const Element x = g.element(a, g.degree(a, 13), 5);
        CHECK(parse_element(a, format_element(a, x)) == x);
    }
    CHECK(parse_element(a, "2*a*b - 1/2*b*a") == make_rational(5, 2) * a.multiply(a.gen("a"), a.gen("b")));
}

TEST_CASE("parse errors carry line numbers")
{
    CHECK(parse_line("cdga X\ngen a 2\ngen b 3\nd b = a\n") == 4);
    CHECK(parse_line("cdga X\ngen a 2\ngen a 3\n") == 3);
    CHECK(parse_line("cdga X\ngen a 2\nd q = a\n") == 3);
    CHECK(parse_line("ring X\ngen a 2\nrel a^\n") == 3);
    CHECK(parse_line("# comment\n\nfoo X\n") == 3);
    CHECK(parse_line("cdga X\ngen x 3\ngen y 2\ngen z 1\nd y = x\nd z = y\n") > 0);
    CHECK(parse_line("ring X\ngen a 2\ngen b 2\nrel a*b\nrel b^2\nfundamental 4\nduality\n") > 0);
}

TEST_CASE("bracket expressions")
{
    const Bracket b = parse_bracket("[[a,c],[2*a,[a,b]]]");
    CHECK(to_string(*parse_bracket(to_string(*b))) == to_string(*b));
    CHECK(b->left->left->name == "a");
    CHECK(b->right->left->multiplier == 2);
    CHECK_THROWS(parse_bracket("[a,b"));
    CHECK_THROWS(parse_bracket("[a b]"));
}

TEST_CASE("reports are deterministic and round-trip")
{
    const auto s2 = fixture("s2.ring");
    const auto table = fixture("wedge_table.cdga");
    const std::vector<std::pair<std::string, std::function<Report()>>> makers = {
        {"cohomology", [&] { return report_cohomology(s2, std::nullopt, 7); }},
        {"model", [&] { return report_model(fixture("wedge.ring"), 11, false); }},
        {"bigraded", [&] { return report_model(fixture("cp2.ring"), 12, true); }},
        {"distortion", [&] { return report_distortion(fixture("cp2.cdga"), "y", 12); }},
        {"scalable", [&] { return report_scalable("csum(3*(S2xS2))"); }},
        {"pair", [&] { return report_pair(table, "z", "[[a,c],[a,[a,b]]]", Rational(2), 13); }},
        {"verify", [&] {
             VerifyOptions o;
             o.only = {"signatures", "hopf"};
             return report_verify(o);
         }},
    };
    for (const auto& [name, make] : makers) {
        CAPTURE(name);
        const std::string first = render_machine(make());
        CHECK(render_machine(make()) == first);
        CHECK(render_machine(parse_report(first)) == first);
        CHECK(first.find("\"schema\": \"rht-report/1\"") != std::string::npos);
        CHECK_FALSE(render_text(make()).empty());
    }
    CHECK_THROWS_AS(parse_report("{\"schema\": \"other\"}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_report("not json"), std::invalid_argument);
}

TEST_CASE("report contents")
{
    const auto c = report_cohomology(fixture("s2.ring"), std::nullopt, 7);
    CHECK(c.doc["ranks"] == nlohmann::ordered_json::array({1, 0, 1, 0, 0, 0, 0, 0}));
    const auto w = report_cohomology(fixture("wedge_seed.cdga"), 6, 12);
    CHECK(w.doc["ranks"] == nlohmann::ordered_json::array({1}));
    const auto d = report_distortion(fixture("s2.cdga"), "b", 12);
    CHECK(d.doc["exponent"] == 4);
    const auto p = report_pair(fixture("wedge_table.cdga"), "z", "[[a,c],[a,[a,b]]]", Rational(2), 13);
    CHECK(p.doc["scaled"]["factor"] == "131072");
    CHECK(p.doc["scaled"]["law_holds"] == true);
    const auto s = report_scalable("csum(4*CP2)");
    CHECK(s.status() == "refuted");
    CHECK(s.exit_code() == 1);
    CHECK(s.doc["result"]["certificate"]["kind"] == "inertia");
    CHECK(report_scalable("csum(1*(S2xS2),1*CP2)").status() == "unknown");
    const auto low = report_model(fixture("s2.ring"), 1, false);
    CHECK(low.doc["generators"].empty());
    CHECK(low.doc["warnings"].size() == 1);
    CHECK_THROWS(report_distortion(fixture("s2.cdga"), "nope", 12));
}

TEST_CASE("an injected sign bug makes the battery fail and name the invariant")
{
    VerifyOptions o;
    o.inject_sign_bug = true;
    o.only = {"koszul", "massey"};
    const auto r = report_verify(o);
    CHECK(r.status() == "fail");
    for (const auto& c : r.doc["criteria"]) {
        CHECK(c["pass"] == false);
        const std::string detail = c["detail"].get<std::string>();
        const bool named = detail.find("d^2") != std::string::npos ||
                           detail.find("commutativity") != std::string::npos ||
                           detail.find("cocycle") != std::string::npos;
        CHECK(named);
    }
    CHECK_FALSE(fault::koszul_sign_fault());
    VerifyOptions bad;
    bad.only = {"nonsense"};
    CHECK_THROWS(run_verification(bad));
}

TEST_CASE("command-line exit codes")
{
    CHECK(run("cohomology " + data("s2.ring") + " --through 7") == 0);
    CHECK(run("--machine cohomology " + data("wedge_seed.cdga") + " --degree 6") == 0);
    CHECK(run("model " + data("cp2.ring") + " --bigraded --through 12") == 0);
    CHECK(run("distortion " + data("cp2.cdga") + " --class y") == 0);
    CHECK(run("distortion " + data("cp2.cdga") + " --class nope") == 2);
    CHECK(run("scalable 'csum(3*(S2xS2))'") == 0);
    CHECK(run("scalable 'csum(4*CP2)'") == 1);
    CHECK(run("scalable 'csum(1*(S2xS2),1*CP2)'") == 0);
    CHECK(run("scalable 'csum(4*CP2'") == 2);
    CHECK(run("pair " + data("wedge_table.cdga") + " --class u_b --bracket '[a,b]'") == 0);
    CHECK(run("pair " + data("wedge_table.cdga") + " --class u_b --bracket '[a,c]'") == 2);
    CHECK(run("pair " + data("wedge_table.cdga") + " --class z --bracket '[[a,c],[a,[a,b]]]' --scale N=2") == 0);
    CHECK(run("verify-paper --only signatures") == 0);
    CHECK(run("verify-paper --only koszul --inject-sign-bug") == 1);
    CHECK(run("cohomology /nonexistent/file.cdga --through 3") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("cohomology") == 2);
    CHECK(run("--help") == 0);
}

TEST_CASE("RHT_CAP sets the default cap")
{
    const std::string ok = std::string("RHT_CAP=5 ") + RHT_CLI + " cohomology " + data("s2.ring") + " >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(ok.c_str())) == 0);
    const std::string bad = std::string("RHT_CAP=x ") + RHT_CLI + " cohomology " + data("s2.ring") + " >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(bad.c_str())) == 2);
}
