#include "doctest.h"
#include "support.hpp"

#include "rht/minimal_model.hpp"
#include "rht/whitehead.hpp"

using namespace rht;
using rht::test::fixture;
using rht::test::Gen;

namespace {

// Ranks l_1, l_2, ... of a free Lie algebra whose enveloping algebra has
// Hilbert series sum c_j s^j, from prod_j (1 - s^j)^{-l_j} = sum c_j s^j.
std::vector<long> lie_ranks(const std::vector<long>& c, int top)
{
    std::vector<long> l(static_cast<std::size_t>(top) + 1, 0);
    for (int j = 1; j <= top; ++j) {
        // series of prod_{i<j} (1 - s^i)^{-l_i} up to s^j
        std::vector<long> p(static_cast<std::size_t>(j) + 1, 0);
        p[0] = 1;
        for (int i = 1; i < j; ++i)
            for (long rep = 0; rep < l[i]; ++rep)
                for (int k = i; k <= j; ++k)
                    p[k] += p[k - i];
        l[j] = c[j] - p[j];
    }
    return l;
}

std::size_t count_degree(const Cdga& a, int k)
{
    std::size_t n = 0;
    for (const auto& g : a.generators())
        n += g.degree == k;
    return n;
}

} // namespace

TEST_CASE("S2 minimal model")
{
    const auto m = minimal_model(fixture("s2.ring").algebra, 7);
    REQUIRE(m.model.generator_count() == 2);
    CHECK(m.model.generator(0).degree == 2);
    CHECK(m.model.generator(1).degree == 3);
    const Element x = m.model.gen(m.model.generator(0).name);
    CHECK(m.model.d_of_generator(1) == m.model.multiply(x, x));
    const auto depth = depth_filtration(m);
    CHECK(depth.depth == std::vector<int>{0, 1});
    CHECK(distortion_exponent(m, m.model.generator(1).name).exponent == 4);
}

TEST_CASE("CP2 bigraded model")
{
    const auto m = bigraded_model(fixture("cp2.ring").algebra, 12);
    REQUIRE(m.model.generator_count() == 2);
    CHECK(m.bigraded);
    CHECK(m.model.generator(0).name == "x");
    CHECK(m.model.generator(0).stage == 0);
    CHECK(m.model.generator(1).degree == 5);
    CHECK(m.model.generator(1).stage == 1);
    CHECK(m.model.d_of_generator(1) == m.model.power(m.model.gen("x"), 3));
    CHECK(is_quasi_isomorphism(m.quasi_iso, 12));
}

TEST_CASE("cap below the first generator gives an empty model with a warning")
{
    const auto m = minimal_model(fixture("hp2.ring").algebra, 3);
    CHECK(m.trivial);
    CHECK(m.model.generator_count() == 0);
    REQUIRE(m.warnings.size() == 1);
}

TEST_CASE("wedge of spheres: generator counts match the free Lie algebra")
{
    // 1 / (1 - 2s - s^2)
    std::vector<long> c = {1, 2};
    for (int j = 2; j <= 6; ++j)
        c.push_back(2 * c[j - 1] + c[j - 2]);
    const auto l = lie_ranks(c, 6);
    const auto m = minimal_model(fixture("wedge.ring").algebra, 13);
    for (int j = 1; j <= 6; ++j)
        CHECK(count_degree(m.model, 2 * j + 1) == static_cast<std::size_t>(l[j]));
    CHECK(l[6] == 30);
    CHECK_FALSE(minimality_defect(m.model).has_value());
}

TEST_CASE("property: minimal models are minimal quasi-isomorphic and depth-consistent")
{
    for (const char* f : {"s2.ring", "cp2.ring", "s2s2.ring", "hp2.ring", "s3s3.ring", "wedge.ring", "cp2.cdga"}) {
        const auto m = minimal_model(fixture(f).algebra, 11);
        CHECK_FALSE(minimality_defect(m.model).has_value());
        CHECK(is_quasi_isomorphism(m.quasi_iso, 11));
        const auto depth = depth_filtration(m);
        for (std::size_t i = 0; i < m.model.generator_count(); ++i) {
            const Element& dv = m.model.d_of_generator(i);
            if (dv.is_zero())
                CHECK(depth.depth[i] == 0);
            else
                CHECK(depth.level(dv) == depth.depth[i] - 1);
        }
    }
}

TEST_CASE("property: grading automorphisms are dga maps and compose multiplicatively")
{
    Gen g(31);
    const auto m = bigraded_model(fixture("s2s2.ring").algebra, 9);
    for (int it = 0; it < 10; ++it) {
        const Rational s = g.rational(), t = g.rational();
        const DgaMorphism fs = grading_automorphism(m, s);
        const DgaMorphism ft = grading_automorphism(m, t);
        CHECK(compose(fs, ft).images() == grading_automorphism(m, s * t).images());
    }
}

TEST_CASE("distortion exponents")
{
    const Cdga cp2 = fixture("cp2.cdga").algebra;
    const auto d = distortion_exponent(cp2, "y");
    CHECK(d.exponent == 6);
    CHECK(d.sharpness == Sharpness::SharpIfScalable);
    CHECK(to_string(d.sharpness) == "sharp-if-scalable");
    CHECK(distortion_exponent(fixture("s2.cdga").algebra, "b").exponent == 4);
    CHECK(distortion_exponent(fixture("wedge_table.cdga").algebra, "z").exponent == 17);
    CHECK_THROWS(distortion_exponent(cp2, "nope"));
}

TEST_CASE("Whitehead pairings on the table")
{
    const Cdga t = fixture("wedge_table.cdga").algebra;
    CHECK(abs(whitehead_pair(t, "u_b", *parse_bracket("[a,b]"))) == 1);
    CHECK(abs(whitehead_pair(t, "v_b", *parse_bracket("[a,[a,b]]"))) == 1);
    const Bracket g1 = parse_bracket("[[a,c],[a,[a,b]]]");
    const Rational base = whitehead_pair(t, "z", *g1);
    REQUIRE(base != 0);
    for (long n = 1; n <= 5; ++n)
        CHECK(whitehead_pair(t, "z", *scale_by_degree(t, g1, n)) == power(Rational(n), 17) * base);
    CHECK(bracket_degree(t, *g1) == 13);
    CHECK_THROWS_AS(whitehead_pair(t, "u_b", *parse_bracket("[a,c]")), AlgebraError);
}

TEST_CASE("property: pairing is bilinear in the leaves")
{
    Gen g(41);
    const Cdga t = fixture("wedge_table.cdga").algebra;
    for (int it = 0; it < 20; ++it) {
        const Rational p = g.rational(), q = g.rational();
        const Bracket e = BracketExpr::node(BracketExpr::leaf("a", p), BracketExpr::leaf("b", q));
        CHECK(whitehead_pair(t, "u_b", *e) == p * q * whitehead_pair(t, "u_b", *parse_bracket("[a,b]")));
    }
}

TEST_CASE("Hopf invariants")
{
    const Cdga cp2 = fixture("cp2.ring").algebra;
    const Element x = cp2.gen("x");
    const Element top = cp2.multiply(x, x);
    CHECK(hopf_invariant(cp2, x, top) == 1);
    const Cdga hp2 = fixture("hp2.ring").algebra;
    CHECK(hopf_invariant(hp2, hp2.gen("x"), hp2.multiply(hp2.gen("x"), hp2.gen("x"))) == 1);
    const Cdga s2s2 = fixture("s2s2.ring").algebra;
    const Element ab = s2s2.multiply(s2s2.gen("a"), s2s2.gen("b"));
    CHECK(hopf_invariant(s2s2, s2s2.gen("a"), ab) == 0);
    CHECK(hopf_invariant(s2s2, s2s2.gen("b"), ab) == 0);
    for (long k = 1; k <= 3; ++k)
        CHECK(hopf_invariant(cp2, Rational(k) * x, top) == k * k);
}
