#include "doctest.h"
#include "support.hpp"

#include "rht/homotopy.hpp"

using namespace rht;
using rht::test::fixture;
using rht::test::Gen;

namespace {

HomotopyElement random_homotopy(Gen& g, const Cdga& b, int max_degree, int max_t = 5)
{
    HomotopyElement u(b);
    const std::size_t terms = 1 + g.below(4);
    for (std::size_t k = 0; k < terms; ++k) {
        const Element a = g.element(b, g.degree(b, max_degree));
        const int i = static_cast<int>(g.below(static_cast<std::size_t>(max_t) + 1));
        if (g.coin())
            u.add_body(i, a);
        else
            u.add_dt(i, a);
    }
    return u;
}

// homogeneous total degree: |a| for a t^i, |a| + 1 for a t^i dt
HomotopyElement random_homogeneous(Gen& g, const Cdga& b, int degree)
{
    HomotopyElement u(b);
    for (int k = 0; k < 3; ++k) {
        const int i = static_cast<int>(g.below(4));
        if (g.coin())
            u.add_body(i, g.element(b, degree));
        else if (degree > 0)
            u.add_dt(i, g.element(b, degree - 1));
    }
    return u;
}

} // namespace

TEST_CASE("property: integration identities")
{
    Gen g(51);
    const Cdga b = fixture("wedge_table.cdga").algebra;
    for (int it = 0; it < 300; ++it) {
        const HomotopyElement u = random_homotopy(g, b, 13);
        CHECK(u.integrate_0_t().differential() + u.differential().integrate_0_t() ==
              u - HomotopyElement::constant(b, u.at(0)));
        CHECK(b.differential(u.integrate_0_1()) + u.differential().integrate_0_1() == u.at(1) - u.at(0));
    }
}

TEST_CASE("property: d^2 = 0, Leibniz and reversal")
{
    Gen g(52);
    const Cdga b = fixture("s2.cdga").algebra;
    for (int it = 0; it < 200; ++it) {
        const int ku = static_cast<int>(g.below(6)), kv = static_cast<int>(g.below(6));
        const HomotopyElement u = random_homogeneous(g, b, ku);
        const HomotopyElement v = random_homogeneous(g, b, kv);
        CHECK(u.differential().differential().is_zero());
        HomotopyElement rhs = u.differential().multiply(v);
        HomotopyElement second = u.multiply(v.differential());
        second *= Rational(sign_power(ku));
        rhs += second;
        CHECK(u.multiply(v).differential() == rhs);
        CHECK(u.reversed().reversed() == u);
        CHECK(u.reversed().at(0) == u.at(1));
        CHECK(u.reversed().differential() == u.differential().reversed());
    }
}

TEST_CASE("evaluation at interior points")
{
    const Cdga b = fixture("s2.cdga").algebra;
    const Element a = b.gen("a");
    HomotopyElement u = HomotopyElement::term(b, a, 2, false);
    CHECK(u.at(make_rational(1, 2)) == make_rational(1, 4) * a);
    CHECK(HomotopyElement::term(b, a, 1, true).integrate_0_1() == make_rational(1, 2) * a);
}

TEST_CASE("t-degree cap overflows loudly")
{
    const Cdga b = fixture("s2.cdga").algebra;
    const HomotopyElement u = HomotopyElement::term(b, b.gen("a"), 3, false, 4);
    CHECK_THROWS_AS((void)u.multiply(u), TDegreeOverflow);
}

TEST_CASE("homotopies check endpoints")
{
    const Cdga b = fixture("s2.cdga").algebra;
    const DgaMorphism id = DgaMorphism::identity(b);
    const DgaHomotopy c = DgaHomotopy::constant(id);
    CHECK(c.at_start().images() == id.images());
    CHECK(c.at_end().images() == id.images());
    CHECK(c.reversed().at_start().images() == id.images());
}

TEST_CASE("obstruction vanishes and the extension is verified")
{
    const Cdga a = Cdga::free({{"a", 2, std::nullopt}});
    const Cdga av = a.extended({{"v", 3, std::nullopt}}, {a.multiply(a.gen("a"), a.gen("a"))});
    const Cdga b = fixture("s2.cdga").algebra;
    DgaMorphism f(a, b, {b.gen("a")});
    DgaMorphism h = DgaMorphism::identity(b);
    DgaMorphism g(av, b, {b.gen("a"), b.gen("b")});
    const ExtensionProblem p{f, g, h, DgaHomotopy::constant(DgaMorphism(a, b, {b.gen("a")}))};
    const auto o = obstruction_class(p);
    CHECK(o.degree == 3);
    REQUIRE(o.vanishes);
    REQUIRE(o.primitive.has_value());
    const auto ext = extend_with_witness(p, *o.primitive);
    CHECK_FALSE(extension_defect(p, ext).has_value());
    CHECK(ext.f.apply(av.gen("v")) == b.gen("b"));
}

TEST_CASE("obstruction along a moving homotopy")
{
    const Cdga a = Cdga::free({{"x", 2, std::nullopt}});
    const Cdga av = a.extended({{"v", 3, std::nullopt}}, {a.multiply(a.gen("x"), a.gen("x"))});
    const Cdga b = fixture("s2.cdga").algebra;
    const Cdga cc({{"m", 1, std::nullopt}, {"e", 2, std::nullopt}, {"n", 2, std::nullopt}, {"s", 3, std::nullopt}},
                  {Element::generator(2), Element{}, Element{}, Element::monomial(Monomial::generator(1, 2))});
    const Element e = cc.gen("e"), m = cc.gen("m"), n = cc.gen("n");
    DgaMorphism f(a, b, {b.gen("a")});
    DgaMorphism h(b, cc, {e + n, cc.gen("s") + Rational(2) * cc.multiply(m, e) + cc.multiply(m, n)});
    DgaMorphism g(av, cc, {e, cc.gen("s")});
    const HomotopyElement hx =
        HomotopyElement::constant(cc, e) + HomotopyElement::term(cc, m, 1, false).differential();
    const ExtensionProblem p{f, g, h, DgaHomotopy(a, cc, {hx})};
    const auto o = obstruction_class(p);
    REQUIRE(o.vanishes);
    const auto ext = extend_with_witness(p, *o.primitive);
    CHECK_FALSE(extension_defect(p, ext).has_value());
    CHECK(ext.homotopy.at_start().images() == g.images());
    CHECK(ext.homotopy.at_end().image(1) == h.apply(ext.f.image(1)));
}

TEST_CASE("obstruction does not vanish over a polynomial ring")
{
    const Cdga a = Cdga::free({{"a", 2, std::nullopt}});
    const Cdga av = a.extended({{"v", 3, std::nullopt}}, {a.multiply(a.gen("a"), a.gen("a"))});
    const Cdga b = Cdga::free({{"x", 2, std::nullopt}});
    const Cdga cc = fixture("s2.cdga").algebra;
    DgaMorphism f(a, b, {b.gen("x")});
    DgaMorphism h(b, cc, {cc.gen("a")});
    DgaMorphism g(av, cc, {cc.gen("a"), cc.gen("b")});
    const ExtensionProblem p{f, g, h, DgaHomotopy::constant(DgaMorphism(a, cc, {cc.gen("a")}))};
    const auto o = obstruction_class(p);
    CHECK_FALSE(o.vanishes);
    CHECK(o.class_rank == 1);
    CHECK_FALSE(o.primitive.has_value());
}

TEST_CASE("inconsistent diagrams are rejected")
{
    const Cdga a = Cdga::free({{"a", 2, std::nullopt}});
    const Cdga av = a.extended({{"v", 3, std::nullopt}}, {a.multiply(a.gen("a"), a.gen("a"))});
    const Cdga b = fixture("s2.cdga").algebra;
    DgaMorphism f(a, b, {b.gen("a")});
    DgaMorphism g(av, b, {b.gen("a"), b.gen("b")});
    // homotopy ends at 2a, not at h f (a) = a
    const ExtensionProblem p{f, g, DgaMorphism::identity(b),
                             DgaHomotopy::constant(DgaMorphism(a, b, {Rational(2) * b.gen("a")}))};
    CHECK_THROWS_AS(obstruction_class(p), AlgebraError);
}
