#include "doctest.h"
#include "support.hpp"

#include "rht/kernels.hpp"
#include "rht/linalg.hpp"

#include <algorithm>
#include <numeric>

using namespace rht;
using rht::test::Gen;

namespace {

// Sign of sorting a word of generators by a stable bubble sort, counting only
// swaps of two odd generators; zero when an odd generator repeats.
int oracle_sign(const Cdga& a, std::vector<std::uint32_t> w)
{
    int sign = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
            if (w[j] > w[j + 1]) {
                if (a.is_odd(w[j]) && a.is_odd(w[j + 1]))
                    sign = -sign;
                std::swap(w[j], w[j + 1]);
            }
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1] && a.is_odd(w[i]))
            return 0;
    return sign;
}

bool is_rref(const Echelon& e)
{
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.rows[i].empty() || e.rows[i].leading() != e.pivots[i] || e.rows[i].leading_value() != 1)
            return false;
        if (i > 0 && e.pivots[i] <= e.pivots[i - 1])
            return false;
        for (std::size_t j = 0; j < e.rows.size(); ++j)
            if (j != i && e.rows[j].find(e.pivots[i]))
                return false;
    }
    return true;
}

struct SignGuard {
    SignGuard() { fault::set_koszul_sign_fault(true); }
    ~SignGuard() { fault::set_koszul_sign_fault(false); }
};

} // namespace

TEST_CASE("rationals parse and canonicalize")
{
    CHECK(parse_rational("6/4") == make_rational(3, 2));
    CHECK(parse_rational("-7") == -7);
    CHECK(make_rational(2, -4) == make_rational(-1, 2));
    CHECK(to_string(make_rational(10, 4)) == "5/2");
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK(binomial(16, 8) == 12870);
    CHECK(power(make_rational(1, 2), 3) == make_rational(1, 8));
}

TEST_CASE("sparse vectors merge and drop zeros")
{
    SparseVec v({{3, 1}, {1, 2}, {3, -1}});
    CHECK(v.size() == 1);
    CHECK(v.at(1) == 2);
    CHECK(v.at(3) == 0);
    SparseVec w({{1, 1}, {4, 5}});
    v.axpy(-2, w);
    CHECK(v == SparseVec({{4, -10}}));
    CHECK(w.head(2) == SparseVec({{1, 1}}));
    CHECK(w.tail(2) == SparseVec({{2, 5}}));
    CHECK(w.head(2).append(w.tail(2), 2) == w);
}

TEST_CASE("property: serial and parallel rref agree and are reduced")
{
    Gen g(101);
    for (int it = 0; it < 60; ++it) {
        const std::size_t dim = 1 + g.below(40);
        const std::size_t n = g.below(200);
        std::vector<SparseVec> rows;
        for (std::size_t i = 0; i < n; ++i)
            rows.push_back(g.vector(dim, 0.2));
        // plant dependencies
        for (std::size_t i = 0; i + 2 < rows.size(); i += 5) {
            SparseVec s = rows[i];
            s.axpy(g.rational(), rows[i + 1]);
            rows[i + 2] = s;
        }
        const Echelon a = kernels::serial::rref(rows, dim);
        const Echelon b = kernels::parallel::rref(rows, dim);
        REQUIRE(a.rows == b.rows);
        CHECK(a.pivots == b.pivots);
        CHECK(is_rref(a));
        std::vector<std::vector<mpq_class>> m(rows.size(), std::vector<mpq_class>(dim));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (const auto& [j, v] : rows[i].entries())
                m[i][j] = v;
        CHECK(a.rank() == rht::test::dense_rank(m));
        for (const auto& r : rows)
            CHECK(reduce(a, r).empty());
    }
}

TEST_CASE("property: serial and parallel map_range agree")
{
    for (std::size_t count : {0u, 1u, 7u, 500u}) {
        auto fn = [](std::size_t i) { return SparseVec({{i % 13, make_rational(static_cast<long>(i) + 1, 3)}}); };
        CHECK(kernels::serial::map_range(count, fn) == kernels::parallel::map_range(count, fn));
        CHECK(map_range(count, fn).size() == count);
    }
}

TEST_CASE("incremental echelon and coordinates")
{
    Gen g(7);
    for (int it = 0; it < 30; ++it) {
        const std::size_t dim = 2 + g.below(10);
        IncrementalEchelon inc(dim);
        std::vector<SparseVec> rows;
        for (int i = 0; i < 12; ++i) {
            auto v = g.vector(dim, 0.3);
            if (inc.add(v))
                rows.push_back(v);
        }
        const Echelon e = inc.echelon();
        CHECK(e.rows == rref(rows, dim).rows);
        SparseVec combo;
        std::vector<SparseVec::Entry> want;
        for (std::size_t i = 0; i < e.rows.size(); ++i) {
            const Rational c = g.rational();
            combo.axpy(c, e.rows[i]);
            want.emplace_back(i, c);
        }
        CHECK(coordinates(e, combo) == SparseVec(want));
    }
}

TEST_CASE("linear solver returns canonical preimages")
{
    Gen g(9);
    for (int it = 0; it < 40; ++it) {
        LinearMap m;
        m.source_dim = 1 + g.below(8);
        m.target_dim = 1 + g.below(8);
        for (std::size_t j = 0; j < m.source_dim; ++j)
            m.columns.push_back(g.vector(m.target_dim, 0.4));
        const LinearSolver s(m);
        CHECK(s.rank() + s.kernel().rank() == m.source_dim);
        const SparseVec x = g.vector(m.source_dim);
        const SparseVec b = m.apply(x);
        const auto y = s.solve(b);
        REQUIRE(y.has_value());
        CHECK(m.apply(*y) == b);
        SparseVec shifted = *y;
        for (const auto& k : s.kernel().rows)
            shifted.axpy(g.rational(), k);
        CHECK(s.solve(m.apply(shifted)) == y);
        for (const auto& k : s.kernel().rows)
            CHECK(m.apply(k).empty());
    }
}

TEST_CASE("dense inertia of small forms")
{
    DenseMatrix m = {{0, 1}, {1, 0}};
    CHECK(inertia(m) == Inertia{1, 1, 0});
    DenseMatrix p = {{2, 1, 0}, {1, 2, 0}, {0, 0, 0}};
    CHECK(inertia(p) == Inertia{2, 0, 1});
    CHECK(rank(p) == 2);
}

TEST_CASE("property: normalize matches the Koszul sign oracle")
{
    Gen g(11);
    const Cdga a = Cdga::free({{"p", 1, std::nullopt},
                               {"q", 2, std::nullopt},
                               {"r", 3, std::nullopt},
                               {"s", 5, std::nullopt},
                               {"t", 4, std::nullopt}});
    for (int it = 0; it < 2000; ++it) {
        std::vector<std::uint32_t> w(g.below(7));
        for (auto& x : w)
            x = static_cast<std::uint32_t>(g.below(5));
        const int expected = oracle_sign(a, w);
        const auto got = a.normalize(w);
        if (expected == 0) {
            CHECK_FALSE(got.has_value());
            continue;
        }
        REQUIRE(got.has_value());
        CHECK(got->sign == expected);
        std::vector<std::uint32_t> sorted = w;
        std::sort(sorted.begin(), sorted.end());
        std::uint32_t len = 0;
        for (const auto& [gen, e] : got->monomial.factors())
            len += e;
        CHECK(len == sorted.size());
    }
}

TEST_CASE("property: graded commutativity, associativity, Leibniz and d^2 on random cdgas")
{
    Gen g(12);
    for (int alg = 0; alg < 8; ++alg) {
        const Cdga a = g.free_cdga(2 + g.below(3), 1 + g.below(3));
        for (int it = 0; it < 150; ++it) {
            const int kx = g.degree(a, 8), ky = g.degree(a, 8), kz = g.degree(a, 8);
            const Element x = g.element(a, kx), y = g.element(a, ky), z = g.element(a, kz);
            CHECK(a.multiply(x, y) == Rational(sign_power(static_cast<long>(kx) * ky)) * a.multiply(y, x));
            CHECK(a.multiply(a.multiply(x, y), z) == a.multiply(x, a.multiply(y, z)));
            CHECK(a.differential(a.multiply(x, y)) ==
                  a.multiply(a.differential(x), y) + Rational(sign_power(kx)) * a.multiply(x, a.differential(y)));
            CHECK(a.differential(a.differential(x)).is_zero());
        }
    }
}

TEST_CASE("odd generators square to zero and even ones do not")
{
    const Cdga a = Cdga::free({{"x", 2, std::nullopt}, {"y", 3, std::nullopt}});
    CHECK(a.multiply(a.gen("y"), a.gen("y")).is_zero());
    CHECK_FALSE(a.multiply(a.gen("x"), a.gen("x")).is_zero());
    CHECK(a.dimension(6) == 1);
    CHECK(a.dimension(5) == 1);
}

TEST_CASE("construction rejects bad data")
{
    // d^2 != 0: d y = x, d z = y
    CHECK_THROWS_AS(Cdga({{"x", 3, std::nullopt}, {"y", 2, std::nullopt}, {"z", 1, std::nullopt}},
                         {Element{}, Element::generator(0), Element::generator(1)}),
                    AlgebraError);
    // degree mismatch
    CHECK_THROWS_AS(Cdga({{"a", 2, std::nullopt}, {"b", 3, std::nullopt}}, {Element{}, Element::generator(0)}),
                    AlgebraError);
    CHECK_THROWS_AS(Cdga::free({{"a", 2, std::nullopt}, {"a", 3, std::nullopt}}), AlgebraError);
    const Cdga a = Cdga::free({{"a", 2, std::nullopt}});
    const Cdga b = Cdga::free({{"a", 2, std::nullopt}});
    CHECK_THROWS_AS((void)a.multiply(a.gen("a"), b.gen("a")), AlgebraError);
    CHECK_THROWS_AS(DgaMorphism(a, b, {}), AlgebraError);
}

TEST_CASE("quotients and truncation")
{
    const auto cp2 = rht::test::fixture("cp2.ring");
    const Cdga& r = cp2.algebra;
    CHECK(r.dimension(4) == 1);
    CHECK(r.dimension(6) == 0);
    CHECK(r.power(r.gen("x"), 3).is_zero());
    const auto s2s2 = rht::test::fixture("s2s2.ring");
    CHECK(s2s2.algebra.dimension(2) == 2);
    CHECK(s2s2.algebra.dimension(4) == 1);
}

TEST_CASE("morphisms check the chain-map identity")
{
    const Cdga s2 = rht::test::fixture("s2.cdga").algebra;
    const Cdga ring = rht::test::fixture("s2.ring").algebra;
    DgaMorphism phi(s2, ring, {ring.gen("x"), ring.adopt(Element{})});
    CHECK(phi.apply(s2.multiply(s2.gen("a"), s2.gen("a"))).is_zero());
    // b -> 0 would need d(0) = a^2
    CHECK_THROWS_AS(DgaMorphism(s2, s2, {s2.gen("a"), s2.adopt(Element{})}), AlgebraError);
    const DgaMorphism id = DgaMorphism::identity(s2);
    CHECK(compose(phi, id).images() == phi.images());
}

TEST_CASE("the sign fault breaks graded commutativity")
{
    const Cdga a = Cdga::free({{"u", 3, std::nullopt}, {"v", 5, std::nullopt}});
    const Element uv = a.multiply(a.gen("u"), a.gen("v"));
    const Element vu = a.multiply(a.gen("v"), a.gen("u"));
    CHECK(uv == -vu);
    {
        SignGuard guard;
        CHECK(fault::koszul_sign_fault());
        const Cdga b = Cdga::free({{"u", 3, std::nullopt}, {"v", 5, std::nullopt}});
        CHECK(b.multiply(b.gen("u"), b.gen("v")) == b.multiply(b.gen("v"), b.gen("u")));
    }
    CHECK_FALSE(fault::koszul_sign_fault());
}
