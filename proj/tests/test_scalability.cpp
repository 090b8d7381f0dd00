#include "doctest.h"
#include "support.hpp"

#include "rht/classify.hpp"
#include "rht/scalability.hpp"

#include <Eigen/Dense>

#include <bit>
#include <map>

using namespace rht;
using rht::test::Gen;

namespace {

// A tiny exterior algebra on bitmasks, written independently of the library.
using Form = std::map<unsigned, mpq_class>;

int wedge_sign(unsigned a, unsigned b)
{
    int swaps = 0;
    for (unsigned i = 0; i < 32; ++i)
        if (b & (1u << i))
            swaps += std::popcount(a >> (i + 1));
    return swaps % 2 ? -1 : 1;
}

Form wedge(const Form& x, const Form& y)
{
    Form out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            if (a & b)
                continue;
            out[a | b] += wedge_sign(a, b) * ca * cb;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Form to_form(const Element& x)
{
    Form f;
    for (const auto& [m, c] : x.terms()) {
        unsigned mask = 0;
        for (const auto& [g, e] : m.factors())
            mask |= 1u << g;
        f[mask] += c;
    }
    return f;
}

unsigned mask_of(const std::vector<int>& s)
{
    unsigned m = 0;
    for (int i : s)
        m |= 1u << i;
    return m;
}

std::vector<unsigned> subsets_of_size(int n, int k)
{
    std::vector<unsigned> out;
    for (unsigned m = 0; m < (1u << n); ++m)
        if (std::popcount(m) == k)
            out.push_back(m);
    return out;
}

// eigenvalue signature of the wedge pairing on Lambda^n R^{2n}
std::pair<int, int> oracle_signature(int n)
{
    const auto basis = subsets_of_size(2 * n, n);
    const unsigned full = (1u << (2 * n)) - 1;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<long>(basis.size()), static_cast<long>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            if ((basis[i] | basis[j]) == full && !(basis[i] & basis[j]))
                g(static_cast<long>(i), static_cast<long>(j)) = wedge_sign(basis[i], basis[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    int pos = 0, neg = 0;
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
        pos += es.eigenvalues()(i) > 0.5;
        neg += es.eigenvalues()(i) < -0.5;
    }
    return {pos, neg};
}

} // namespace

TEST_CASE("complement sign agrees with the bitmask oracle")
{
    for (int n = 1; n <= 5; ++n) {
        const ExteriorAlgebra e(2 * n);
        for (const auto& s : half_subsets(n)) {
            const unsigned m = mask_of(s);
            const unsigned c = ((1u << (2 * n)) - 1) & ~m;
            CHECK(e.complement_sign(s) == wedge_sign(m, c));
        }
        CHECK(half_subsets(n).size() == binomial(static_cast<unsigned>(2 * n - 1), static_cast<unsigned>(n - 1)));
    }
}

TEST_CASE("wedge pairing signatures")
{
    for (int n : {2, 4}) {
        const auto s = wedge_pairing_signature(n);
        const auto o = oracle_signature(n);
        CHECK(static_cast<int>(s.positive) == o.first);
        CHECK(static_cast<int>(s.negative) == o.second);
        CHECK(s.dense_checked);
    }
    const auto s2 = wedge_pairing_signature(2);
    CHECK(s2.positive == 3);
    CHECK(s2.negative == 3);
    const auto s4 = wedge_pairing_signature(4);
    CHECK(s4.positive == 35);
    const auto s8 = wedge_pairing_signature(8);
    CHECK(s8.positive == 6435);
    CHECK(s8.negative == 6435);
    CHECK_THROWS(wedge_pairing_signature(3));
}

TEST_CASE("Sigma flips at three summands for n = 2")
{
    const auto yes = decide_sigma(2, 3);
    CHECK(yes.embeddable);
    CHECK(yes.witness_verified);
    REQUIRE(yes.ring.has_value());
    REQUIRE(yes.witness.has_value());
    CHECK(verify_witness(*yes.ring, *yes.witness, true).ok);
    const auto no = decide_sigma(2, 4);
    CHECK_FALSE(no.embeddable);
    CHECK(no.certificate.kind == "inertia");
    CHECK(decide_sigma(2, 3, 3).embeddable);
    CHECK_FALSE(decide_sigma(2, 0, 4).embeddable);
    CHECK(decide_sigma(4, 35).embeddable);
    CHECK_FALSE(decide_sigma(4, 36).embeddable);
}

TEST_CASE("Omega flips at C(2n,n)/2 and its witnesses pass an independent expansion")
{
    for (int n = 1; n <= 3; ++n) {
        const long top = static_cast<long>(binomial(2 * n, n) / 2);
        const auto yes = decide_omega(n, top);
        REQUIRE(yes.embeddable);
        CHECK(yes.witness_verified);
        const auto& w = *yes.witness;
        const auto& ring = yes.ring->ring;
        std::vector<Form> a, b;
        for (long i = 1; i <= top; ++i) {
            a.push_back(to_form(w.images[ring.index_of("a" + std::to_string(i))]));
            b.push_back(to_form(w.images[ring.index_of("b" + std::to_string(i))]));
        }
        const Form vol = wedge(a[0], b[0]);
        CHECK_FALSE(vol.empty());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(wedge(a[i], b[i]) == vol);
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (i != j) {
                    CHECK(wedge(a[i], b[j]).empty());
                    CHECK(wedge(a[i], a[j]).empty());
                    CHECK(wedge(b[i], b[j]).empty());
                }
            }
        }
        const auto no = decide_omega(n, top + 1);
        CHECK_FALSE(no.embeddable);
        CHECK(no.certificate.kind == "dimension-count");
    }
}

TEST_CASE("bad witnesses are rejected")
{
    const auto d = decide_sigma(2, 1);
    REQUIRE(d.ring.has_value());
    const ExteriorAlgebra e(4);
    EmbeddingWitness zero{e, {e.algebra().adopt(Element{})}, {}};
    const auto chk = verify_witness(*d.ring, zero);
    CHECK_FALSE(chk.ok);
    CHECK_FALSE(chk.failure.empty());
}

TEST_CASE("fuzz: no random rational candidate embeds Sigma_{2,4}")
{
    Gen g(61);
    const auto sigma = connected_sum_ring(std::vector<Atom>(4, Atom::projective(2, 2)));
    const ExteriorAlgebra e(4);
    const auto& basis = e.algebra().graded_basis(2);
    for (int it = 0; it < 10000; ++it) {
        std::vector<Element> images;
        for (int i = 0; i < 4; ++i) {
            Element x = e.algebra().adopt(Element{});
            for (const auto& m : basis)
                if (g.coin())
                    x += e.algebra().adopt(Element::monomial(m, g.rational(3)));
            images.push_back(x);
        }
        EmbeddingWitness w{e, images, {}};
        REQUIRE_FALSE(verify_witness(sigma, w).ok);
    }
}

TEST_CASE("Pi: nullspaces against an independent linear system")
{
    for (int n = 2; n <= 6; ++n) {
        const auto p = decide_pi(n, 2);
        // full system: omega ^ eta = 0 for eta in Lambda^2 R^{2n}
        Form omega;
        for (int i = 0; i < n; ++i)
            omega[(1u << (2 * i)) | (1u << (2 * i + 1))] = 1;
        const auto two = subsets_of_size(2 * n, 2);
        const auto four = subsets_of_size(2 * n, 4);
        std::map<unsigned, std::size_t> row;
        for (std::size_t i = 0; i < four.size(); ++i)
            row[four[i]] = i;
        std::vector<std::vector<mpq_class>> m(two.size(), std::vector<mpq_class>(four.size()));
        for (std::size_t j = 0; j < two.size(); ++j)
            for (const auto& [mask, c] : wedge(omega, Form{{two[j], 1}}))
                m[j][row[mask]] = c;
        CHECK(p.full_nullspace_dimension == two.size() - rht::test::dense_rank(m));
        // diagonal system: u_i + u_j = 0 for i != j
        std::vector<std::vector<mpq_class>> dm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = j + 1; k < n; ++k)
                    dm[static_cast<std::size_t>(i)].push_back((i == j || i == k) ? 1 : 0);
        CHECK(p.nullspace_dimension == static_cast<std::size_t>(n) - rht::test::dense_rank(dm));
        CHECK(p.not_embeddable == (n >= 3));
    }
    CHECK(decide_pi(2, 2).nullspace_dimension == 1);
    CHECK(decide_pi(2, 2).full_nullspace_dimension == 5);
    CHECK_THROWS(decide_pi(1, 2));
}

TEST_CASE("rank bound")
{
    const auto bad = rank_bound_check(std::vector<std::size_t>{1, 0, 8, 0, 1}, 4);
    CHECK_FALSE(bad.pass());
    REQUIRE(bad.first_failure().has_value());
    CHECK(bad.first_failure()->degree == 2);
    CHECK(bad.first_failure()->bound == 6);
    CHECK(rank_bound_check(std::vector<std::size_t>{1, 0, 6, 0, 1}, 4).pass());
}

TEST_CASE("connected-sum rings")
{
    const auto r = connected_sum_ring({Atom::product(2, 2), Atom::product(2, 2), Atom::product(2, 2)});
    CHECK(r.ranks() == std::vector<std::size_t>{1, 0, 6, 0, 1});
    CHECK(r.duality);
    CHECK(connected_sum_betti({Atom::projective(2, 2), Atom::projective(2, 2)}) ==
          std::vector<std::size_t>{1, 0, 2, 0, 1});
    CHECK_THROWS(connected_sum_ring({Atom::projective(2, 2), Atom::projective(4, 2)}));
    auto rev = Atom::projective(2, 2);
    rev.reversed = true;
    CHECK(connected_sum_ring({Atom::projective(2, 2), rev}).ranks() == std::vector<std::size_t>{1, 0, 2, 0, 1});
}

TEST_CASE("property: intersection completeness agrees with a bitmask oracle")
{
    Gen g(71);
    for (int it = 0; it < 300; ++it) {
        const int k = 2 + static_cast<int>(g.below(4));
        const unsigned full = (1u << (k + 1)) - 1;
        std::vector<unsigned> masks;
        SetFamily f{k, {}};
        const std::size_t count = 1 + g.below(4);
        while (masks.size() < count) {
            const unsigned m = 1 + static_cast<unsigned>(g.below(full - 1));
            if (std::find(masks.begin(), masks.end(), m) != masks.end())
                continue;
            masks.push_back(m);
            std::vector<int> s;
            for (int i = 0; i <= k; ++i)
                if (m & (1u << i))
                    s.push_back(i);
            f.members.push_back(s);
        }
        bool complete = true;
        for (std::size_t i = 0; i < masks.size(); ++i)
            for (std::size_t j = i + 1; j < masks.size(); ++j) {
                const unsigned a = masks[i], b = masks[j], ac = full & ~a, bc = full & ~b;
                complete = complete && (a & b) && (a & bc) && (ac & b) && (ac & bc);
            }
        const auto chk = intersection_complete(f);
        CHECK(chk.complete == complete);
        if (complete) {
            const auto fw = family_local_forms(f);
            CHECK(fw.check.ok);
        } else {
            CHECK(chk.violation.has_value());
            CHECK_THROWS(family_local_forms(f));
        }
    }
    CHECK_THROWS(validate(SetFamily{3, {{0, 1, 2, 3}}}));
    CHECK_THROWS(validate(SetFamily{3, {{}}}));
    CHECK_THROWS(validate(SetFamily{3, {{1}, {1}}}));
}

TEST_CASE("classification table")
{
    const std::vector<std::pair<std::string, Verdict>> table = {
        {"S4", Verdict::Scalable},
        {"CP3", Verdict::Scalable},
        {"csum(3*CP2)", Verdict::Scalable},
        {"csum(3*(S2xS2))", Verdict::Scalable},
        {"prod(S3, CP2)", Verdict::Scalable},
        {"wedge(S3, S3, S5)", Verdict::Scalable},
        {"csum(4*CP2)", Verdict::NotScalable},
        {"csum(2*CP3)", Verdict::NotScalable},
        {"csum(4*(S2xS2))", Verdict::NotScalable},
        {"csum(36*HP2)", Verdict::NotScalable},
        {"csum(1*(S2xS2), 1*CP2)", Verdict::Unknown},
        {"csum(2*CP2, 1*rev(CP2))", Verdict::Scalable},
    };
    for (const auto& [d, v] : table) {
        CAPTURE(d);
        const auto c = classify(d);
        CHECK(c.verdict == v);
        CHECK_FALSE(c.certificate.kind.empty());
        CHECK_FALSE(c.certificate.summary.empty());
    }
    CHECK(classify("csum(4*(S2xS2))").certificate.kind == "rank-bound");
    CHECK(classify("csum(36*HP2)").certificate.kind == "inertia");
    CHECK(classify("csum(2*CP3)").certificate.kind == "linear-system");
}

TEST_CASE("descriptor parsing")
{
    for (const char* d : {"csum(3*CP2)", "prod(S3, S5)", "wedge(S3, S3, S5)", "skel(4, prod(S2, S2))",
                          "csum(2*(S2xS2), 1*rev(CP2))"}) {
        const Space s = parse_space(d);
        CHECK(to_string(parse_space(to_string(s))) == to_string(s));
    }
    CHECK_THROWS_AS(classify("csum(CP2, S3)"), DescriptorError);
    CHECK(classify("csum(CP2, S4)").verdict == Verdict::Scalable);
    CHECK_THROWS_AS(parse_space("klein"), DescriptorError);
    CHECK_THROWS_AS(parse_space("csum(3*CP2"), DescriptorError);
    CHECK(manifold_betti(parse_space("prod(S2, S3)")) == std::vector<std::size_t>{1, 0, 1, 1, 0, 1});
}
