#include "rht/verification.hpp"

#include "rht/classify.hpp"
#include "rht/homotopy.hpp"
#include "rht/io.hpp"
#include "rht/massey.hpp"
#include "rht/minimal_model.hpp"
#include "rht/whitehead.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <stdexcept>

#ifndef RHT_DATA_DIR
#define RHT_DATA_DIR "data"
#endif

namespace rht {

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw CheckFailure(what);
}

struct Ctx {
    std::string data;
    std::mt19937_64 rng{20240917};

    Presentation load(const std::string& file) const { return load_presentation(data + "/" + file); }

    Rational coefficient()
    {
        long num = static_cast<long>(rng() % 9) - 4;
        if (num == 0)
            num = 1;
        return make_rational(num, static_cast<long>(rng() % 3) + 1);
    }

    Element random_element(const Cdga& a, int degree)
    {
        Element x = a.adopt(Element{});
        const auto& basis = a.graded_basis(degree);
        if (basis.empty())
            return x;
        const std::size_t terms = 1 + rng() % 3;
        for (std::size_t i = 0; i < terms; ++i)
            x += a.adopt(Element::monomial(basis[rng() % basis.size()], coefficient()));
        return x;
    }

    int random_degree(const Cdga& a, int max_degree)
    {
        for (int tries = 0; tries < 64; ++tries) {
            int k = static_cast<int>(rng() % (max_degree + 1));
            if (a.dimension(k) > 0)
                return k;
        }
        return 0;
    }
};

// 1 ----------------------------------------------------------------------

std::string koszul(Ctx& c)
{
    struct Fixture {
        std::string name;
        Cdga algebra;
        int max_degree;
    };
    std::vector<Fixture> fx;
    fx.push_back({"s2.cdga", c.load("s2.cdga").algebra, 9});
    fx.push_back({"cp2.cdga", c.load("cp2.cdga").algebra, 11});
    fx.push_back({"wedge_table.cdga", c.load("wedge_table.cdga").algebra, 13});
    fx.push_back({"wedge.ring", c.load("wedge.ring").algebra, 11});
    fx.push_back({"s2s2.ring", c.load("s2s2.ring").algebra, 4});
    fx.push_back({"exterior(5)", ExteriorAlgebra(5).algebra(), 5});
    {
        auto base = minimal_model(c.load("sphere_wedge.ring").algebra, 9);
        std::map<std::string, Rational> pairing;
        const Bracket aab = parse_bracket("[a,[a,b]]");
        for (auto g : base.generators_of_degree(7))
            pairing[base.model.generator(g).name] = whitehead_pair(base.model, base.model.generator(g).name, *aab);
        fx.push_back({"cell(S3vS3,e8)", attach_cell_model(base, 8, pairing).model, 9});
    }

    std::size_t total = 0;
    for (auto& f : fx) {
        const Cdga& a = f.algebra;
        for (int i = 0; i < 1000; ++i) {
            const int kx = c.random_degree(a, f.max_degree);
            const int ky = c.random_degree(a, f.max_degree);
            const Element x = c.random_element(a, kx);
            const Element y = c.random_element(a, ky);
            switch (i % 4) {
            case 0: {
                const Element xy = a.multiply(x, y);
                const Element yx = a.multiply(y, x);
                require(xy == Rational(sign_power(static_cast<long>(kx) * ky)) * yx,
                        f.name + ": graded commutativity xy = (-1)^{|x||y|} yx fails in degrees " +
                            std::to_string(kx) + "," + std::to_string(ky));
                break;
            }
            case 1: {
                const Element z = c.random_element(a, c.random_degree(a, f.max_degree));
                require(a.multiply(a.multiply(x, y), z) == a.multiply(x, a.multiply(y, z)),
                        f.name + ": associativity fails");
                break;
            }
            case 2: {
                const Element lhs = a.differential(a.multiply(x, y));
                const Element rhs = a.multiply(a.differential(x), y) +
                                    Rational(sign_power(kx)) * a.multiply(x, a.differential(y));
                require(lhs == rhs, f.name + ": Leibniz rule fails in degrees " + std::to_string(kx) + "," +
                                        std::to_string(ky));
                break;
            }
            default:
                require(a.differential(a.differential(x)).is_zero(), f.name + ": d^2 != 0 in degree " +
                                                                       std::to_string(kx));
            }
            ++total;
        }
    }
    return std::to_string(total) + " checks over " + std::to_string(fx.size()) + " algebras";
}

// 2 ----------------------------------------------------------------------

std::string integration(Ctx& c)
{
    const Cdga b = c.load("wedge_table.cdga").algebra;
    for (int it = 0; it < 1000; ++it) {
        HomotopyElement u(b);
        const int terms = 1 + static_cast<int>(c.rng() % 4);
        for (int k = 0; k < terms; ++k) {
            const Element a = c.random_element(b, c.random_degree(b, 13));
            const int i = static_cast<int>(c.rng() % 6);
            if (c.rng() % 2)
                u.add_body(i, a);
            else
                u.add_dt(i, a);
        }
        const HomotopyElement lhs = u.integrate_0_t().differential() + u.differential().integrate_0_t();
        const HomotopyElement rhs = u - HomotopyElement::constant(b, u.at(0));
        require(lhs == rhs, "d(I_0^t u) + I_0^t(du) != u - u(0) on sample " + std::to_string(it));
        const Element l1 = b.differential(u.integrate_0_1()) + u.differential().integrate_0_1();
        require(l1 == u.at(1) - u.at(0), "d(I_0^1 u) + I_0^1(du) != u(1) - u(0) on sample " + std::to_string(it));
    }
    return "1000 random elements, both identities exact";
}

// 3 ----------------------------------------------------------------------

std::string s2_model(Ctx& c)
{
    const Cdga ring = c.load("s2.ring").algebra;
    const MinimalModel m = minimal_model(ring, 7);
    const Cdga& a = m.model;
    require(a.generator_count() == 2, "expected 2 generators through degree 7, got " +
                                          std::to_string(a.generator_count()));
    require(a.generator(0).degree == 2 && a.generator(1).degree == 3, "generator degrees are not (2,3)");
    const Element sq = a.multiply(a.gen(a.generator(0).name), a.gen(a.generator(0).name));
    require(a.d_of_generator(1) == sq, "d of the degree-3 generator is " + format_element(a, a.d_of_generator(1)));
    require(a.d_of_generator(0).is_zero(), "degree-2 generator is not closed");
    const auto depth = depth_filtration(a);
    require(depth.depth[0] == 0 && depth.depth[1] == 1, "depths are not (0,1)");
    const auto dist = distortion_exponent(m, a.generator(1).name);
    require(dist.exponent == 4, "distortion exponent " + std::to_string(dist.exponent) + " != 4");
    // the hand-written model is the same algebra
    const Cdga hand = c.load("s2.cdga").algebra;
    DgaMorphism iso(hand, a, {a.gen(a.generator(0).name), a.gen(a.generator(1).name)});
    require(is_quasi_isomorphism(iso, 7), "hand model and computed model differ");
    return a.generator(0).name + "(2), " + a.generator(1).name + "(3), d = " + format_element(a, sq) +
           ", distortion L^4";
}

// 4 ----------------------------------------------------------------------

struct TableRow {
    const char* name;
    int degree;
    int depth;
};

constexpr TableRow table_rows[] = {{"a", 3, 0},   {"b", 3, 0},   {"c", 5, 0},   {"u_b", 5, 1}, {"u_c", 7, 1},
                                   {"v_b", 7, 2}, {"w_b", 9, 3}, {"v_c", 9, 2}, {"w_c", 11, 3}, {"z", 13, 4}};

/// Maps the literal table into the computed model generator by generator.
std::vector<Element> table_into_model(const Cdga& table, const Cdga& model)
{
    std::vector<Element> images;
    for (std::size_t i = 0; i < table.generator_count(); ++i) {
        const auto& g = table.generator(i);
        const Element& dg = table.d_of_generator(i);
        if (dg.is_zero()) {
            images.push_back(model.gen(g.name));
            continue;
        }
        Element target = model.adopt(Element{});
        for (const auto& [m, coef] : dg.terms()) {
            Element p = model.one();
            for (const auto& [gi, e] : m.factors())
                for (std::uint32_t k = 0; k < e; ++k)
                    p = model.multiply(p, images[gi]);
            target += coef * p;
        }
        LinearSolver solver(model.differential_map(g.degree));
        auto x = solver.solve(model.to_vector(target, g.degree + 1));
        require(x.has_value(), "no primitive for the image of d" + g.name);
        images.push_back(model.from_vector(*x, g.degree));
    }
    return images;
}

std::string table(Ctx& c)
{
    const Cdga table = c.load("wedge_table.cdga").algebra;
    for (std::size_t i = 0; i < table.generator_count(); ++i)
        require(table.differential(table.d_of_generator(i)).is_zero(), "d^2 != 0 on table generator " +
                                                                           table.generator(i).name);
    // dz by hand: the six cross terms cancel in pairs
    {
        auto g = [&](const char* n) { return table.gen(n); };
        auto mul = [&](const Element& x, const Element& y) { return table.multiply(x, y); };
        const Element hand = mul(mul(g("a"), g("c")), g("v_b")) - mul(g("u_c"), mul(g("a"), g("u_b"))) -
                             mul(mul(g("a"), g("u_c")), g("u_b")) + mul(g("v_c"), mul(g("a"), g("b"))) +
                             mul(g("c"), mul(g("a"), g("v_b"))) + mul(mul(g("a"), g("v_c")), g("b"));
        require(hand.is_zero(), "hand expansion of d(dz) does not cancel");
        require(table.differential(table.d_of_generator(table.index_of("z"))) == hand, "d(dz) disagrees with hand");
    }

    const MinimalModel m = minimal_model(c.load("wedge.ring").algebra, 13);
    const Cdga& model = m.model;
    require(!minimality_defect(model), "computed model is not minimal");
    const DepthFiltration depth = depth_filtration(model);
    std::map<std::pair<int, int>, std::size_t> want;
    for (const auto& r : table_rows)
        ++want[{r.degree, r.depth}];
    for (const auto& [key, n] : want)
        require(depth.count_exact(model, key.first, key.second) >= n,
                "dim V_" + std::to_string(key.first) + " at depth " + std::to_string(key.second) + " is " +
                    std::to_string(depth.count_exact(model, key.first, key.second)) + ", table lists " +
                    std::to_string(n));

    const std::vector<Element> images = table_into_model(table, model);
    DgaMorphism psi(table, model, images);
    // linear parts: independent per degree, with the table's depths
    std::map<int, IncrementalEchelon> span;
    std::vector<Element> lin;
    for (std::size_t i = 0; i < table.generator_count(); ++i) {
        const Element l = part_of_length(images[i], 1);
        require(!l.is_zero(), "image of " + table.generator(i).name + " is decomposable");
        const int k = table.generator(i).degree;
        span.try_emplace(k, model.dimension(k));
        require(span.at(k).add(model.to_vector(l, k)), "linear parts dependent in degree " + std::to_string(k));
        require(depth.level(l) == table_rows[i].depth,
                "image of " + table.generator(i).name + " has depth " + std::to_string(depth.level(l)) +
                    ", table says " + std::to_string(table_rows[i].depth));
        lin.push_back(l);
    }

    // quadratic part of d(lin psi(z)) in a basis of V containing lin psi(u_c), lin psi(v_b)
    const std::size_t iz = table.index_of("z");
    const Element q = part_of_length(model.differential(lin[iz]), 2);
    std::vector<std::vector<Element>> basis(14);
    for (int k = 1; k <= 13; ++k) {
        IncrementalEchelon e(model.dimension(k));
        for (std::size_t i = 0; i < table.generator_count(); ++i)
            if (table.generator(i).degree == k && e.add(model.to_vector(lin[i], k)))
                basis[k].push_back(lin[i]);
        for (auto g : m.generators_of_degree(k)) {
            const Element x = model.gen(model.generator(g).name);
            if (e.add(model.to_vector(x, k)))
                basis[k].push_back(x);
        }
    }
    struct Pair {
        Element x, y;
    };
    std::vector<Pair> products;
    LinearMap pm{0, model.dimension(14), {}};
    for (int k = 1; k <= 7; ++k) {
        const int l = 14 - k;
        for (std::size_t i = 0; i < basis[k].size(); ++i)
            for (std::size_t j = (k == l ? i + (k % 2 ? 1 : 0) : 0); j < basis[l].size(); ++j) {
                const Element p = model.multiply(basis[k][i], basis[l][j]);
                products.push_back({basis[k][i], basis[l][j]});
                pm.columns.push_back(model.to_vector(part_of_length(p, 2), 14));
            }
    }
    pm.source_dim = products.size();
    LinearSolver ps(pm);
    require(ps.kernel().rank() == 0, "products of the adapted basis are dependent");
    auto coords = ps.solve(model.to_vector(q, 14));
    require(coords.has_value(), "quadratic part not in the span of products");
    Rational coef = 0;
    for (std::size_t i = 0; i < products.size(); ++i)
        if ((products[i].x == lin[table.index_of("u_c")] && products[i].y == lin[table.index_of("v_b")]) ||
            (products[i].y == lin[table.index_of("u_c")] && products[i].x == lin[table.index_of("v_b")]))
            coef = coords->at(i);
    require(coef == 1, "coefficient of u_c v_b in d z is " + coef.get_str());
    require(whitehead_pair(table, "z", *parse_bracket("[[a,c],[a,[a,b]]]")) != 0, "<z,[[a,c],[a,[a,b]]]> = 0");

    std::string counts;
    for (int k : {3, 5, 7, 9, 11, 13})
        counts += (counts.empty() ? "" : " ") + std::string("V") + std::to_string(k) + "=" +
                  std::to_string(m.generators_of_degree(k).size());
    return counts + "; table embeds, coefficient of u_c v_b is 1";
}

// 5 ----------------------------------------------------------------------

std::string whitehead(Ctx& c)
{
    const Cdga t = c.load("wedge_table.cdga").algebra;
    const Rational ub = whitehead_pair(t, "u_b", *parse_bracket("[a,b]"));
    require(abs(ub) == 1, "|<u_b,[a,b]>| = " + Rational(abs(ub)).get_str());
    const Rational vb = whitehead_pair(t, "v_b", *parse_bracket("[a,[a,b]]"));
    require(abs(vb) == 1, "|<v_b,[a,[a,b]]>| = " + Rational(abs(vb)).get_str());
    const Bracket g = parse_bracket("[[a,c],[a,[a,b]]]");
    require(bracket_degree(t, *g) == 13, "bracket degree is not 13");
    const Rational base = whitehead_pair(t, "z", *g);
    require(base != 0, "<z, g_1> = 0");
    for (int n = 1; n <= 5; ++n) {
        const Rational v = whitehead_pair(t, "z", *scale_by_degree(t, g, n));
        require(v == power(Rational(n), 17) * base, "<z, g_" + std::to_string(n) + "> != N^17 <z, g_1>");
    }
    return "<u_b,[a,b]> = " + ub.get_str() + ", <v_b,[a,[a,b]]> = " + vb.get_str() + ", <z,g_1> = " +
           base.get_str() + ", N^17 law for N <= 5";
}

// 6 ----------------------------------------------------------------------

std::string signatures(Ctx&)
{
    const std::pair<int, std::size_t> expected[] = {{2, 3}, {4, 35}, {8, 6435}};
    for (const auto& [n, idx] : expected) {
        const Signature s = wedge_pairing_signature(n);
        require(s.positive == idx && s.negative == idx, "signature for n = " + std::to_string(n) + " is (" +
                                                            std::to_string(s.positive) + "," +
                                                            std::to_string(s.negative) + ")");
    }
    const Decision s3 = decide_sigma(2, 3);
    require(s3.embeddable && s3.witness_verified, "Sigma_{2,3} witness missing or unverified");
    require(verify_witness(*s3.ring, *s3.witness, true).ok, "Sigma_{2,3} witness fails verify_witness");
    const Decision s4 = decide_sigma(2, 4);
    require(!s4.embeddable && s4.certificate.kind == "inertia", "Sigma_{2,4} not refuted by inertia");
    for (int n = 1; n <= 3; ++n) {
        const long h = static_cast<long>(binomial(2 * n, n) / 2);
        const Decision at = decide_omega(n, h);
        require(at.embeddable && at.witness_verified && verify_witness(*at.ring, *at.witness, true).ok,
                "Omega_{" + std::to_string(n) + "," + std::to_string(h) + "} witness fails");
        const Decision over = decide_omega(n, h + 1);
        require(!over.embeddable && over.certificate.kind == "dimension-count",
                "Omega_{" + std::to_string(n) + "," + std::to_string(h + 1) + "} not refuted");
    }
    const PiDecision p2 = decide_pi(2, 2);
    require(p2.nullspace_dimension == 1, "Pi nullspace for n = 2 is " + std::to_string(p2.nullspace_dimension));
    for (int n = 3; n <= 6; ++n) {
        const PiDecision p = decide_pi(n, 2);
        require(p.nullspace_dimension == 0 && p.full_nullspace_dimension == 0 && p.not_embeddable,
                "Pi nullspace for n = " + std::to_string(n) + " is nonzero");
    }
    return "(3,3) (35,35) (6435,6435); Sigma flips 3/4; Omega flips at C(2n,n)/2 for n <= 3; Pi 1,0,0,0,0";
}

// 7 ----------------------------------------------------------------------

std::string hopf(Ctx& c)
{
    const Cdga cp2 = c.load("cp2.ring").algebra;
    const Element x = cp2.gen("x");
    const Element top = cp2.multiply(x, x);
    require(hopf_invariant(cp2, x, top) == 1, "Hopf invariant of CP2 is not 1");
    for (int k = 1; k <= 3; ++k)
        require(hopf_invariant(cp2, Rational(k) * x, top) == k * k,
                "cup square of " + std::to_string(k) + "x is not " + std::to_string(k * k) + " b");
    const Cdga s2s2 = c.load("s2s2.ring").algebra;
    const Element ab = s2s2.multiply(s2s2.gen("a"), s2s2.gen("b"));
    require(hopf_invariant(s2s2, s2s2.gen("a"), ab) == 0 && hopf_invariant(s2s2, s2s2.gen("b"), ab) == 0,
            "S2xS2 generators have nonzero Hopf invariant");
    const Cdga hp2 = c.load("hp2.ring").algebra;
    require(hopf_invariant(hp2, hp2.gen("x"), hp2.power(hp2.gen("x"), 2)) == 1, "Hopf invariant of HP2 is not 1");
    return "CP2 -> 1, HP2 -> 1, S2xS2 -> 0, k x -> k^2 for k <= 3";
}

// 8 ----------------------------------------------------------------------

std::string massey(Ctx& c)
{
    struct Fixture {
        const char* file;
        int cap;
    };
    const Fixture fixtures[] = {{"s2.ring", 8},  {"cp2.ring", 10},  {"s2s2.ring", 8},        {"s3s3.ring", 10},
                                {"wedge.ring", 12}, {"hp2.ring", 12}, {"sphere_wedge.ring", 12}};
    std::size_t triples = 0;
    for (const auto& f : fixtures) {
        const MinimalModel m = bigraded_model(c.load(f.file).algebra, f.cap);
        std::vector<CohomologyClass> classes;
        for (int k = 1; k <= f.cap; ++k)
            for (auto& cl : DegreeCohomology(m.model, k).classes())
                classes.push_back(cl);
        for (const auto& x : classes)
            for (const auto& y : classes)
                for (const auto& z : classes) {
                    if (x.degree + y.degree + z.degree - 1 > f.cap)
                        continue;
                    const Cdga& a = m.model;
                    if (!DegreeCohomology(a, x.degree + y.degree).is_exact(a.multiply(x.representative, y.representative)))
                        continue;
                    if (!DegreeCohomology(a, y.degree + z.degree).is_exact(a.multiply(y.representative, z.representative)))
                        continue;
                    const MasseyResult r = massey_triple(a, x, y, z);
                    require(r.vanishes, std::string(f.file) + ": nonvanishing Massey product in degree " +
                                            std::to_string(r.degree));
                    ++triples;
                }
    }

    const MinimalModel base = minimal_model(c.load("sphere_wedge.ring").algebra, 9);
    const Bracket aab = parse_bracket("[a,[a,b]]");
    std::map<std::string, Rational> pairing;
    for (auto g : base.generators_of_degree(7))
        pairing[base.model.generator(g).name] = whitehead_pair(base.model, base.model.generator(g).name, *aab);
    const CellAttachmentModel cell = attach_cell_model(base, 8, pairing);
    const Cdga& a = cell.model;
    const CohomologyClass ca{3, a.gen("a")};
    const CohomologyClass cb{3, a.gen("b")};
    const MasseyResult r = massey_triple(a, ca, ca, cb);
    require(!r.vanishes, "<a,a,b> vanishes on the cell model");
    require(r.indeterminacy.rank() == 0, "<a,a,b> has nonzero indeterminacy");
    const auto surj = u0_surjectivity(cell, 9);
    require(surj.size() > 8 && !surj[8], "u0_surjectivity does not flag degree 8");
    for (int k = 0; k < 8; ++k)
        require(surj[k], "u0_surjectivity flags degree " + std::to_string(k));
    return std::to_string(triples) + " formal triples vanish; <a,a,b> = nonzero class in H^8, indeterminacy 0";
}

// 9 ----------------------------------------------------------------------

std::string classification(Ctx&)
{
    const std::pair<const char*, Verdict> cases[] = {
        {"S2", Verdict::Scalable},
        {"S7", Verdict::Scalable},
        {"CP3", Verdict::Scalable},
        {"CP5", Verdict::Scalable},
        {"csum(3*CP2)", Verdict::Scalable},
        {"csum(3*(S2xS2))", Verdict::Scalable},
        {"prod(S3,S5)", Verdict::Scalable},
        {"prod(CP2,csum(3*CP2))", Verdict::Scalable},
        {"wedge(S3,S3,S5)", Verdict::Scalable},
        {"wedge(CP2,csum(3*(S2xS2)))", Verdict::Scalable},
        {"csum(4*CP2)", Verdict::NotScalable},
        {"csum(2*CP3)", Verdict::NotScalable},
        {"csum(4*(S2xS2))", Verdict::NotScalable},
        {"csum(36*HP2)", Verdict::NotScalable},
        {"csum(1*(S2xS2),1*CP2)", Verdict::Unknown},
    };
    for (const auto& [desc, want] : cases) {
        const Classification cl = classify(desc);
        require(cl.verdict == want, std::string(desc) + " classified " + to_string(cl.verdict));
        require(!cl.certificate.kind.empty() && !cl.certificate.summary.empty(),
                std::string(desc) + " has no certificate");
        if (cl.witness)
            require(cl.witness_verified, std::string(desc) + " witness not verified");
        if (auto b = manifold_betti(parse_space(desc)))
            if (!rank_bound_check(*b, static_cast<int>(b->size()) - 1).pass())
                require(cl.verdict != Verdict::Scalable, std::string(desc) + " fails the rank bound");
    }
    return std::to_string(std::size(cases)) + " descriptors classified with certificates";
}

// 10 ---------------------------------------------------------------------

std::vector<std::pair<std::string, ExtensionProblem>> obstruction_fixtures(Ctx& c)
{
    std::vector<std::pair<std::string, ExtensionProblem>> out;
    {
        const Cdga a = Cdga::free({{"a", 2, std::nullopt}});
        const Cdga av = a.extended({{"v", 3, std::nullopt}}, {a.multiply(a.gen("a"), a.gen("a"))});
        const Cdga b = c.load("s2.cdga").algebra;
        const Cdga cc({{"e", 2, std::nullopt}, {"s", 3, std::nullopt}},
                      {Element{}, Element::monomial(Monomial::generator(0, 2))}, {}, 4);
        DgaMorphism f(a, b, {b.gen("a")});
        DgaMorphism h(b, cc, {cc.gen("e"), cc.gen("s")});
        DgaMorphism g(av, cc, {cc.gen("e"), cc.gen("s")});
        out.push_back({"S2 cell", {f, g, h, DgaHomotopy::constant(DgaMorphism(a, cc, {cc.gen("e")}))}});
    }
    {
        const Cdga a = Cdga::free({{"a", 3, std::nullopt}, {"b", 3, std::nullopt}});
        const Cdga av = a.extended({{"u", 5, std::nullopt}}, {a.multiply(a.gen("a"), a.gen("b"))});
        const Cdga b = c.load("wedge_table.cdga").algebra;
        const Cdga cc = c.load("wedge.ring").algebra;
        std::vector<Element> him;
        for (const auto& gen : b.generators())
            him.push_back(cc.find(gen.name) ? cc.gen(gen.name) : cc.adopt(Element{}));
        DgaMorphism f(a, b, {b.gen("a"), b.gen("b")});
        DgaMorphism h(b, cc, him);
        DgaMorphism g(av, cc, {cc.gen("a"), cc.gen("b"), cc.adopt(Element{})});
        out.push_back({"wedge u_b", {f, g, h, DgaHomotopy::constant(DgaMorphism(a, cc, {cc.gen("a"), cc.gen("b")}))}});
    }
    {
        const Cdga a = Cdga::free({{"a", 3, std::nullopt}, {"b", 3, std::nullopt}, {"c", 5, std::nullopt}});
        const Cdga av = a.extended({{"p", 7, std::nullopt}}, {a.multiply(a.gen("a"), a.gen("c"))});
        const Cdga t = c.load("wedge_table.cdga").algebra;
        DgaMorphism f(a, t, {t.gen("a"), t.gen("b"), t.gen("c")});
        DgaMorphism g(av, t, {t.gen("a"), t.gen("b"), t.gen("c"), t.gen("u_c")});
        out.push_back({"wedge u_c", {f, g, DgaMorphism::identity(t), DgaHomotopy::constant(DgaMorphism(a, t, f.images()))}});
    }
    {
        // H(x) = e + d(m t) runs from e to e + n
        const Cdga a = Cdga::free({{"x", 2, std::nullopt}});
        const Cdga av = a.extended({{"v", 3, std::nullopt}}, {a.multiply(a.gen("x"), a.gen("x"))});
        const Cdga b = c.load("s2.cdga").algebra;
        const Cdga cc({{"m", 1, std::nullopt}, {"e", 2, std::nullopt}, {"n", 2, std::nullopt}, {"s", 3, std::nullopt}},
                      {Element::generator(2), Element{}, Element{}, Element::monomial(Monomial::generator(1, 2))});
        const Element e = cc.gen("e"), m = cc.gen("m"), n = cc.gen("n");
        DgaMorphism f(a, b, {b.gen("a")});
        DgaMorphism h(b, cc, {e + n, cc.gen("s") + Rational(2) * cc.multiply(m, e) + cc.multiply(m, n)});
        DgaMorphism g(av, cc, {e, cc.gen("s")});
        HomotopyElement hx = HomotopyElement::constant(cc, e) + HomotopyElement::term(cc, m, 1, false).differential();
        out.push_back({"moving homotopy", {f, g, h, DgaHomotopy(a, cc, {hx})}});
    }
    {
        // nonvanishing: extend a^2 = dv over the polynomial ring
        const Cdga a = Cdga::free({{"a", 2, std::nullopt}});
        const Cdga av = a.extended({{"v", 3, std::nullopt}}, {a.multiply(a.gen("a"), a.gen("a"))});
        const Cdga b = Cdga::free({{"x", 2, std::nullopt}});
        const Cdga cc = c.load("s2.cdga").algebra;
        DgaMorphism f(a, b, {b.gen("x")});
        DgaMorphism h(b, cc, {cc.gen("a")});
        DgaMorphism g(av, cc, {cc.gen("a"), cc.gen("b")});
        out.push_back({"polynomial", {f, g, h, DgaHomotopy::constant(DgaMorphism(a, cc, {cc.gen("a")}))}});
    }
    return out;
}

std::string obstruction(Ctx& c)
{
    std::size_t extended = 0;
    std::size_t blocked = 0;
    for (const auto& [name, problem] : obstruction_fixtures(c)) {
        const ObstructionClass o = obstruction_class(problem);
        for (std::size_t i = 0; i < o.cocycle.size(); ++i) {
            const auto& [x, y] = o.cocycle[i];
            const Element dx = problem.f.target().differential(x);
            const Element rel = problem.h.apply(x) - problem.h.target().differential(y);
            require(dx.is_zero() && rel.is_zero(), name + ": obstruction cochain is not a relative cocycle");
        }
        if (!o.vanishes) {
            ++blocked;
            continue;
        }
        require(o.primitive.has_value(), name + ": vanishing class without a primitive");
        const Extension ext = extend_with_witness(problem, *o.primitive);
        if (auto why = extension_defect(problem, ext))
            throw CheckFailure(name + ": " + *why);
        const DgaMorphism start = ext.homotopy.at_start();
        const DgaMorphism end = ext.homotopy.at_end();
        for (std::size_t g = 0; g < problem.g.source().generator_count(); ++g) {
            require(start.image(g) == problem.g.image(g), name + ": homotopy does not start at g");
            require(end.image(g) == problem.h.apply(ext.f.image(g)), name + ": homotopy does not end at h f");
        }
        ++extended;
    }
    require(extended >= 3, "fewer than three vanishing fixtures");
    require(blocked >= 1, "no fixture with a nonvanishing obstruction");
    return std::to_string(extended) + " extensions verified, " + std::to_string(blocked) + " obstructed";
}

struct Entry {
    int id;
    const char* key;
    const char* title;
    double limit;
    std::function<std::string(Ctx&)> run;
};

const std::vector<Entry>& entries()
{
    static const std::vector<Entry> e = {
        {1, "koszul", "Koszul, Leibniz and d^2 property suite", 5, koszul},
        {2, "integration", "integration operator identities", 2, integration},
        {3, "s2-model", "S^2 minimal model, depths and distortion", 1, s2_model},
        {4, "table", "wedge model against the generator table", 60, table},
        {5, "whitehead", "Whitehead pairings and the N^17 law", 5, whitehead},
        {6, "signatures", "wedge pairing signatures and the three families", 30, signatures},
        {7, "hopf", "Hopf invariants", 1, hopf},
        {8, "massey", "Massey products and non-formality", 10, massey},
        {9, "classification", "scalability classification", 30, classification},
        {10, "obstruction", "obstruction round trip", 5, obstruction},
    };
    return e;
}

struct FaultGuard {
    bool on;
    explicit FaultGuard(bool enable) : on(enable)
    {
        if (on)
            fault::set_koszul_sign_fault(true);
    }
    ~FaultGuard()
    {
        if (on)
            fault::set_koszul_sign_fault(false);
    }
};

} // namespace

std::vector<std::string> criterion_keys()
{
    std::vector<std::string> k;
    for (const auto& e : entries())
        k.push_back(e.key);
    return k;
}

std::vector<CriterionResult> run_verification(const VerifyOptions& options)
{
    for (const auto& o : options.only) {
        bool known = false;
        for (const auto& e : entries())
            known = known || o == e.key || o == std::to_string(e.id);
        if (!known)
            throw std::invalid_argument("unknown criterion '" + o + "'");
    }
    std::vector<CriterionResult> out;
    FaultGuard guard(options.inject_sign_bug);
    for (const auto& e : entries()) {
        if (!options.only.empty()) {
            bool selected = false;
            for (const auto& o : options.only)
                selected = selected || o == e.key || o == std::to_string(e.id);
            if (!selected)
                continue;
        }
        Ctx ctx;
        ctx.data = options.data_dir.empty() ? RHT_DATA_DIR : options.data_dir;
        CriterionResult r;
        r.id = e.id;
        r.key = e.key;
        r.title = e.title;
        r.limit = e.limit;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            r.detail = e.run(ctx);
            r.pass = true;
        } catch (const std::exception& ex) {
            r.detail = ex.what();
            r.pass = false;
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.pass && r.seconds > r.limit) {
            r.pass = false;
            r.detail = "took " + std::to_string(r.seconds) + " s, limit " + std::to_string(r.limit) + " s";
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace rht
