#include "rht/scalability.hpp"

#include <algorithm>

namespace rht {

namespace {

constexpr long verify_limit = 200;

void subsets_rec(int n, int from, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (int i = from; i < total; ++i) {
        cur.push_back(i);
        subsets_rec(n, i + 1, total, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> subsets(int n, int total)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    subsets_rec(n, 0, total, cur, out);
    return out;
}

std::vector<int> complement(const std::vector<int>& s, int total)
{
    std::vector<int> c;
    for (int i = 0; i < total; ++i)
        if (!std::binary_search(s.begin(), s.end(), i))
            c.push_back(i);
    return c;
}

std::string show(const std::vector<int>& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

Element raw(std::vector<Monomial::Factor> f, const Rational& c = 1)
{
    return Element::monomial(Monomial::from_sorted(std::move(f)), c);
}

Rational pairing(const ExteriorAlgebra& ext, const std::vector<int>& i, const std::vector<int>& j)
{
    Element p = ext.algebra().multiply(ext.dx(i), ext.dx(j));
    if (p.is_zero())
        return 0;
    return p.terms().begin()->second;
}

} // namespace

std::vector<std::vector<int>> half_subsets(int n)
{
    auto all = subsets(n - 1, 2 * n - 1);
    for (auto& s : all) {
        for (int& x : s)
            ++x;
        s.insert(s.begin(), 0);
    }
    return all;
}

Signature wedge_pairing_signature(int n)
{
    return wedge_pairing_signature(n, n <= 4);
}

Signature wedge_pairing_signature(int n, bool dense_check)
{
    if (n < 1)
        throw AlgebraError("wedge_pairing_signature: n must be positive");
    if (n % 2 != 0)
        throw AlgebraError("wedge_pairing_signature: for odd n = " + std::to_string(n) +
                           " the wedge pairing on Lambda^n is antisymmetric (symplectic), so it has no signature");
    ExteriorAlgebra ext(2 * n);
    Signature sig;
    for (const auto& s : half_subsets(n)) {
        const auto c = complement(s, 2 * n);
        DenseMatrix block{{pairing(ext, s, s), pairing(ext, s, c)}, {pairing(ext, c, s), pairing(ext, c, c)}};
        Inertia in = inertia(block);
        sig.positive += in.positive;
        sig.negative += in.negative;
        if (in.zero != 0)
            throw AlgebraError("wedge pairing block " + show(s) + " is degenerate");
    }
    if (dense_check) {
        const auto basis = subsets(n, 2 * n);
        DenseMatrix g(basis.size(), std::vector<Rational>(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j)
                g[i][j] = pairing(ext, basis[i], basis[j]);
        Inertia in = inertia(g);
        if (in.positive != sig.positive || in.negative != sig.negative || in.zero != 0)
            throw AlgebraError("wedge_pairing_signature: block and dense inertia disagree");
        sig.dense_checked = true;
    }
    return sig;
}

Decision decide_sigma(int n, long p, long q, bool verify)
{
    if (n < 2 || n % 2 != 0)
        throw AlgebraError("decide_sigma: n must be even and >= 2 (odd n gives an antisymmetric pairing)");
    if (p < 0 || q < 0 || p + q < 1)
        throw AlgebraError("decide_sigma: need at least one summand");
    Decision d;
    d.n = n;
    d.r = p + q;
    const auto dim = binomial(2 * n, n);
    const long half = static_cast<long>(dim / 2);
    if (p > half || q > half) {
        Signature sig = wedge_pairing_signature(n, n <= 4);
        d.embeddable = false;
        d.certificate.kind = "inertia";
        d.certificate.fields = {{"n", std::to_string(n)},
                                {"positive_summands", std::to_string(p)},
                                {"negative_summands", std::to_string(q)},
                                {"positive_index", std::to_string(sig.positive)},
                                {"negative_index", std::to_string(sig.negative)},
                                {"dense_checked", sig.dense_checked ? "true" : "false"}};
        d.certificate.summary = "the classes a_i would span a subspace of Lambda^" + std::to_string(n) + " R^" +
                                std::to_string(2 * n) + " on which the wedge pairing is " +
                                (p > half ? "positive" : "negative") + " definite of dimension " +
                                std::to_string(std::max(p, q)) + ", exceeding the index " + std::to_string(half);
        return d;
    }
    ExteriorAlgebra ext(2 * n);
    EmbeddingWitness w{ext, {}, {}};
    const auto halves = half_subsets(n);
    auto form = [&](const std::vector<int>& s, int sign) {
        const int c = ext.complement_sign(s);
        return ext.dx(s) + Rational(sign * c) * ext.dx(complement(s, 2 * n));
    };
    for (long i = 0; i < p; ++i)
        w.images.push_back(form(halves[i], 1));
    for (long i = 0; i < q; ++i)
        w.images.push_back(form(halves[i], -1));
    d.embeddable = true;
    d.certificate.kind = "witness";
    d.certificate.fields = {{"n", std::to_string(n)}, {"target", "Lambda R^" + std::to_string(2 * n)}};
    d.certificate.summary = "a_i -> dx_I + s dx_{I^c} (resp. minus for reversed summands) over complementary pairs";
    if (verify && d.r <= verify_limit) {
        std::vector<Atom> atoms(p, Atom::projective(n, 2));
        for (long i = 0; i < q; ++i) {
            Atom a = Atom::projective(n, 2);
            a.reversed = true;
            atoms.push_back(a);
        }
        d.ring = connected_sum_ring(atoms);
        WitnessCheck chk = verify_witness(*d.ring, w, true);
        if (!chk.ok)
            throw AlgebraError("decide_sigma: constructed witness fails: " + chk.failure);
        d.witness_verified = true;
    } else {
        w.notes.push_back("witness not verified (ring too large to build)");
    }
    d.witness = std::move(w);
    return d;
}

Decision decide_omega(int n, long r, bool verify)
{
    if (n < 1)
        throw AlgebraError("decide_omega: n must be >= 1");
    if (r < 1)
        throw AlgebraError("decide_omega: r must be >= 1");
    Decision d;
    d.n = n;
    d.r = r;
    const auto dim = binomial(2 * n, n);
    if (2 * static_cast<unsigned long long>(r) > dim) {
        d.embeddable = false;
        d.certificate.kind = "dimension-count";
        d.certificate.fields = {{"n", std::to_string(n)},
                                {"generators_in_degree_n", std::to_string(2 * r)},
                                {"dim_Lambda_n", std::to_string(dim)}};
        d.certificate.summary = std::to_string(2 * r) + " independent classes cannot fit in Lambda^" +
                                std::to_string(n) + " R^" + std::to_string(2 * n) + " of dimension " +
                                std::to_string(dim);
        return d;
    }
    ExteriorAlgebra ext(2 * n);
    EmbeddingWitness w{ext, {}, {}};
    const auto halves = half_subsets(n);
    for (long i = 0; i < r; ++i) {
        w.images.push_back(ext.dx(halves[i]));
        w.images.push_back(Rational(ext.complement_sign(halves[i])) * ext.dx(complement(halves[i], 2 * n)));
    }
    d.embeddable = true;
    d.certificate.kind = "witness";
    d.certificate.fields = {{"n", std::to_string(n)}, {"target", "Lambda R^" + std::to_string(2 * n)}};
    d.certificate.summary = "a_i -> dx_I, b_i -> +-dx_{I^c} for n-subsets I containing 0";
    if (verify && r <= verify_limit) {
        d.ring = connected_sum_ring(std::vector<Atom>(r, Atom::product(n, n)));
        WitnessCheck chk = verify_witness(*d.ring, w, true);
        if (!chk.ok)
            throw AlgebraError("decide_omega: constructed witness fails: " + chk.failure);
        d.witness_verified = true;
    } else {
        w.notes.push_back("witness not verified (ring too large to build)");
    }
    d.witness = std::move(w);
    return d;
}

PiDecision decide_pi(int n, long r)
{
    if (n < 2)
        throw AlgebraError("decide_pi: n must be >= 2");
    PiDecision res;
    res.n = n;
    res.r = r;
    ExteriorAlgebra ext(2 * n);
    const Cdga& a = ext.algebra();
    const Element omega = ext.symplectic_form();
    const auto pairs = subsets(2, 2 * n);
    res.unknowns = pairs.size();
    res.equations = a.dimension(4);

    LinearMap full{pairs.size(), res.equations, {}};
    for (const auto& pr : pairs)
        full.columns.push_back(a.to_vector(a.multiply(omega, ext.dx(pr)), 4));
    res.full_nullspace_dimension = LinearSolver(full).kernel().rank();

    LinearMap diag{static_cast<std::size_t>(n), res.equations, {}};
    for (int i = 0; i < n; ++i)
        diag.columns.push_back(a.to_vector(a.multiply(omega, ext.dx({2 * i, 2 * i + 1})), 4));
    LinearSolver ds(diag);
    res.nullspace_dimension = ds.kernel().rank();
    for (const auto& row : ds.kernel().rows) {
        Element eta = a.adopt(Element{});
        for (const auto& [i, c] : row.entries())
            eta += c * ext.dx({2 * static_cast<int>(i), 2 * static_cast<int>(i) + 1});
        res.nullspace.push_back(eta);
    }

    res.not_embeddable = n >= 3 && r > 1 && res.full_nullspace_dimension == 0;
    res.certificate.kind = "linear-system";
    res.certificate.fields = {{"n", std::to_string(n)},
                              {"unknowns", std::to_string(res.unknowns)},
                              {"equations", std::to_string(res.equations)},
                              {"nullspace_dimension", std::to_string(res.nullspace_dimension)},
                              {"full_nullspace_dimension", std::to_string(res.full_nullspace_dimension)}};
    if (res.not_embeddable)
        res.certificate.summary = "omega eta = 0 forces eta = 0 in Lambda^2 R^" + std::to_string(2 * n) +
                                  ", so two classes with a_1^n = a_2^n != 0 and a_1 a_2 = 0 cannot both be realized";
    else if (n < 3)
        res.certificate.summary = "informational only: n < 3";
    else
        res.certificate.summary = "r <= 1: a single class embeds";
    return res;
}

Atom Atom::sphere(int n)
{
    if (n < 1)
        throw AlgebraError("sphere dimension must be positive");
    Atom a;
    a.kind = Kind::Sphere;
    a.n = n;
    return a;
}

Atom Atom::product(int n, int m)
{
    if (n < 1 || m < 1)
        throw AlgebraError("sphere dimensions must be positive");
    Atom a;
    a.kind = Kind::Product;
    a.n = n;
    a.m = m;
    return a;
}

Atom Atom::projective(int step, int k)
{
    if (step != 2 && step != 4 && step != 8)
        throw AlgebraError("projective generator degree must be 2, 4 or 8");
    if (k < 1 || (step == 8 && k > 2))
        throw AlgebraError("unsupported projective height " + std::to_string(k));
    Atom a;
    a.kind = Kind::Projective;
    a.n = step;
    a.k = k;
    return a;
}

int Atom::fundamental() const
{
    switch (kind) {
    case Kind::Sphere: return n;
    case Kind::Product: return n + m;
    case Kind::Projective: return n * k;
    }
    return 0;
}

std::string Atom::name() const
{
    std::string s;
    switch (kind) {
    case Kind::Sphere: s = "S" + std::to_string(n); break;
    case Kind::Product: s = "S" + std::to_string(n) + "xS" + std::to_string(m); break;
    case Kind::Projective:
        s = std::string(n == 2 ? "CP" : n == 4 ? "HP" : "OP") + std::to_string(k);
        break;
    }
    return reversed ? "rev(" + s + ")" : s;
}

std::vector<std::size_t> Atom::betti() const
{
    std::vector<std::size_t> b(fundamental() + 1, 0);
    b[0] += 1;
    switch (kind) {
    case Kind::Sphere: b[n] += 1; break;
    case Kind::Product:
        b[n] += 1;
        b[m] += 1;
        b[n + m] += 1;
        break;
    case Kind::Projective:
        for (int i = 1; i <= k; ++i)
            b[n * i] += 1;
        break;
    }
    return b;
}

namespace {

struct AtomPiece {
    std::vector<Generator> gens;
    std::vector<Element> relations; // in local indices
    Monomial top;                   // in local indices
};

AtomPiece atom_piece(const Atom& a, const std::string& suffix)
{
    AtomPiece p;
    switch (a.kind) {
    case Atom::Kind::Sphere:
        p.gens = {{"a" + suffix, a.n, std::nullopt}};
        if (a.n % 2 == 0)
            p.relations.push_back(raw({{0, 2}}));
        p.top = Monomial::generator(0);
        break;
    case Atom::Kind::Product:
        p.gens = {{"a" + suffix, a.n, std::nullopt}, {"b" + suffix, a.m, std::nullopt}};
        if (a.n % 2 == 0)
            p.relations.push_back(raw({{0, 2}}));
        if (a.m % 2 == 0)
            p.relations.push_back(raw({{1, 2}}));
        p.top = Monomial::from_sorted({{0, 1}, {1, 1}});
        break;
    case Atom::Kind::Projective:
        p.gens = {{"a" + suffix, a.n, std::nullopt}};
        p.relations.push_back(raw({{0, static_cast<std::uint32_t>(a.k + 1)}}));
        p.top = Monomial::generator(0, a.k);
        break;
    }
    return p;
}

Monomial shift(const Monomial& m, std::uint32_t offset)
{
    std::vector<Monomial::Factor> f = m.factors();
    for (auto& [g, e] : f)
        g += offset;
    return Monomial::from_sorted(std::move(f));
}

Element shift(const Element& x, std::uint32_t offset)
{
    Element out;
    for (const auto& [m, c] : x.terms())
        out.add_term(shift(m, offset), c);
    return out;
}

} // namespace

RingPresentation atom_ring(const Atom& a)
{
    AtomPiece p = atom_piece(a, "");
    return make_ring(a.name(), p.gens, p.relations, a.fundamental(), true);
}

RingPresentation connected_sum_ring(const std::vector<Atom>& summands)
{
    if (summands.empty())
        throw AlgebraError("connected sum of nothing");
    const int top = summands.front().fundamental();
    std::string name;
    for (const auto& a : summands) {
        if (a.fundamental() != top)
            throw AlgebraError("connected sum mixes fundamental degrees " + std::to_string(top) + " and " +
                               std::to_string(a.fundamental()) + " (" + a.name() + ")");
        name += (name.empty() ? "" : "#") + a.name();
    }
    std::vector<Atom> kept;
    for (const auto& a : summands)
        if (a.kind != Atom::Kind::Sphere)
            kept.push_back(a);
    if (kept.empty()) {
        RingPresentation r = atom_ring(Atom::sphere(top));
        r.name = name;
        return r;
    }

    std::vector<Generator> gens;
    std::vector<Element> rels;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;
    std::vector<Monomial> tops;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        AtomPiece p = atom_piece(kept[i], std::to_string(i + 1));
        const auto offset = static_cast<std::uint32_t>(gens.size());
        for (const auto& r : p.relations)
            rels.push_back(shift(r, offset));
        tops.push_back(shift(p.top, offset));
        gens.insert(gens.end(), p.gens.begin(), p.gens.end());
        ranges.emplace_back(offset, static_cast<std::uint32_t>(gens.size()));
    }
    for (std::size_t i = 0; i < ranges.size(); ++i)
        for (std::size_t j = i + 1; j < ranges.size(); ++j)
            for (auto g = ranges[i].first; g < ranges[i].second; ++g)
                for (auto h = ranges[j].first; h < ranges[j].second; ++h)
                    if (gens[g].degree + gens[h].degree <= top)
                        rels.push_back(raw({{g, 1}, {h, 1}}));
    auto sgn = [&](std::size_t i) { return Rational(kept[i].reversed ? -1 : 1); };
    for (std::size_t i = 1; i < kept.size(); ++i)
        rels.push_back(Element::monomial(tops[i], sgn(i)) - Element::monomial(tops[0], sgn(0)));
    return make_ring(name, std::move(gens), std::move(rels), top, true);
}

std::vector<std::size_t> connected_sum_betti(const std::vector<Atom>& summands)
{
    if (summands.empty())
        throw AlgebraError("connected sum of nothing");
    const int top = summands.front().fundamental();
    std::vector<std::size_t> b(top + 1, 0);
    for (const auto& a : summands) {
        if (a.fundamental() != top)
            throw AlgebraError("connected sum mixes fundamental degrees");
        auto ab = a.betti();
        for (int k = 1; k < top; ++k)
            b[k] += ab[k];
    }
    b[0] = 1;
    b[top] = 1;
    return b;
}

void validate(const SetFamily& f)
{
    if (f.ground < 0)
        throw AlgebraError("set family ground index must be >= 0");
    for (std::size_t i = 0; i < f.members.size(); ++i) {
        const auto& s = f.members[i];
        if (s.empty())
            throw AlgebraError("member " + std::to_string(i) + " is empty");
        if (static_cast<int>(s.size()) > f.ground)
            throw AlgebraError("member " + show(s) + " is not proper");
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (s[j] < 0 || s[j] > f.ground)
                throw AlgebraError("member " + show(s) + " leaves the ground set");
            if (j && s[j] <= s[j - 1])
                throw AlgebraError("member " + show(s) + " is not strictly increasing");
        }
        for (std::size_t j = 0; j < i; ++j)
            if (f.members[j] == s)
                throw AlgebraError("member " + show(s) + " is repeated");
    }
}

IntersectionCheck intersection_complete(const SetFamily& f)
{
    validate(f);
    IntersectionCheck res;
    const int total = f.ground + 1;
    auto meets = [](const std::vector<int>& x, const std::vector<int>& y) {
        for (int v : x)
            if (std::binary_search(y.begin(), y.end(), v))
                return true;
        return false;
    };
    for (std::size_t i = 0; i < f.members.size(); ++i)
        for (std::size_t j = i + 1; j < f.members.size(); ++j) {
            const auto& a = f.members[i];
            const auto& b = f.members[j];
            const auto ac = complement(a, total);
            const auto bc = complement(b, total);
            const char* empty = nullptr;
            if (!meets(a, b))
                empty = "I and J";
            else if (!meets(a, bc))
                empty = "I and J^c";
            else if (!meets(ac, b))
                empty = "I^c and J";
            else if (!meets(ac, bc))
                empty = "I^c and J^c";
            if (empty) {
                res.complete = false;
                res.violation = std::make_pair(i, j);
                res.reason = "I = " + show(a) + ", J = " + show(b) + ": " + empty + " are disjoint";
                return res;
            }
        }
    return res;
}

FamilyWitness family_local_forms(const SetFamily& f)
{
    auto chk = intersection_complete(f);
    if (!chk.complete)
        throw AlgebraError("family is not intersection-complete: " + chk.reason);
    if (f.members.empty())
        throw AlgebraError("family is empty");
    const int total = f.ground + 1;
    ExteriorAlgebra ext(total);
    EmbeddingWitness w{ext, {}, {}};
    std::vector<Atom> atoms;
    bool low = false;
    for (const auto& s : f.members) {
        const int n = static_cast<int>(s.size());
        atoms.push_back(Atom::product(n, total - n));
        w.images.push_back(ext.dx(s));
        w.images.push_back(Rational(ext.complement_sign(s)) * ext.dx(complement(s, total)));
        low = low || n == 1 || total - n == 1;
    }
    if (low)
        w.notes.push_back("some atom has an S^1 factor, so the space is not simply connected");
    RingPresentation ring = connected_sum_ring(atoms);
    WitnessCheck check = verify_witness(ring, w, true);
    return {std::move(ring), std::move(w), std::move(check)};
}

} // namespace rht
